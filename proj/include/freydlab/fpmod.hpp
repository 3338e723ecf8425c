#pragma once

#include <functional>
#include <optional>

#include "freydlab/linalg.hpp"

namespace freydlab {

// Finitely presented module R^gens / column span of rels.
struct FpModule {
    Ring ring;
    int gens;
    Mat rels;  // gens x k, columns are relations

    FpModule(Ring r, int g, Mat re) : ring(std::move(r)), gens(g), rels(std::move(re)) {
        if (rels.rows() != gens) throw Error("BadShape", "relation matrix rows != gens");
    }
    static FpModule free(const Ring& r, int n) { return FpModule(r, n, Mat(r, n, 0)); }
    static FpModule zero(const Ring& r) { return free(r, 0); }
    static FpModule cyclic(const Ring& r, const mpq_class& d) {
        Mat rel(r, 1, 1);
        rel.set(0, 0, d);
        return FpModule(r, 1, rel);
    }
};

// Map coker(src.rels) -> coker(dst.rels) carried by a dst.gens x src.gens matrix.
struct ModMap {
    FpModule src, dst;
    Mat mat;

    ModMap(FpModule s, FpModule d, Mat m) : src(std::move(s)), dst(std::move(d)), mat(std::move(m)) {
        if (mat.rows() != dst.gens || mat.cols() != src.gens)
            throw Error("BadShape", "module map shape mismatch");
    }
    static ModMap identity(const FpModule& m) {
        return ModMap(m, m, Mat::identity(m.ring, m.gens));
    }
    static ModMap zero(const FpModule& s, const FpModule& d) {
        return ModMap(s, d, Mat(s.ring, d.gens, s.gens));
    }
};

bool map_well_formed(const ModMap& f);     // f(rels_src) lands in im(rels_dst)
bool is_zero_module(const FpModule& m);    // every generator is a relation combination
bool is_zero_map(const ModMap& f);
bool maps_equal(const ModMap& f, const ModMap& g);
ModMap compose(const ModMap& g, const ModMap& f);
ModMap add_maps(const ModMap& f, const ModMap& g);

FpModule direct_sum(const FpModule& a, const FpModule& b);

struct SubKernel {
    FpModule module;
    ModMap incl;  // module -> src of the mapped-over morphism
};
struct QuotCokernel {
    FpModule module;
    ModMap proj;  // dst -> module
};
struct SubImage {
    FpModule module;
    ModMap incl;  // module -> dst
    ModMap proj;  // src -> module
};

SubKernel mod_kernel(const ModMap& f);
QuotCokernel mod_cokernel(const ModMap& f);
SubImage mod_image(const ModMap& f);

ModuleInvariants module_invariants(const FpModule& m);
bool modules_isomorphic(const FpModule& a, const FpModule& b);

// Hom(a, b) as an fp module together with a decoder from coefficient vectors
// (columns over the generators) to module maps.
struct HomModule {
    FpModule hom;
    std::vector<Mat> generator_mats;  // dst.gens x src.gens matrices
    FpModule src, dst;

    ModMap decode(const Mat& coeffs) const;  // coeffs: hom.gens x 1
};

HomModule hom_module(const FpModule& a, const FpModule& b);

// im(f) as a submodule of dst, compared by span: im(f) subseteq im(g).
bool image_contained(const ModMap& f, const ModMap& g);

// Two-sided inverse of an isomorphism of fp modules, if one exists.
std::optional<ModMap> mod_inverse(const ModMap& f);

Mat kron(const Mat& a, const Mat& b);
Mat vec_cols(const Mat& m);            // stack columns into one column
Mat unvec_cols(const Ring& r, const Mat& v, int rows, int cols);

}  // namespace freydlab
