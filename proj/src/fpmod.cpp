#include "freydlab/fpmod.hpp"

namespace freydlab {

bool map_well_formed(const ModMap& f) {
    if (f.src.ring != f.dst.ring) return false;
    if (f.src.rels.cols() == 0) return true;
    return solve_right(f.dst.rels, f.mat * f.src.rels).has_value();
}

bool is_zero_module(const FpModule& m) {
    if (m.gens == 0) return true;
    return solve_right(m.rels, Mat::identity(m.ring, m.gens)).has_value();
}

bool is_zero_map(const ModMap& f) {
    if (f.mat.is_zero()) return true;
    return solve_right(f.dst.rels, f.mat).has_value();
}

bool maps_equal(const ModMap& f, const ModMap& g) {
    return is_zero_map(ModMap(f.src, f.dst, f.mat - g.mat));
}

ModMap compose(const ModMap& g, const ModMap& f) {
    return ModMap(f.src, g.dst, g.mat * f.mat);
}

ModMap add_maps(const ModMap& f, const ModMap& g) {
    return ModMap(f.src, f.dst, f.mat + g.mat);
}

FpModule direct_sum(const FpModule& a, const FpModule& b) {
    Mat top = a.rels.hstack(Mat(a.ring, a.gens, b.rels.cols()));
    Mat bot = Mat(a.ring, b.gens, a.rels.cols()).hstack(b.rels);
    return FpModule(a.ring, a.gens + b.gens, top.vstack(bot));
}

SubKernel mod_kernel(const ModMap& f) {
    // preimage of im(dst.rels): kernel of [mat | dst.rels] projected to the
    // src coordinates
    Mat stacked = f.mat.hstack(f.dst.rels);
    Mat k = kernel_gens(stacked);
    Mat pre = k.row_range(0, f.src.gens);
    // canonical generating set for the preimage (it contains im(src.rels))
    Mat gens = span_canonical_rows(pre.hstack(f.src.rels).transpose()).transpose();
    // relations of the kernel: combos of gens that die in src
    Mat rel_k = kernel_gens(gens.hstack(f.src.rels)).row_range(0, gens.cols());
    FpModule mod(f.src.ring, gens.cols(), span_canonical_rows(rel_k.transpose()).transpose());
    return {mod, ModMap(mod, f.src, gens)};
}

QuotCokernel mod_cokernel(const ModMap& f) {
    FpModule mod(f.dst.ring, f.dst.gens,
                 span_canonical_rows(f.mat.hstack(f.dst.rels).transpose()).transpose());
    return {mod, ModMap(f.dst, mod, Mat::identity(f.dst.ring, f.dst.gens))};
}

SubImage mod_image(const ModMap& f) {
    // image = src / kernel-of-composite, included into dst by mat
    Mat stacked = f.mat.hstack(f.dst.rels);
    Mat k = kernel_gens(stacked);
    Mat pre = k.row_range(0, f.src.gens);
    Mat rels = span_canonical_rows(pre.hstack(f.src.rels).transpose()).transpose();
    FpModule mod(f.src.ring, f.src.gens, rels);
    return {mod, ModMap(mod, f.dst, f.mat),
            ModMap(f.src, mod, Mat::identity(f.src.ring, f.src.gens))};
}

ModuleInvariants module_invariants(const FpModule& m) { return cokernel_invariants(m.rels); }

bool modules_isomorphic(const FpModule& a, const FpModule& b) {
    // invariant factors classify fp modules over all four (PIR) rings
    return module_invariants(a) == module_invariants(b);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    r.set(i * b.rows() + p, j * b.cols() + q, a.at(i, j) * b.at(p, q));
        }
    return r;
}

Mat vec_cols(const Mat& m) {
    Mat v(m.ring(), m.rows() * m.cols(), 1);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) v.set(j * m.rows() + i, 0, m.at(i, j));
    return v;
}

Mat unvec_cols(const Ring& r, const Mat& v, int rows, int cols) {
    Mat m(r, rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m.set(i, j, v.at(j * rows + i, 0));
    return m;
}

ModMap HomModule::decode(const Mat& coeffs) const {
    Mat m(src.ring, dst.gens, src.gens);
    for (size_t g = 0; g < generator_mats.size(); ++g)
        m = m + generator_mats[g].scaled(coeffs.at(static_cast<int>(g), 0));
    return ModMap(src, dst, m);
}

HomModule hom_module(const FpModule& a, const FpModule& b) {
    const Ring& ring = a.ring;
    int n = b.gens, m = a.gens;
    // unknown F (n x m) with F * a.rels = b.rels * Y for some Y
    int ra = a.rels.cols(), rb = b.rels.cols();
    Mat s(ring, 0, 0);
    if (ra == 0) {
        s = Mat::identity(ring, n * m);
    } else {
        Mat c1 = kron(a.rels.transpose(), Mat::identity(ring, n));  // vec(F*relA)
        Mat c2 = kron(Mat::identity(ring, ra), b.rels).scaled(mpq_class(-1));
        Mat k = kernel_gens(c1.hstack(c2));
        s = k.row_range(0, n * m);
    }
    // homotopies: maps of the form relB * G
    Mat theta = kron(Mat::identity(ring, m), b.rels);
    Mat all_gens = span_canonical_rows(s.transpose()).transpose();
    Mat rel_k = all_gens.cols() == 0
                    ? Mat(ring, 0, 0)
                    : kernel_gens(all_gens.hstack(theta)).row_range(0, all_gens.cols());
    FpModule hom(ring, all_gens.cols(),
                 all_gens.cols() == 0 ? Mat(ring, 0, 0)
                                      : span_canonical_rows(rel_k.transpose()).transpose());
    HomModule out{hom, {}, a, b};
    for (int j = 0; j < all_gens.cols(); ++j)
        out.generator_mats.push_back(unvec_cols(ring, all_gens.col_range(j, j + 1), n, m));
    return out;
}

bool image_contained(const ModMap& f, const ModMap& g) {
    if (f.dst.gens != g.dst.gens) throw Error("DimMismatch", "image_contained");
    return solve_right(g.mat.hstack(g.dst.rels), f.mat).has_value();
}

std::optional<ModMap> mod_inverse(const ModMap& f) {
    const Ring& ring = f.src.ring;
    int ns = f.src.gens, nd = f.dst.gens;
    // unknown G (ns x nd) with G f = id mod src.rels, f G = id mod dst.rels,
    // and G well-formed: G dst.rels in im src.rels.
    int rs = f.src.rels.cols(), rd = f.dst.rels.cols();
    // row blocks: vec(G f - id) with auxiliaries, vec(f G - id), vec(G dst.rels)
    Mat a1 = kron(f.mat.transpose(), Mat::identity(ring, ns));  // vec(G f)
    Mat a2 = kron(Mat::identity(ring, nd), f.mat);              // vec(f G)
    Mat a3 = kron(f.dst.rels.transpose(), Mat::identity(ring, ns));  // vec(G dst.rels)
    int c_g = ns * nd;
    int c1 = ns * rs * 1, c2 = nd * rd, c3 = ns * rs;
    // auxiliary column blocks: src.rels * Y1 (per id-column), dst.rels * Y2,
    // src.rels * Y3 (per dst relation column)
    Mat aux1 = kron(Mat::identity(ring, ns), f.src.rels);  // hits vec over ns columns
    Mat aux2 = kron(Mat::identity(ring, nd), f.dst.rels);
    Mat aux3 = kron(Mat::identity(ring, rd), f.src.rels);
    int r1 = ns * ns, r2 = nd * nd, r3 = ns * rd;
    (void)c1;
    (void)c3;
    Mat sys(ring, r1 + r2 + r3, c_g + aux1.cols() + aux2.cols() + aux3.cols());
    auto paste = [&](const Mat& m, int roff, int coff) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) != 0) sys.set(roff + i, coff + j, m.at(i, j));
    };
    paste(a1, 0, 0);
    paste(aux1, 0, c_g);
    paste(a2, r1, 0);
    paste(aux2, r1, c_g + aux1.cols());
    paste(a3, r1 + r2, 0);
    paste(aux3, r1 + r2, c_g + aux1.cols() + aux2.cols());
    Mat rhs(ring, r1 + r2 + r3, 1);
    Mat id_s = vec_cols(Mat::identity(ring, ns)), id_d = vec_cols(Mat::identity(ring, nd));
    for (int i = 0; i < r1; ++i) rhs.set(i, 0, id_s.at(i, 0));
    for (int i = 0; i < r2; ++i) rhs.set(r1 + i, 0, id_d.at(i, 0));
    auto sol = solve_right(sys, rhs);
    if (!sol) return std::nullopt;
    Mat g = unvec_cols(ring, sol->row_range(0, c_g), ns, nd);
    return ModMap(f.dst, f.src, g);
}

}  // namespace freydlab
