#pragma once

#include <optional>
#include <vector>

#include "freydlab/mat.hpp"

namespace freydlab {

// u * a * v == n with u, v invertible over the ring.  The shape of n equals
// the shape of a.  Over Z the form is the Smith form, over fields the reduced
// row echelon form (v = identity), over Z/n the diagonal invariant-factor
// form with entries dividing the modulus (the Howell-canonical diagonal).
struct NormalFormResult {
    Mat n, u, v;
};

NormalFormResult normal_form(const Mat& a);

// Canonical x with a*x == b, or nullopt when the system is unsolvable.
std::optional<Mat> solve_right(const Mat& a, const Mat& b);

// Columns generate {x : a*x == 0}.  Over Z the columns are a lattice basis,
// over Z/n a Howell-complete generating set, over fields an echelon basis.
Mat kernel_gens(const Mat& a);

// Row-span canonicalization: rows of the result are the canonical generating
// set of the row span of `rows` (HNF rows over Z, Howell rows over Z/n,
// RREF rows over fields).  Zero rows are dropped.
Mat span_canonical_rows(const Mat& rows);

bool is_invertible(const Mat& a);

// Classification of coker(a : R^cols -> R^rows) as a direct sum of cyclic
// modules R/(d) (torsion, d a nonunit nonzero) and free summands.
struct ModuleInvariants {
    Ring ring;
    std::vector<mpz_class> torsion;  // divisibility chain, each a nonzero nonunit
    long free_rank = 0;

    bool is_zero() const { return torsion.empty() && free_rank == 0; }
    bool operator==(const ModuleInvariants& o) const {
        return ring == o.ring && torsion == o.torsion && free_rank == o.free_rank;
    }
    std::string to_string() const;
};

ModuleInvariants cokernel_invariants(const Mat& a);

}  // namespace freydlab
