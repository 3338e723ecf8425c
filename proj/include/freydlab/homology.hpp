#pragma once

#include "freydlab/quotient.hpp"

namespace freydlab {

// Universal homology of a finite category over a degree window: Z-indexed
// copies of the free abelian category of the base, with zero homs across
// degrees.
struct GradedCat {
    FinCat base;
    EnvPtr env;
    int lo, hi;

    Presentation h(int obj, int degree) const;
    AbMor h_map(int mor, int degree) const;
    void check_degree(int degree) const;
};

GradedCat universal_homology(const FinCat& c, const Ring& ring, int lo, int hi);
FpModule graded_hom(const GradedCat& g, const Presentation& x, int dx, const Presentation& y,
                    int dy);

// Formal quotient by the point axiom: the nonzero-degree homology of every
// point object generates the kernel, one quotient per degree.
struct PointQuotient {
    GradedCat g;
    std::vector<int> points;
    std::map<int, SerreQuotient> per_degree;
};

PointQuotient point_quotient(const GradedCat& g, const std::vector<int>& points, int bound = 4);
ZeroAnswer point_is_zero(const PointQuotient& pq, int obj, int degree);

// Degree-k projection onto the point category with its section: collapse the
// base to the final object and keep only degree k.
struct KProjection {
    GradedCat g;
    int k;
    int final_obj;
    EnvPtr point_env;

    Presentation project(const Presentation& x, int degree) const;
    AbMor project_map(const AbMor& f, int degree) const;
    Presentation include(const Presentation& point_pres) const;  // lands in degree k
};

KProjection k_projection(const GradedCat& g, int k);  // NoFinalObject

// Universal relative homology over the Nori diagram of a category of pairs:
// the free abelian category of the Nori path envelope, quotiented formally by
// the functoriality, naturality, chain-condition and exactness generators.
struct RelUniversal {
    PairCat pairs;
    NoriDiagram nori;
    EnvPtr env;
    std::vector<Presentation> gens;
    std::vector<std::string> gen_names;
    SerreQuotient quotient;

    int vertex(int pair_obj, int degree) const;
    Presentation h(int pair_obj, int degree) const;
    AbMor gamma_map(int square, int degree) const;  // identity squares become identities
    AbMor del_map(int triple, int degree) const;
};

RelUniversal universal_relative(const FinCat& c, const std::vector<int>& distinguished,
                                const Ring& ring, int lo, int hi, int cert_bound = 4);

// Certificate that H_i(X, X) (or H_i(X, Y) for a distinguished isomorphism
// Y -> X) dies in the universal relative quotient.
CertPtr purity_certificate(const RelUniversal& ru, int pair_obj, int degree);  // OutOfWindow

// Restriction along X -> (X, 0) for a strictly initial object with all
// (X, 0) distinguished; maps plain homology degrees to pair objects.
struct RestrictedHomology {
    int initial_obj;
    std::map<int, int> pair_of;  // base object -> pair object (X, 0)
};
RestrictedHomology restricted_homology(const RelUniversal& ru);  // NoInitial

// User-supplied relative homology data over a window.
struct RelHomologyData {
    PairCat pairs;
    int lo, hi;
    std::map<std::pair<int, int>, FpModule> value;    // (pair obj, degree)
    std::map<std::pair<int, int>, Mat> gamma;         // (square, degree)
    std::map<std::pair<int, int>, Mat> boundary;      // (triple, degree), H_i(XY)->H_{i-1}(YZ)
};

struct AxiomViolation {
    std::string kind;   // functoriality | chain | exactness | naturality | malformed | missing
    std::string where;
    int degree;
};

std::vector<AxiomViolation> check_axioms(const RelHomologyData& k);

// Realization of the Nori diagram by user data, and the realization-kernel
// quotient it generates.
Realization nori_realization(const RelUniversal& ru, const RelHomologyData& k);
SerreQuotient universal_from(const RelUniversal& ru, const RelHomologyData& k);  // AxiomFailure

// Finite-additivity decoration: kernel/cokernel generators of the canonical
// maps from sums of restricted homologies into the homology of a coproduct.
struct CoproductRow {
    std::vector<int> summands;    // base objects
    int coproduct;                // base object
    std::vector<int> injections;  // base morphisms X_k -> coproduct
};
SerreQuotient additive_quotient(const RelUniversal& ru, const std::vector<CoproductRow>& rows,
                                int cert_bound = 4);  // NotACoproduct

// Universal representation of a finite monoid: End(H_0(*)) together with the
// ring map from the monoid algebra.
struct MonoidUniversal {
    GradedCat g;
    FpModule end_h;
    std::vector<AbMor> images;  // one endomorphism of H_0(*) per monoid element
};
MonoidUniversal monoid_universal(const FinCat& n, const Ring& ring);

}  // namespace freydlab
