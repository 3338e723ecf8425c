#pragma once

#include "freydlab/additive.hpp"
#include "freydlab/fpmod.hpp"

namespace freydlab {

// Object of the free abelian category over an envelope, encoded in two
// layers: rel : R -> M freely adds the cokernel, cor : M -> C freely adds the
// kernel.  The object presented is the subquotient im(ker cor -> coker rel).
struct Presentation {
    AddMor rel, cor;
};

// Morphism: the middle component plus the factorizations certifying the two
// layer compatibility squares (mid.rel = rel'.rel_wit and cor'.mid =
// cor_wit.cor).  Equality is homotopy: f = g iff mid_f - mid_g factors as
// rel_dst . s + t . cor_src.
struct AbMor {
    Presentation src, dst;
    AddMor mid, rel_wit, cor_wit;
};

Presentation pres_zero(const EnvPtr& env);
Presentation pres_delta(const EnvPtr& env, int vertex);
Presentation pres_delta_tuple(const EnvPtr& env, const AddObj& obj);
Presentation pres_cokernel_datum(const AddMor& rel);  // coker-style: (R -> M -> 0)
Presentation pres_kernel_datum(const AddMor& cor);    // ker-style:   (0 -> M -> C)
Presentation pres_dsum(const Presentation& x, const Presentation& y);
void pres_check(const Presentation& x);
const EnvPtr& pres_env(const Presentation& x);
bool pres_is_zero(const Presentation& x);
std::string pres_key(const Presentation& x);  // canonical serialization for lookups

AbMor ab_identity(const Presentation& x);
AbMor ab_zero_mor(const Presentation& x, const Presentation& y);
AbMor ab_compose(const AbMor& g, const AbMor& f);
AbMor ab_add(const AbMor& f, const AbMor& g);
AbMor ab_sub(const AbMor& f, const AbMor& g);
AbMor ab_neg(const AbMor& f);
AbMor ab_scale(const AbMor& f, const mpq_class& c);

// Construction with witness search; ab_mor throws NotWellFormed when the
// compatibility squares have no solution.
std::optional<AbMor> ab_mor_try(const Presentation& src, const Presentation& dst,
                                const AddMor& mid);
AbMor ab_mor(const Presentation& src, const Presentation& dst, const AddMor& mid);
AbMor ab_delta_map(const EnvPtr& env, const BaseMor& m);

bool ab_equal(const AbMor& f, const AbMor& g);
bool ab_is_zero(const AbMor& f);

struct AbKernel {
    Presentation obj;
    AbMor incl;
};
struct AbCokernel {
    Presentation obj;
    AbMor proj;
};
struct AbImage {
    Presentation obj;
    AbMor incl;       // obj -> dst(f)
    AbMor onto;       // src(f) -> obj, with incl . onto = f
};
struct AbCoimage {
    Presentation obj;
    AbMor proj;       // src(f) -> obj
    AbMor from;       // obj -> dst(f), with from . proj = f
};

AbKernel ab_kernel(const AbMor& f);
AbCokernel ab_cokernel(const AbMor& f);
AbImage ab_image(const AbMor& f);
AbCoimage ab_coimage(const AbMor& f);

// u with p.u = t (lift through p) and u with u.p = t (colift through p).
std::optional<AbMor> ab_lift(const AbMor& p, const AbMor& t);
std::optional<AbMor> ab_colift(const AbMor& p, const AbMor& t);

bool ab_is_mono(const AbMor& f);
bool ab_is_epi(const AbMor& f);
bool ab_is_iso(const AbMor& f);
std::optional<AbMor> ab_inverse(const AbMor& f);
bool pres_isomorphic(const Presentation& x, const Presentation& y, const AbMor** witness = nullptr);

// Biproduct structure.
AbMor ab_inject(const std::vector<Presentation>& parts, int k);
AbMor ab_project(const std::vector<Presentation>& parts, int k);

// Hom(x, y) as a finitely presented module over the coefficient ring, with a
// decoding of generators into morphisms (witnesses included).  Requires an
// enumerable hom basis; the bounded variant restricts every hom space to
// words of length <= maxlen and is used over cyclic free bases, where it
// yields a sound generating family rather than the full hom module.
struct AbHom {
    Presentation src, dst;
    FpModule module;
    std::vector<AddMor> gen_mids, gen_sigmas, gen_taus;

    AbMor decode(const Mat& coeffs) const;  // coeffs: module.gens x 1
};
AbHom ab_hom(const Presentation& x, const Presentation& y);
AbHom ab_hom_bounded(const Presentation& x, const Presentation& y, int maxlen);

// Opposite category: the dual envelope with rel/cor swapped.
EnvPtr env_dual(const EnvPtr& env);
BaseMor base_dual(const BaseMor& m);
AddMor am_dual(const EnvPtr& denv, const AddMor& f);
Presentation pres_dual(const EnvPtr& denv, const Presentation& x);
AbMor ab_dual(const EnvPtr& denv, const AbMor& f);

// Coefficient extension along Z -> Q (same base, rational envelope).
AddMor am_change_ring(const EnvPtr& newenv, const AddMor& f);
Presentation pres_change_ring(const EnvPtr& newenv, const Presentation& x);
AbMor ab_change_ring(const EnvPtr& newenv, const AbMor& f);

// The simple objects of the free abelian category over the point base on Z:
// the representable at Z/p^n modulo its radical.  The radical is generated by
// precomposition with the non-invertible endomorphisms and the through-maps
// via the neighbouring prime powers.
Presentation simple_candidate(const EnvPtr& env, const mpz_class& p, int n);

// Representable object at R/d over the point base: kernel of |d| on |R|.
Presentation representable_at(const EnvPtr& env, const mpq_class& d);

// Bounded search for a construction of x from delta objects by kernels.
struct FlatNode {
    enum class Kind { DeltaTuple, KernelOf } kind;
    AddObj tuple;                      // DeltaTuple
    std::shared_ptr<FlatNode> src, dst;  // KernelOf: g : src -> dst
    AddMor mid;                        // KernelOf: the envelope-level morphism
};
struct FlatWitness {
    std::shared_ptr<FlatNode> tree;
    AbMor iso;  // built object -> x, verified iso
};
std::optional<FlatWitness> flat_membership(const Presentation& x, int bound = 4);

// True iff every morphism x -> cod(e) lifts along the epi e.
bool is_projective_against(const Presentation& x, const AbMor& e);

}  // namespace freydlab
