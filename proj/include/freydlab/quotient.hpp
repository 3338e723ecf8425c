#pragma once

#include "freydlab/realize.hpp"

namespace freydlab {

// Proof tree certifying that an object lies in the thick subcategory
// generated by a listed set: a generator match, a zero object, or a
// subobject / quotient / extension / isomorphism step with verified
// witnesses.
struct Certificate {
    enum class Kind { Gen, Zero, IsoTo, SubOf, QuotOf, ExtOf } kind;
    Presentation subject;
    int gen_index = -1;                       // Gen
    std::shared_ptr<AbMor> witness;           // IsoTo / SubOf / QuotOf / ExtOf (mono part)
    std::shared_ptr<AbMor> witness2;          // ExtOf (epi part)
    std::vector<std::shared_ptr<Certificate>> children;
};

using CertPtr = std::shared_ptr<Certificate>;

CertPtr cert_gen(const Presentation& subject, int index);
CertPtr cert_zero(const Presentation& subject);
CertPtr cert_iso(const Presentation& subject, const AbMor& iso, CertPtr other);
CertPtr cert_sub(const Presentation& subject, const AbMor& mono, CertPtr ambient);
CertPtr cert_quot(const Presentation& subject, const AbMor& epi, CertPtr source);
CertPtr cert_ext(const Presentation& subject, const AbMor& mono, const AbMor& epi, CertPtr sub,
                 CertPtr quot);

bool verify_certificate(const Certificate& cert, const std::vector<Presentation>& gens);

// Quotient-category handle over a base free abelian category, in one of two
// oracle modes: by the kernel of a realization functor (decidable membership)
// or by a formal generator list (three-valued answers with certificates).
struct SerreQuotient {
    enum class Mode { Realization, Formal } mode;
    EnvPtr env;
    std::shared_ptr<Realization> functor;    // Realization mode
    std::vector<Presentation> gens;          // Formal mode
    std::vector<std::string> gen_names;
    int cert_bound = 4;
    std::vector<std::pair<std::string, std::shared_ptr<Realization>>> separators;
    std::shared_ptr<std::map<std::string, CertPtr>> cert_db;  // append-only
};

SerreQuotient quotient_by_realization(const EnvPtr& env, Realization f);
SerreQuotient quotient_by_gens(const EnvPtr& env, std::vector<Presentation> gens,
                               int cert_bound = 4, std::vector<std::string> names = {});
void register_separator(SerreQuotient& q, const std::string& name, Realization f);

struct ZeroAnswer {
    enum class Verdict { Yes, No, Unknown } verdict;
    CertPtr cert;          // Yes evidence in formal mode
    std::string evidence;  // human-readable basis for the verdict
};

ZeroAnswer is_zero_in_quotient(const SerreQuotient& q, const Presentation& x);

// Hom module of the realization-mode quotient, computed by bounded
// saturation: the stage at which the image of the available morphism classes
// inside Hom(F x, F y) stopped growing is reported.  The reported module is
// generated by genuine quotient-category morphisms; `stabilized` is false
// when the stage bound was exhausted first.
struct QuotientHom {
    FpModule module;
    int stage = 0;
    bool stabilized = false;
};

QuotientHom quotient_hom(const SerreQuotient& q, const Presentation& x, const Presentation& y,
                         int sat_bound = 3, int len0 = 2);

}  // namespace freydlab
