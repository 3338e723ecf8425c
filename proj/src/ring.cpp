#include "freydlab/ring.hpp"

namespace freydlab {

Ring Ring::integers_mod(const mpz_class& n) {
    if (n < 2) throw Error("BadModulus", "Z/n requires n >= 2, got " + n.get_str());
    return Ring(RingKind::IntegersMod, n);
}

Ring Ring::prime_field(const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw Error("NotPrime", "F_p requires p prime, got " + p.get_str());
    return Ring(RingKind::PrimeField, p);
}

std::string Ring::name() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
        case RingKind::PrimeField: return "F" + modulus_.get_str();
    }
    return "?";
}

mpq_class Ring::canon(const mpq_class& v) const {
    mpq_class w = v;
    w.canonicalize();
    if (kind_ == RingKind::Integers || kind_ == RingKind::Rationals) {
        if (kind_ == RingKind::Integers && w.get_den() != 1)
            throw Error("NotIntegral", "non-integral value in Z: " + w.get_str());
        return w;
    }
    if (w.get_den() != 1) {
        // a/b with b invertible mod n; otherwise the value is malformed.
        mpz_class den = w.get_den(), deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t()) == 0)
            throw Error("NotIntegral", "denominator not invertible mod " + modulus_.get_str());
        w = mpq_class(w.get_num() * deninv);
    }
    mpz_class r;
    mpz_mod(r.get_mpz_t(), w.get_num().get_mpz_t(), modulus_.get_mpz_t());
    return mpq_class(r);
}

bool Ring::is_unit(const mpq_class& a) const {
    mpq_class v = canon(a);
    switch (kind_) {
        case RingKind::Integers: return v == 1 || v == -1;
        case RingKind::Rationals: return v != 0;
        case RingKind::PrimeField: return v != 0;
        case RingKind::IntegersMod: {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t());
            return g == 1;
        }
    }
    return false;
}

mpq_class Ring::inv(const mpq_class& a) const {
    mpq_class v = canon(a);
    switch (kind_) {
        case RingKind::Integers:
            if (v == 1 || v == -1) return v;
            throw Error("NotUnit", v.get_str() + " is not a unit in Z");
        case RingKind::Rationals:
            if (v == 0) throw Error("NotUnit", "0 is not a unit");
            return 1 / v;
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            mpz_class r;
            if (mpz_invert(r.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t()) == 0)
                throw Error("NotUnit", v.get_str() + " is not a unit in " + name());
            return mpq_class(r);
        }
    }
    throw Error("NotUnit", "unreachable");
}

std::string Ring::to_string(const mpq_class& a) const { return canon(a).get_str(); }

mpq_class Ring::from_string(const std::string& s) const {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw Error("BadElement", "cannot parse ring element: " + s);
    return canon(v);
}

Ring Ring::parse(const std::string& name) {
    if (name == "Z") return integers();
    if (name == "Q") return rationals();
    if (name.rfind("Z/", 0) == 0) return integers_mod(mpz_class(name.substr(2)));
    if (name.size() > 1 && name[0] == 'F') return prime_field(mpz_class(name.substr(1)));
    throw Error("BadRing", "unknown ring: " + name);
}

}  // namespace freydlab
