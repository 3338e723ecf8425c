#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace freydlab {

// Error with a short machine-readable code ("DimMismatch", "WrongBase", ...)
// followed by a human explanation.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class RingKind { Integers, Rationals, IntegersMod, PrimeField };

// One of Z, Q, Z/n (n >= 2) or F_p (p prime).  Elements are carried as
// canonical mpq_class values: integral with representative in [0, n) for the
// modular rings, integral for Z, reduced fractions for Q.
class Ring {
public:
    static Ring integers() { return Ring(RingKind::Integers, 0); }
    static Ring rationals() { return Ring(RingKind::Rationals, 0); }
    static Ring integers_mod(const mpz_class& n);
    static Ring prime_field(const mpz_class& p);

    RingKind kind() const { return kind_; }
    const mpz_class& modulus() const { return modulus_; }
    bool is_field() const {
        return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField;
    }
    bool is_modular() const {
        return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField;
    }

    bool operator==(const Ring& o) const {
        return kind_ == o.kind_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    std::string name() const;

    mpq_class canon(const mpq_class& v) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const { return canon(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return canon(a - b); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return canon(a * b); }
    mpq_class neg(const mpq_class& a) const { return canon(-a); }
    bool is_zero(const mpq_class& a) const { return canon(a) == 0; }
    bool is_one(const mpq_class& a) const { return canon(a) == 1; }

    bool is_unit(const mpq_class& a) const;
    mpq_class inv(const mpq_class& a) const;  // throws NotUnit

    std::string to_string(const mpq_class& a) const;
    mpq_class from_string(const std::string& s) const;
    mpq_class from_int(long v) const { return canon(mpq_class(v)); }

    // Ring header used in serialized matrices and session files: "Z", "Q",
    // "Z/12", "F7".
    static Ring parse(const std::string& name);

private:
    Ring(RingKind k, mpz_class m) : kind_(k), modulus_(std::move(m)) {}

    RingKind kind_;
    mpz_class modulus_;
};

}  // namespace freydlab
