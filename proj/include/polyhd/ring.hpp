#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "polyhd/errors.hpp"
#include "polyhd/integer.hpp"

namespace polyhd {

enum class RingKind : std::uint8_t { Rationals, PrimeField, Residue };

/// Descriptor of a supported coefficient ring: Q, F_p (p prime) or Z/m (m >= 2).
class RingSpec {
public:
    static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }

    static RingSpec prime_field(std::uint64_t p) {
        if (!is_prime_u64(p)) throw PreconditionError("F_p requires a prime, got " + std::to_string(p));
        return RingSpec(RingKind::PrimeField, p);
    }

    static RingSpec residue(std::uint64_t m) {
        if (m < 2) throw PreconditionError("Z/m requires m >= 2, got " + std::to_string(m));
        return RingSpec(RingKind::Residue, m);
    }

    RingKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == RingKind::Rationals; }
    bool is_modular() const { return kind_ != RingKind::Rationals; }
    std::uint64_t modulus() const { return modulus_; }

    bool operator==(const RingSpec& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

    std::string to_string() const {
        switch (kind_) {
            case RingKind::Rationals: return "Q";
            case RingKind::PrimeField: return "F_" + std::to_string(modulus_);
            default: return "Z/" + std::to_string(modulus_);
        }
    }

    /// Characteristic, exposed as (p, e) when it is a prime power.
    struct Characteristic {
        enum class Kind { Zero, PrimePower, Composite } kind;
        std::uint64_t p = 0;   // prime base (PrimePower only)
        std::uint32_t e = 0;   // exponent (PrimePower only)
        std::uint64_t m = 0;   // the modulus itself (modular rings)
    };

    Characteristic characteristic() const {
        if (kind_ == RingKind::Rationals) return {Characteristic::Kind::Zero, 0, 0, 0};
        if (auto pe = prime_power_split(modulus_))
            return {Characteristic::Kind::PrimePower, pe->first, pe->second, modulus_};
        return {Characteristic::Kind::Composite, 0, 0, modulus_};
    }

private:
    RingSpec(RingKind k, std::uint64_t m) : kind_(k), modulus_(m) {}
    RingKind kind_;
    std::uint64_t modulus_;
};

/// An exact element of a RingSpec: a reduced rational over Q, a canonical
/// residue in [0, m) otherwise. Immutable value type.
class RingElement {
public:
    explicit RingElement(RingSpec ring) : ring_(ring), res_(0) {}  // zero

    const RingSpec& ring() const { return ring_; }

    bool is_zero() const { return ring_.is_modular() ? res_ == 0 : rat_ == 0; }
    bool is_one() const { return ring_.is_modular() ? res_ == 1 % ring_.modulus() : rat_ == 1; }

    /// Residue value (modular rings only).
    std::uint64_t residue() const { return res_; }
    /// Rational value (Q only).
    const Rat& rational() const { return rat_; }

    /// Canonical integer/rational lift: the residue in [0, m) over Z/m and F_p,
    /// the value itself over Q.
    Rat lift() const {
        if (ring_.is_modular()) return Rat(Int(static_cast<unsigned long>(res_)));
        return rat_;
    }

    bool operator==(const RingElement& o) const {
        if (ring_ != o.ring_) return false;
        return ring_.is_modular() ? res_ == o.res_ : rat_ == o.rat_;
    }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    RingElement operator+(const RingElement& o) const {
        check_same(o);
        RingElement r(ring_);
        if (ring_.is_modular()) {
            std::uint64_t m = ring_.modulus();
            std::uint64_t s = res_ + o.res_;  // both < m <= 2^63: no wrap relevant? keep safe:
            r.res_ = (s >= m || s < res_) ? (s - m) : s;
        } else {
            r.rat_ = rat_ + o.rat_;
        }
        return r;
    }

    RingElement operator-(const RingElement& o) const {
        check_same(o);
        RingElement r(ring_);
        if (ring_.is_modular()) {
            std::uint64_t m = ring_.modulus();
            r.res_ = res_ >= o.res_ ? res_ - o.res_ : res_ + (m - o.res_);
        } else {
            r.rat_ = rat_ - o.rat_;
        }
        return r;
    }

    RingElement operator*(const RingElement& o) const {
        check_same(o);
        RingElement r(ring_);
        if (ring_.is_modular())
            r.res_ = mulmod_u64(res_, o.res_, ring_.modulus());
        else
            r.rat_ = rat_ * o.rat_;
        return r;
    }

    RingElement operator-() const {
        RingElement r(ring_);
        if (ring_.is_modular())
            r.res_ = res_ == 0 ? 0 : ring_.modulus() - res_;
        else
            r.rat_ = -rat_;
        return r;
    }

    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }

    bool is_unit() const {
        if (ring_.is_modular()) {
            Int g;
            Int v(static_cast<unsigned long>(res_));
            Int m(static_cast<unsigned long>(ring_.modulus()));
            mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            return g == 1;
        }
        return rat_ != 0;
    }

    std::string to_string() const {
        if (ring_.is_modular()) return std::to_string(res_);
        return rat_.get_str();
    }

    RingElement zero_like() const { return RingElement(ring_); }
    RingElement one_like() const;

    friend RingElement canon(const Rat& value, const RingSpec& ring);

private:
    void check_same(const RingElement& o) const {
        if (ring_ != o.ring_)
            throw RingMismatch("ring mismatch: " + ring_.to_string() + " vs " + o.ring_.to_string());
    }

    RingSpec ring_;
    Rat rat_;             // used when ring is Q
    std::uint64_t res_;   // used when ring is modular
};

/// Canonical image of an exact rational (or integer) in `ring`.
/// For modular rings the denominator must be a unit mod m.
inline RingElement canon(const Rat& value, const RingSpec& ring) {
    RingElement r(ring);
    if (ring.is_rationals()) {
        r.rat_ = value;
        r.rat_.canonicalize();
        return r;
    }
    std::uint64_t m = ring.modulus();
    Rat v = value;
    v.canonicalize();
    std::uint64_t den = mod_of_int(v.get_den(), m);
    std::uint64_t num = mod_of_int(v.get_num(), m);
    if (den == 1) {
        r.res_ = num;
        return r;
    }
    Int dinv;
    Int d(static_cast<unsigned long>(den));
    Int zm(static_cast<unsigned long>(m));
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), zm.get_mpz_t()) == 0)
        throw NonInvertibleDenominator("denominator " + v.get_den().get_str() +
                                       " is not a unit in " + ring.to_string());
    r.res_ = mulmod_u64(num, mod_of_int(dinv, m), m);
    return r;
}

inline RingElement canon(const Int& value, const RingSpec& ring) { return canon(Rat(value), ring); }
inline RingElement canon(long value, const RingSpec& ring) { return canon(Rat(value), ring); }

inline RingElement RingElement::one_like() const { return canon(1, ring_); }

/// Multiplicative inverse of a unit; NotAUnit otherwise.
inline RingElement invert_unit(const RingElement& a) {
    const RingSpec& ring = a.ring();
    if (ring.is_rationals()) {
        if (a.is_zero()) throw NotAUnit("0 is not a unit in Q");
        return canon(Rat(1) / a.rational(), ring);
    }
    Int inv;
    Int v(static_cast<unsigned long>(a.residue()));
    Int m(static_cast<unsigned long>(ring.modulus()));
    if (mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit(a.to_string() + " is not a unit in " + ring.to_string());
    return canon(inv, ring);
}

inline RingElement ring_pow(RingElement base, std::uint64_t e) {
    RingElement r = base.one_like();
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Coefficient-wise ring change via the canonical lift. Valid whenever the lift
/// map is a ring homomorphism into the target (Z/m -> Z/m' with m' | m, or any
/// integer-valued source into any target).
inline RingElement change_ring(const RingElement& a, const RingSpec& target) {
    return canon(a.lift(), target);
}

}  // namespace polyhd
