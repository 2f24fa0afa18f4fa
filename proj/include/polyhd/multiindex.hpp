#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/integer.hpp"
#include "polyhd/ring.hpp"

namespace polyhd {

/// Exponent vector in N^n. Entries are machine-width with checked addition.
class MultiIndex {
public:
    using Exp = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : e_(dim, 0) {}
    explicit MultiIndex(std::vector<Exp> e) : e_(std::move(e)) {}

    static MultiIndex zero(std::size_t dim) { return MultiIndex(dim); }

    static MultiIndex unit(std::size_t dim, std::size_t j) {
        MultiIndex r(dim);
        r.e_[j] = 1;
        return r;
    }

    std::size_t dim() const { return e_.size(); }
    Exp operator[](std::size_t i) const { return e_[i]; }
    Exp& operator[](std::size_t i) { return e_[i]; }
    const std::vector<Exp>& entries() const { return e_; }

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (Exp v : e_) s += v;
        return s;
    }

    bool is_zero() const {
        for (Exp v : e_) if (v) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        check_dim(o);
        MultiIndex r(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) {
            Exp s = e_[i] + o.e_[i];
            if (s < e_[i]) throw OverflowError("exponent overflow");
            r.e_[i] = s;
        }
        return r;
    }

    /// Componentwise difference; requires o <= *this.
    MultiIndex operator-(const MultiIndex& o) const {
        check_dim(o);
        MultiIndex r(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (o.e_[i] > e_[i]) throw DimensionMismatch("multi-index subtraction below zero");
            r.e_[i] = e_[i] - o.e_[i];
        }
        return r;
    }

    /// Componentwise partial order alpha <= beta.
    bool leq(const MultiIndex& o) const {
        check_dim(o);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void check_dim(const MultiIndex& o) const {
        if (e_.size() != o.e_.size())
            throw DimensionMismatch("multi-index dimensions differ: " + std::to_string(e_.size()) +
                                    " vs " + std::to_string(o.e_.size()));
    }

    std::vector<Exp> e_;
};

/// Graded-lexicographic: lower grade first, then lexicographic with the first
/// variable most significant.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    std::uint64_t ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

/// Canonical term order used throughout: descending graded-lex.
struct GrlexDesc {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(b, a); }
};

/// All nu in N^n with |nu| = m, in descending lex within the grade
/// (so the list itself is descending graded-lex). Length binom(n+m-1, m).
inline std::vector<MultiIndex> enumerate_multiindices(std::size_t n, std::uint64_t m) {
    if (n == 0) throw DimensionMismatch("dimension must be >= 1");
    if (m > std::numeric_limits<MultiIndex::Exp>::max()) throw OverflowError("grade too large");
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    auto rec = [&](auto&& self, std::size_t pos, std::uint64_t rest) -> void {
        if (pos + 1 == n) {
            cur[pos] = static_cast<MultiIndex::Exp>(rest);
            out.push_back(cur);
            return;
        }
        for (std::uint64_t v = rest + 1; v-- > 0;) {
            cur[pos] = static_cast<MultiIndex::Exp>(v);
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, m);
    return out;
}

/// Product of componentwise binomials binom(alpha_i, beta_i), computed in
/// arbitrary-precision integers and then reduced into `ring`.
/// Zero element whenever some beta_i > alpha_i.
inline RingElement binom_multi(const MultiIndex& alpha, const MultiIndex& beta, const RingSpec& ring) {
    if (alpha.dim() != beta.dim())
        throw DimensionMismatch("binom_multi: dimensions differ");
    Int prod(1);
    for (std::size_t i = 0; i < alpha.dim(); ++i) {
        if (beta[i] > alpha[i]) return RingElement(ring);
        prod *= binomial_int(alpha[i], beta[i]);
    }
    return canon(prod, ring);
}

}  // namespace polyhd
