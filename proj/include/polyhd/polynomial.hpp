#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/ring.hpp"

namespace polyhd {

/// deg(0); distinct from 0 so that max-degree scans ignore zero components.
inline constexpr long long neg_inf_degree = std::numeric_limits<long long>::min();

/// Sparse exact multivariate polynomial over a RingSpec. Terms are kept in
/// canonical form: descending graded-lex order, no zero coefficients.
/// Immutable value semantics; all operations are pure.
class Polynomial {
public:
    using Term = std::pair<MultiIndex, RingElement>;

    Polynomial(RingSpec ring, std::vector<std::string> vars)
        : ring_(ring), vars_(std::move(vars)) {}

    static Polynomial constant(const RingSpec& ring, const std::vector<std::string>& vars,
                               const RingElement& c) {
        Polynomial p(ring, vars);
        if (!c.is_zero()) p.terms_.emplace_back(MultiIndex::zero(vars.size()), c);
        return p;
    }

    static Polynomial constant(const RingSpec& ring, const std::vector<std::string>& vars, long c) {
        return constant(ring, vars, canon(c, ring));
    }

    static Polynomial variable(const RingSpec& ring, const std::vector<std::string>& vars,
                               std::size_t i) {
        Polynomial p(ring, vars);
        p.terms_.emplace_back(MultiIndex::unit(vars.size(), i), canon(1, ring));
        return p;
    }

    static Polynomial monomial(const RingSpec& ring, const std::vector<std::string>& vars,
                               MultiIndex mi, const RingElement& c) {
        if (mi.dim() != vars.size()) throw DimensionMismatch("monomial index dimension != #vars");
        Polynomial p(ring, vars);
        if (!c.is_zero()) p.terms_.emplace_back(std::move(mi), c);
        return p;
    }

    /// Builds the canonical form from an arbitrary term list (sorts, merges,
    /// drops zeros).
    static Polynomial from_terms(const RingSpec& ring, std::vector<std::string> vars,
                                 std::vector<Term> terms) {
        Polynomial p(ring, std::move(vars));
        for (const Term& t : terms)
            if (t.first.dim() != p.vars_.size())
                throw DimensionMismatch("term index dimension != #vars");
        p.terms_ = std::move(terms);
        normalize(p.terms_);
        return p;
    }

    const RingSpec& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero());
    }

    long long total_degree() const {
        if (terms_.empty()) return neg_inf_degree;
        // canonical order: the leading term carries the top grade
        return static_cast<long long>(terms_.front().first.total());
    }

    RingElement coeff(const MultiIndex& mi) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), mi,
                                   [](const Term& t, const MultiIndex& k) { return grlex_less(k, t.first); });
        if (it != terms_.end() && it->first == mi) return it->second;
        return RingElement(ring_);
    }

    RingElement constant_term() const { return coeff(MultiIndex::zero(vars_.size())); }

    Polynomial zero_like() const { return Polynomial(ring_, vars_); }
    Polynomial one_like() const { return constant(ring_, vars_, 1); }

    bool operator==(const Polynomial& o) const {
        return ring_ == o.ring_ && vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator+(const Polynomial& o) const {
        check_compatible(o);
        Polynomial r(ring_, vars_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin(), b = o.terms_.begin();
        while (a != terms_.end() && b != o.terms_.end()) {
            if (a->first == b->first) {
                RingElement c = a->second + b->second;
                if (!c.is_zero()) r.terms_.emplace_back(a->first, std::move(c));
                ++a;
                ++b;
            } else if (grlex_less(b->first, a->first)) {
                r.terms_.push_back(*a++);
            } else {
                r.terms_.push_back(*b++);
            }
        }
        r.terms_.insert(r.terms_.end(), a, terms_.end());
        r.terms_.insert(r.terms_.end(), b, o.terms_.end());
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(ring_, vars_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.emplace_back(t.first, -t.second);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    /// Product, optionally dropping every term of total degree > *degree_cap.
    Polynomial mul(const Polynomial& o, std::optional<std::uint64_t> degree_cap = std::nullopt) const {
        check_compatible(o);
        Polynomial r(ring_, vars_);
        if (terms_.empty() || o.terms_.empty()) return r;
        const Polynomial& big = terms_.size() >= o.terms_.size() ? *this : o;
        const Polynomial& small = terms_.size() >= o.terms_.size() ? o : *this;

        // multiplying by a monomial keeps the canonical order
        if (small.terms_.size() == 1) {
            const Term& s = small.terms_[0];
            r.terms_.reserve(big.terms_.size());
            for (const Term& t : big.terms_) {
                MultiIndex mi = t.first + s.first;
                if (degree_cap && mi.total() > *degree_cap) continue;
                RingElement c = t.second * s.second;
                if (!c.is_zero()) r.terms_.emplace_back(std::move(mi), std::move(c));
            }
            return r;
        }

        std::vector<Term> acc;
        acc.reserve(big.terms_.size() * small.terms_.size());
        for (const Term& s : small.terms_) {
            for (const Term& t : big.terms_) {
                MultiIndex mi = t.first + s.first;
                if (degree_cap && mi.total() > *degree_cap) continue;
                acc.emplace_back(std::move(mi), t.second * s.second);
            }
        }
        normalize(acc);
        r.terms_ = std::move(acc);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const { return mul(o); }

    Polynomial scaled(const RingElement& c) const {
        if (c.ring() != ring_) throw RingMismatch("scalar from a different ring");
        Polynomial r(ring_, vars_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            RingElement v = t.second * c;
            if (!v.is_zero()) r.terms_.emplace_back(t.first, std::move(v));
        }
        return r;
    }

    Polynomial pow(std::uint64_t e, std::optional<std::uint64_t> degree_cap = std::nullopt) const {
        Polynomial r = one_like();
        Polynomial b = *this;
        while (e) {
            if (e & 1) r = r.mul(b, degree_cap);
            e >>= 1;
            if (e) b = b.mul(b, degree_cap);
        }
        return r;
    }

    /// Keeps only terms of total degree <= cap.
    Polynomial truncated(std::uint64_t cap) const {
        Polynomial r(ring_, vars_);
        for (const Term& t : terms_)
            if (t.first.total() <= cap) r.terms_.push_back(t);
        return r;
    }

    /// Ring homomorphism on coefficients via the canonical lift.
    Polynomial change_ring(const RingSpec& target) const {
        Polynomial r(target, vars_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) {
            RingElement c = polyhd::change_ring(t.second, target);
            if (!c.is_zero()) r.terms_.emplace_back(t.first, std::move(c));
        }
        return r;
    }

    static void normalize(std::vector<Term>& terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return grlex_less(b.first, a.first); });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms.size();) {
            MultiIndex key = terms[i].first;
            RingElement c = terms[i].second;
            std::size_t j = i + 1;
            while (j < terms.size() && terms[j].first == key) c += terms[j++].second;
            if (!c.is_zero()) terms[out++] = Term(std::move(key), std::move(c));
            i = j;
        }
        terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(out), terms.end());
    }

private:
    void check_compatible(const Polynomial& o) const {
        if (ring_ != o.ring_)
            throw RingMismatch("polynomial rings differ: " + ring_.to_string() + " vs " +
                               o.ring_.to_string());
        if (vars_ != o.vars_) throw VariableMismatch("polynomial variable lists differ");
    }

    RingSpec ring_;
    std::vector<std::string> vars_;
    std::vector<Term> terms_;
};

/// Substitutes images[i] for the i-th variable of p; the images must all share
/// one ring and variable list. Ring homomorphism by construction.
inline Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                             std::optional<std::uint64_t> degree_cap = std::nullopt) {
    if (images.size() != p.nvars())
        throw MissingAssignment("substitute: expected " + std::to_string(p.nvars()) +
                                " images, got " + std::to_string(images.size()));
    for (const Polynomial& im : images) {
        if (im.ring() != p.ring()) throw RingMismatch("substitute: image ring differs");
        if (im.vars() != images[0].vars()) throw VariableMismatch("substitute: image variables differ");
    }
    if (p.nvars() == 0) {
        // constant polynomial in zero variables: nothing to substitute
        throw MissingAssignment("substitute: polynomial has no variables");
    }
    Polynomial result(p.ring(), images[0].vars());
    // memoized image powers, per variable
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, std::uint64_t e) -> const Polynomial& {
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(images[i].one_like());
        while (tab.size() <= e) tab.push_back(tab.back().mul(images[i], degree_cap));
        return tab[e];
    };
    for (const Polynomial::Term& t : p.terms()) {
        Polynomial term = Polynomial::constant(p.ring(), images[0].vars(), t.second);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.first[i]) term = term.mul(power(i, t.first[i]), degree_cap);
        result = result + term;
    }
    return result;
}

}  // namespace polyhd
