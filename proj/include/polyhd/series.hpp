#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/ring.hpp"

namespace polyhd {

/// Polynomial in base variables x and tangent variables T, truncated at total
/// T-degree `bound`. The two exponent blocks are stored separately so that the
/// truncation test is O(1) per term. Every operation re-truncates.
class TruncatedSeries {
public:
    struct Term {
        MultiIndex x;
        MultiIndex t;
        RingElement c;
        bool operator==(const Term& o) const { return x == o.x && t == o.t && c == o.c; }
    };

    TruncatedSeries(RingSpec ring, std::vector<std::string> xvars, std::vector<std::string> tvars,
                    std::uint32_t bound)
        : ring_(ring), xvars_(std::move(xvars)), tvars_(std::move(tvars)), bound_(bound) {}

    /// Embeds a polynomial in the base variables (no tangent part).
    static TruncatedSeries from_polynomial(const Polynomial& p, std::vector<std::string> tvars,
                                           std::uint32_t bound) {
        TruncatedSeries s(p.ring(), p.vars(), std::move(tvars), bound);
        s.terms_.reserve(p.terms().size());
        MultiIndex t0 = MultiIndex::zero(s.tvars_.size());
        for (const auto& [mi, c] : p.terms()) s.terms_.push_back({mi, t0, c});
        s.normalize();
        return s;
    }

    /// Reads a polynomial over the concatenated variable list (x..., T...) as a
    /// series with the last `tvars` block tangent; drops T-degree > bound.
    static TruncatedSeries from_combined(const Polynomial& p, std::size_t n_base, std::uint32_t bound) {
        if (n_base > p.nvars()) throw DimensionMismatch("from_combined: base block too large");
        std::vector<std::string> xv(p.vars().begin(), p.vars().begin() + n_base);
        std::vector<std::string> tv(p.vars().begin() + n_base, p.vars().end());
        TruncatedSeries s(p.ring(), std::move(xv), std::move(tv), bound);
        for (const auto& [mi, c] : p.terms()) {
            MultiIndex xm(n_base), tm(p.nvars() - n_base);
            for (std::size_t i = 0; i < n_base; ++i) xm[i] = mi[i];
            for (std::size_t i = n_base; i < p.nvars(); ++i) tm[i - n_base] = mi[i];
            if (tm.total() > bound) continue;
            s.terms_.push_back({std::move(xm), std::move(tm), c});
        }
        s.normalize();
        return s;
    }

    /// Builds the canonical form from an arbitrary term list within `frame`
    /// (its ring, variable blocks and bound).
    static TruncatedSeries from_raw_terms(TruncatedSeries frame, std::vector<Term> terms) {
        for (const Term& t : terms)
            if (t.x.dim() != frame.xvars_.size() || t.t.dim() != frame.tvars_.size())
                throw DimensionMismatch("from_raw_terms: term block dimensions differ");
        frame.terms_ = std::move(terms);
        frame.normalize();
        return frame;
    }

    /// The i-th tangent variable as a series.
    static TruncatedSeries t_variable(const RingSpec& ring, const std::vector<std::string>& xvars,
                                      const std::vector<std::string>& tvars, std::uint32_t bound,
                                      std::size_t i) {
        TruncatedSeries s(ring, xvars, tvars, bound);
        if (bound >= 1)
            s.terms_.push_back({MultiIndex::zero(xvars.size()), MultiIndex::unit(tvars.size(), i),
                                canon(1, ring)});
        return s;
    }

    const RingSpec& ring() const { return ring_; }
    const std::vector<std::string>& base_vars() const { return xvars_; }
    const std::vector<std::string>& tangent_vars() const { return tvars_; }
    std::uint32_t bound() const { return bound_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TruncatedSeries zero_like() const { return TruncatedSeries(ring_, xvars_, tvars_, bound_); }
    TruncatedSeries one_like() const {
        TruncatedSeries s = zero_like();
        s.terms_.push_back({MultiIndex::zero(xvars_.size()), MultiIndex::zero(tvars_.size()),
                            canon(1, ring_)});
        return s;
    }

    bool operator==(const TruncatedSeries& o) const {
        return ring_ == o.ring_ && xvars_ == o.xvars_ && tvars_ == o.tvars_ && bound_ == o.bound_ &&
               terms_ == o.terms_;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        TruncatedSeries r = combined_frame(o);
        r.terms_ = terms_;
        r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
        r.normalize();
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(ring_, xvars_, tvars_, bound_);
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.x, t.t, -t.c});
        return r;
    }

    TruncatedSeries operator-(const TruncatedSeries& o) const { return *this + (-o); }

    TruncatedSeries operator*(const TruncatedSeries& o) const {
        TruncatedSeries r = combined_frame(o);
        r.terms_.reserve(terms_.size() * o.terms_.size());
        for (const Term& a : terms_) {
            for (const Term& b : o.terms_) {
                MultiIndex tm = a.t + b.t;
                if (tm.total() > r.bound_) continue;
                RingElement c = a.c * b.c;
                if (c.is_zero()) continue;
                r.terms_.push_back({a.x + b.x, std::move(tm), std::move(c)});
            }
        }
        r.normalize();
        return r;
    }

    TruncatedSeries scaled(const RingElement& c) const {
        if (c.ring() != ring_) throw RingMismatch("scalar from a different ring");
        TruncatedSeries r(ring_, xvars_, tvars_, bound_);
        if (c.is_zero()) return r;
        for (const Term& t : terms_) {
            RingElement v = t.c * c;
            if (!v.is_zero()) r.terms_.push_back({t.x, t.t, std::move(v)});
        }
        return r;
    }

    TruncatedSeries pow(std::uint64_t e) const {
        TruncatedSeries r = one_like();
        TruncatedSeries b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// The exact coefficient polynomial (in the base variables) of T^lambda.
    Polynomial coeff_of_t(const MultiIndex& lambda) const {
        if (lambda.dim() != tvars_.size())
            throw DimensionMismatch("coeff_of_t: index dimension != #tangent vars");
        std::vector<Polynomial::Term> out;
        for (const Term& t : terms_)
            if (t.t == lambda) out.emplace_back(t.x, t.c);
        return Polynomial::from_terms(ring_, xvars_, std::move(out));
    }

    /// Evaluation at T = 0.
    Polynomial at_t_zero() const { return coeff_of_t(MultiIndex::zero(tvars_.size())); }

    /// Max total T-degree present (neg_inf_degree when zero).
    long long t_degree() const {
        long long d = neg_inf_degree;
        for (const Term& t : terms_) d = std::max(d, static_cast<long long>(t.t.total()));
        return d;
    }

    /// Polynomial over the concatenated variable list (x..., T...).
    Polynomial to_combined_polynomial() const {
        std::vector<std::string> vars = xvars_;
        vars.insert(vars.end(), tvars_.begin(), tvars_.end());
        std::vector<Polynomial::Term> out;
        out.reserve(terms_.size());
        for (const Term& t : terms_) {
            std::vector<MultiIndex::Exp> e(t.x.entries());
            e.insert(e.end(), t.t.entries().begin(), t.t.entries().end());
            out.emplace_back(MultiIndex(std::move(e)), t.c);
        }
        return Polynomial::from_terms(ring_, std::move(vars), std::move(out));
    }

private:
    /// Result frame of a binary operation: bounds may differ, the result is
    /// truncated to the finer (smaller) one.
    TruncatedSeries combined_frame(const TruncatedSeries& o) const {
        if (ring_ != o.ring_) throw RingMismatch("series rings differ");
        if (xvars_ != o.xvars_ || tvars_ != o.tvars_)
            throw VariableMismatch("series variable blocks differ");
        return TruncatedSeries(ring_, xvars_, tvars_, std::min(bound_, o.bound_));
    }

    void normalize() {
        auto less = [](const Term& a, const Term& b) {
            if (a.t != b.t) return grlex_less(b.t, a.t);
            return grlex_less(b.x, a.x);
        };
        std::sort(terms_.begin(), terms_.end(), less);
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Term cur = terms_[i];
            std::size_t j = i + 1;
            while (j < terms_.size() && terms_[j].x == cur.x && terms_[j].t == cur.t)
                cur.c += terms_[j++].c;
            if (!cur.c.is_zero() && cur.t.total() <= bound_) terms_[out++] = std::move(cur);
            i = j;
        }
        terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(out), terms_.end());
    }

    RingSpec ring_;
    std::vector<std::string> xvars_;
    std::vector<std::string> tvars_;
    std::uint32_t bound_;
    std::vector<Term> terms_;
};

/// Substitutes a series for every variable of p (base frame taken from the
/// images). The homomorphism property carries over termwise.
inline TruncatedSeries substitute(const Polynomial& p, const std::vector<TruncatedSeries>& images) {
    if (images.size() != p.nvars())
        throw MissingAssignment("substitute: expected " + std::to_string(p.nvars()) +
                                " images, got " + std::to_string(images.size()));
    if (images.empty()) throw MissingAssignment("substitute: polynomial has no variables");
    for (const TruncatedSeries& im : images) {
        if (im.ring() != p.ring()) throw RingMismatch("substitute: image ring differs");
        if (im.base_vars() != images[0].base_vars() || im.tangent_vars() != images[0].tangent_vars())
            throw VariableMismatch("substitute: image variables differ");
    }
    TruncatedSeries result = images[0].zero_like();
    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    auto power = [&](std::size_t i, std::uint64_t e) -> const TruncatedSeries& {
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(images[i].one_like());
        while (tab.size() <= e) tab.push_back(tab.back() * images[i]);
        return tab[e];
    };
    for (const Polynomial::Term& t : p.terms()) {
        TruncatedSeries term = images[0].one_like().scaled(t.second);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.first[i]) term = term * power(i, t.first[i]);
        result = result + term;
    }
    return result;
}

/// Substitutes a series for every variable of s — base variables first, then
/// tangent variables, in block order.
inline TruncatedSeries substitute(const TruncatedSeries& s,
                                  const std::vector<TruncatedSeries>& images) {
    std::size_t need = s.base_vars().size() + s.tangent_vars().size();
    if (images.size() != need)
        throw MissingAssignment("substitute: expected " + std::to_string(need) + " images, got " +
                                std::to_string(images.size()));
    if (images.empty()) throw MissingAssignment("substitute: series has no variables");
    for (const TruncatedSeries& im : images) {
        if (im.ring() != s.ring()) throw RingMismatch("substitute: image ring differs");
        if (im.base_vars() != images[0].base_vars() || im.tangent_vars() != images[0].tangent_vars())
            throw VariableMismatch("substitute: image variables differ");
    }
    std::size_t nx = s.base_vars().size();
    TruncatedSeries result = images[0].zero_like();
    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    auto power = [&](std::size_t i, std::uint64_t e) -> const TruncatedSeries& {
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(images[i].one_like());
        while (tab.size() <= e) tab.push_back(tab.back() * images[i]);
        return tab[e];
    };
    for (const TruncatedSeries::Term& t : s.terms()) {
        TruncatedSeries term = images[0].one_like().scaled(t.c);
        for (std::size_t i = 0; i < nx; ++i)
            if (t.x[i]) term = term * power(i, t.x[i]);
        for (std::size_t i = 0; i < s.tangent_vars().size(); ++i)
            if (t.t[i]) term = term * power(nx + i, t.t[i]);
        result = result + term;
    }
    return result;
}

}  // namespace polyhd
