#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/linalg.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/series.hpp"

namespace polyhd {

/// n-th Hasse derivative with respect to variable i:
/// x^alpha maps to binom(alpha_i, n) x^{alpha - n e_i}, termwise.
/// n = 0 is the identity, n = 1 the usual partial derivative.
inline Polynomial hasse_single(const Polynomial& p, std::size_t i, std::uint32_t n) {
    if (n == 0) return p;
    std::vector<Polynomial::Term> out;
    for (const auto& [mi, c] : p.terms()) {
        if (mi[i] < n) continue;
        RingElement b = canon(binomial_int(mi[i], n), p.ring());
        if (b.is_zero()) continue;
        RingElement v = c * b;
        if (v.is_zero()) continue;
        MultiIndex shifted = mi;
        shifted[i] -= n;
        out.emplace_back(std::move(shifted), std::move(v));
    }
    return Polynomial::from_terms(p.ring(), p.vars(), std::move(out));
}

/// Multi-index Hasse derivative theta^(alpha), the composite of the single
/// derivatives (they commute pairwise): x^beta maps to binom(beta, alpha)
/// x^{beta - alpha}.
inline Polynomial hasse_multi(const Polynomial& p, const MultiIndex& alpha) {
    if (alpha.dim() != p.nvars())
        throw DimensionMismatch("hasse_multi: index dimension != #vars");
    if (alpha.is_zero()) return p;
    std::vector<Polynomial::Term> out;
    for (const auto& [mi, c] : p.terms()) {
        if (!alpha.leq(mi)) continue;
        RingElement b = binom_multi(mi, alpha, p.ring());
        if (b.is_zero()) continue;
        RingElement v = c * b;
        if (v.is_zero()) continue;
        out.emplace_back(mi - alpha, std::move(v));
    }
    return Polynomial::from_terms(p.ring(), p.vars(), std::move(out));
}

/// Default tangent names for a base variable block: T for one variable,
/// T1, T2, ... otherwise. Collisions with base names are rejected.
inline std::vector<std::string> default_tangent_names(const std::vector<std::string>& base) {
    std::vector<std::string> t;
    if (base.size() == 1) {
        t.push_back("T");
    } else {
        for (std::size_t i = 0; i < base.size(); ++i) t.push_back("T" + std::to_string(i + 1));
    }
    for (const std::string& name : t)
        for (const std::string& b : base)
            if (name == b)
                throw VariableMismatch("tangent name '" + name + "' collides with a base variable");
    return t;
}

/// Truncated Taylor homomorphism theta_x: the substitution x_i -> x_i + T_i
/// expanded termwise, keeping total T-degree <= N. The coefficient of T^alpha
/// is hasse_multi(p, alpha).
inline TruncatedSeries taylor(const Polynomial& p, std::uint32_t N,
                              const std::vector<std::string>& tvars) {
    TruncatedSeries s(p.ring(), p.vars(), tvars, N);
    std::size_t n = p.nvars();
    if (tvars.size() != n) throw DimensionMismatch("taylor: tangent block size != #vars");
    std::vector<TruncatedSeries::Term> acc;
    MultiIndex beta(n);
    for (const auto& [alpha, c] : p.terms()) {
        // enumerate beta <= alpha with |beta| <= N
        auto rec = [&](auto&& self, std::size_t pos, std::uint64_t budget) -> void {
            if (pos == n) {
                RingElement b = binom_multi(alpha, beta, p.ring());
                RingElement v = c * b;
                if (!v.is_zero()) acc.push_back({alpha - beta, beta, std::move(v)});
                return;
            }
            std::uint64_t top = std::min<std::uint64_t>(alpha[pos], budget);
            for (std::uint64_t e = 0; e <= top; ++e) {
                beta[pos] = static_cast<MultiIndex::Exp>(e);
                self(self, pos + 1, budget - e);
            }
            beta[pos] = 0;
        };
        rec(rec, 0, N);
    }
    return TruncatedSeries::from_raw_terms(std::move(s), std::move(acc));
}

inline TruncatedSeries taylor(const Polynomial& p, std::uint32_t N) {
    return taylor(p, N, default_tangent_names(p.vars()));
}

/// Componentwise Taylor expansion of a map.
inline std::vector<TruncatedSeries> taylor(const PolyMap& F, std::uint32_t N) {
    std::vector<std::string> tvars = default_tangent_names(F.vars);
    std::vector<TruncatedSeries> out;
    out.reserve(F.components.size());
    for (const Polynomial& f : F.components) out.push_back(taylor(f, N, tvars));
    return out;
}

/// Jacobian matrix: entry (i, j) is the first Hasse derivative of F_i by x_j.
inline Matrix<Polynomial> jacobian(const PolyMap& F) {
    Matrix<Polynomial> J(F.arity_out(), F.arity_in(), Polynomial(F.ring, F.vars));
    for (std::size_t i = 0; i < F.arity_out(); ++i)
        for (std::size_t j = 0; j < F.arity_in(); ++j)
            J.at(i, j) = hasse_single(F.components[i], j, 1);
    return J;
}

inline Polynomial matrix_det(const Matrix<Polynomial>& m) { return det(m); }

/// Inverse of a polynomial matrix whose determinant is a unit constant:
/// adjugate times the inverted unit. NotAUnitDeterminant otherwise.
inline Matrix<Polynomial> matrix_inverse_unit_det(const Matrix<Polynomial>& m) {
    Polynomial d = det(m);
    if (!d.is_constant()) throw NotAUnitDeterminant("determinant is not constant: " + std::to_string(d.terms().size()) + " terms");
    RingElement u = d.constant_term();
    RingElement uinv(u.ring());
    try {
        uinv = invert_unit(u);
    } catch (const NotAUnit&) {
        throw NotAUnitDeterminant("determinant " + u.to_string() + " is not a unit in " +
                                  u.ring().to_string());
    }
    Matrix<Polynomial> adj = adjugate(m);
    for (std::size_t i = 0; i < adj.rows(); ++i)
        for (std::size_t j = 0; j < adj.cols(); ++j) adj.at(i, j) = adj.at(i, j).scaled(uinv);
    return adj;
}

/// Inverse of a series matrix up to the truncation bound. The determinant must
/// be a unit constant u plus a correction of positive T-degree; then
/// det^{-1} = u^{-1} sum_k (1 - det/u)^k  (finite, the correction is nilpotent
/// under truncation) and the inverse is adjugate * det^{-1}.
inline Matrix<TruncatedSeries> matrix_inverse_series(const Matrix<TruncatedSeries>& m) {
    TruncatedSeries d = det(m);
    Polynomial d0 = d.at_t_zero();
    if (!d0.is_constant())
        throw NotAUnitDeterminant("series determinant at T = 0 is not constant");
    RingElement u = d0.constant_term();
    RingElement uinv(u.ring());
    try {
        uinv = invert_unit(u);
    } catch (const NotAUnit&) {
        throw NotAUnitDeterminant("series determinant constant term " + u.to_string() +
                                  " is not a unit in " + u.ring().to_string());
    }
    const TruncatedSeries& sample = m.at(0, 0);
    TruncatedSeries h = sample.one_like() - d.scaled(uinv);  // positive T-degree
    TruncatedSeries dinv = sample.zero_like();
    TruncatedSeries hk = sample.one_like();
    for (std::uint32_t k = 0;; ++k) {
        dinv = dinv + hk;
        if (k >= sample.bound() || hk.is_zero()) break;
        hk = hk * h;
    }
    dinv = dinv.scaled(uinv);
    Matrix<TruncatedSeries> adj = adjugate(m);
    for (std::size_t i = 0; i < adj.rows(); ++i)
        for (std::size_t j = 0; j < adj.cols(); ++j) adj.at(i, j) = adj.at(i, j) * dinv;
    return adj;
}

}  // namespace polyhd
