#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/hasse.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/series.hpp"

namespace polyhd {

/// theta_x(g o f) truncated at total T-degree N: compose first, then expand.
inline TruncatedSeries chain_lhs(const Polynomial& g, const PolyMap& F, std::uint32_t N) {
    return taylor(compose_poly(g, F), N);
}

/// The other side of the chain rule: expand g at y + T, substitute y -> f and
/// then T_j -> theta_x(f_j) - f_j, truncating at N throughout. Equals chain_lhs
/// exactly.
inline TruncatedSeries chain_rhs(const Polynomial& g, const PolyMap& F, std::uint32_t N) {
    if (g.nvars() != F.arity_out())
        throw ArityMismatch("chain_rhs: g has " + std::to_string(g.nvars()) +
                            " variables, map has " + std::to_string(F.arity_out()) + " components");
    if (g.ring() != F.ring) throw RingMismatch("chain_rhs: rings differ");
    TruncatedSeries expanded = taylor(g, N);  // base y, tangent block of size m
    std::vector<std::string> tvars = default_tangent_names(F.vars);
    std::vector<TruncatedSeries> images;
    images.reserve(2 * F.arity_out());
    for (const Polynomial& f : F.components)
        images.push_back(TruncatedSeries::from_polynomial(f, tvars, N));
    for (const Polynomial& f : F.components) {
        TruncatedSeries w = taylor(f, N, tvars) - TruncatedSeries::from_polynomial(f, tvars, N);
        images.push_back(std::move(w));
    }
    return substitute(expanded, images);
}

/// One enumerated summand of P_nu(l, h): an assignment rho over the support
/// B_nu = { beta | 0 < beta <= nu } with sum rho = l and sum rho*beta = nu,
/// together with its (always integral) multinomial weight l! / prod rho!.
struct FdBTerm {
    MultiIndex nu;
    std::uint64_t level;                // l
    std::vector<MultiIndex> betas;      // B_nu, ascending graded-lex
    std::vector<std::uint64_t> rhos;    // aligned with betas
    Int multinom;
};

/// Enumerates R_{nu,l} by depth-first search over B_nu in graded-lex order,
/// pruning on the remaining count and weight budgets.
inline std::vector<FdBTerm> fdb_partitions(const MultiIndex& nu, std::uint64_t l) {
    std::vector<MultiIndex> betas;
    {
        // all 0 < beta <= nu, graded-lex ascending
        MultiIndex beta(nu.dim());
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == nu.dim()) {
                if (!beta.is_zero()) betas.push_back(beta);
                return;
            }
            for (MultiIndex::Exp e = 0; e <= nu[pos]; ++e) {
                beta[pos] = e;
                self(self, pos + 1);
            }
            beta[pos] = 0;
        };
        rec(rec, 0);
        std::sort(betas.begin(), betas.end(), grlex_less);
    }

    std::vector<FdBTerm> out;
    std::vector<std::uint64_t> rho(betas.size(), 0);
    MultiIndex rem = nu;
    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t lrem) -> void {
        if (lrem == 0) {
            if (rem.is_zero()) {
                FdBTerm t{nu, l, betas, rho, multinomial(rho)};
                out.push_back(std::move(t));
            }
            return;
        }
        if (idx == betas.size()) return;
        const MultiIndex& beta = betas[idx];
        std::uint64_t top = lrem;
        for (std::size_t c = 0; c < beta.dim(); ++c)
            if (beta[c]) top = std::min<std::uint64_t>(top, rem[c] / beta[c]);
        for (std::uint64_t r = 0; r <= top; ++r) {
            rho[idx] = r;
            self(self, idx + 1, lrem - r);
            // rem -= beta for the next r
            if (r < top)
                for (std::size_t c = 0; c < beta.dim(); ++c)
                    rem[c] -= beta[c];
        }
        // restore rem
        for (std::size_t c = 0; c < beta.dim(); ++c)
            rem[c] += static_cast<MultiIndex::Exp>(top * beta[c]);
        rho[idx] = 0;
    };
    rec(rec, 0, l);
    return out;
}

/// Memoized evaluator of the inner sums P_nu(l, h) of the closed-form chain
/// rule, for one fixed h.
class FdbEvaluator {
public:
    explicit FdbEvaluator(Polynomial h) : h_(std::move(h)) {}

    /// P_nu(l, h) = sum over R_{nu,l} of (l!/prod rho!) prod_beta theta^(beta)(h)^rho_beta.
    Polynomial eval(const MultiIndex& nu, std::uint64_t l) {
        auto key = std::make_pair(nu.entries(), l);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Polynomial acc = h_.zero_like();
        for (const FdBTerm& term : fdb_partitions(nu, l)) {
            Polynomial prod = Polynomial::constant(h_.ring(), h_.vars(), canon(term.multinom, h_.ring()));
            for (std::size_t b = 0; b < term.betas.size() && !prod.is_zero(); ++b)
                if (term.rhos[b]) prod = prod * derivative(term.betas[b]).pow(term.rhos[b]);
            acc = acc + prod;
        }
        memo_.emplace(std::move(key), acc);
        return acc;
    }

private:
    Polynomial derivative(const MultiIndex& beta) {
        auto it = dmemo_.find(beta.entries());
        if (it != dmemo_.end()) return it->second;
        Polynomial d = hasse_multi(h_, beta);
        dmemo_.emplace(beta.entries(), d);
        return d;
    }

    Polynomial h_;
    std::map<std::pair<std::vector<MultiIndex::Exp>, std::uint64_t>, Polynomial> memo_;
    std::map<std::vector<MultiIndex::Exp>, Polynomial> dmemo_;
};

/// Closed-form coefficient of T^lambda in theta_x(g o f): the characteristic-
/// free Faa di Bruno sum. Exists as an independent route; the substitution
/// sides above are the production path.
inline Polynomial fdb_coefficient(const Polynomial& g, const PolyMap& F, const MultiIndex& lambda) {
    if (lambda.dim() != F.arity_in())
        throw DimensionMismatch("fdb_coefficient: lambda dimension != #map variables");
    if (lambda.is_zero())
        throw DimensionMismatch("fdb_coefficient: lambda must be positive");
    if (g.nvars() != F.arity_out())
        throw ArityMismatch("fdb_coefficient: g variable count != #map components");
    std::size_t m = F.arity_out();
    std::uint64_t order = lambda.total();

    std::vector<FdbEvaluator> P;
    P.reserve(m);
    for (const Polynomial& f : F.components) P.emplace_back(f);

    Polynomial result(F.ring, F.vars);
    for (std::uint64_t grade = 1; grade <= order; ++grade) {
        for (const MultiIndex& mu : enumerate_multiindices(m, grade)) {
            Polynomial dg = hasse_multi(g, mu);
            if (dg.is_zero()) continue;
            Polynomial gterm = compose_poly(dg, F);
            if (gterm.is_zero()) continue;

            // sum over ordered splits lambda = nu_1 + ... + nu_m of prod_j P_{nu_j}(mu_j, f_j)
            Polynomial split_sum(F.ring, F.vars);
            MultiIndex rest = lambda;
            auto rec = [&](auto&& self, std::size_t j, const Polynomial& acc) -> void {
                if (acc.is_zero()) return;
                if (j + 1 == m) {
                    split_sum = split_sum + acc * P[j].eval(rest, mu[j]);
                    return;
                }
                // choose nu_j <= rest; mu_j = 0 forces nu_j = 0
                std::vector<MultiIndex> choices;
                if (mu[j] == 0) {
                    choices.push_back(MultiIndex::zero(lambda.dim()));
                } else {
                    MultiIndex nu(lambda.dim());
                    auto gen = [&](auto&& g2, std::size_t pos) -> void {
                        if (pos == lambda.dim()) {
                            choices.push_back(nu);
                            return;
                        }
                        for (MultiIndex::Exp e = 0; e <= rest[pos]; ++e) {
                            nu[pos] = e;
                            g2(g2, pos + 1);
                        }
                        nu[pos] = 0;
                    };
                    gen(gen, 0);
                }
                for (const MultiIndex& nu : choices) {
                    Polynomial pj = P[j].eval(nu, mu[j]);
                    if (pj.is_zero()) continue;
                    MultiIndex saved = rest;
                    rest = rest - nu;
                    self(self, j + 1, acc * pj);
                    rest = saved;
                }
            };
            rec(rec, 0, Polynomial::constant(F.ring, F.vars, 1));
            result = result + gterm * split_sum;
        }
    }
    return result;
}

}  // namespace polyhd
