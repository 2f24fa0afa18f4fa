#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/hasse.hpp"
#include "polyhd/linalg.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/series.hpp"

namespace polyhd {

/// Matrix of the m-th symmetric power of the endomorphism phi represented by J
/// (phi(T_j) = sum_l J_{lj} T_l), with rows indexed by lambda and columns by mu
/// over the graded-lex basis I_m: entry (lambda, mu) is the coefficient of
/// T^lambda in prod_j phi(T_j)^{mu_j}.
template <typename T>
struct SymPower {
    std::uint32_t grade;
    std::vector<MultiIndex> basis;  // I_m in descending lex within the grade
    Matrix<T> mat;
};

template <typename T>
SymPower<T> sym_power_matrix(const Matrix<T>& J, std::uint32_t m) {
    if (!J.is_square()) throw NonSquareMatrix("symmetric power of a non-square matrix");
    if (m == 0) throw DimensionMismatch("symmetric power grade must be >= 1");
    std::size_t n = J.rows();
    std::vector<MultiIndex> basis = enumerate_multiindices(n, m);
    std::map<std::vector<MultiIndex::Exp>, std::size_t> pos;
    for (std::size_t k = 0; k < basis.size(); ++k) pos.emplace(basis[k].entries(), k);

    const T zero = J.at(0, 0).zero_like();
    SymPower<T> S{m, basis, Matrix<T>(basis.size(), basis.size(), zero)};
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const MultiIndex& mu = basis[col];
        // expand prod_j (sum_l J_{lj} T_l)^{mu_j}
        std::map<std::vector<MultiIndex::Exp>, T> expansion;
        expansion.emplace(MultiIndex::zero(n).entries(), J.at(0, 0).one_like());
        for (std::size_t j = 0; j < n; ++j) {
            for (MultiIndex::Exp rep = 0; rep < mu[j]; ++rep) {
                std::map<std::vector<MultiIndex::Exp>, T> next;
                for (const auto& [idx, val] : expansion) {
                    for (std::size_t l = 0; l < n; ++l) {
                        if (J.at(l, j).is_zero()) continue;
                        std::vector<MultiIndex::Exp> nidx = idx;
                        ++nidx[l];
                        T contrib = val * J.at(l, j);
                        auto it = next.find(nidx);
                        if (it == next.end())
                            next.emplace(std::move(nidx), std::move(contrib));
                        else
                            it->second = it->second + contrib;
                    }
                }
                expansion = std::move(next);
            }
        }
        for (const auto& [idx, val] : expansion) {
            if (val.is_zero()) continue;
            S.mat.at(pos.at(idx), col) = val;
        }
    }
    return S;
}

/// det(S_m(phi)) = det(phi)^B(n,m) with B(n,m) = binom(n+m-1, n).
inline Int sym_power_det_exponent(std::size_t n, std::uint32_t m) {
    if (n == 0) throw DimensionMismatch("dimension must be >= 1");
    if (m == 0) throw DimensionMismatch("grade must be >= 1");
    return binomial_int(n + m - 1, n);
}

/// Table of the dual higher derivatives theta^(mu)_f(x_i) of a coordinate map
/// f with unit constant Jacobian determinant, for 0 < |mu| <= bound. The
/// grade-1 block is the inverse Jacobian; higher grades come from the
/// symmetric-power recursion.
class DerivativeTable {
public:
    DerivativeTable(PolyMap f, std::uint32_t bound, std::vector<std::vector<MultiIndex>> basis,
                    std::vector<std::vector<std::vector<Polynomial>>> entries)
        : f_(std::move(f)), bound_(bound), basis_(std::move(basis)), entries_(std::move(entries)) {}

    const PolyMap& map() const { return f_; }
    std::uint32_t bound() const { return bound_; }

    /// Basis I_m of grade m (1-based grade).
    const std::vector<MultiIndex>& basis(std::uint32_t grade) const { return basis_.at(grade - 1); }

    /// Aligned entries theta^(mu)_f(x_i) for all mu in basis(grade).
    const std::vector<Polynomial>& entries(std::size_t i, std::uint32_t grade) const {
        return entries_.at(i).at(grade - 1);
    }

    const Polynomial& entry(std::size_t i, const MultiIndex& mu) const {
        std::uint64_t g = mu.total();
        if (g == 0 || g > bound_) throw BoundExceeded("derivative table queried outside its bound");
        const auto& b = basis_.at(g - 1);
        for (std::size_t k = 0; k < b.size(); ++k)
            if (b[k] == mu) return entries_.at(i).at(g - 1).at(k);
        throw DimensionMismatch("multi-index dimension does not match the table");
    }

private:
    PolyMap f_;
    std::uint32_t bound_;
    std::vector<std::vector<MultiIndex>> basis_;                 // [grade-1]
    std::vector<std::vector<std::vector<Polynomial>>> entries_;  // [i][grade-1][pos]
};

/// Solves for all theta^(mu)_f(x_i), 0 < |mu| <= M, grade by grade.
/// Grade 1 inverts the Jacobian (adjugate times the unit inverse of its
/// constant determinant); grade m solves the symmetric-power linear system
/// with right-hand side built from the T^lambda coefficients of
/// prod_j (theta_x(f_j) - f_j)^{mu'_j}, using det(S_m) = det(Jac)^B(n,m).
inline DerivativeTable dual_derivatives(const PolyMap& f, std::uint32_t M) {
    if (!f.is_square()) throw NonSquareMatrix("dual_derivatives: map must be square");
    if (M == 0) throw BoundExceeded("dual_derivatives: bound must be >= 1");
    std::size_t n = f.arity_in();
    Matrix<Polynomial> A = jacobian(f);
    Polynomial dA = matrix_det(A);
    if (!dA.is_constant())
        throw NotAUnitDeterminant("Jacobian determinant is not a constant");
    RingElement u = dA.constant_term();
    RingElement uinv(u.ring());
    try {
        uinv = invert_unit(u);
    } catch (const NotAUnit&) {
        throw NotAUnitDeterminant("Jacobian determinant " + u.to_string() + " is not a unit in " +
                                  f.ring.to_string());
    }

    std::vector<std::vector<MultiIndex>> basis;
    std::vector<std::vector<std::vector<Polynomial>>> entries(
        n, std::vector<std::vector<Polynomial>>());

    // grade 1: inverse Jacobian
    basis.push_back(enumerate_multiindices(n, 1));
    Matrix<Polynomial> Ainv = adjugate(A);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Polynomial> row;
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.push_back(Ainv.at(i, j).scaled(uinv));
        entries[i].push_back(std::move(row));
    }

    if (M >= 2) {
        std::vector<std::string> tvars = default_tangent_names(f.vars);
        std::vector<TruncatedSeries> W;
        W.reserve(n);
        for (const Polynomial& fj : f.components)
            W.push_back(taylor(fj, M, tvars) - TruncatedSeries::from_polynomial(fj, tvars, M));
        // memoized powers prod_j W_j^{mu_j}, shared across grades
        std::map<std::vector<MultiIndex::Exp>, TruncatedSeries> wpow;
        wpow.emplace(MultiIndex::zero(n).entries(), W[0].one_like());
        auto wpower_impl = [&](auto&& self, const MultiIndex& mu) -> const TruncatedSeries& {
            auto it = wpow.find(mu.entries());
            if (it != wpow.end()) return it->second;
            std::size_t j = 0;
            while (mu[j] == 0) ++j;
            MultiIndex parent = mu;
            --parent[j];
            TruncatedSeries s = self(self, parent) * W[j];
            return wpow.emplace(mu.entries(), std::move(s)).first->second;
        };
        auto wpower = [&](const MultiIndex& mu) -> const TruncatedSeries& {
            return wpower_impl(wpower_impl, mu);
        };

        Matrix<Polynomial> At = A.transpose();
        for (std::uint32_t m = 2; m <= M; ++m) {
            SymPower<Polynomial> S = sym_power_matrix(At, m);
            Int bexp = sym_power_det_exponent(n, m);
            if (!bexp.fits_ulong_p()) throw OverflowError("symmetric power exponent too large");
            RingElement dSinv = ring_pow(uinv, bexp.get_ui());

            std::size_t dim = S.basis.size();
            std::vector<std::vector<Polynomial>> rhs(
                n, std::vector<Polynomial>(dim, Polynomial(f.ring, f.vars)));
            for (std::uint32_t g = 1; g < m; ++g) {
                const auto& mus = basis[g - 1];
                for (std::size_t k = 0; k < mus.size(); ++k) {
                    const TruncatedSeries& wp = wpower(mus[k]);
                    for (std::size_t lpos = 0; lpos < dim; ++lpos) {
                        Polynomial q = wp.coeff_of_t(S.basis[lpos]);
                        if (q.is_zero()) continue;
                        for (std::size_t i = 0; i < n; ++i) {
                            const Polynomial& th = entries[i][g - 1][k];
                            if (!th.is_zero()) rhs[i][lpos] = rhs[i][lpos] - th * q;
                        }
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Polynomial> sol = adjugate_times(S.mat, rhs[i]);
                for (Polynomial& p : sol) p = p.scaled(dSinv);
                entries[i].push_back(std::move(sol));
            }
            basis.push_back(S.basis);
        }
    }
    return DerivativeTable(f, M, std::move(basis), std::move(entries));
}

/// theta_f(h) truncated at total T-degree M: expand theta_x(h) and substitute
/// T_i -> sum_nu theta^(nu)_f(x_i) T^nu. The coefficient of T^mu is
/// theta^(mu)_f(h).
inline TruncatedSeries theta_f_apply(const DerivativeTable& table, const Polynomial& h,
                                     std::uint32_t M) {
    if (M > table.bound())
        throw BoundExceeded("theta_f_apply: requested order " + std::to_string(M) +
                            " exceeds table bound " + std::to_string(table.bound()));
    const PolyMap& f = table.map();
    if (h.ring() != f.ring) throw RingMismatch("theta_f_apply: rings differ");
    if (h.vars() != f.vars) throw VariableMismatch("theta_f_apply: variables differ");
    std::size_t n = f.arity_in();
    std::vector<std::string> tvars = default_tangent_names(f.vars);
    TruncatedSeries expanded = taylor(h, M, tvars);

    std::vector<TruncatedSeries> images;
    images.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j)
        images.push_back(TruncatedSeries::from_polynomial(Polynomial::variable(f.ring, f.vars, j),
                                                          tvars, M));
    TruncatedSeries frame(f.ring, f.vars, tvars, M);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<TruncatedSeries::Term> raw;
        for (std::uint32_t g = 1; g <= M; ++g) {
            const auto& b = table.basis(g);
            const auto& row = table.entries(i, g);
            for (std::size_t k = 0; k < b.size(); ++k)
                for (const auto& [mi, c] : row[k].terms()) raw.push_back({mi, b[k], c});
        }
        images.push_back(TruncatedSeries::from_raw_terms(frame, std::move(raw)));
    }
    return substitute(expanded, images);
}

}  // namespace polyhd
