#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyhd/coord_change.hpp"
#include "polyhd/errors.hpp"
#include "polyhd/hasse.hpp"
#include "polyhd/linalg.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/text.hpp"

namespace polyhd {

/// Affine/linear split of a map: F = c + L * core with core(0) = 0 and the
/// Jacobian of core at 0 the identity matrix.
struct NormalizedMap {
    std::vector<RingElement> translation;   // c = F(0)
    Matrix<RingElement> linear;             // L, invertible over the ring
    Matrix<RingElement> linear_inverse;     // L^{-1}
    PolyMap core;

    /// Exact reassembly c + L * core.
    PolyMap reassemble() const {
        std::size_t n = core.arity_in();
        std::vector<Polynomial> comps;
        comps.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial fi = Polynomial::constant(core.ring, core.vars, translation[i]);
            for (std::size_t j = 0; j < n; ++j)
                fi = fi + core.components[j].scaled(linear.at(i, j));
            comps.push_back(std::move(fi));
        }
        return PolyMap(core.ring, core.vars, std::move(comps));
    }
};

/// Splits off F(0) and the linear part. SingularLinearPart if the Jacobian at
/// the origin is not invertible over the coefficient ring.
inline NormalizedMap normalize(const PolyMap& F) {
    if (!F.is_square()) throw NonSquareMatrix("normalize: map must be square");
    std::size_t n = F.arity_in();
    if (n == 0) throw NonSquareMatrix("normalize: empty map");
    std::vector<RingElement> c;
    c.reserve(n);
    for (const Polynomial& f : F.components) c.push_back(f.constant_term());

    Matrix<RingElement> L(n, n, RingElement(F.ring));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            L.at(i, j) = F.components[i].coeff(MultiIndex::unit(n, j));

    RingElement dL = det(L);
    RingElement dinv(F.ring);
    try {
        dinv = invert_unit(dL);
    } catch (const NotAUnit&) {
        throw SingularLinearPart("linear part has non-unit determinant " + dL.to_string() +
                                 " in " + F.ring.to_string());
    }
    Matrix<RingElement> Linv = adjugate(L);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Linv.at(i, j) = Linv.at(i, j) * dinv;

    std::vector<Polynomial> core;
    core.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial gi(F.ring, F.vars);
        for (std::size_t j = 0; j < n; ++j) {
            if (Linv.at(i, j).is_zero()) continue;
            Polynomial shifted = F.components[j] - Polynomial::constant(F.ring, F.vars, c[j]);
            gi = gi + shifted.scaled(Linv.at(i, j));
        }
        core.push_back(std::move(gi));
    }
    return NormalizedMap{std::move(c), std::move(L), std::move(Linv),
                         PolyMap(F.ring, F.vars, std::move(core))};
}

/// Coefficient table alpha_{i,lambda} of the power-series inverse of a
/// normalized core map, for 0 < |lambda| <= N. alpha_{i,e_j} = delta_{ij};
/// alpha_{i,lambda} = theta^(lambda)_f(x_i) at x = 0.
class InverseCoefficients {
public:
    InverseCoefficients(std::uint32_t N, std::vector<Polynomial> coeff_polys)
        : bound_(N), polys_(std::move(coeff_polys)) {}

    std::uint32_t bound() const { return bound_; }

    RingElement alpha(std::size_t i, const MultiIndex& lambda) const {
        return polys_.at(i).coeff(lambda);
    }

    /// The candidate inverse components g_i = sum alpha_{i,lambda} x^lambda.
    const std::vector<Polynomial>& components() const { return polys_; }

    PolyMap assemble(const RingSpec& ring, const std::vector<std::string>& vars) const {
        return PolyMap(ring, vars, polys_);
    }

private:
    std::uint32_t bound_;
    std::vector<Polynomial> polys_;
};

namespace detail {

inline void require_normalized(const PolyMap& core) {
    std::size_t n = core.arity_in();
    if (!core.is_square()) throw NonSquareMatrix("inversion core must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (!core.components[i].constant_term().is_zero())
            throw PreconditionError("inversion core must vanish at the origin");
        for (std::size_t j = 0; j < n; ++j) {
            RingElement lin = core.components[i].coeff(MultiIndex::unit(n, j));
            bool want_one = (i == j);
            if (want_one ? !lin.is_one() : !lin.is_zero())
                throw PreconditionError("inversion core must have identity linear part");
        }
    }
}

}  // namespace detail

/// The grade-by-grade recursion for the inverse coefficients:
///   alpha_{i,e_j} = delta_{ij}
///   alpha_{i,lambda} = - sum_{0<|nu|<l} alpha_{i,nu} * [x^lambda] f^nu,   |lambda| = l.
/// Powers f^nu are computed truncated at total degree N and memoized one
/// grade at a time via f^nu = f^{nu - e_j} * f_j.
inline InverseCoefficients invert_core(const PolyMap& core, std::uint32_t N) {
    detail::require_normalized(core);
    std::size_t n = core.arity_in();
    const RingSpec& ring = core.ring;
    const auto& vars = core.vars;

    // accumulators acc_i = sum_{0<|nu|<l} alpha_{i,nu} f^nu, truncated at N
    std::vector<Polynomial> acc;
    acc.reserve(n);
    for (const Polynomial& f : core.components) acc.push_back(f.truncated(N));

    std::vector<std::vector<Polynomial::Term>> gterms(n);
    for (std::size_t i = 0; i < n; ++i)
        gterms[i].emplace_back(MultiIndex::unit(n, i), canon(1, ring));

    // previous-grade powers f^nu, keyed by the exponent vector nu
    std::map<std::vector<MultiIndex::Exp>, Polynomial> prev;
    for (std::size_t j = 0; j < n; ++j)
        prev.emplace(MultiIndex::unit(n, j).entries(), core.components[j].truncated(N));

    for (std::uint32_t l = 2; l <= N; ++l) {
        std::vector<MultiIndex> grade = enumerate_multiindices(n, l);
        std::vector<std::vector<RingElement>> alpha(
            n, std::vector<RingElement>(grade.size(), RingElement(ring)));
        for (std::size_t k = 0; k < grade.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) {
                RingElement a = -acc[i].coeff(grade[k]);
                if (!a.is_zero()) {
                    gterms[i].emplace_back(grade[k], a);
                    alpha[i][k] = std::move(a);
                }
            }
        if (l == N) break;

        std::map<std::vector<MultiIndex::Exp>, Polynomial> cur;
        for (std::size_t k = 0; k < grade.size(); ++k) {
            const MultiIndex& nu = grade[k];
            // pick the sparsest factor as the step
            std::size_t jbest = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (nu[j] == 0) continue;
                if (jbest == n ||
                    core.components[j].terms().size() < core.components[jbest].terms().size())
                    jbest = j;
            }
            MultiIndex parent = nu;
            --parent[jbest];
            Polynomial power = prev.at(parent.entries()).mul(core.components[jbest], N);
            for (std::size_t i = 0; i < n; ++i)
                if (!alpha[i][k].is_zero()) acc[i] = acc[i] + power.scaled(alpha[i][k]);
            cur.emplace(nu.entries(), std::move(power));
        }
        prev = std::move(cur);
    }

    std::vector<Polynomial> polys;
    polys.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        polys.push_back(Polynomial::from_terms(ring, vars, std::move(gterms[i])));
    return InverseCoefficients(N, std::move(polys));
}

namespace detail {

inline PolyMap linear_map(const Matrix<RingElement>& L, const RingSpec& ring,
                          const std::vector<std::string>& vars) {
    std::size_t n = vars.size();
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial fi(ring, vars);
        for (std::size_t j = 0; j < n; ++j)
            if (!L.at(i, j).is_zero())
                fi = fi + Polynomial::variable(ring, vars, j).scaled(L.at(i, j));
        comps.push_back(std::move(fi));
    }
    return PolyMap(ring, vars, std::move(comps));
}

inline PolyMap translation_map(const std::vector<RingElement>& c, bool negate,
                               const RingSpec& ring, const std::vector<std::string>& vars) {
    std::size_t n = vars.size();
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial fi = Polynomial::variable(ring, vars, i);
        fi = negate ? fi - Polynomial::constant(ring, vars, c[i])
                    : fi + Polynomial::constant(ring, vars, c[i]);
        comps.push_back(std::move(fi));
    }
    return PolyMap(ring, vars, std::move(comps));
}

/// G_tilde composed with L^{-1} and the translation by -c: the inverse of
/// F = tau_c . L . core is core^{-1} . L^{-1} . tau_{-c}.
inline PolyMap unnormalize_inverse(const NormalizedMap& norm, const PolyMap& core_inverse) {
    PolyMap lin = linear_map(norm.linear_inverse, norm.core.ring, norm.core.vars);
    PolyMap tau = translation_map(norm.translation, true, norm.core.ring, norm.core.vars);
    return compose_map(compose_map(core_inverse, lin), tau);
}

inline std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t k = 0; k < exp; ++k) {
        unsigned __int128 wide = static_cast<unsigned __int128>(r) * base;
        if (wide > ~0ull) throw OverflowError("degree bound d^(n-1) overflows");
        r = static_cast<std::uint64_t>(wide);
    }
    return r;
}

}  // namespace detail

/// Exact inverse of a polynomial automorphism: normalizes, runs the recursion
/// to the degree bound N = deg(core)^(n-1), un-normalizes, and verifies both
/// compositions against the identity. The verification is mandatory — a unit
/// Jacobian does not imply invertibility in positive characteristic.
inline PolyMap invert(const PolyMap& F) {
    NormalizedMap norm = normalize(F);
    std::size_t n = F.arity_in();
    long long d = norm.core.total_degree();
    std::uint64_t deg = d < 1 ? 1 : static_cast<std::uint64_t>(d);
    std::uint64_t N64 = detail::checked_pow_u64(deg, n - 1);
    if (N64 > std::numeric_limits<std::uint32_t>::max())
        throw OverflowError("degree bound d^(n-1) too large: " + std::to_string(N64));
    auto N = static_cast<std::uint32_t>(N64);

    InverseCoefficients ic = invert_core(norm.core, N);
    PolyMap G = detail::unnormalize_inverse(norm, ic.assemble(F.ring, F.vars));

    PolyMap id = PolyMap::identity(F.ring, F.vars);
    bool residue_ring = F.ring.kind() == RingKind::Residue;
    auto verify = [&](const PolyMap& comp, const char* side) {
        for (std::size_t i = 0; i < n; ++i) {
            if (comp.components[i] == id.components[i]) continue;
            std::string msg = std::string("not an automorphism: ") + side +
                              " composition component " + std::to_string(i + 1) + " is " +
                              to_text(comp.components[i]);
            if (residue_ring)
                msg += "; over " + F.ring.to_string() +
                       " the degree bound is not conclusive — retry formal_inverse with a larger order";
            throw NotAnAutomorphism(i + 1, to_text(comp.components[i]), residue_ring, msg);
        }
    };
    verify(compose_map(G, F), "G o F");
    verify(compose_map(F, G), "F o G");
    return G;
}

/// Degree-<=M truncation of the power-series inverse; exists whenever the
/// linear part is invertible. The composition is checked to be the identity
/// modulo total degree M+1.
inline PolyMap formal_inverse(const PolyMap& F, std::uint32_t M) {
    if (M == 0) throw BoundExceeded("formal_inverse: order must be >= 1");
    NormalizedMap norm = normalize(F);
    InverseCoefficients ic = invert_core(norm.core, M);
    PolyMap G = detail::unnormalize_inverse(norm, ic.assemble(F.ring, F.vars));
    for (Polynomial& g : G.components) g = g.truncated(M);

    PolyMap composed = compose_map(G, F);
    for (std::size_t i = 0; i < F.arity_in(); ++i) {
        Polynomial r = composed.components[i].truncated(M) -
                       Polynomial::variable(F.ring, F.vars, i);
        if (!r.is_zero())
            throw Error("internal error: formal inverse fails its order-" + std::to_string(M) +
                        " composition check");
    }
    return G;
}

/// Nousiainen-Sweedler evaluation of the inverse on h:
///   G(h) = sum_alpha theta^(alpha)_f(h) (x - f)^alpha,
/// truncated at total degree M (terms with |alpha| <= M). Requires a unit
/// constant Jacobian determinant; degree-M agreement with substitution into
/// the composed inverse additionally needs F(0) = 0.
inline Polynomial ns_inverse_apply(const PolyMap& F, const Polynomial& h, std::uint32_t M) {
    DerivativeTable table = dual_derivatives(F, M);
    TruncatedSeries th = theta_f_apply(table, h, M);
    std::size_t n = F.arity_in();

    std::vector<Polynomial> xmf;
    xmf.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        xmf.push_back(Polynomial::variable(F.ring, F.vars, j) - F.components[j]);

    Polynomial result = th.coeff_of_t(MultiIndex::zero(n)).truncated(M);  // alpha = 0 term is h
    std::map<std::vector<MultiIndex::Exp>, Polynomial> prev;
    prev.emplace(MultiIndex::zero(n).entries(), Polynomial::constant(F.ring, F.vars, 1));
    for (std::uint32_t g = 1; g <= M; ++g) {
        std::map<std::vector<MultiIndex::Exp>, Polynomial> cur;
        for (const MultiIndex& alpha : enumerate_multiindices(n, g)) {
            std::size_t j = 0;
            while (alpha[j] == 0) ++j;
            MultiIndex parent = alpha;
            --parent[j];
            Polynomial power = prev.at(parent.entries()).mul(xmf[j], M);
            Polynomial c = th.coeff_of_t(alpha);
            if (!c.is_zero() && !power.is_zero()) result = result + c.mul(power, M);
            cur.emplace(alpha.entries(), std::move(power));
        }
        prev = std::move(cur);
    }
    return result.truncated(M);
}

}  // namespace polyhd
