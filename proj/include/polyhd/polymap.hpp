#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/polynomial.hpp"

namespace polyhd {

/// Tuple of polynomials over a common source variable list, defining a
/// polynomial map (or coordinate system). Square maps have #components = #vars.
struct PolyMap {
    RingSpec ring;
    std::vector<std::string> vars;
    std::vector<Polynomial> components;

    PolyMap(RingSpec r, std::vector<std::string> v, std::vector<Polynomial> comps)
        : ring(r), vars(std::move(v)), components(std::move(comps)) {
        for (const Polynomial& c : components) {
            if (c.ring() != ring) throw RingMismatch("map component over a different ring");
            if (c.vars() != vars) throw VariableMismatch("map component over different variables");
        }
    }

    static PolyMap identity(const RingSpec& ring, const std::vector<std::string>& vars) {
        std::vector<Polynomial> comps;
        comps.reserve(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i)
            comps.push_back(Polynomial::variable(ring, vars, i));
        return PolyMap(ring, vars, std::move(comps));
    }

    std::size_t arity_in() const { return vars.size(); }
    std::size_t arity_out() const { return components.size(); }
    bool is_square() const { return arity_in() == arity_out(); }

    /// max_i deg(f_i); neg_inf_degree for the empty/zero map.
    long long total_degree() const {
        long long d = neg_inf_degree;
        for (const Polynomial& c : components) d = std::max(d, c.total_degree());
        return d;
    }

    PolyMap change_ring(const RingSpec& target) const {
        std::vector<Polynomial> comps;
        comps.reserve(components.size());
        for (const Polynomial& c : components) comps.push_back(c.change_ring(target));
        return PolyMap(target, vars, std::move(comps));
    }

    bool operator==(const PolyMap& o) const {
        return ring == o.ring && vars == o.vars && components == o.components;
    }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }
};

/// g(F_1, ..., F_m): substitutes the map components for g's variables.
inline Polynomial compose_poly(const Polynomial& g, const PolyMap& F,
                               std::optional<std::uint64_t> degree_cap = std::nullopt) {
    if (g.nvars() != F.arity_out())
        throw ArityMismatch("compose: polynomial in " + std::to_string(g.nvars()) +
                            " variables applied to a map with " + std::to_string(F.arity_out()) +
                            " components");
    if (g.ring() != F.ring) throw RingMismatch("compose: rings differ");
    return substitute(g, F.components, degree_cap);
}

/// Composite map F after G: component i is F_i(G_1, ..., G_n).
inline PolyMap compose_map(const PolyMap& F, const PolyMap& G) {
    if (G.arity_out() != F.arity_in())
        throw ArityMismatch("compose_map: inner map has " + std::to_string(G.arity_out()) +
                            " components, outer map expects " + std::to_string(F.arity_in()));
    if (F.ring != G.ring) throw RingMismatch("compose_map: rings differ");
    std::vector<Polynomial> comps;
    comps.reserve(F.components.size());
    for (const Polynomial& f : F.components) comps.push_back(substitute(f, G.components));
    return PolyMap(F.ring, G.vars, std::move(comps));
}

}  // namespace polyhd
