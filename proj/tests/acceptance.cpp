// Acceptance suite: runs every release criterion once, printing one
// PASS/FAIL line per criterion, and exits nonzero if any fail. All checks are
// exact identities; the stated wall-clock budgets are enforced.

#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/procutil.hpp"
#include "support/testutil.hpp"

using namespace polyhd;
using namespace testutil;

namespace {

const std::string cli = POLYHD_CLI_PATH;
const std::string data = POLYHD_TESTDATA_DIR;

std::string doc(const std::string& name) { return data + "/" + name; }

Polynomial P(const std::string& text, const std::vector<std::string>& vars, const RingSpec& ring) {
    return parse_poly(text, vars, ring);
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// 1. Hasse axioms: Leibniz and iterativity, exact, 300 cases each.
void criterion_hasse_axioms() {
    Rng rng(1001);
    auto rings = test_rings();
    int leibniz = 0, iterative = 0;
    while (leibniz < 300) {
        const RingSpec& ring = rings[leibniz % rings.size()];
        std::size_t n = pick(rng, 1, 3);
        auto vars = var_names(n);
        Polynomial r = random_poly(rng, ring, vars, 5, 5);
        Polynomial s = random_poly(rng, ring, vars, 5, 5);
        MultiIndex gamma = random_index(rng, n, 4);
        Polynomial rhs(ring, vars);
        MultiIndex a(gamma.dim());
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == gamma.dim()) {
                rhs = rhs + hasse_multi(r, a) * hasse_multi(s, gamma - a);
                return;
            }
            for (MultiIndex::Exp e = 0; e <= gamma[pos]; ++e) {
                a[pos] = e;
                self(self, pos + 1);
            }
            a[pos] = 0;
        };
        rec(rec, 0);
        require(hasse_multi(r * s, gamma) == rhs, "Leibniz rule failed");
        ++leibniz;
    }
    while (iterative < 300) {
        const RingSpec& ring = rings[iterative % rings.size()];
        std::size_t n = pick(rng, 1, 3);
        auto vars = var_names(n);
        Polynomial p = random_poly(rng, ring, vars, 5, 5);
        MultiIndex a = random_index(rng, n, 3);
        MultiIndex b = random_index(rng, n, 2);
        require(hasse_multi(hasse_multi(p, b), a) ==
                    hasse_multi(p, a + b).scaled(binom_multi(a + b, a, ring)),
                "iterativity failed");
        ++iterative;
    }
}

// 2. Chain rule: both sides agree on 200 random instances at order 5,
// including the worked F_2 instance.
void criterion_chain_rule() {
    RingSpec f2 = RingSpec::prime_field(2);
    Polynomial g2 = P("y^2 + y", {"y"}, f2);
    PolyMap F2(f2, {"x"}, {P("x^2", {"x"}, f2)});
    TruncatedSeries expected =
        TruncatedSeries::from_combined(P("x^4 + x^2 + T^2 + T^4", {"x", "T"}, f2), 1, 4);
    require(chain_lhs(g2, F2, 4) == expected, "worked F_2 chain instance (lhs)");
    require(chain_rhs(g2, F2, 4) == expected, "worked F_2 chain instance (rhs)");

    Rng rng(1002);
    auto rings = test_rings();
    for (int c = 0; c < 200; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 1, 3), m = pick(rng, 1, 3);
        auto yv = var_names(m);
        auto xv = var_names(n);
        Polynomial g = random_poly(rng, ring, yv, 4, 4);
        std::vector<Polynomial> comps;
        for (std::size_t j = 0; j < m; ++j) comps.push_back(random_poly(rng, ring, xv, 4, 3));
        PolyMap F(ring, xv, std::move(comps));
        require(chain_lhs(g, F, 5) == chain_rhs(g, F, 5), "chain rule sides differ");
    }
}

// 3. Closed-form coefficients equal series extraction for all |lambda| <= 4,
// including the worked Q instance 1 + 6x + 6x^2.
void criterion_faa_di_bruno() {
    RingSpec q = RingSpec::rationals();
    Polynomial gq = P("y^2", {"y"}, q);
    PolyMap Fq(q, {"x"}, {P("x + x^2", {"x"}, q)});
    require(fdb_coefficient(gq, Fq, MultiIndex(std::vector<MultiIndex::Exp>{2})) ==
                P("1 + 6*x + 6*x^2", {"x"}, q),
            "worked Q coefficient instance");

    Rng rng(1003);
    auto rings = test_rings();
    for (int c = 0; c < 100; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 1, 2), m = pick(rng, 1, 2);
        Polynomial g = random_poly(rng, ring, var_names(m), 3, 3);
        std::vector<Polynomial> comps;
        auto xv = var_names(n);
        for (std::size_t j = 0; j < m; ++j) comps.push_back(random_poly(rng, ring, xv, 3, 3));
        PolyMap F(ring, xv, std::move(comps));
        TruncatedSeries lhs = chain_lhs(g, F, 4);
        for (std::uint64_t grade = 1; grade <= 4; ++grade)
            for (const MultiIndex& lambda : enumerate_multiindices(n, grade))
                require(fdb_coefficient(g, F, lambda) == lhs.coeff_of_t(lambda),
                        "closed form != extraction at " + lambda.to_string());
    }
}

// 4. det(S_m(J)) = det(J)^binom(n+m-1,n), 100 random matrices.
void criterion_sym_power_det() {
    Rng rng(1004);
    std::vector<RingSpec> rings{RingSpec::rationals(), RingSpec::prime_field(2),
                                RingSpec::prime_field(3), RingSpec::prime_field(5)};
    for (int c = 0; c < 100; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 1, 3);
        std::uint32_t m = static_cast<std::uint32_t>(pick(rng, 1, 4));
        Matrix<RingElement> J(n, n, RingElement(ring));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) J.at(i, j) = random_element(rng, ring);
        SymPower<RingElement> S = sym_power_matrix(J, m);
        require(det(S.mat) == ring_pow(det(J), sym_power_det_exponent(n, m).get_ui()),
                "symmetric power determinant identity failed");
    }
}

// 5. Coordinate-change recursion equals the substitute-known-inverse oracle
// for |mu| <= 4 on 20 triangular automorphisms.
void criterion_dual_derivatives() {
    Rng rng(1005);
    auto rings = test_rings();
    for (int c = 0; c < 20; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 2, 3);
        auto vars = var_names(n);
        AutomorphismPair pair = random_triangular_automorphism(rng, ring, vars, 2);
        DerivativeTable table = dual_derivatives(pair.forward, 4);
        for (std::uint32_t g = 1; g <= 4; ++g)
            for (const MultiIndex& mu : table.basis(g))
                for (std::size_t i = 0; i < n; ++i)
                    require(table.entry(i, mu) ==
                                dual_derivative_by_inverse(pair.forward, pair.inverse,
                                                           Polynomial::variable(ring, vars, i), mu),
                            "dual derivative != oracle at " + mu.to_string());
    }
}

// 6. Inversion round trips on 100 random composed automorphisms, each < 1s.
double criterion_round_trips() {
    Rng rng(1006);
    auto rings = test_rings();
    double slowest = 0.0;
    for (int c = 0; c < 100; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 1, 3);
        auto vars = var_names(n);
        AutomorphismPair pair = random_tame_automorphism(rng, ring, vars, 4, 16);
        auto t0 = std::chrono::steady_clock::now();
        PolyMap G = invert(pair.forward);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, dt);
        require(dt < 1.0, "inversion took " + std::to_string(dt) + "s");
        require(compose_map(G, pair.forward) == PolyMap::identity(ring, vars), "G o F != id");
        require(compose_map(pair.forward, G) == PolyMap::identity(ring, vars), "F o G != id");
        long long d = pair.forward.total_degree();
        long long bound = 1;
        for (std::size_t s = 1; s < n; ++s) bound *= d;
        require(G.total_degree() <= bound, "degree bound violated");
    }
    return slowest;
}

// 7. Nagata automorphism inversion returns the known closed form.
void criterion_nagata() {
    RingSpec q = RingSpec::rationals();
    std::vector<std::string> v{"x", "y", "z"};
    PolyMap F(q, v,
              {P("x - 2*y^3 - 2*x*y*z - y^4*z - 2*x*y^2*z^2 - x^2*z^3", v, q),
               P("y + y^2*z + x*z^2", v, q), P("z", v, q)});
    PolyMap expected(q, v,
                     {P("x + 2*y^3 + 2*x*y*z - y^4*z - 2*x*y^2*z^2 - x^2*z^3", v, q),
                      P("y - y^2*z - x*z^2", v, q), P("z", v, q)});
    require(compose_map(expected, F) == PolyMap::identity(q, v),
            "frozen Nagata inverse fails composition");
    PolyMap G = invert(F);
    require(G == expected, "Nagata inverse differs from the closed form");
}

// 8. Formal inverse of x + x^2 over F_2 at order 8.
void criterion_formal_inverse() {
    RingSpec f2 = RingSpec::prime_field(2);
    PolyMap K(f2, {"x"}, {P("x + x^2", {"x"}, f2)});
    PolyMap G = formal_inverse(K, 8);
    require(G.components[0] == P("x + x^2 + x^4 + x^8", {"x"}, f2),
            "formal inverse differs from x + x^2 + x^4 + x^8");
    // independent dense triangular-solve oracle
    std::vector<RingElement> f(9, RingElement(f2));
    f[1] = canon(1, f2);
    f[2] = canon(1, f2);
    auto a = univariate_formal_solve(f, 8, f2);
    for (std::uint32_t k = 1; k <= 8; ++k)
        require(G.components[0].coeff(MultiIndex(std::vector<MultiIndex::Exp>{k})) == a[k],
                "oracle coefficient mismatch at degree " + std::to_string(k));
    require(compose_map(G, K).components[0].truncated(8) == P("x", {"x"}, f2),
            "composition != x mod x^9");
}

// 9. Char-p negative control: x + x^p has unit Jacobian but is not an
// automorphism; the CLI reports it with exit code 3.
void criterion_char_p_negative() {
    for (std::uint64_t p : {2ull, 3ull}) {
        RingSpec fp = RingSpec::prime_field(p);
        Polynomial f =
            Polynomial::variable(fp, {"x"}, 0) + Polynomial::variable(fp, {"x"}, 0).pow(p);
        PolyMap F(fp, {"x"}, {f});
        require(matrix_det(jacobian(F)) == P("1", {"x"}, fp), "Jacobian not a unit");
        bool threw = false;
        try {
            invert(F);
        } catch (const NotAnAutomorphism&) {
            threw = true;
        }
        require(threw, "invert(x + x^" + std::to_string(p) + ") did not fail");
    }
    require(run_process(cli + " invert --in " + doc("keller_f2.json")).exit_code == 3,
            "CLI exit code for the F_2 Keller map is not 3");
    require(run_process(cli + " invert --in " + doc("keller_f3.json")).exit_code == 3,
            "CLI exit code for the F_3 Keller map is not 3");
}

// 10. Prime-power witness over Z/4 and functoriality of inversion under the
// reduction Z/4 -> F_2, 20 cases.
void criterion_prime_power_and_functoriality() {
    RingSpec z4 = RingSpec::residue(4), f2 = RingSpec::prime_field(2);
    require(hasse_single(P("x^4*x^3", {"x"}, z4), 0, 1) == P("3*x^6", {"x"}, z4),
            "theta^(1)(x^7) != 3x^6 over Z/4");
    Rng rng(1010);
    for (int c = 0; c < 20; ++c) {
        std::size_t n = pick(rng, 2, 3);
        auto vars = var_names(n);
        PolyMap f = random_triangular_automorphism(rng, z4, vars, 2).forward;
        PolyMap G4 = invert(f);
        PolyMap G2 = invert(f.change_ring(f2));
        require(G4.change_ring(f2) == G2, "reduction does not commute with inversion");
    }
}

// 11. Nousiainen-Sweedler evaluation agrees with substitution into the
// verified inverse, truncated, on 20 cases.
void criterion_nousiainen_sweedler() {
    Rng rng(1011);
    auto rings = test_rings();
    for (int c = 0; c < 20; ++c) {
        const RingSpec& ring = rings[c % rings.size()];
        std::size_t n = pick(rng, 2, 3);
        auto vars = var_names(n);
        PolyMap f = random_triangular_automorphism(rng, ring, vars, 2).forward;
        PolyMap g = invert(f);
        Polynomial h = random_poly(rng, ring, vars, 2, 3);
        require(ns_inverse_apply(f, h, 4) == substitute(h, g.components).truncated(4),
                "N-S evaluation differs from the substituted inverse");
    }
}

// 12. CLI: bundled documents round-trip, byte-stable output, exit codes 0/1/2/3.
void criterion_cli() {
    require(run_process(cli + " invert --in " + doc("elementary_f2.json")).exit_code == 0,
            "exit code 0 scenario failed");
    require(run_process(cli + " invert --in " + doc("malformed.json")).exit_code == 1,
            "exit code 1 scenario failed");
    require(run_process(cli + " invert --in " + doc("singular_z4.json")).exit_code == 2,
            "exit code 2 scenario failed");
    require(run_process(cli + " invert --in " + doc("keller_f2.json")).exit_code == 3,
            "exit code 3 scenario failed");

    for (std::string name : {"elementary_f2.json", "elementary_q.json", "nagata.json",
                             "keller_f2.json", "keller_f3.json", "singular_z4.json",
                             "chain_g.json", "chain_f.json"}) {
        MapDocument d = map_document_from_json(Json::parse(slurp(doc(name))));
        for (const std::string& text : d.map_text) {
            Polynomial p = parse_poly(text, d.vars, d.ring);
            Polynomial again = parse_poly(to_text(p), d.vars, d.ring);
            require(p == again, "parse-print-parse differs for " + name);
        }
    }

    for (std::string cmd : {cli + " invert --in " + doc("elementary_f2.json"),
                            cli + " jacobian --det --in " + doc("nagata.json"),
                            cli + " chain-check --g " + doc("chain_g.json") + " --f " +
                                doc("chain_f.json") + " --order 4"}) {
        ProcResult a = run_process(cmd);
        ProcResult b = run_process(cmd);
        require(a.out == b.out && a.exit_code == b.exit_code, "output not byte-stable: " + cmd);
    }

    ProcResult inv = run_process(cli + " invert --in " + doc("elementary_f2.json"));
    require(inv.out == "{\"inverse\":[\"y^2 + x\",\"y\"],\"degree_bound\":2,\"verified\":true}\n",
            "invert output changed");
}

struct Criterion {
    int id;
    std::string label;
    double budget_s;  // 0 = unbudgeted
    std::function<void()> run;
};

}  // namespace

int main() {
    double slowest_case = 0.0;
    std::vector<Criterion> criteria = {
        {1, "Hasse axioms: Leibniz + iterativity, 600 cases, exact", 10.0, criterion_hasse_axioms},
        {2, "chain rule: lhs = rhs on 200 random instances at order 5", 30.0, criterion_chain_rule},
        {3, "closed-form coefficients = series extraction, 100 cases, |lambda| <= 4", 0.0,
         criterion_faa_di_bruno},
        {4, "det(S_m) = det^binom(n+m-1,n), 100 random matrices", 10.0, criterion_sym_power_det},
        {5, "dual derivatives = known-inverse oracle, 20 triangular maps, |mu| <= 4", 0.0,
         criterion_dual_derivatives},
        {6, "inversion round trips: 100 composed automorphisms, < 1s each", 0.0,
         [&] { slowest_case = criterion_round_trips(); }},
        {7, "Nagata automorphism (n=3, d=5, N=25) inverts to the closed form", 60.0,
         criterion_nagata},
        {8, "formal inverse of x + x^2 over F_2 at order 8", 0.0, criterion_formal_inverse},
        {9, "char-p negative control: x + x^p rejected, CLI exit 3", 0.0,
         criterion_char_p_negative},
        {10, "Z/4 prime-power witness; inversion commutes with Z/4 -> F_2, 20 cases", 0.0,
         criterion_prime_power_and_functoriality},
        {11, "Nousiainen-Sweedler evaluation = substituted inverse, 20 cases", 0.0,
         criterion_nousiainen_sweedler},
        {12, "CLI round-trip, byte-stability and exit codes on bundled documents", 0.0,
         criterion_cli},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = c.budget_s == 0.0 || dt < c.budget_s;
        bool pass = error.empty() && in_budget;
        std::ostringstream line;
        line << (pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.id << ". " << c.label << " ("
             << std::fixed << std::setprecision(2) << dt << "s";
        if (c.budget_s > 0.0) line << " < " << std::setprecision(0) << c.budget_s << "s";
        line << ")";
        if (!error.empty()) line << " — " << error;
        if (error.empty() && !in_budget) line << " — over budget";
        if (c.id == 6 && pass)
            line << " [slowest case " << std::setprecision(3) << slowest_case << "s]";
        std::cout << line.str() << std::endl;
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
