// polyhd command line front end: exact Hasse derivations, chain-rule checks,
// Jacobian reports and polynomial automorphism inversion over Q, F_p and Z/m.
//
// Exit codes: 0 success / verdict true, 1 usage or parse error, 2 precondition
// failure (singular linear part, non-unit determinant, ...), 3 negative
// mathematical verdict (not an automorphism, chain-rule sides differ).

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyhd/polyhd.hpp"

namespace {

using namespace polyhd;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

PolyMap load_map(const std::string& path) { return map_document_from_json(load_json(path)).to_map(); }

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

std::vector<std::string> component_texts(const PolyMap& F) {
    std::vector<std::string> out;
    out.reserve(F.components.size());
    for (const Polynomial& f : F.components) out.push_back(to_text(f));
    return out;
}

MultiIndex parse_index_list(const std::string& csv, std::size_t dim) {
    std::vector<MultiIndex::Exp> e;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            unsigned long v = std::stoul(item);
            e.push_back(static_cast<MultiIndex::Exp>(v));
        } catch (const std::exception&) {
            throw InputError("invalid --index entry '" + item + "'");
        }
    }
    if (e.size() != dim)
        throw PreconditionError("--index needs " + std::to_string(dim) + " entries, got " +
                                std::to_string(e.size()));
    return MultiIndex(std::move(e));
}

std::uint32_t degree_bound_of(const PolyMap& F) {
    NormalizedMap norm = normalize(F);
    long long d = norm.core.total_degree();
    std::uint64_t deg = d < 1 ? 1 : static_cast<std::uint64_t>(d);
    std::uint64_t N = 1;
    for (std::size_t k = 1; k < F.arity_in(); ++k) N *= deg;
    return static_cast<std::uint32_t>(N);
}

int run(int argc, char** argv) {
    CLI::App app{"exact higher-derivation calculator for polynomial maps"};
    app.require_subcommand(1);

    std::string in_file, g_file, f_file;
    std::uint32_t order = 0;
    std::size_t component = 1;
    std::string index_csv;
    bool as_text = false, as_json = false, with_det = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_flag("--text", as_text, "human-readable output");
        cmd->add_flag("--json", as_json, "JSON output (default)");
    };

    CLI::App* c_invert = app.add_subcommand("invert", "invert a polynomial automorphism");
    c_invert->add_option("--in", in_file, "map document")->required();
    add_format(c_invert);

    CLI::App* c_formal = app.add_subcommand("formal-invert", "truncated power-series inverse");
    c_formal->add_option("--in", in_file, "map document")->required();
    c_formal->add_option("--order", order, "truncation order")->required();
    add_format(c_formal);

    CLI::App* c_hasse = app.add_subcommand("hasse", "multi-index Hasse derivative of a component");
    c_hasse->add_option("--in", in_file, "map document")->required();
    c_hasse->add_option("--component", component, "1-based component index")->required();
    c_hasse->add_option("--index", index_csv, "derivative multi-index a,b,...")->required();
    add_format(c_hasse);

    CLI::App* c_jac = app.add_subcommand("jacobian", "Jacobian matrix of a map");
    c_jac->add_option("--in", in_file, "map document")->required();
    c_jac->add_flag("--det", with_det, "also print the determinant");
    add_format(c_jac);

    CLI::App* c_chain = app.add_subcommand("chain-check",
                                           "verify both chain-rule sides agree to the given order");
    c_chain->add_option("--g", g_file, "outer map document")->required();
    c_chain->add_option("--f", f_file, "inner map document")->required();
    c_chain->add_option("--order", order, "tangent truncation order")->required();

    CLI::App* c_comp = app.add_subcommand("compose", "composite map f after g");
    c_comp->add_option("--f", f_file, "outer map document")->required();
    c_comp->add_option("--g", g_file, "inner map document")->required();
    add_format(c_comp);

    CLI::App* c_check = app.add_subcommand("check", "automorphism verdict only");
    c_check->add_option("--in", in_file, "map document")->required();

    CLI::App* c_dual = app.add_subcommand("dual-derivatives",
                                          "table of higher derivatives dual to a coordinate map");
    c_dual->add_option("--in", in_file, "map document")->required();
    c_dual->add_option("--order", order, "table order")->required();
    add_format(c_dual);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    if (c_invert->parsed()) {
        PolyMap F = load_map(in_file);
        PolyMap G = invert(F);
        if (as_text) {
            for (const Polynomial& g : G.components) std::cout << to_text(g) << "\n";
        } else {
            Json j;
            j["inverse"] = component_texts(G);
            j["degree_bound"] = degree_bound_of(F);
            j["verified"] = true;
            emit(j);
        }
    } else if (c_formal->parsed()) {
        PolyMap F = load_map(in_file);
        PolyMap G = formal_inverse(F, order);
        if (as_text) {
            for (const Polynomial& g : G.components) std::cout << to_text(g) << "\n";
        } else {
            Json j;
            j["inverse"] = component_texts(G);
            j["order"] = order;
            emit(j);
        }
    } else if (c_hasse->parsed()) {
        PolyMap F = load_map(in_file);
        if (component < 1 || component > F.components.size())
            throw PreconditionError("--component out of range");
        MultiIndex idx = parse_index_list(index_csv, F.arity_in());
        Polynomial d = hasse_multi(F.components[component - 1], idx);
        if (as_json) {
            Json j;
            j["derivative"] = to_text(d);
            emit(j);
        } else {
            std::cout << to_text(d) << "\n";
        }
    } else if (c_jac->parsed()) {
        PolyMap F = load_map(in_file);
        Matrix<Polynomial> J = jacobian(F);
        if (as_text) {
            for (std::size_t i = 0; i < J.rows(); ++i) {
                for (std::size_t j = 0; j < J.cols(); ++j)
                    std::cout << (j ? "\t" : "") << to_text(J.at(i, j));
                std::cout << "\n";
            }
            if (with_det) std::cout << "det: " << to_text(matrix_det(J)) << "\n";
        } else {
            Json j;
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < J.rows(); ++i) {
                std::vector<std::string> row;
                for (std::size_t k = 0; k < J.cols(); ++k) row.push_back(to_text(J.at(i, k)));
                rows.push_back(std::move(row));
            }
            j["jacobian"] = rows;
            if (with_det) j["det"] = to_text(matrix_det(J));
            emit(j);
        }
    } else if (c_chain->parsed()) {
        PolyMap G = load_map(g_file);
        PolyMap F = load_map(f_file);
        bool equal = true;
        for (const Polynomial& g : G.components)
            if (chain_lhs(g, F, order) != chain_rhs(g, F, order)) {
                equal = false;
                break;
            }
        Json j;
        j["equal"] = equal;
        j["order"] = order;
        emit(j);
        return equal ? 0 : 3;
    } else if (c_comp->parsed()) {
        PolyMap F = load_map(f_file);
        PolyMap G = load_map(g_file);
        PolyMap H = compose_map(F, G);
        if (as_text) {
            for (const Polynomial& h : H.components) std::cout << to_text(h) << "\n";
        } else {
            Json j;
            j["compose"] = component_texts(H);
            emit(j);
        }
    } else if (c_check->parsed()) {
        PolyMap F = load_map(in_file);
        try {
            invert(F);
        } catch (const NotAnAutomorphism& e) {
            Json j;
            j["automorphism"] = false;
            emit(j);
            std::cerr << e.what() << "\n";
            return 3;
        }
        Json j;
        j["automorphism"] = true;
        j["degree_bound"] = degree_bound_of(F);
        emit(j);
    } else if (c_dual->parsed()) {
        PolyMap F = load_map(in_file);
        DerivativeTable table = dual_derivatives(F, order);
        if (as_text) {
            for (std::size_t i = 0; i < F.arity_in(); ++i)
                for (std::uint32_t g = 1; g <= order; ++g) {
                    const auto& basis = table.basis(g);
                    for (std::size_t k = 0; k < basis.size(); ++k)
                        std::cout << "theta^" << basis[k].to_string() << "(x_" << (i + 1)
                                  << ") = " << to_text(table.entries(i, g)[k]) << "\n";
                }
        } else {
            Json j;
            j["order"] = order;
            Json entries = Json::array();
            for (std::size_t i = 0; i < F.arity_in(); ++i)
                for (std::uint32_t g = 1; g <= order; ++g) {
                    const auto& basis = table.basis(g);
                    for (std::size_t k = 0; k < basis.size(); ++k) {
                        Json e;
                        e["component"] = i + 1;
                        e["index"] = basis[k].entries();
                        e["value"] = to_text(table.entries(i, g)[k]);
                        entries.push_back(std::move(e));
                    }
                }
            j["entries"] = std::move(entries);
            emit(j);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const NotAnAutomorphism& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
