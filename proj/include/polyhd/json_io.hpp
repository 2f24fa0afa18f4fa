#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polyhd/errors.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/ring.hpp"
#include "polyhd/text.hpp"

namespace polyhd {

using Json = nlohmann::ordered_json;

// Ring spec wire format: {"type":"Q"} | {"type":"Fp","p":<int>} | {"type":"Zmod","m":<int>}

inline Json ring_to_json(const RingSpec& ring) {
    switch (ring.kind()) {
        case RingKind::Rationals: return Json{{"type", "Q"}};
        case RingKind::PrimeField: return Json{{"type", "Fp"}, {"p", ring.modulus()}};
        default: return Json{{"type", "Zmod"}, {"m", ring.modulus()}};
    }
}

inline RingSpec ring_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw InputError("ring spec must be an object with a \"type\" string");
    std::string type = j.at("type").get<std::string>();
    if (type == "Q") return RingSpec::rationals();
    if (type == "Fp") {
        if (!j.contains("p") || !j.at("p").is_number_unsigned())
            throw InputError("ring spec Fp requires a positive integer \"p\"");
        try {
            return RingSpec::prime_field(j.at("p").get<std::uint64_t>());
        } catch (const PreconditionError& e) {
            throw InputError(e.what());
        }
    }
    if (type == "Zmod") {
        if (!j.contains("m") || !j.at("m").is_number_unsigned())
            throw InputError("ring spec Zmod requires a positive integer \"m\"");
        try {
            return RingSpec::residue(j.at("m").get<std::uint64_t>());
        } catch (const PreconditionError& e) {
            throw InputError(e.what());
        }
    }
    throw InputError("unknown ring type \"" + type + "\"");
}

/// A polynomial map document:
///   {"ring": <ring spec>, "vars": ["x", ...], "map": ["<poly>", ...]}
struct MapDocument {
    RingSpec ring;
    std::vector<std::string> vars;
    std::vector<std::string> map_text;

    PolyMap to_map() const {
        std::vector<Polynomial> comps;
        comps.reserve(map_text.size());
        for (const std::string& t : map_text) comps.push_back(parse_poly(t, vars, ring));
        return PolyMap(ring, vars, std::move(comps));
    }
};

inline MapDocument map_document_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("map document must be a JSON object");
    if (!j.contains("ring")) throw InputError("map document is missing \"ring\"");
    if (!j.contains("vars") || !j.at("vars").is_array())
        throw InputError("map document requires a \"vars\" array");
    if (!j.contains("map") || !j.at("map").is_array())
        throw InputError("map document requires a \"map\" array");
    MapDocument doc{ring_from_json(j.at("ring")), {}, {}};
    for (const Json& v : j.at("vars")) {
        if (!v.is_string()) throw InputError("\"vars\" entries must be strings");
        doc.vars.push_back(v.get<std::string>());
    }
    if (doc.vars.empty()) throw InputError("\"vars\" must be non-empty");
    for (const Json& p : j.at("map")) {
        if (!p.is_string()) throw InputError("\"map\" entries must be strings");
        doc.map_text.push_back(p.get<std::string>());
    }
    if (doc.map_text.empty()) throw InputError("\"map\" must be non-empty");
    return doc;
}

inline Json map_to_json(const PolyMap& F) {
    Json j;
    j["ring"] = ring_to_json(F.ring);
    j["vars"] = F.vars;
    std::vector<std::string> comps;
    comps.reserve(F.components.size());
    for (const Polynomial& f : F.components) comps.push_back(to_text(f));
    j["map"] = comps;
    return j;
}

}  // namespace polyhd
