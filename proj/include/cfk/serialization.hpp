#pragma once

// JSON complex files:
// {
//   "mode": "poly" | "local",
//   "generators": [{"name": ..., "gr_u": ..., "gr_v": ...}, ...],
//   "differential": [{"from": ..., "to": ..., "terms": [{"u":..,"v":..}]}, ...]
// }
// The loader re-validates all complex invariants.

#include <fstream>

#include <json.hpp>

#include "cfk/complex.hpp"

namespace cfk {

inline nlohmann::json to_json(const ChainComplex& C) {
    nlohmann::json j;
    j["mode"] = mode_name(C.mode());
    j["generators"] = nlohmann::json::array();
    for (const auto& g : C.gens())
        j["generators"].push_back({{"name", g.name}, {"gr_u", g.gr_u}, {"gr_v", g.gr_v}});
    j["differential"] = nlohmann::json::array();
    for (int x = 0; x < C.size(); ++x)
        for (const auto& [y, d] : C.col(x)) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : d.terms()) terms.push_back({{"u", t.u}, {"v", t.v}});
            j["differential"].push_back({{"from", C.gen(x).name},
                                         {"to", C.gen(y).name},
                                         {"terms", terms}});
        }
    return j;
}

inline ChainComplex complex_from_json(const nlohmann::json& j) {
    std::string ms = j.at("mode").get<std::string>();
    Mode mode;
    if (ms == "poly") mode = Mode::poly;
    else if (ms == "local") mode = Mode::local;
    else throw ComplexError("unknown ring mode " + ms);
    std::vector<Generator> gens;
    std::map<std::string, int> byname;
    for (const auto& g : j.at("generators")) {
        Generator gen{g.at("name").get<std::string>(), g.at("gr_u").get<int>(),
                      g.at("gr_v").get<int>()};
        byname[gen.name] = int(gens.size());
        gens.push_back(gen);
    }
    std::vector<Arrow> arrows;
    for (const auto& a : j.at("differential")) {
        auto fi = byname.find(a.at("from").get<std::string>());
        auto ti = byname.find(a.at("to").get<std::string>());
        if (fi == byname.end() || ti == byname.end())
            throw ComplexError("differential references an unknown generator");
        std::vector<Mono> ts;
        for (const auto& t : a.at("terms"))
            ts.push_back(Mono{t.at("u").get<int>(), t.at("v").get<int>()});
        arrows.push_back({fi->second, ti->second, RingElement::from_terms(mode, ts)});
    }
    return ChainComplex(mode, std::move(gens), arrows);  // validates
}

inline void save_complex(const ChainComplex& C, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ComplexError("cannot write " + path);
    out << to_json(C).dump(2) << "\n";
}

inline ChainComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ComplexError("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return complex_from_json(j);
}

}  // namespace cfk
