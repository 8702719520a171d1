#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "bicritical.hpp"
#include "classify.hpp"
#include "deck.hpp"
#include "moebius.hpp"
#include "sphere.hpp"

// Complex numbers serialize as two-element arrays [re, im].
namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& z) {
        j = json::array({z.real(), z.imag()});
    }
    static void from_json(const json& j, std::complex<double>& z) {
        z = std::complex<double>(j.at(0).get<double>(), j.at(1).get<double>());
    }
};
} // namespace nlohmann

namespace deckgroup {

using nlohmann::json;

inline void to_json(json& j, const SpherePoint& p) {
    j = json{{"z", p.z}, {"w", p.w}};
}

inline void from_json(const json& j, SpherePoint& p) {
    cplx z = j.at("z").get<cplx>();
    cplx w = j.at("w").get<cplx>();
    p = normalize_point(z, w);
}

inline void to_json(json& j, const MoebiusMap& m) {
    j = json{{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}};
}

inline void from_json(const json& j, MoebiusMap& m) {
    m = MoebiusMap(j.at("a").get<cplx>(), j.at("b").get<cplx>(), j.at("c").get<cplx>(),
                   j.at("d").get<cplx>());
}

inline void to_json(json& j, const BicriticalMap& f) {
    j = json{{"pre", f.pre}, {"d", f.degree}, {"post", f.post}};
}

inline BicriticalMap bicritical_from_json(const json& j) {
    if (j.contains("normal_form")) {
        const json& nf = j.at("normal_form");
        return from_normal_form(nf.at("alpha").get<cplx>(), nf.at("beta").get<cplx>(),
                                nf.at("gamma").get<cplx>(), nf.at("delta").get<cplx>(),
                                nf.at("d").get<int>());
    }
    return BicriticalMap(j.at("pre").get<MoebiusMap>(), j.at("d").get<int>(),
                         j.at("post").get<MoebiusMap>());
}

// Small generating set: a maximal-order rotation, plus a flip for dihedral
// groups.
inline std::vector<MoebiusMap> generators_of(const std::vector<MoebiusMap>& elements,
                                             const Tolerance& tol = {}) {
    if (elements.empty()) return {};
    int best_order = 0;
    MoebiusMap rot;
    for (const MoebiusMap& g : elements) {
        int o = detail::element_order(g, static_cast<int>(elements.size()), tol.eps);
        if (o > best_order) {
            best_order = o;
            rot = g;
        }
    }
    std::vector<MoebiusMap> span{MoebiusMap::identity()};
    MoebiusMap acc = rot;
    for (int j = 1; j < best_order; ++j) {
        span.push_back(acc);
        acc = compose(acc, rot);
    }
    std::vector<MoebiusMap> gens{rot};
    for (const MoebiusMap& g : elements)
        if (!contains_map(span, g, tol.eps)) {
            gens.push_back(g);
            break;
        }
    return gens;
}

inline json deck_group_to_json(const DeckGroup& g, const GroupType& type,
                               const Tolerance& tol = {}) {
    return json{{"k", g.k},
                {"order", g.elements.size()},
                {"group_type", type.str()},
                {"elements", g.elements},
                {"generators", generators_of(g.elements, tol)},
                {"new_elements_count", g.new_elements_count}};
}

inline void to_json(json& j, const LevelResult& level) {
    j = json{{"k", level.k}, {"order", level.order}, {"type", level.type.str()}};
}

inline void to_json(json& j, const ClassificationReport& report) {
    j = json{{"degree", report.degree},
             {"power_map", report.power_map},
             {"critically_coalescing", report.critically_coalescing},
             {"levels", report.levels}};
    if (report.degenerate_warning) j["degenerate_warning"] = true;
    if (report.violation)
        j["verdict"] = json{{"violation", *report.violation}};
    else
        j["verdict"] = "consistent";
}

} // namespace deckgroup
