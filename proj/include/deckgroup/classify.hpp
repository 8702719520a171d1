#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicritical.hpp"
#include "deck.hpp"
#include "errors.hpp"
#include "moebius.hpp"

namespace deckgroup {

// Abstract isomorphism type of a finite Moebius group.  Convention: order-2
// groups are Cyclic(2), dihedral labels start at order 4, and V_4 = D_4.
struct GroupType {
    enum class Tag { Cyclic, Dihedral };
    Tag tag = Tag::Cyclic;
    int order = 1;

    static GroupType cyclic(int n) { return GroupType{Tag::Cyclic, n}; }
    static GroupType dihedral(int n) { return GroupType{Tag::Dihedral, n}; }

    bool is_cyclic() const { return tag == Tag::Cyclic; }
    bool is_dihedral() const { return tag == Tag::Dihedral; }

    bool operator==(const GroupType& other) const {
        return tag == other.tag && order == other.order;
    }

    std::string str() const {
        return (is_cyclic() ? "Z_" : "D_") + std::to_string(order);
    }
};

namespace detail {

inline int element_order(const MoebiusMap& g, int group_size, double eps) {
    MoebiusMap acc = g;
    for (int n = 1; n <= group_size; ++n) {
        if (is_identity(acc, eps)) return n;
        acc = compose(acc, g);
    }
    return 0;  // not finite within the group size: impossible in a group
}

} // namespace detail

// Recognize a finite Moebius group as cyclic or dihedral via its element
// orders plus an explicit dihedral certificate R^n = F^2 = (RF)^2 = id.
inline GroupType identify_group(const std::vector<MoebiusMap>& elements, const Tolerance& tol = {}) {
    const int n = static_cast<int>(elements.size());
    if (n == 0 || !contains_map(elements, MoebiusMap::identity(), tol.eps))
        throw not_a_group_error("identify_group: identity missing");
    for (const MoebiusMap& g : elements)
        if (!contains_map(elements, g.inverse(), tol.eps))
            throw not_a_group_error("identify_group: inverse missing");
    for (const MoebiusMap& g : elements)
        for (const MoebiusMap& h : elements)
            if (!contains_map(elements, compose(g, h), tol.eps))
                throw not_a_group_error("identify_group: not closed under composition");

    std::vector<int> orders;
    orders.reserve(n);
    for (const MoebiusMap& g : elements) {
        int o = detail::element_order(g, n, tol.eps);
        if (o == 0) throw not_a_group_error("identify_group: element of infinite order");
        orders.push_back(o);
    }

    for (int o : orders)
        if (o == n) return GroupType::cyclic(n);

    if (n >= 4 && n % 2 == 0) {
        for (int i = 0; i < n; ++i) {
            if (orders[i] != n / 2) continue;
            const MoebiusMap& rot = elements[i];
            // powers of the rotation
            std::vector<MoebiusMap> cyc{MoebiusMap::identity()};
            MoebiusMap acc = rot;
            for (int j = 1; j < n / 2; ++j) {
                cyc.push_back(acc);
                acc = compose(acc, rot);
            }
            for (int j = 0; j < n; ++j) {
                const MoebiusMap& flip = elements[j];
                if (orders[j] != 2 || contains_map(cyc, flip, tol.eps)) continue;
                bool relation =
                    is_identity(compose(compose(rot, flip), compose(rot, flip)), tol.eps) &&
                    maps_equal(compose(flip, compose(rot, flip)), rot.inverse(), tol.eps);
                if (relation) return GroupType::dihedral(n);
            }
        }
    }
    throw unrecognized_group_error("identify_group: neither cyclic nor dihedral certificate holds");
}

struct LevelResult {
    int k = 1;
    int order = 0;
    GroupType type;
};

struct ClassificationReport {
    int degree = 2;
    bool power_map = false;
    bool critically_coalescing = false;
    bool degenerate_warning = false;  // input numerically close to the power-map locus
    std::vector<LevelResult> levels;
    std::optional<std::string> violation;  // empty means consistent

    bool consistent() const { return !violation.has_value(); }
};

namespace detail {

inline std::optional<std::string> theorem_check(const ClassificationReport& report) {
    const int d = report.degree;
    for (const LevelResult& level : report.levels) {
        std::ostringstream ctx;
        ctx << "d=" << d << " k=" << level.k << " order=" << level.order
            << " type=" << level.type.str() << ": ";
        if (d % 2 == 1) {
            if (!level.type.is_cyclic())
                return ctx.str() + "odd degree admits only cyclic deck groups";
            if (report.power_map) {
                std::int64_t expected = 1;
                for (int i = 0; i < level.k; ++i) expected *= d;
                if (level.order != expected)
                    return ctx.str() + "power map of odd degree must give Z_{d^k}";
            } else if (level.order != d) {
                return ctx.str() + "non-power map of odd degree must give Z_d at every level";
            }
        } else {
            bool allowed = false;
            if (level.type.is_cyclic()) {
                std::int64_t p = d;
                while (p <= level.order) {
                    if (p == level.order) { allowed = true; break; }
                    p *= d;
                }
            } else {
                allowed = level.order == 2 * d || level.order == 4 * d;
            }
            if (!allowed)
                return ctx.str() + "even degree admits only Z_{d^n}, D_{2d} or D_{4d}";
            if (!report.power_map && level.order > 4 * d)
                return ctx.str() + "non-power map exceeds the 4d order bound";
        }
    }
    return std::nullopt;
}

} // namespace detail

// Identify every level of an already computed chain and check the result
// against the degree-parity classification.  A violation on a valid run
// signals a numerical failure (or a genuine counterexample).
inline ClassificationReport classify_chain(const BicriticalMap& f, const DeckChain& chain,
                                           const Tolerance& tol = {}) {
    ClassificationReport report;
    report.degree = f.degree;
    report.power_map = chain.power_map;
    report.critically_coalescing = is_critically_coalescing(f, tol);
    report.degenerate_warning = is_near_power_map(f, tol);

    for (const DeckGroup& g : chain.groups) {
        LevelResult level;
        level.k = g.k;
        level.order = static_cast<int>(g.elements.size());
        level.type = identify_group(g.elements, tol);
        report.levels.push_back(level);
    }
    report.violation = detail::theorem_check(report);
    return report;
}

inline ClassificationReport classify_map(const BicriticalMap& f, int k_max,
                                         const Tolerance& tol = {}) {
    return classify_chain(f, compute_deck_chain(f, k_max, tol), tol);
}

// A dihedral deck group forces critical coalescence; the converse fails.
inline bool check_dihedral_coalescing(const BicriticalMap& f, const ClassificationReport& report,
                                      const Tolerance& tol = {}) {
    bool dihedral_seen = false;
    for (const LevelResult& level : report.levels)
        if (level.type.is_dihedral()) dihedral_seen = true;
    return !dihedral_seen || is_critically_coalescing(f, tol);
}

} // namespace deckgroup
