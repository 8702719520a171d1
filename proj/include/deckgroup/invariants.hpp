#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicritical.hpp"
#include "classify.hpp"
#include "deck.hpp"
#include "random.hpp"

namespace deckgroup {

// Structural checks run over a computed deck chain: the defining identity,
// nesting, critical-pair preservation, prime-order exclusion, the growth
// quotient bound and the local-degree bound.  Returns a description of the
// first failure, or nullopt.
inline std::optional<std::string> check_chain_invariants(const BicriticalMap& f,
                                                         const DeckChain& chain,
                                                         const Tolerance& tol = {}) {
    const int d = f.degree;
    PointPair crit = critical_points(f);
    Rng rng(tol.rng_seed ^ 0x1237abcd);

    auto fail = [&](int k, const std::string& what) {
        std::ostringstream os;
        os << "invariant failure at d=" << d << " k=" << k << ": " << what;
        return os.str();
    };

    for (std::size_t idx = 0; idx < chain.groups.size(); ++idx) {
        const DeckGroup& g = chain.groups[idx];
        const int k = g.k;

        for (const MoebiusMap& phi : g.elements) {
            for (int i = 0; i < tol.n_samples; ++i) {
                SpherePoint p = rng.sphere_point();
                if (chordal_distance(iterate_eval(f, k, phi.apply(p)), iterate_eval(f, k, p)) >
                    10.0 * tol.eps)
                    return fail(k, "defining identity f^k o phi = f^k");
            }
            if (!detail::preserves_pair(phi, crit, 10.0 * tol.eps))
                return fail(k, "critical-pair preservation");
        }

        if (idx > 0) {
            const DeckGroup& prev = chain.groups[idx - 1];
            for (const MoebiusMap& phi : prev.elements)
                if (!contains_map(g.elements, phi, tol.eps))
                    return fail(k, "nesting Deck(f^{k-1}) in Deck(f^k)");
            std::size_t a = prev.elements.size(), b = g.elements.size();
            if (b % a != 0) return fail(k, "level size not a multiple of previous level");
            std::size_t quotient = b / a;
            if (quotient > static_cast<std::size_t>(d)) return fail(k, "growth quotient above d");
            if (!chain.power_map && quotient > 2)
                return fail(k, "growth quotient above 2 for a non-power map");
        }

        int max_order = 1;
        MoebiusMap witness;
        for (const MoebiusMap& phi : g.elements) {
            int o = detail::element_order(phi, static_cast<int>(g.elements.size()), tol.eps);
            if (o == 0) return fail(k, "element order not found within group size");
            int reduced = o;
            for (int p = 2; p <= reduced; ++p) {
                while (reduced % p == 0 && d % p == 0) reduced /= p;
                if (reduced % p == 0) return fail(k, "element order has a prime factor not dividing d");
            }
            if (o > max_order) {
                max_order = o;
                witness = phi;
            }
        }

        if (max_order > 1) {
            std::int64_t best = 1;
            FixedPointSet fix = fixed_points(witness, tol.eps);
            std::vector<SpherePoint> candidates = fix.points;
            candidates.push_back(crit.first);
            candidates.push_back(crit.second);
            for (const SpherePoint& z : candidates)
                best = std::max(best, local_degree(f, k, z, tol));
            if (best < max_order)
                return fail(k, "local-degree bound: no point with deg_{f^k} >= max element order");
        }
    }
    return std::nullopt;
}

} // namespace deckgroup
