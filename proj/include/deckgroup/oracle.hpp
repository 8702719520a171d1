#pragma once

#include <cstdint>
#include <vector>

#include "bicritical.hpp"
#include "deck.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "random.hpp"

namespace deckgroup {

// Brute-force recomputation of Deck(f^k) with no lift recursion: enumerate
// Moebius candidates from triples of points in a full fiber f^{-k}(q) and
// keep those satisfying f^k o phi = f^k.  Independent cross-check for the
// iterative engine.

// The d preimages of a regular value q, by d-th root extraction through the
// factored form.
inline std::vector<SpherePoint> fiber(const BicriticalMap& f, const SpherePoint& q) {
    SpherePoint s = f.post.inverse().apply(q);  // w^d = s
    MoebiusMap pre_inv = f.pre.inverse();
    std::vector<SpherePoint> out;
    out.reserve(f.degree);
    if (s.is_infinity(1e-14)) {
        out.push_back(pre_inv.apply(SpherePoint::infinity()));
        return out;
    }
    for (cplx root : detail::nth_roots(s.affine(), f.degree))
        out.push_back(pre_inv.apply(point(root)));
    return out;
}

// All d^k preimages under f^k, by k-fold pull-back.
inline std::vector<SpherePoint> iterated_fiber(const BicriticalMap& f, int k,
                                               const SpherePoint& q) {
    std::vector<SpherePoint> current{q};
    for (int i = 0; i < k; ++i) {
        std::vector<SpherePoint> next;
        next.reserve(current.size() * f.degree);
        for (const SpherePoint& p : current)
            for (const SpherePoint& pre : fiber(f, p)) next.push_back(pre);
        current = std::move(next);
    }
    return current;
}

namespace detail {

inline double min_pairwise_distance(const std::vector<SpherePoint>& pts) {
    double best = 2.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, chordal_distance(pts[i], pts[j]));
    return best;
}

} // namespace detail

inline std::vector<MoebiusMap> brute_force_deck(const BicriticalMap& f, int k,
                                                const Tolerance& tol = {}) {
    std::int64_t fiber_size = 1;
    for (int i = 0; i < k; ++i) fiber_size *= f.degree;
    if (fiber_size > 64)
        throw oracle_too_large_error("brute_force_deck: d^k exceeds the 64-point fiber cap");

    Rng rng(tol.rng_seed ^ 0x0ac1e);

    // a regular value whose full fiber is well separated
    std::vector<SpherePoint> points;
    double best_separation = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<SpherePoint> candidate = iterated_fiber(f, k, rng.sphere_point());
        if (candidate.size() != static_cast<std::size_t>(fiber_size)) continue;
        double separation = detail::min_pairwise_distance(candidate);
        if (separation > best_separation) {
            best_separation = separation;
            points = std::move(candidate);
        }
        if (best_separation > 1e-4) break;
    }
    // clustered fibers are fine for candidate enumeration as long as the
    // points are still resolvable at the dedup tolerance
    if (points.empty() || best_separation <= 100.0 * tol.eps)
        throw verification_error("brute_force_deck: no well-separated regular fiber found");

    // well-conditioned base triple
    const std::size_t n = points.size();
    std::size_t i1 = 0, i2 = 1, i3 = 2;
    if (n > 3) {
        double best = -1.0;
        for (std::size_t j = 1; j < n; ++j) {
            double dist = chordal_distance(points[i1], points[j]);
            if (dist > best) { best = dist; i2 = j; }
        }
        best = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i1 || j == i2) continue;
            double dist = std::min(chordal_distance(points[i1], points[j]),
                                   chordal_distance(points[i2], points[j]));
            if (dist > best) { best = dist; i3 = j; }
        }
    }
    const SpherePoint& p1 = points[i1];
    const SpherePoint& p2 = points[i2];
    const SpherePoint& p3 = points[i3];

    std::vector<SpherePoint> samples;
    for (int i = 0; i < tol.n_samples; ++i) samples.push_back(rng.sphere_point());
    SpherePoint quick = rng.sphere_point();
    SpherePoint quick_image = iterate_eval(f, k, quick);

    std::vector<MoebiusMap> found;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                MoebiusMap t;
                try {
                    t = mobius_from_three_points(p1, points[a], p2, points[b], p3, points[c],
                                                 tol.eps);
                } catch (const degenerate_triple_error&) {
                    continue;
                }
                if (chordal_distance(iterate_eval(f, k, t.apply(quick)), quick_image) >
                    10.0 * tol.eps)
                    continue;
                bool ok = true;
                for (const SpherePoint& p : samples) {
                    if (chordal_distance(iterate_eval(f, k, t.apply(p)), iterate_eval(f, k, p)) >
                        10.0 * tol.eps) {
                        ok = false;
                        break;
                    }
                }
                if (ok && !contains_map(found, t, 10.0 * tol.eps)) found.push_back(t);
            }
        }
    }
    return found;
}

// Elementwise equality of the oracle's group and the engine's group.
inline bool oracle_matches_engine(const BicriticalMap& f, int k, const Tolerance& tol = {}) {
    std::vector<MoebiusMap> oracle = brute_force_deck(f, k, tol);
    std::vector<MoebiusMap> engine = deck_group(f, k, tol).elements;
    if (oracle.size() != engine.size()) return false;
    for (const MoebiusMap& g : engine)
        if (!contains_map(oracle, g, 10.0 * tol.eps)) return false;
    for (const MoebiusMap& g : oracle)
        if (!contains_map(engine, g, 10.0 * tol.eps)) return false;
    return true;
}

} // namespace deckgroup
