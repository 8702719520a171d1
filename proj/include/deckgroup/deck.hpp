#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "bicritical.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "random.hpp"
#include "sphere.hpp"

namespace deckgroup {

// Deck(f^k) as a finite, composition-closed set of canonical Moebius maps.
struct DeckGroup {
    int k = 1;
    std::vector<MoebiusMap> elements;
    // |Deck(f^k)| - |Deck(f^{k-1})|: how many elements are new at this level
    int new_elements_count = 0;
};

// The nested chain Deck(f) <= Deck(f^2) <= ... <= Deck(f^k_max).
struct DeckChain {
    std::vector<DeckGroup> groups;
    std::optional<int> stabilized_at;  // smallest k with Deck(f^k) = Deck(f^{k+1})
    bool power_map = false;
};

inline bool contains_map(const std::vector<MoebiusMap>& set, const MoebiusMap& m, double eps) {
    for (const MoebiusMap& g : set)
        if (maps_equal(g, m, eps)) return true;
    return false;
}

namespace detail {

inline std::vector<cplx> roots_of_unity(int n) {
    std::vector<cplx> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) {
        double theta = 2.0 * M_PI * j / n;
        out.emplace_back(std::cos(theta), std::sin(theta));
    }
    return out;
}

inline std::vector<cplx> nth_roots(cplx a, int n) {
    double r = std::pow(std::abs(a), 1.0 / n);
    double theta = std::arg(a);
    std::vector<cplx> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) {
        double phi = (theta + 2.0 * M_PI * j) / n;
        out.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
    return out;
}

// f^k o phi = f^k within 10*eps on n_samples random points.
inline bool satisfies_deck_identity(const BicriticalMap& f, int k, const MoebiusMap& phi,
                                    const Tolerance& tol) {
    Rng rng(tol.rng_seed ^ 0x5ecdec1ULL);
    for (int i = 0; i < tol.n_samples; ++i) {
        SpherePoint p = rng.sphere_point();
        SpherePoint lhs = iterate_eval(f, k, phi.apply(p));
        SpherePoint rhs = iterate_eval(f, k, p);
        if (chordal_distance(lhs, rhs) > 10.0 * tol.eps) return false;
    }
    return true;
}

inline bool preserves_pair(const MoebiusMap& m, const PointPair& v, double eps) {
    PointPair image{m.apply(v.first), m.apply(v.second)};
    return pairs_equal(image, v, eps);
}

inline void verify_group(const BicriticalMap& f, int k, const std::vector<MoebiusMap>& elements,
                         const Tolerance& tol) {
    PointPair crit = critical_points(f);
    if (!contains_map(elements, MoebiusMap::identity(), tol.eps))
        throw verification_error("deck group: identity missing");
    for (const MoebiusMap& g : elements) {
        if (!satisfies_deck_identity(f, k, g, tol))
            throw verification_error("deck group: defining identity f^k o phi = f^k failed");
        if (!preserves_pair(g, crit, 10.0 * tol.eps))
            throw verification_error("deck group: element does not preserve the critical pair");
        if (!contains_map(elements, g.inverse(), tol.eps))
            throw verification_error("deck group: inverse missing");
    }
    // closure table; skipped for large power-map groups where it is closed
    // by construction and the quadratic scan gets expensive
    if (elements.size() <= 128) {
        for (const MoebiusMap& g : elements)
            for (const MoebiusMap& h : elements)
                if (!contains_map(elements, compose(g, h), tol.eps))
                    throw verification_error("deck group: not closed under composition");
    }
    std::int64_t n = static_cast<std::int64_t>(elements.size());
    if (n < f.degree) throw verification_error("deck group: order below degree");
    std::int64_t dk = 1;
    bool fits = true;
    for (int i = 0; i < k; ++i) {
        dk *= f.degree;
        if (dk > (std::int64_t(1) << 40)) { fits = false; break; }
    }
    if (fits && dk % n != 0)
        throw verification_error("deck group: order does not divide d^k");
}

} // namespace detail

// Deck(f) itself: the d rotations about the critical points,
// pre^{-1} o (z -> zeta z) o pre for zeta ranging over d-th roots of unity.
inline std::vector<MoebiusMap> base_deck(const BicriticalMap& f) {
    MoebiusMap inv = f.pre.inverse();
    std::vector<MoebiusMap> out;
    out.reserve(f.degree);
    for (cplx zeta : detail::roots_of_unity(f.degree))
        out.push_back(compose(inv, compose(MoebiusMap::scaling(zeta), f.pre)));
    return out;
}

// All d Moebius maps phi with f o phi = mu o f, given mu(V_f) = V_f.
// Conjugating by post reduces to g(z) = z^d, where mu becomes a z^{+-1} and
// the solutions are c z^{+-1} over the d-th roots c of a; conjugating back
// by pre yields one full Deck(f)-coset.
inline std::vector<MoebiusMap> lift(const BicriticalMap& f, const MoebiusMap& mu,
                                    const Tolerance& tol = {}) {
    PointPair values = critical_values(f);
    if (!detail::preserves_pair(mu, values, tol.eps))
        throw value_set_not_preserved_error("lift: mu does not preserve the critical value pair");

    MoebiusMap mu_g = compose(f.post.inverse(), compose(mu, f.post));
    bool fixes_zero = chordal_distance(mu_g.apply(SpherePoint::zero()), SpherePoint::zero()) < 1e-6;
    cplx a = fixes_zero ? mu_g.a / mu_g.d : mu_g.b / mu_g.c;

    MoebiusMap pre_inv = f.pre.inverse();
    std::vector<MoebiusMap> out;
    out.reserve(f.degree);
    for (cplx c : detail::nth_roots(a, f.degree)) {
        MoebiusMap phi_g = fixes_zero ? MoebiusMap::scaling(c) : MoebiusMap(0.0, c, 1.0, 0.0);
        out.push_back(compose(pre_inv, compose(phi_g, f.pre)));
    }

    Rng rng(tol.rng_seed ^ 0x11f7);
    std::vector<SpherePoint> samples;
    for (int i = 0; i < tol.n_samples; ++i) samples.push_back(rng.sphere_point());
    for (const MoebiusMap& phi : out)
        for (const SpherePoint& p : samples)
            if (chordal_distance(eval(f, phi.apply(p)), mu.apply(eval(f, p))) > 10.0 * tol.eps)
                throw lift_verification_error("lift: candidate fails f o phi = mu o f");
    return out;
}

// The unique mu with f o phi = mu o f for phi in Deck(f^k), reconstructed
// from the action on three regular values and then verified pointwise.
inline MoebiusMap project(const BicriticalMap& f, const MoebiusMap& phi, int k,
                          const Tolerance& tol = {}) {
    PointPair crit = critical_points(f);
    Rng rng(tol.rng_seed ^ 0x980ce5);
    auto regular = [&](const SpherePoint& p) {
        SpherePoint q = p;
        for (int i = 0; i < k; ++i) {
            if (crit.contains(q, 100.0 * tol.eps)) return false;
            q = eval(f, q);
        }
        return true;
    };

    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<SpherePoint> q, r;
        int guard = 0;
        while (q.size() < 3 && guard++ < 256) {
            SpherePoint z = rng.sphere_point();
            if (!regular(z)) continue;
            SpherePoint qz = eval(f, z);
            SpherePoint rz = eval(f, phi.apply(z));
            bool separated = true;
            for (std::size_t i = 0; i < q.size(); ++i)
                if (chordal_distance(q[i], qz) < 1e-3 || chordal_distance(r[i], rz) < 1e-3)
                    separated = false;
            if (!separated) continue;
            q.push_back(qz);
            r.push_back(rz);
        }
        if (q.size() < 3) continue;
        MoebiusMap mu;
        try {
            mu = mobius_from_three_points(q[0], r[0], q[1], r[1], q[2], r[2], tol.eps);
        } catch (const degenerate_triple_error&) {
            continue;
        }
        bool ok = true;
        for (int i = 0; i < tol.n_samples && ok; ++i) {
            SpherePoint p = rng.sphere_point();
            if (chordal_distance(eval(f, phi.apply(p)), mu.apply(eval(f, p))) > 10.0 * tol.eps)
                ok = false;
        }
        if (ok) return mu;
    }
    throw projection_verification_error("project: three-point reconstruction failed verification");
}

inline std::vector<MoebiusMap> value_preserving_subset(const std::vector<MoebiusMap>& elements,
                                                       const PointPair& values,
                                                       double eps = 1e-9) {
    std::vector<MoebiusMap> out;
    for (const MoebiusMap& g : elements)
        if (detail::preserves_pair(g, values, eps)) out.push_back(g);
    return out;
}

// The group Gamma of Moebius maps preserving both the critical pair and the
// value pair: trivial when |C_f u V_f| = 3, a subgroup of V_4 when the four
// points are distinct.  Infinite for power maps, which must branch earlier.
inline std::vector<MoebiusMap> gamma_group(const BicriticalMap& f, const Tolerance& tol = {}) {
    PointPair c = critical_points(f);
    PointPair v = critical_values(f);
    if (pairs_equal(c, v, tol.eps))
        throw power_map_input_error("gamma_group: power map has infinitely many such maps");
    if (c.contains(v.first, tol.eps) || c.contains(v.second, tol.eps))
        return {MoebiusMap::identity()};

    std::vector<MoebiusMap> out{MoebiusMap::identity()};
    auto try_candidate = [&](const SpherePoint& p1, const SpherePoint& q1, const SpherePoint& p2,
                             const SpherePoint& q2, const SpherePoint& p3, const SpherePoint& q3,
                             const SpherePoint& p4, const SpherePoint& q4) {
        MoebiusMap m;
        try {
            m = mobius_from_three_points(p1, q1, p2, q2, p3, q3, tol.eps);
        } catch (const degenerate_triple_error&) {
            return;
        }
        if (chordal_distance(m.apply(p4), q4) > 10.0 * tol.eps) return;
        if (!is_identity(compose(m, m), 10.0 * tol.eps)) return;
        out.push_back(m);
    };
    // fixes C_f pointwise, swaps V_f
    try_candidate(c.first, c.first, c.second, c.second, v.first, v.second, v.second, v.first);
    // fixes V_f pointwise, swaps C_f
    try_candidate(v.first, v.first, v.second, v.second, c.first, c.second, c.second, c.first);
    // swaps both pairs
    try_candidate(c.first, c.second, c.second, c.first, v.first, v.second, v.second, v.first);
    return out;
}

namespace detail {

// One level up: the union of the lifts of every value-preserving element.
// Always a superset of the previous level (the identity lifts to Deck(f)).
inline std::vector<MoebiusMap> next_level(const BicriticalMap& f,
                                          const std::vector<MoebiusMap>& current,
                                          const Tolerance& tol) {
    std::vector<MoebiusMap> out = current;
    PointPair values = critical_values(f);
    for (const MoebiusMap& mu : current) {
        if (!preserves_pair(mu, values, tol.eps)) continue;
        for (const MoebiusMap& phi : lift(f, mu, tol))
            if (!contains_map(out, phi, tol.eps)) out.push_back(phi);
    }
    return out;
}

inline std::vector<MoebiusMap> power_map_group(const BicriticalMap& f, int k) {
    std::int64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= f.degree;
        if (n > 4096)
            throw degenerate_map_error("power map deck group: d^k exceeds the 4096-element cap");
    }
    MoebiusMap inv = f.pre.inverse();
    std::vector<MoebiusMap> out;
    out.reserve(static_cast<std::size_t>(n));
    for (cplx zeta : roots_of_unity(static_cast<int>(n)))
        out.push_back(compose(inv, compose(MoebiusMap::scaling(zeta), f.pre)));
    return out;
}

} // namespace detail

// The chain Deck(f), ..., Deck(f^k_max).  Power maps get the closed-form
// rotation groups; otherwise levels are built by lifting and the loop stops
// lifting once two consecutive levels coincide.
inline DeckChain compute_deck_chain(const BicriticalMap& f, int k_max, const Tolerance& tol = {}) {
    DeckChain chain;
    chain.power_map = is_power_map(f, tol);

    if (chain.power_map) {
        std::size_t prev = 0;
        for (int k = 1; k <= k_max; ++k) {
            DeckGroup g;
            g.k = k;
            g.elements = detail::power_map_group(f, k);
            g.new_elements_count = static_cast<int>(g.elements.size() - prev);
            prev = g.elements.size();
            detail::verify_group(f, k, g.elements, tol);
            chain.groups.push_back(std::move(g));
        }
        return chain;
    }

    std::vector<MoebiusMap> current = base_deck(f);
    detail::verify_group(f, 1, current, tol);
    chain.groups.push_back(DeckGroup{1, current, static_cast<int>(current.size())});

    for (int k = 2; k <= k_max; ++k) {
        if (chain.stabilized_at) {
            chain.groups.push_back(DeckGroup{k, current, 0});
            continue;
        }
        std::vector<MoebiusMap> next = detail::next_level(f, current, tol);
        if (next.size() == current.size()) {
            chain.stabilized_at = k - 1;
            chain.groups.push_back(DeckGroup{k, current, 0});
            continue;
        }
        detail::verify_group(f, k, next, tol);
        chain.groups.push_back(
            DeckGroup{k, next, static_cast<int>(next.size() - current.size())});
        current = std::move(next);
    }
    // probe one level past k_max so a chain that flattens exactly at k_max
    // still reports its stabilization point
    if (!chain.stabilized_at && k_max >= 1) {
        std::vector<MoebiusMap> probe = detail::next_level(f, current, tol);
        if (probe.size() == current.size()) chain.stabilized_at = k_max;
    }
    return chain;
}

inline DeckGroup deck_group(const BicriticalMap& f, int k, const Tolerance& tol = {}) {
    DeckChain chain = compute_deck_chain(f, k, tol);
    return chain.groups.back();
}

} // namespace deckgroup
