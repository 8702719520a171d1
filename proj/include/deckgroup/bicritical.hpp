#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "errors.hpp"
#include "moebius.hpp"
#include "sphere.hpp"

namespace deckgroup {

// Unordered pair of distinct sphere points; houses critical point and
// critical value sets.
struct PointPair {
    SpherePoint first;
    SpherePoint second;

    bool contains(const SpherePoint& p, double eps) const {
        return points_equal(first, p, eps) || points_equal(second, p, eps);
    }
};

inline bool pairs_equal(const PointPair& p, const PointPair& q, double eps) {
    bool straight = points_equal(p.first, q.first, eps) && points_equal(p.second, q.second, eps);
    bool crossed = points_equal(p.first, q.second, eps) && points_equal(p.second, q.first, eps);
    return straight || crossed;
}

// Hausdorff-style distance between unordered pairs: best matching, worst
// member.  Zero iff the pairs coincide setwise.
inline double pair_distance(const PointPair& p, const PointPair& q) {
    double straight = std::max(chordal_distance(p.first, q.first),
                               chordal_distance(p.second, q.second));
    double crossed = std::max(chordal_distance(p.first, q.second),
                              chordal_distance(p.second, q.first));
    return std::min(straight, crossed);
}

// A degree-d bicritical rational map stored in factored form
//   f = post o (z -> z^d) o pre.
// The factored form keeps critical data closed form: C_f = pre^{-1}{0, inf},
// V_f = post{0, inf}.
struct BicriticalMap {
    MoebiusMap pre;
    int degree;
    MoebiusMap post;

    BicriticalMap(MoebiusMap pre_, int degree_, MoebiusMap post_)
        : pre(std::move(pre_)), degree(degree_), post(std::move(post_)) {
        if (degree < 2) throw bad_degree_error("BicriticalMap: degree must be >= 2");
    }
};

// f(z) = (alpha z^d + beta)/(gamma z^d + delta)
inline BicriticalMap from_normal_form(cplx alpha, cplx beta, cplx gamma, cplx delta, int d) {
    if (d < 2) throw bad_degree_error("from_normal_form: degree must be >= 2");
    double scale = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma), std::abs(delta)});
    if (scale == 0.0 || std::abs(alpha * delta - beta * gamma) <= 1e-12 * scale * scale)
        throw singular_matrix_error("from_normal_form: coefficient determinant vanishes");
    return BicriticalMap(MoebiusMap::identity(), d, MoebiusMap(alpha, beta, gamma, delta));
}

inline SpherePoint power_point(const SpherePoint& p, int d) {
    cplx z = p.z, w = p.w;
    cplx zd(1.0), wd(1.0);
    for (int i = 0; i < d; ++i) { zd *= z; wd *= w; }
    return normalize_point(zd, wd);
}

inline SpherePoint eval(const BicriticalMap& f, const SpherePoint& p) {
    return f.post.apply(power_point(f.pre.apply(p), f.degree));
}

inline SpherePoint iterate_eval(const BicriticalMap& f, int k, SpherePoint p) {
    for (int i = 0; i < k; ++i) p = eval(f, p);
    return p;
}

inline PointPair critical_points(const BicriticalMap& f) {
    MoebiusMap inv = f.pre.inverse();
    return PointPair{inv.apply(SpherePoint::zero()), inv.apply(SpherePoint::infinity())};
}

inline PointPair critical_values(const BicriticalMap& f) {
    return PointPair{f.post.apply(SpherePoint::zero()), f.post.apply(SpherePoint::infinity())};
}

inline bool is_power_map(const BicriticalMap& f, const Tolerance& tol = {}) {
    return pairs_equal(critical_points(f), critical_values(f), tol.eps);
}

// The classification is discontinuous at the power-map locus; flag inputs
// that sit numerically close to it so callers know the verdict is fragile.
inline bool is_near_power_map(const BicriticalMap& f, const Tolerance& tol = {}) {
    double dist = pair_distance(critical_points(f), critical_values(f));
    return dist > tol.eps && dist <= 10.0 * tol.eps;
}

// f(v1) = f(v2) for the critical values v1, v2.
inline bool is_critically_coalescing(const BicriticalMap& f, const Tolerance& tol = {}) {
    PointPair v = critical_values(f);
    return chordal_distance(eval(f, v.first), eval(f, v.second)) < tol.eps;
}

// Local degree of f^k at p: product of deg_f over the first k orbit points,
// where deg_f(q) = d on a critical point and 1 elsewhere.  Membership uses
// a loosened threshold since orbit points accumulate rounding error.
inline std::int64_t local_degree(const BicriticalMap& f, int k, SpherePoint p,
                                 const Tolerance& tol = {}) {
    PointPair crit = critical_points(f);
    std::int64_t result = 1;
    for (int i = 0; i < k; ++i) {
        if (crit.contains(p, 10.0 * tol.eps)) result *= f.degree;
        p = eval(f, p);
    }
    return result;
}

} // namespace deckgroup
