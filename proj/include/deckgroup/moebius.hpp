#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "sphere.hpp"

namespace deckgroup {

// Moebius transformation z -> (az + b)/(cz + d), stored as a 2x2 complex
// matrix in canonical form: determinant scaled to 1, then the residual sign
// (+-M describe the same map) fixed by requiring the first entry of largest
// modulus to have argument in [0, pi).  Canonical forms of projectively
// equal maps agree entrywise up to rounding.
struct MoebiusMap {
    cplx a, b, c, d;

    MoebiusMap() : a(1.0), b(0.0), c(0.0), d(1.0) {}

    MoebiusMap(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
        canonicalize();
    }

    static MoebiusMap identity() { return MoebiusMap(); }
    static MoebiusMap scaling(cplx s) { return MoebiusMap(s, 0.0, 0.0, 1.0); }
    static MoebiusMap inversion() { return MoebiusMap(0.0, 1.0, 1.0, 0.0); }
    static MoebiusMap translation(cplx t) { return MoebiusMap(1.0, t, 0.0, 1.0); }

    cplx det() const { return a * d - b * c; }

    MoebiusMap inverse() const { return MoebiusMap(d, -b, -c, a); }

    SpherePoint apply(const SpherePoint& p) const {
        return normalize_point(a * p.z + b * p.w, c * p.z + d * p.w);
    }

    cplx apply_affine(cplx z) const { return apply(point(z)).affine(); }

    friend MoebiusMap compose(const MoebiusMap& lhs, const MoebiusMap& rhs) {
        return MoebiusMap(lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d);
    }

    friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs) {
        return compose(lhs, rhs);
    }

    friend std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
        return os << "(" << m.a << ", " << m.b << ", " << m.c << ", " << m.d << ")";
    }

private:
    void canonicalize() {
        double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
        if (scale == 0.0 || std::abs(det()) <= 1e-12 * scale * scale)
            throw singular_matrix_error("MoebiusMap: determinant is numerically zero");
        cplx s = std::sqrt(det());
        a /= s; b /= s; c /= s; d /= s;
        // first entry of largest modulus gets argument in [0, pi)
        const std::array<cplx, 4> e{a, b, c, d};
        double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
        cplx lead = a;
        for (const cplx& x : e) {
            if (std::abs(x) >= m) { lead = x; break; }
        }
        if (lead.imag() < 0.0 || (lead.imag() == 0.0 && lead.real() < 0.0)) {
            a = -a; b = -b; c = -c; d = -d;
        }
    }
};

// Projective equality of canonical matrices.  The sign convention can flip
// across the argument boundary under rounding, so both signs are compared.
inline bool maps_equal(const MoebiusMap& s, const MoebiusMap& t, double eps) {
    auto close = [eps](cplx x, cplx y) { return std::abs(x - y) <= eps; };
    if (close(s.a, t.a) && close(s.b, t.b) && close(s.c, t.c) && close(s.d, t.d)) return true;
    return close(s.a, -t.a) && close(s.b, -t.b) && close(s.c, -t.c) && close(s.d, -t.d);
}

inline bool is_identity(const MoebiusMap& t, double eps) {
    return maps_equal(t, MoebiusMap::identity(), eps);
}

struct FixedPointSet {
    bool whole_sphere = false;          // identity map: every point is fixed
    std::vector<SpherePoint> points;    // otherwise 1 (parabolic) or 2 points
};

// Fixed points as eigenvectors of the canonical matrix (det = 1).
inline FixedPointSet fixed_points(const MoebiusMap& t, double eps = 1e-9) {
    FixedPointSet result;
    if (is_identity(t, eps)) {
        result.whole_sphere = true;
        return result;
    }
    cplx tr = t.a + t.d;
    cplx disc = tr * tr - 4.0;
    auto eigenvector = [&t](cplx lambda) {
        cplx z1 = t.b, w1 = lambda - t.a;
        cplx z2 = lambda - t.d, w2 = t.c;
        if (std::norm(z1) + std::norm(w1) >= std::norm(z2) + std::norm(w2))
            return normalize_point(z1, w1);
        return normalize_point(z2, w2);
    };
    if (std::abs(disc) <= eps) {
        result.points.push_back(eigenvector(tr / 2.0));
        return result;
    }
    cplx root = std::sqrt(disc);
    result.points.push_back(eigenvector((tr + root) / 2.0));
    result.points.push_back(eigenvector((tr - root) / 2.0));
    return result;
}

// Smallest n <= max_order with t^n = id, or nullopt.
inline std::optional<int> order_of(const MoebiusMap& t, const Tolerance& tol = {}) {
    MoebiusMap acc = t;
    for (int n = 1; n <= tol.max_order; ++n) {
        if (is_identity(acc, tol.eps)) return n;
        // entries of a finite-order element stay bounded; runaway growth
        // means loxodromic or parabolic, so stop before overflow
        double scale = std::max({std::abs(acc.a), std::abs(acc.b), std::abs(acc.c),
                                 std::abs(acc.d)});
        if (!std::isfinite(scale) || scale > 1e5) return std::nullopt;
        acc = compose(acc, t);
    }
    return std::nullopt;
}

namespace detail {
// Matrix sending (p1, p2, p3) to (0, 1, infinity).
inline std::array<cplx, 4> triple_to_standard(const SpherePoint& p1, const SpherePoint& p2,
                                              const SpherePoint& p3) {
    auto l1 = [&](const SpherePoint& p) { return p1.w * p.z - p1.z * p.w; };
    auto l3 = [&](const SpherePoint& p) { return p3.w * p.z - p3.z * p.w; };
    cplx s1 = l3(p2);
    cplx s3 = l1(p2);
    return {s1 * p1.w, -s1 * p1.z, s3 * p3.w, -s3 * p3.z};
}
} // namespace detail

// The unique Moebius map with p_i -> q_i for three pairwise distinct points.
inline MoebiusMap mobius_from_three_points(const SpherePoint& p1, const SpherePoint& q1,
                                           const SpherePoint& p2, const SpherePoint& q2,
                                           const SpherePoint& p3, const SpherePoint& q3,
                                           double eps = 1e-9) {
    auto distinct = [eps](const SpherePoint& x, const SpherePoint& y) {
        return chordal_distance(x, y) > eps;
    };
    if (!distinct(p1, p2) || !distinct(p1, p3) || !distinct(p2, p3) ||
        !distinct(q1, q2) || !distinct(q1, q3) || !distinct(q2, q3))
        throw degenerate_triple_error("mobius_from_three_points: near-coincident pair in a triple");
    auto s = detail::triple_to_standard(p1, p2, p3);
    auto t = detail::triple_to_standard(q1, q2, q3);
    MoebiusMap source(s[0], s[1], s[2], s[3]);
    MoebiusMap target(t[0], t[1], t[2], t[3]);
    return compose(target.inverse(), source);
}

inline bool commute(const MoebiusMap& s, const MoebiusMap& t, double eps = 1e-9) {
    return maps_equal(compose(s, t), compose(t, s), eps);
}

} // namespace deckgroup
