#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>

#include "errors.hpp"

namespace deckgroup {

using cplx = std::complex<double>;

// Numerical policy shared by every operation that compares points or matrices.
struct Tolerance {
    double eps = 1e-9;          // point/matrix comparison threshold
    int n_samples = 24;         // sample count for pointwise identity checks
    int max_order = 4096;       // cap for finite-order search
    std::uint64_t rng_seed = 20240817;
};

// Point of the Riemann sphere in projective coordinates [z : w].
// Canonical form: the larger-modulus coordinate is scaled to 1, ties broken
// toward w.  Infinity is [1 : 0], finite points are [z : 1].
struct SpherePoint {
    cplx z;
    cplx w;

    static SpherePoint infinity() { return SpherePoint{cplx(1.0), cplx(0.0)}; }
    static SpherePoint zero() { return SpherePoint{cplx(0.0), cplx(1.0)}; }

    bool is_infinity(double eps = 1e-9) const { return std::abs(w) <= eps; }

    // Affine coordinate; only meaningful for non-infinite points.
    cplx affine() const { return z / w; }

    friend std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
        return os << "[" << p.z << " : " << p.w << "]";
    }
};

inline SpherePoint normalize_point(cplx z, cplx w) {
    double az = std::abs(z);
    double aw = std::abs(w);
    if (az == 0.0 && aw == 0.0)
        throw zero_vector_error("normalize_point: both projective coordinates are zero");
    if (az > aw) return SpherePoint{cplx(1.0), w / z};
    return SpherePoint{z / w, cplx(1.0)};
}

inline SpherePoint point(cplx affine) { return normalize_point(affine, cplx(1.0)); }

// |z_p w_q - z_q w_p| / (||p|| ||q||); symmetric, zero iff projectively
// equal, bounded by 1.  Treats infinity like any other point.
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    double np = std::sqrt(std::norm(p.z) + std::norm(p.w));
    double nq = std::sqrt(std::norm(q.z) + std::norm(q.w));
    return std::abs(p.z * q.w - q.z * p.w) / (np * nq);
}

inline bool points_equal(const SpherePoint& p, const SpherePoint& q, double eps) {
    return chordal_distance(p, q) <= eps;
}

} // namespace deckgroup
