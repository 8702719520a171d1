#pragma once

#include "bicritical.hpp"
#include "random.hpp"

namespace deckgroup {

// Generic random degree-d map: Gaussian pre and post, rejected near the
// power-map locus where the classification is discontinuous.
inline BicriticalMap random_bicritical(Rng& rng, int d, const Tolerance& tol = {}) {
    for (;;) {
        BicriticalMap f(rng.moebius(), d, rng.moebius());
        if (pair_distance(critical_points(f), critical_values(f)) <= 10.0 * tol.eps) continue;
        return f;
    }
}

// (z^d - a)/(z^d + a): critically coalescing by construction, exercises the
// dihedral branches that generic sampling never hits.
inline BicriticalMap random_coalescing(Rng& rng, int d) {
    for (;;) {
        cplx a = rng.complex_gauss();
        if (std::abs(a) < 0.1) continue;
        return from_normal_form(1.0, -a, 1.0, a, d);
    }
}

} // namespace deckgroup
