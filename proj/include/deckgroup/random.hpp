#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "moebius.hpp"
#include "sphere.hpp"

namespace deckgroup {

// Deterministic sampling helpers.  Distributions are hand-rolled on top of
// the raw engine output so identical seeds give identical bytes regardless
// of standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    cplx complex_gauss() {
        double re = gauss();
        double im = gauss();
        return cplx(re, im);
    }

    // Uniform-ish point on the sphere: ratio of complex Gaussians in
    // projective coordinates.
    SpherePoint sphere_point() {
        cplx z = complex_gauss();
        cplx w = complex_gauss();
        while (std::abs(z) == 0.0 && std::abs(w) == 0.0) {
            z = complex_gauss();
            w = complex_gauss();
        }
        return normalize_point(z, w);
    }

    MoebiusMap moebius() {
        for (;;) {
            cplx a = complex_gauss(), b = complex_gauss();
            cplx c = complex_gauss(), d = complex_gauss();
            double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
            if (scale == 0.0) continue;
            if (std::abs(a * d - b * c) > 0.1 * scale * scale)
                return MoebiusMap(a, b, c, d);
        }
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace deckgroup
