// Test-only oracles, independent of the library's estimation paths:
// dense 1-D searches, quadrature, direct Gamma-function coefficients.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

using Cplx = std::complex<double>;

/// Dense 1-D maximum of a radial profile over [0, r_max], golden-section
/// polished around the best sample.
inline double radial_max(const std::function<double(double)>& f, double r_max = 0.999999,
                         int samples = 20000) {
    double best = 0.0, best_r = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double r = r_max * i / samples;
        double v = f(r);
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    double lo = std::max(0.0, best_r - r_max / samples);
    double hi = std::min(r_max, best_r + r_max / samples);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

/// Max of |p| over the unit circle by dense sweep (for boundary-sup checks).
inline double circle_max(const std::function<double(double)>& f_theta, int samples = 200000) {
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = 2.0 * M_PI * i / samples;
        best = std::max(best, f_theta(t));
    }
    return best;
}

/// Composite Simpson quadrature of a complex integrand along the segment [0, z].
inline Cplx segment_integral(const std::function<Cplx(Cplx)>& f, Cplx z, int panels = 2000) {
    Cplx acc{0.0, 0.0};
    const int n = 2 * panels;
    for (int i = 0; i <= n; ++i) {
        Cplx t = z * (static_cast<double>(i) / n);
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(t);
    }
    return acc * (z / static_cast<double>(3 * n));
}

/// Gamma-ratio coefficient via lgamma, overflow-safe for moderate k.
inline double gamma_ratio_direct(int k, double base) {
    return std::exp(std::lgamma(k + base) - std::lgamma(base) - std::lgamma(k + 1.0));
}

/// Deterministic generator mirroring none of the library internals.
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b9ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform() { return std::ldexp(static_cast<double>(next() >> 11), -53); }
    Cplx disk(double rmax) {
        double r = rmax * std::sqrt(uniform());
        double t = 2.0 * M_PI * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }
};

} // namespace oracles
