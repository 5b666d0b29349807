#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <vector>

#include "blochdiff/errors.hpp"
#include "blochdiff/symbols.hpp"

namespace blochdiff {

inline constexpr int kOrderCap = 20000;
inline constexpr double kTailDelta = 0.05;  // geometric domination slack for coefficient tails
inline constexpr double kDiffDelta = 0.01;  // extra slack absorbed per differentiation
inline constexpr double kRatioFloor = 1e-8; // keeps tail ratios away from 0 for tiny |a|

/// gamma_k = Gamma(k + b) / (Gamma(b) k!) with b = 2*alpha + m - 1, computed by
/// the multiplicative recurrence gamma_{k+1} = gamma_k (k + b)/(k + 1).
struct GammaRatios {
    double base = 1.0;
    std::vector<double> values;

    static GammaRatios compute(const SpaceParams& params, int order) {
        if (order < 0) throw ConfigError("gamma_ratios: order must be >= 0");
        GammaRatios g;
        g.base = params.series_base();
        g.values.resize(order + 1);
        g.values[0] = 1.0;
        for (int k = 0; k < order; ++k)
            g.values[k + 1] = g.values[k] * (k + g.base) / (k + 1.0);
        return g;
    }
};

/// Truncated Maclaurin series with a geometric tail certificate:
/// |c_k| <= tail_scale * tail_ratio^k for every k beyond the stored order.
class PowerSeries {
public:
    PowerSeries() = default;
    PowerSeries(std::vector<Cplx> coeffs, double tail_scale, double tail_ratio)
        : c_(std::move(coeffs)), tail_scale_(tail_scale), tail_ratio_(tail_ratio) {}

    static PowerSeries monomial(int n, Cplx coeff = Cplx{1.0, 0.0}) {
        std::vector<Cplx> c(n + 1, Cplx{0.0, 0.0});
        c[n] = coeff;
        return PowerSeries(std::move(c), 0.0, 0.0);
    }

    static PowerSeries from_coeffs(std::vector<Cplx> coeffs) {
        return PowerSeries(std::move(coeffs), 0.0, 0.0);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Cplx>& coeffs() const { return c_; }
    Cplx coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Cplx{0, 0}; }
    double tail_scale() const { return tail_scale_; }
    double tail_ratio() const { return tail_ratio_; }

    /// Lower bound 1/tail_ratio on the convergence radius (at least 1 for the
    /// built-in families; infinite for polynomials).
    double radius_bound() const {
        if (tail_scale_ == 0.0 || tail_ratio_ == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / tail_ratio_;
    }

    Cplx eval(Cplx z) const {
        Cplx acc{0.0, 0.0};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    /// Rigorous bound on |sum_{k > order} c_k z^k| for |z| <= r.
    double tail_bound(double r) const {
        if (tail_scale_ == 0.0) return 0.0;
        double x = tail_ratio_ * r;
        if (x >= 1.0) return std::numeric_limits<double>::infinity();
        return tail_scale_ * std::pow(x, order() + 1) / (1.0 - x);
    }

    PowerSeries differentiated() const {
        std::vector<Cplx> d;
        if (c_.size() > 1) {
            d.resize(c_.size() - 1);
            for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        } else {
            d.assign(1, Cplx{0.0, 0.0});
        }
        double scale = 0.0, ratio = 0.0;
        if (tail_scale_ > 0.0) {
            // (k+1) <= C1 (1+delta)^k absorbs the index factor into the ratio
            double c1 = linear_factor_bound(kDiffDelta);
            scale = tail_scale_ * tail_ratio_ * c1;
            ratio = tail_ratio_ * (1.0 + kDiffDelta);
        }
        return PowerSeries(std::move(d), scale, ratio);
    }

    PowerSeries derivative(int times) const {
        PowerSeries s = *this;
        for (int i = 0; i < times; ++i) s = s.differentiated();
        return s;
    }

    PowerSeries integrated() const {
        std::vector<Cplx> d(c_.size() + 1, Cplx{0.0, 0.0});
        for (size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / static_cast<double>(k + 1);
        double scale = 0.0, ratio = 0.0;
        if (tail_scale_ > 0.0) {
            scale = tail_scale_ / tail_ratio_;
            ratio = tail_ratio_;
        }
        return PowerSeries(std::move(d), scale, ratio);
    }

    static double linear_factor_bound(double delta) {
        // max over integer n >= 0 of (n+1)/(1+delta)^n
        double best = 1.0;
        double ln = std::log1p(delta);
        long n0 = std::lround(1.0 / ln);
        for (long n = std::max(0L, n0 - 2); n <= n0 + 2; ++n)
            best = std::max(best, (n + 1) / std::pow(1.0 + delta, static_cast<double>(n)));
        return best;
    }

private:
    std::vector<Cplx> c_;
    double tail_scale_ = 0.0;
    double tail_ratio_ = 0.0;
};

inline void series_to_csv(const PowerSeries& s, std::ostream& os) {
    os << "index,re,im\n";
    for (int k = 0; k <= s.order(); ++k)
        os << k << "," << s.coeff(k).real() << "," << s.coeff(k).imag() << "\n";
}

namespace detail {

// max over k of gamma_k * k!/(k+m)! / (1+delta)^k. The one-step ratio
// (k+b)/(k+m+1) decreases monotonically toward 1, so the max sits at or
// before the first k where it crosses 1+delta.
inline double kernel_coeff_bound(double b, int m, double delta) {
    double kstar = (b - (1.0 + delta) * (m + 1)) / delta;
    int kmax = kstar > 0 ? static_cast<int>(std::ceil(kstar)) + 1 : 1;
    double d = 1.0; // d_0 = gamma_0 * 0!/m! ... times m! normalisation folded below
    for (int i = 1; i <= m; ++i) d /= i;
    double best = d;
    double pow_delta = 1.0;
    for (int k = 0; k < kmax; ++k) {
        d *= (k + b) / (k + m + 1.0);
        pow_delta *= 1.0 + delta;
        best = std::max(best, d / pow_delta);
    }
    return best;
}

// max over k >= 1 of k * max(1, gamma_{k-1}) * k!/(k+m)! / (1+delta)^k,
// dominating the partial-sum coefficients of the g-family. Beyond
// k >= max(3/delta, 3(b-1)/delta) each one-step ratio stays below 1+delta.
inline double kernel_sum_coeff_bound(double b, int m, double delta) {
    int kmax = static_cast<int>(std::ceil(3.0 / delta));
    if (b > 1.0) kmax = std::max(kmax, static_cast<int>(std::ceil(3.0 * (b - 1.0) / delta)));
    kmax += 2;
    double w = 1.0;
    for (int i = 1; i <= m; ++i) w /= i; // w_0 = 1/m!
    double gamma_prev = 1.0;             // gamma_0
    double best = 0.0;
    double pow_delta = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        w *= static_cast<double>(k) / (k + m); // w_k = k!/(k+m)!
        pow_delta *= 1.0 + delta;
        double e = k * std::max(1.0, gamma_prev) * w;
        best = std::max(best, e / pow_delta);
        gamma_prev *= (k - 1 + b) / k; // advance to gamma_k
    }
    return best;
}

struct TailModel {
    double scale = 0.0;
    double ratio = 0.0;
};

inline TailModel fa_tail_model(double q, const SpaceParams& params) {
    TailModel t;
    if (q < 1e-12) return t; // single surviving term
    double b = params.series_base();
    t.ratio = std::max((1.0 + kTailDelta) * q, kRatioFloor);
    double c = kernel_coeff_bound(b, params.m, kTailDelta);
    t.scale = std::pow(1.0 - q * q, params.alpha) * c / std::pow(t.ratio, params.m);
    return t;
}

inline TailModel ga_tail_model(double q, const SpaceParams& params) {
    TailModel t;
    if (q < 1e-12) return t; // only the k = 1 term survives
    double b = params.series_base();
    TailModel f = fa_tail_model(q, params);
    t.ratio = f.ratio;
    double cg = kernel_sum_coeff_bound(b, params.m, kTailDelta);
    double second = std::pow(1.0 - q * q, params.alpha + 1.0) * cg * (1.0 + kTailDelta) /
                    std::pow(t.ratio, params.m + 1);
    t.scale = q * f.scale + second;
    return t;
}

} // namespace detail

/// f_a as a Maclaurin series: coefficient of z^{k+m} is
/// (1-|a|^2)^alpha gamma_k conj(a)^k k!/(k+m)!.
inline PowerSeries fa_series(Cplx a, const SpaceParams& params, int order) {
    if (std::abs(a) >= 1.0) throw DomainError("fa_series: |a| >= 1");
    if (order > kOrderCap) throw TruncationError("fa_series: order exceeds cap");
    const int m = params.m;
    const int n = std::max(order, m);
    const double q = std::abs(a);
    const Cplx abar = std::conj(a);
    GammaRatios g = GammaRatios::compute(params, n - m);
    std::vector<Cplx> c(n + 1, Cplx{0.0, 0.0});
    const double lead = std::pow(1.0 - q * q, params.alpha);
    double w = 1.0;
    for (int i = 1; i <= m; ++i) w /= i;
    Cplx apow{1.0, 0.0};
    for (int k = 0; k + m <= n; ++k) {
        c[k + m] = lead * g.values[k] * w * apow;
        apow *= abar;
        w *= (k + 1.0) / (k + m + 1.0);
    }
    auto tail = detail::fa_tail_model(q, params);
    return PowerSeries(std::move(c), tail.scale, tail.ratio);
}

/// g_a = a f_a - (1-|a|^2)^{alpha+1} sum_{k>=1} [k!/(k+m)!] S_k conj(a)^{k-1} z^{k+m}
/// with S_k the partial sums of the gamma ratios.
inline PowerSeries ga_series(Cplx a, const SpaceParams& params, int order) {
    if (std::abs(a) >= 1.0) throw DomainError("ga_series: |a| >= 1");
    if (order > kOrderCap) throw TruncationError("ga_series: order exceeds cap");
    const int m = params.m;
    const int n = std::max(order, m + 1);
    const double q = std::abs(a);
    const Cplx abar = std::conj(a);
    GammaRatios g = GammaRatios::compute(params, n - m);
    PowerSeries f = fa_series(a, params, n);
    std::vector<Cplx> c(n + 1, Cplx{0.0, 0.0});
    for (int k = 0; k <= n; ++k) c[k] = a * f.coeff(k);
    const double lead = std::pow(1.0 - q * q, params.alpha + 1.0);
    double w = 1.0;
    for (int i = 1; i <= m + 1; ++i) w /= i; // w_1 = 1/(m+1)!
    double s = g.values[0];                  // S_1
    Cplx apow{1.0, 0.0};                     // conj(a)^{k-1}
    for (int k = 1; k + m <= n; ++k) {
        c[k + m] -= lead * w * s * apow;
        apow *= abar;
        w *= (k + 1.0) / (k + m + 1.0);
        s += g.values[k];
    }
    auto tail = detail::ga_tail_model(q, params);
    return PowerSeries(std::move(c), tail.scale, tail.ratio);
}

/// m-th derivative of f_a in closed form: (1-|a|^2)^alpha (1 - conj(a) z)^{-(2 alpha + m - 1)}.
/// Principal branch; the base stays in the right half-plane since |conj(a) z| < 1.
inline Cplx fa_deriv_closed(Cplx a, Cplx z, const SpaceParams& params) {
    if (std::abs(a) >= 1.0 || std::abs(z) >= 1.0) throw DomainError("fa_deriv_closed: outside disk");
    double q2 = std::norm(a);
    Cplx base = 1.0 - std::conj(a) * z;
    return std::pow(1.0 - q2, params.alpha) * std::pow(base, -params.series_base());
}

/// m-th derivative of g_a: fa_deriv_closed times (a - z)/(1 - conj(a) z).
inline Cplx ga_deriv_closed(Cplx a, Cplx z, const SpaceParams& params) {
    if (std::abs(a) >= 1.0 || std::abs(z) >= 1.0) throw DomainError("ga_deriv_closed: outside disk");
    double q2 = std::norm(a);
    Cplx base = 1.0 - std::conj(a) * z;
    return std::pow(1.0 - q2, params.alpha) * std::pow(base, -params.series_base()) *
           ((a - z) / base);
}

/// Smallest order whose certified f_a tail at radius r_max is <= eps.
inline int choose_order(Cplx a, const SpaceParams& params, double r_max, double eps,
                        int cap = kOrderCap) {
    if (!(eps > 0.0)) throw ConfigError("choose_order: eps must be > 0");
    if (!(r_max > 0.0) || r_max >= 1.0) throw ConfigError("choose_order: need 0 < r_max < 1");
    const double q = std::abs(a);
    if (q * r_max >= 1.0) throw ConfigError("choose_order: |a| r_max must be < 1");
    auto tail = detail::fa_tail_model(q, params);
    if (tail.scale == 0.0) return params.m;
    const double x = tail.ratio * r_max;
    if (x >= 1.0)
        throw TruncationError("choose_order: tail ratio does not contract at this radius");
    // scale * x^{N+1} / (1-x) <= eps
    double target = eps * (1.0 - x) / tail.scale;
    int n;
    if (target >= 1.0) {
        n = params.m;
    } else {
        n = static_cast<int>(std::ceil(std::log(target) / std::log(x))) - 1;
        n = std::max(n, params.m);
    }
    while (n > params.m && tail.scale * std::pow(x, n) / (1.0 - x) <= eps) --n;
    while (tail.scale * std::pow(x, n + 1) / (1.0 - x) > eps) {
        ++n;
        if (n > cap) throw TruncationError("choose_order: cap exceeded");
    }
    return n;
}

/// Exact B^alpha norm of z^n: sup_{0<=r<1} n r^{n-1} (1-r^2)^alpha, attained at
/// r*^2 = (n-1)/(n-1+2 alpha); the value-at-0 term vanishes for n >= 1.
inline double monomial_bloch_norm(int n, double alpha) {
    if (n < 1) throw ConfigError("monomial_bloch_norm: n must be >= 1");
    double r2 = (n - 1.0) / (n - 1.0 + 2.0 * alpha);
    return n * std::pow(r2, (n - 1.0) / 2.0) * std::pow(1.0 - r2, alpha);
}

} // namespace blochdiff
