#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blochdiff/errors.hpp"
#include "blochdiff/grid.hpp"
#include "blochdiff/metrics.hpp"
#include "blochdiff/series.hpp"
#include "blochdiff/symbols.hpp"

namespace blochdiff {

/// Schedule of powers for the n-th power criterion: a dense head to capture
/// the early supremum and a geometric tail for the limsup.
inline std::vector<long> default_n_schedule(long head_max = 64, long pow2_max = 4096,
                                            long pow3_max = 3072) {
    std::vector<long> ns;
    ns.push_back(0);
    for (long n = 1; n <= head_max; ++n) ns.push_back(n);
    for (long n = 2; n <= pow2_max; n *= 2) ns.push_back(n);
    for (long n = 3; n <= pow3_max; n *= 2) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

/// Symbol pair evaluated once over a grid. All downstream quantities read
/// these arrays; nothing here mutates after construction.
struct PairContext {
    SymbolPair pair;
    SpaceParams params;
    const DiskGrid* grid = nullptr;

    std::vector<Cplx> phi1, phi2, u1, u2;
    std::vector<double> v, rho_vals, abs_phi1, abs_phi2, abs_t1, abs_t2, abs_tdiff;
    size_t overflow_count = 0;

    PairContext(SymbolPair pr, SpaceParams pm, const DiskGrid& g, bool validate = true)
        : pair(std::move(pr)), params(std::move(pm)), grid(&g) {
        if (validate) {
            require_self_map(pair.phi1, g, "phi1");
            require_self_map(pair.phi2, g, "phi2");
        }
        const size_t n = g.size();
        phi1.resize(n); phi2.resize(n); u1.resize(n); u2.resize(n);
        v.resize(n); rho_vals.resize(n);
        abs_phi1.resize(n); abs_phi2.resize(n);
        abs_t1.resize(n); abs_t2.resize(n); abs_tdiff.resize(n);
        const double texp = params.t_exponent();
        for (size_t i = 0; i < n; ++i) {
            Cplx z = g.point(i).z;
            phi1[i] = pair.phi1.eval_unchecked(z);
            phi2[i] = pair.phi2.eval_unchecked(z);
            u1[i] = pair.u1.eval_unchecked(z);
            u2[i] = pair.u2.eval_unchecked(z);
            v[i] = eval_weight(params.weight, z);
            abs_phi1[i] = std::abs(phi1[i]);
            abs_phi2[i] = std::abs(phi2[i]);
            rho_vals[i] = std::abs((phi1[i] - phi2[i]) / (1.0 - std::conj(phi2[i]) * phi1[i]));
            double s1 = 1.0 - std::norm(phi1[i]);
            double s2 = 1.0 - std::norm(phi2[i]);
            if (s1 < 1e-15 || s2 < 1e-15) ++overflow_count;
            Cplx t1 = v[i] * u1[i] * std::pow(s1, -texp);
            Cplx t2 = v[i] * u2[i] * std::pow(s2, -texp);
            abs_t1[i] = std::abs(t1);
            abs_t2[i] = std::abs(t2);
            abs_tdiff[i] = std::abs(t1 - t2);
        }
    }

    Cplx t1_at(Cplx z) const {
        return t_quantity_from(params, pair.u1.eval_unchecked(z), pair.phi1.eval_unchecked(z),
                               eval_weight(params.weight, z)).value;
    }
    Cplx t2_at(Cplx z) const {
        return t_quantity_from(params, pair.u2.eval_unchecked(z), pair.phi2.eval_unchecked(z),
                               eval_weight(params.weight, z)).value;
    }
    double rho_at(Cplx z) const { return rho_pair(pair, z); }

    /// v(z) |u1 f_a^{(m)}(phi1) - u2 f_a^{(m)}(phi2)| and the g_a companion,
    /// sharing the two complex powers.
    struct FgNorms {
        double f;
        double g;
    };
    FgNorms fg_point(Cplx a, size_t i) const {
        const double b = params.series_base();
        const double lead = std::pow(1.0 - std::norm(a), params.alpha);
        const Cplx abar = std::conj(a);
        Cplx d1 = 1.0 - abar * phi1[i];
        Cplx d2 = 1.0 - abar * phi2[i];
        Cplx p1 = lead * std::pow(d1, -b);
        Cplx p2 = lead * std::pow(d2, -b);
        Cplx fd = u1[i] * p1 - u2[i] * p2;
        Cplx gd = u1[i] * p1 * ((a - phi1[i]) / d1) - u2[i] * p2 * ((a - phi2[i]) / d2);
        return {v[i] * std::abs(fd), v[i] * std::abs(gd)};
    }
    FgNorms fg_at(Cplx a, Cplx z) const {
        const double b = params.series_base();
        const double lead = std::pow(1.0 - std::norm(a), params.alpha);
        const Cplx abar = std::conj(a);
        Cplx w1 = pair.phi1.eval_unchecked(z);
        Cplx w2 = pair.phi2.eval_unchecked(z);
        Cplx m1 = pair.u1.eval_unchecked(z);
        Cplx m2 = pair.u2.eval_unchecked(z);
        double vz = eval_weight(params.weight, z);
        Cplx d1 = 1.0 - abar * w1;
        Cplx d2 = 1.0 - abar * w2;
        Cplx p1 = lead * std::pow(d1, -b);
        Cplx p2 = lead * std::pow(d2, -b);
        Cplx fd = m1 * p1 - m2 * p2;
        Cplx gd = m1 * p1 * ((a - w1) / d1) - m2 * p2 * ((a - w2) / d2);
        return {vz * std::abs(fd), vz * std::abs(gd)};
    }

    double pow_term_at(long n, Cplx z) const {
        Cplx w1 = pair.phi1.eval_unchecked(z);
        Cplx w2 = pair.phi2.eval_unchecked(z);
        Cplx diff = pair.u1.eval_unchecked(z) * std::pow(w1, static_cast<double>(n)) -
                    pair.u2.eval_unchecked(z) * std::pow(w2, static_cast<double>(n));
        return eval_weight(params.weight, z) * std::abs(diff);
    }
};

struct QuantityT {
    double sup_t1_rho = 0.0;
    double sup_t2_rho = 0.0;
    double sup_tdiff = 0.0;
    double combo1 = 0.0;  // sup |T1| rho + sup |T1 - T2|
    double combo2 = 0.0;  // sup |T2| rho + sup |T1 - T2|
    double value = 0.0;   // max(combo1, combo2)
    double sum3 = 0.0;    // sup |T1| rho + sup |T2| rho + sup |T1 - T2|
};

inline QuantityT quantity_T(const PairContext& ctx, int refine_depth = 5) {
    QuantityT q;
    auto f1 = [&](Cplx z) { return std::abs(ctx.t1_at(z)) * ctx.rho_at(z); };
    auto f2 = [&](Cplx z) { return std::abs(ctx.t2_at(z)) * ctx.rho_at(z); };
    auto fd = [&](Cplx z) { return std::abs(ctx.t1_at(z) - ctx.t2_at(z)); };
    q.sup_t1_rho = sup_disk(f1, *ctx.grid, refine_depth).value;
    q.sup_t2_rho = sup_disk(f2, *ctx.grid, refine_depth).value;
    q.sup_tdiff = sup_disk(fd, *ctx.grid, refine_depth).value;
    q.combo1 = q.sup_t1_rho + q.sup_tdiff;
    q.combo2 = q.sup_t2_rho + q.sup_tdiff;
    q.value = std::max(q.combo1, q.combo2);
    q.sum3 = q.sup_t1_rho + q.sup_t2_rho + q.sup_tdiff;
    return q;
}

/// Per-a row of the test-function curve.
struct TestCurveRow {
    Cplx a;
    int level = 0;
    double f_norm = 0.0;
    double g_norm = 0.0;
};

/// 5x5 stencil walk around a starting grid point, step shrinking 4x per round.
template <typename Value>
double refine_from_point(const PairContext& ctx, size_t start_index, int depth, Value&& value) {
    const auto& p0 = ctx.grid->point(start_index);
    double r_c = p0.r;
    double theta_c = std::atan2(p0.z.imag(), p0.z.real());
    double h_r = (p0.level == 0) ? ctx.grid->radius(1) / 2.0 : std::ldexp(1.0, -p0.level - 1);
    double h_t = 2.0 * M_PI / ctx.grid->count(p0.level);
    const double r_cap = ctx.grid->max_radius();
    double best = value(p0.z);
    for (int round = 1; round <= depth; ++round) {
        h_r /= 4.0;
        h_t /= 4.0;
        double br = r_c, bt = theta_c;
        for (int pr = -2; pr <= 2; ++pr) {
            double r = std::clamp(r_c + pr * h_r, 0.0, r_cap);
            for (int pt = -2; pt <= 2; ++pt) {
                double th = theta_c + pt * h_t;
                double vv = value(Cplx{r * std::cos(th), r * std::sin(th)});
                if (vv > best) { best = vv; br = r; bt = th; }
            }
        }
        r_c = br;
        theta_c = bt;
    }
    return best;
}

/// Weighted norms of (D1 - D2) f_a and (D1 - D2) g_a for every a in the
/// a-grid. Grid maxima are sharpened by local refinement around the best z.
inline std::vector<TestCurveRow> test_curve(const PairContext& ctx, const DiskGrid& a_grid,
                                            int refine_depth = 3) {
    std::vector<TestCurveRow> rows;
    rows.reserve(a_grid.size());
    const size_t n = ctx.grid->size();
    for (const auto& ap : a_grid.points()) {
        TestCurveRow row;
        row.a = ap.z;
        row.level = ap.level;
        size_t best_f = 0, best_g = 0;
        for (size_t i = 0; i < n; ++i) {
            auto fg = ctx.fg_point(ap.z, i);
            if (fg.f > row.f_norm) { row.f_norm = fg.f; best_f = i; }
            if (fg.g > row.g_norm) { row.g_norm = fg.g; best_g = i; }
        }
        if (refine_depth > 0) {
            row.f_norm = std::max(row.f_norm, refine_from_point(ctx, best_f, refine_depth,
                [&](Cplx z) { return ctx.fg_at(ap.z, z).f; }));
            row.g_norm = std::max(row.g_norm, refine_from_point(ctx, best_g, refine_depth,
                [&](Cplx z) { return ctx.fg_at(ap.z, z).g; }));
        }
        rows.push_back(row);
    }
    return rows;
}

struct QuantityTest {
    double sup_f = 0.0;
    double sup_g = 0.0;
    double value = 0.0; // sup_a f-norm + sup_a g-norm
    Cplx arg_f{0, 0}, arg_g{0, 0};
};

inline QuantityTest quantity_test(const std::vector<TestCurveRow>& curve) {
    QuantityTest q;
    for (const auto& r : curve) {
        if (r.f_norm > q.sup_f) { q.sup_f = r.f_norm; q.arg_f = r.a; }
        if (r.g_norm > q.sup_g) { q.sup_g = r.g_norm; q.arg_g = r.a; }
    }
    q.value = q.sup_f + q.sup_g;
    return q;
}

struct EssentialTest {
    double f_limsup = 0.0;
    double g_limsup = 0.0;
    double value = 0.0;
    BoundaryEstimate f_detail, g_detail;
};

inline EssentialTest quantity_test_essential(const std::vector<TestCurveRow>& curve,
                                             const DiskGrid& a_grid, size_t min_samples = 32) {
    std::vector<RingCurvePoint> fc, gc;
    fc.reserve(curve.size());
    gc.reserve(curve.size());
    for (const auto& r : curve) {
        fc.push_back({r.a, r.level, r.f_norm});
        gc.push_back({r.a, r.level, r.g_norm});
    }
    EssentialTest e;
    e.f_detail = ring_limsup(fc, a_grid, min_samples);
    e.g_detail = ring_limsup(gc, a_grid, min_samples);
    e.f_limsup = e.f_detail.value;
    e.g_limsup = e.g_detail.value;
    e.value = e.f_limsup + e.g_limsup;
    return e;
}

/// Per-n row of the power-criterion trace: n^{alpha+m-1} ||u1 phi1^n - u2 phi2^n||_v.
struct PowCurveRow {
    long n = 0;
    double norm = 0.0;   // weighted norm of the difference
    double term = 0.0;   // n-factor applied
};

struct PowCurve {
    std::vector<PowCurveRow> rows;
    bool n0_degenerate = false; // alpha + m - 1 == 0: the n = 0 factor uses the limit value 1
};

inline PowCurve pow_curve(const PairContext& ctx, const std::vector<long>& schedule,
                          int refine_depth = 3) {
    if (schedule.empty()) throw ConfigError("pow_curve: empty schedule");
    PowCurve out;
    const double texp = ctx.params.t_exponent();
    out.n0_degenerate = texp == 0.0;
    const size_t npts = ctx.grid->size();
    for (long n : schedule) {
        PowCurveRow row;
        row.n = n;
        double best = 0.0;
        size_t best_i = 0;
        const double nd = static_cast<double>(n);
        for (size_t i = 0; i < npts; ++i) {
            Cplx diff = ctx.u1[i] * std::pow(ctx.phi1[i], nd) - ctx.u2[i] * std::pow(ctx.phi2[i], nd);
            double val = ctx.v[i] * std::abs(diff);
            if (val > best) { best = val; best_i = i; }
        }
        if (refine_depth > 0 && best > 0.0)
            best = std::max(best, refine_from_point(ctx, best_i, refine_depth,
                [&](Cplx z) { return ctx.pow_term_at(n, z); }));
        row.norm = best;
        double factor;
        if (n == 0)
            factor = out.n0_degenerate ? 1.0 : 0.0;
        else
            factor = std::pow(nd, texp);
        row.term = factor * row.norm;
        out.rows.push_back(row);
    }
    return out;
}

struct QuantityPow {
    double value = 0.0;
    long arg_n = 0;
    bool n0_degenerate = false;
};

inline QuantityPow quantity_pow(const PowCurve& curve) {
    QuantityPow q;
    q.n0_degenerate = curve.n0_degenerate;
    for (const auto& r : curve.rows)
        if (r.term > q.value) { q.value = r.term; q.arg_n = r.n; }
    return q;
}

struct EssentialPow {
    double value = 0.0;
    long arg_n = 0;
    double loglog_slope = 0.0;  // decay diagnostic over the resolvable tail
    long slope_window_max = 0;  // largest n entering the slope fit
    size_t tail_points = 0;
};

/// Tail maximum of the power trace. The slope diagnostic only uses powers
/// whose radial optimum r* = sqrt(n/(n+2)) lies inside the grid; beyond that
/// the per-n suprema sag for grid reasons, not analytic ones.
inline EssentialPow quantity_pow_essential(const PowCurve& curve, long tail_start = 256,
                                           double grid_max_radius = 0.0) {
    EssentialPow e;
    long n_res = std::numeric_limits<long>::max();
    if (grid_max_radius > 0.0 && grid_max_radius < 1.0) {
        double r2 = grid_max_radius * grid_max_radius;
        n_res = static_cast<long>(2.0 * r2 / (1.0 - r2)) + 1;
    }
    e.slope_window_max = tail_start;
    std::vector<std::pair<double, double>> pts; // (log n, log term)
    for (const auto& r : curve.rows) {
        if (r.n < tail_start) continue;
        ++e.tail_points;
        if (r.term > e.value) { e.value = r.term; e.arg_n = r.n; }
        bool in_window = r.n <= n_res || pts.size() < 2;
        if (in_window && r.term > 0.0 && r.n > 0) {
            pts.emplace_back(std::log((double)r.n), std::log(r.term));
            e.slope_window_max = std::max(e.slope_window_max, r.n);
        }
    }
    if (e.tail_points == 0) throw ConfigError("quantity_pow_essential: tail_start beyond schedule");
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
        double n = static_cast<double>(pts.size());
        double den = n * sxx - sx * sx;
        if (den > 0) e.loglog_slope = (n * sxy - sx * sy) / den;
    }
    return e;
}

struct EssentialT {
    double term_t1 = 0.0;    // lim_r sup_{|phi1|>r} |T1| rho
    double term_t2 = 0.0;    // lim_r sup_{|phi2|>r} |T2| rho
    double term_diff = 0.0;  // lim_r sup_{min(|phi1|,|phi2|)>r} |T1 - T2|
    double value = 0.0;
    BoundaryEstimate detail_t1, detail_t2, detail_diff;
};

inline EssentialT quantity_T_essential(const PairContext& ctx, size_t min_samples = 32) {
    const size_t n = ctx.grid->size();
    std::vector<double> f1(n), f2(n), fd(n), minmod(n);
    for (size_t i = 0; i < n; ++i) {
        f1[i] = ctx.abs_t1[i] * ctx.rho_vals[i];
        f2[i] = ctx.abs_t2[i] * ctx.rho_vals[i];
        fd[i] = ctx.abs_tdiff[i];
        minmod[i] = std::min(ctx.abs_phi1[i], ctx.abs_phi2[i]);
    }
    EssentialT e;
    e.detail_t1 = boundary_limsup(f1, ctx.abs_phi1, *ctx.grid, min_samples);
    e.detail_t2 = boundary_limsup(f2, ctx.abs_phi2, *ctx.grid, min_samples);
    e.detail_diff = boundary_limsup(fd, minmod, *ctx.grid, min_samples);
    e.term_t1 = e.detail_t1.value;
    e.term_t2 = e.detail_t2.value;
    e.term_diff = e.detail_diff.value;
    e.value = e.term_t1 + e.term_t2 + e.term_diff;
    return e;
}

/// Dictionary lower bound for the operator norm: max over a family of
/// normalised Bloch functions of ||(D1 - D2) f||_v / ||f||_{B^alpha}.
/// Family norms use upper estimates so the quotient stays a lower bound.
struct OracleFamilySpec {
    int monomial_max = 64;
    int poly_count = 8;
    int poly_degree = 32;
    double a_modulus_cap = 0.9;
    int a_angles = 8;
};

struct OracleResult {
    double value = 0.0;
    std::string witness;
    std::vector<std::pair<double, double>> monomial_trace; // (n, normalised norm)
};

namespace detail {

// deterministic 64-bit generator (splitmix64); uniform in [0,1)
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return std::ldexp(static_cast<double>(next() >> 11), -53); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Cplx disk(double rmax) {
        double r = rmax * std::sqrt(uniform());
        double t = 2.0 * M_PI * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }
};

// Upper estimate of |p(0)| + sup (1-r^2)^alpha sup_theta |p'| via the radial
// majorant sum |c_k| r^k on a dense radius sweep.
inline double poly_bloch_upper(const PowerSeries& p, double alpha) {
    PowerSeries dp = p.differentiated();
    double best = 0.0;
    const int steps = 4000;
    for (int i = 0; i < steps; ++i) {
        double r = static_cast<double>(i) / steps;
        double acc = 0.0, rk = 1.0;
        for (int k = 0; k <= dp.order(); ++k) {
            acc += std::abs(dp.coeff(k)) * rk;
            rk *= r;
        }
        best = std::max(best, std::pow(1.0 - r * r, alpha) * acc);
    }
    return std::abs(p.coeff(0)) + best * 1.001;
}

// Radial majorants of the test-function Bloch norms. The first derivative of
// f_a is an (m-1)-fold integral of the kernel, so |f_a'(z)| is dominated by
// (1-q^2)^alpha (1-qr)^{-b} r^{m-1}/(m-1)! ; m = 0 differentiates the kernel.
inline double fa_bloch_upper(Cplx a, const SpaceParams& params) {
    const double q = std::abs(a);
    const double b = params.series_base();
    const double lead = std::pow(1.0 - q * q, params.alpha);
    double fact = 1.0;
    for (int i = 2; i < params.m; ++i) fact *= i;
    const int steps = 4000;
    double best = 0.0;
    for (int i = 0; i < steps; ++i) {
        double r = static_cast<double>(i) / steps;
        double deriv_bound;
        if (params.m == 0)
            deriv_bound = b * q * lead * std::pow(1.0 - q * r, -(b + 1.0));
        else
            deriv_bound = lead * std::pow(1.0 - q * r, -b) * std::pow(r, params.m - 1) / fact;
        best = std::max(best, std::pow(1.0 - r * r, params.alpha) * deriv_bound);
    }
    double at0 = params.m == 0 ? lead : 0.0;
    return at0 + best * 1.001;
}

inline double ga_bloch_upper(Cplx a, const SpaceParams& params) {
    const double q = std::abs(a);
    const double b = params.series_base();
    const double lead = std::pow(1.0 - q * q, params.alpha);
    double fact = 1.0;
    for (int i = 2; i < params.m; ++i) fact *= i;
    const int steps = 4000;
    double best = 0.0;
    for (int i = 0; i < steps; ++i) {
        double r = static_cast<double>(i) / steps;
        double mob = (q + r) / (1.0 + q * r);
        double deriv_bound;
        if (params.m == 0) {
            // g_a' = f_a' * mobius + f_a * mobius'; |mobius'| <= (1-q^2)/(1-qr)^2
            double fa = lead * std::pow(1.0 - q * r, -b);
            double fap = b * q * lead * std::pow(1.0 - q * r, -(b + 1.0));
            deriv_bound = fap * mob + fa * (1.0 - q * q) * std::pow(1.0 - q * r, -2.0);
        } else {
            deriv_bound = lead * std::pow(1.0 - q * r, -b) * mob * std::pow(r, params.m - 1) / fact;
        }
        best = std::max(best, std::pow(1.0 - r * r, params.alpha) * deriv_bound);
    }
    double at0 = params.m == 0 ? lead * q : 0.0;
    return at0 + best * 1.001;
}

} // namespace detail

inline OracleResult oracle_lower_bound(const PairContext& ctx, const DiskGrid& a_grid,
                                       const OracleFamilySpec& spec, uint64_t seed,
                                       int refine_depth = 3) {
    OracleResult out;
    auto consider = [&](double op_norm, double fam_norm, const std::string& name) {
        if (fam_norm <= 0.0) return;
        double q = op_norm / fam_norm;
        if (q > out.value) {
            out.value = q;
            out.witness = name;
        }
    };

    // monomials z^n / ||z^n||: (D1 - D2) z^n = n!/(n-m)! (u1 phi1^{n-m} - u2 phi2^{n-m})
    const int m = ctx.params.m;
    for (int n = std::max(1, m); n <= spec.monomial_max; ++n) {
        double fall = 1.0;
        for (int i = 0; i < m; ++i) fall *= (n - i);
        long p = n - m;
        double best = 0.0;
        for (size_t i = 0; i < ctx.grid->size(); ++i) {
            Cplx diff = ctx.u1[i] * std::pow(ctx.phi1[i], static_cast<double>(p)) -
                        ctx.u2[i] * std::pow(ctx.phi2[i], static_cast<double>(p));
            best = std::max(best, ctx.v[i] * std::abs(diff));
        }
        double norm = monomial_bloch_norm(n, ctx.params.alpha);
        consider(fall * best, norm, "monomial n=" + std::to_string(n));
        out.monomial_trace.emplace_back(n, fall * best / norm);
    }

    // test functions over the capped a-grid
    for (const auto& ap : a_grid.points()) {
        if (std::abs(ap.z) > spec.a_modulus_cap) continue;
        if (ap.idx % std::max(1, a_grid.count(ap.level) / spec.a_angles) != 0) continue;
        double best_f = 0.0, best_g = 0.0;
        for (size_t i = 0; i < ctx.grid->size(); ++i) {
            auto fg = ctx.fg_point(ap.z, i);
            best_f = std::max(best_f, fg.f);
            best_g = std::max(best_g, fg.g);
        }
        consider(best_f, detail::fa_bloch_upper(ap.z, ctx.params), "f_a a=" + std::to_string(std::abs(ap.z)));
        consider(best_g, detail::ga_bloch_upper(ap.z, ctx.params), "g_a a=" + std::to_string(std::abs(ap.z)));
    }

    // seeded random polynomials
    detail::Rng rng(seed);
    for (int t = 0; t < spec.poly_count; ++t) {
        std::vector<Cplx> coeffs(spec.poly_degree + 1);
        for (auto& c : coeffs) c = rng.disk(1.0);
        PowerSeries p = PowerSeries::from_coeffs(std::move(coeffs));
        PowerSeries pm = p.derivative(m);
        double best = 0.0;
        for (size_t i = 0; i < ctx.grid->size(); ++i) {
            Cplx diff = ctx.u1[i] * pm.eval(ctx.phi1[i]) - ctx.u2[i] * pm.eval(ctx.phi2[i]);
            best = std::max(best, ctx.v[i] * std::abs(diff));
        }
        consider(best, detail::poly_bloch_upper(p, ctx.params.alpha), "poly seed#" + std::to_string(t));
    }
    (void)refine_depth;
    return out;
}

/// Everything the analysis computes for one symbol pair.
struct CriterionReport {
    QuantityT q_t;
    QuantityTest q_test;
    QuantityPow q_pow;
    EssentialT e_t;
    EssentialTest e_test;
    EssentialPow e_pow;
    OracleResult oracle;
    std::vector<TestCurveRow> a_trace;
    PowCurve n_trace;
    size_t overflow_points = 0;
};

struct ReportOptions {
    std::vector<long> n_schedule = default_n_schedule();
    long tail_start = 256;
    int refine_quantities = 5;
    int refine_curves = 3;
    size_t min_boundary_samples = 32;
    OracleFamilySpec oracle;
    uint64_t seed = 1;
    bool with_oracle = true;
};

inline CriterionReport full_report(const PairContext& ctx, const DiskGrid& a_grid,
                                   const ReportOptions& opt = {}) {
    CriterionReport rep;
    rep.q_t = quantity_T(ctx, opt.refine_quantities);
    rep.a_trace = test_curve(ctx, a_grid, opt.refine_curves);
    rep.q_test = quantity_test(rep.a_trace);
    rep.e_test = quantity_test_essential(rep.a_trace, a_grid, opt.min_boundary_samples);
    rep.n_trace = pow_curve(ctx, opt.n_schedule, opt.refine_curves);
    rep.q_pow = quantity_pow(rep.n_trace);
    rep.e_pow = quantity_pow_essential(rep.n_trace, opt.tail_start, ctx.grid->max_radius());
    rep.e_t = quantity_T_essential(ctx, opt.min_boundary_samples);
    if (opt.with_oracle) rep.oracle = oracle_lower_bound(ctx, a_grid, opt.oracle, opt.seed);
    rep.overflow_points = ctx.overflow_count;
    return rep;
}

} // namespace blochdiff
