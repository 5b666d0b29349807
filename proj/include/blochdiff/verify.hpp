#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "blochdiff/criteria.hpp"
#include "blochdiff/errors.hpp"
#include "blochdiff/grid.hpp"
#include "blochdiff/metrics.hpp"
#include "blochdiff/series.hpp"
#include "blochdiff/symbols.hpp"

namespace blochdiff {

struct CheckOutcome {
    std::string name;
    std::string family;
    bool pass = false;
    double margin = 0.0;   // signed worst-case margin; positive = satisfied
    double constant = 0.0; // empirical constant where applicable
    std::string witness;
    std::string note;
};

struct VerifyConfig {
    int z_levels = 9;
    int z_angular = 4;
    int a_levels = 9;
    int a_angular = 4;
    int a_cap = 32;
    int refine = 3;
    std::vector<long> n_schedule = default_n_schedule();
    long tail_start = 256;
    int n_random = 8;
    uint64_t seed = 20240915;

    DiskGrid z_grid() const { return DiskGrid(z_levels, z_angular); }
    DiskGrid a_grid() const { return DiskGrid(a_levels, a_angular, a_cap); }
    VerifyConfig doubled() const {
        VerifyConfig d = *this;
        d.z_levels += 1;
        d.z_angular *= 2;
        d.a_levels += 1;
        d.a_angular *= 2;
        d.a_cap *= 2;
        return d;
    }
};

struct RegressionCase {
    std::string name;
    SpaceParams params;
    SymbolPair pair;
    bool compact = false; // both self-maps stay inside radius 0.9
};

/// The four operator-family presets (m and u specialisations) plus seeded
/// random pairs spread over the parameter sets.
inline std::vector<RegressionCase> regression_family(uint64_t seed, int n_random = 8) {
    std::vector<RegressionCase> cases;
    auto one = SymbolExpr::constant(1.0);

    // case1: plain composition differences (m = 0, u = 1)
    cases.push_back(RegressionCase{
        "case1",
        SpaceParams(1.0, 0, WeightSpec::standard_power(1.0)),
        SymbolPair{SymbolExpr::mobius(0.3), one, SymbolExpr::scale(0.7, SymbolExpr::identity()), one},
        false});

    // case2: weighted composition differences (m = 0)
    cases.push_back(RegressionCase{
        "case2",
        SpaceParams(1.2, 0, WeightSpec::standard_power(0.2)),
        SymbolPair{
            SymbolExpr::mobius(-0.4),
            SymbolExpr::sum({SymbolExpr::constant(1.0), SymbolExpr::scale(0.5, SymbolExpr::identity())}),
            SymbolExpr::compose(SymbolExpr::mobius(-0.4), SymbolExpr::scale(0.9, SymbolExpr::identity())),
            SymbolExpr::sum({SymbolExpr::constant(0.8), SymbolExpr::scale(Cplx{0.0, 0.25}, SymbolExpr::identity())})},
        false});

    // case3: composition-then-derivative differences (m = 1, u = 1)
    cases.push_back(RegressionCase{
        "case3",
        SpaceParams(1.0, 1, WeightSpec::standard_power(1.0)),
        SymbolPair{SymbolExpr::mobius(0.5), one,
                   SymbolExpr::compose(SymbolExpr::mobius(0.5), SymbolExpr::scale(0.95, SymbolExpr::identity())), one},
        false});

    // case4: weighted composition-then-derivative differences (m = 1), compact symbols
    cases.push_back(RegressionCase{
        "case4",
        SpaceParams(0.8, 1, WeightSpec::standard_power(0.8)),
        SymbolPair{
            SymbolExpr::compose(SymbolExpr::mobius(0.3), SymbolExpr::scale(0.8, SymbolExpr::identity())),
            SymbolExpr::sum({SymbolExpr::constant(1.0), SymbolExpr::scale(-0.3, SymbolExpr::identity())}),
            SymbolExpr::scale(0.45, SymbolExpr::sum({SymbolExpr::identity(),
                                                     SymbolExpr::product({SymbolExpr::identity(), SymbolExpr::identity()})})),
            SymbolExpr::constant(0.9)},
        true});

    struct ParamChoice {
        double alpha;
        int m;
    };
    const ParamChoice choices[] = {{1.0, 0}, {1.0, 1}, {1.5, 2}, {0.75, 1}};

    detail::Rng rng(seed);
    for (int j = 0; j < n_random; ++j) {
        const auto& pc = choices[j % 4];
        double texp = pc.alpha + pc.m - 1.0;
        WeightSpec w = texp > 0.0 ? WeightSpec::standard_power(texp)
                                  : WeightSpec::standard_power(pc.alpha);
        bool boundary = (j % 2 == 0);
        auto make_phi = [&]() {
            Cplx a = rng.disk(0.5);
            double smod = boundary ? 1.0 : rng.uniform(0.6, 0.9);
            double sarg = 2.0 * M_PI * rng.uniform();
            Cplx s{smod * std::cos(sarg), smod * std::sin(sarg)};
            return SymbolExpr::compose(SymbolExpr::mobius(a), SymbolExpr::scale(s, SymbolExpr::identity()));
        };
        auto make_u = [&]() {
            double c0m = rng.uniform(0.5, 1.2);
            double c0a = 2.0 * M_PI * rng.uniform();
            Cplx c0{c0m * std::cos(c0a), c0m * std::sin(c0a)};
            Cplx c1 = rng.disk(0.4);
            return SymbolExpr::sum({SymbolExpr::constant(c0), SymbolExpr::scale(c1, SymbolExpr::identity())});
        };
        SymbolPair pr{make_phi(), make_u(), make_phi(), make_u()};
        std::ostringstream name;
        name << "rand" << j << "(alpha=" << pc.alpha << ",m=" << pc.m << ")";
        cases.push_back(RegressionCase{name.str(), SpaceParams(pc.alpha, pc.m, w), std::move(pr), !boundary});
    }
    return cases;
}

// --- pointwise estimate transfer (constant-one inequalities) -----------------

struct TfgOutcome {
    CheckOutcome part_i;
    CheckOutcome part_ii;
    CheckOutcome part_iii;
};

/// The two constant-one inequalities bound |T_i| rho pointwise by the norms of
/// the operator difference on the test functions anchored at phi_i(z); the
/// third inequality carries an unquantified constant which we measure.
/// Norms on the right are grid suprema; screening uses the evaluation at z
/// itself (never larger), so the reported margin is a certified lower bound.
inline TfgOutcome check_tfg(const PairContext& ctx, int refine_depth = 3, int full_eval_count = 32) {
    TfgOutcome out;
    const size_t n = ctx.grid->size();

    auto run_part = [&](bool anchor_first) {
        std::vector<double> lhs(n), point_rhs(n);
        double scale = 1e-300;
        for (size_t i = 0; i < n; ++i) {
            Cplx anchor = anchor_first ? ctx.phi1[i] : ctx.phi2[i];
            auto fg = ctx.fg_point(anchor, i);
            lhs[i] = (anchor_first ? ctx.abs_t1[i] : ctx.abs_t2[i]) * ctx.rho_vals[i];
            point_rhs[i] = fg.f + fg.g;
            scale = std::max(scale, lhs[i]);
        }
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return point_rhs[a] - lhs[a] < point_rhs[b] - lhs[b];
        });
        double min_margin = std::numeric_limits<double>::infinity();
        Cplx witness{0, 0};
        size_t k = std::min<size_t>(full_eval_count, n);
        for (size_t t = 0; t < n; ++t) {
            size_t i = order[t];
            double margin;
            if (t < k) {
                Cplx anchor = anchor_first ? ctx.phi1[i] : ctx.phi2[i];
                double fn = 0.0, gn = 0.0;
                size_t bf = 0, bg = 0;
                for (size_t j = 0; j < n; ++j) {
                    auto fg = ctx.fg_point(anchor, j);
                    if (fg.f > fn) { fn = fg.f; bf = j; }
                    if (fg.g > gn) { gn = fg.g; bg = j; }
                }
                if (refine_depth > 0) {
                    fn = std::max(fn, refine_from_point(ctx, bf, refine_depth,
                        [&](Cplx z) { return ctx.fg_at(anchor, z).f; }));
                    gn = std::max(gn, refine_from_point(ctx, bg, refine_depth,
                        [&](Cplx z) { return ctx.fg_at(anchor, z).g; }));
                }
                margin = fn + gn - lhs[i];
            } else {
                margin = point_rhs[i] - lhs[i];
            }
            if (margin < min_margin) {
                min_margin = margin;
                witness = ctx.grid->point(i).z;
            }
        }
        CheckOutcome o;
        o.name = anchor_first ? "tfg(i)" : "tfg(ii)";
        o.family = "pointwise over the grid, anchors phi_" + std::string(anchor_first ? "1" : "2");
        o.margin = min_margin / scale;
        o.pass = min_margin >= -1e-8 * scale;
        std::ostringstream w;
        w << "z = " << witness.real() << (witness.imag() < 0 ? "-" : "+") << std::abs(witness.imag()) << "i";
        o.witness = w.str();
        o.constant = 1.0;
        return o;
    };

    out.part_i = run_part(true);
    out.part_ii = run_part(false);

    // (iii): |T1 - T2| against the same right-hand side; constant measured
    {
        double best_ratio = 0.0;
        Cplx witness{0, 0};
        for (size_t i = 0; i < n; ++i) {
            auto fg1 = ctx.fg_point(ctx.phi1[i], i);
            auto fg2 = ctx.fg_point(ctx.phi2[i], i);
            double rhs = std::max(fg1.f + fg1.g, fg2.f + fg2.g);
            if (rhs < 1e-14) continue;
            double ratio = ctx.abs_tdiff[i] / rhs;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                witness = ctx.grid->point(i).z;
            }
        }
        out.part_iii.name = "tfg(iii)";
        out.part_iii.family = "pointwise ratio, constant measured";
        out.part_iii.constant = best_ratio;
        out.part_iii.pass = std::isfinite(best_ratio);
        out.part_iii.margin = out.part_iii.pass ? 1.0 : -1.0;
        std::ostringstream w;
        w << "z = " << witness.real() << (witness.imag() < 0 ? "-" : "+") << std::abs(witness.imag()) << "i";
        out.part_iii.witness = w.str();
    }
    return out;
}

// --- test-function norms against the power criterion --------------------------

struct FgnMeasurement {
    double q_test_f = 0.0;
    double q_test_g = 0.0;
    double q_pow = 0.0;
    double c_f = 0.0;
    double c_g = 0.0;
};

inline FgnMeasurement measure_fgn(const PairContext& ctx, const DiskGrid& a_grid,
                                  const std::vector<long>& schedule, int refine) {
    FgnMeasurement m;
    auto curve = test_curve(ctx, a_grid, refine);
    auto qt = quantity_test(curve);
    m.q_test_f = qt.sup_f;
    m.q_test_g = qt.sup_g;
    m.q_pow = quantity_pow(pow_curve(ctx, schedule, refine)).value;
    if (m.q_pow > 1e-12) {
        m.c_f = m.q_test_f / m.q_pow;
        m.c_g = m.q_test_g / m.q_pow;
    }
    return m;
}

/// sup_a of both test-function norms is dominated by the power criterion;
/// the constant is measured and must be stable under grid doubling.
inline CheckOutcome check_fgn(const SymbolPair& pair, const SpaceParams& params,
                              const VerifyConfig& cfg, const std::string& tag = "") {
    CheckOutcome o;
    o.name = "fgn" + tag;
    o.family = "test-function sups vs power criterion, grid-doubling stability";
    DiskGrid zg = cfg.z_grid();
    DiskGrid ag = cfg.a_grid();
    PairContext ctx(pair, params, zg);
    FgnMeasurement base = measure_fgn(ctx, ag, cfg.n_schedule, cfg.refine);

    VerifyConfig dd = cfg.doubled();
    DiskGrid zg2 = dd.z_grid();
    DiskGrid ag2 = dd.a_grid();
    PairContext ctx2(pair, params, zg2);
    FgnMeasurement fine = measure_fgn(ctx2, ag2, dd.n_schedule, dd.refine);

    double qt_base = base.q_test_f + base.q_test_g;
    double qt_fine = fine.q_test_f + fine.q_test_g;
    if (qt_fine < 1e-12 && fine.q_pow < 1e-12) {
        o.pass = true;
        o.margin = 1.0;
        o.constant = 0.0;
        o.note = "degenerate: both sides vanish";
        return o;
    }
    if (fine.q_pow < 1e-12) {
        o.pass = false;
        o.margin = -1.0;
        o.note = "power criterion vanished while test norms did not";
        return o;
    }
    double c_base = qt_base / base.q_pow;
    double c_fine = qt_fine / fine.q_pow;
    double drift = std::abs(c_fine - c_base) / std::max(c_base, 1e-12);
    o.constant = c_fine;
    o.margin = 0.1 - drift;
    o.pass = o.margin >= 0.0 && std::isfinite(c_fine);
    std::ostringstream note;
    note << "C_f=" << fine.c_f << " C_g=" << fine.c_g << " drift=" << drift;
    o.note = note.str();
    return o;
}

/// Limsup version: essential test-function norms vs the essential power
/// criterion. Pairs whose power tail is numerically zero are compact by the
/// vanishing criterion; for those, the essential test norms must decay at the
/// boundary rate the a-grid resolves.
inline CheckOutcome check_limfgn(const SymbolPair& pair, const SpaceParams& params,
                                 const VerifyConfig& cfg, const std::string& tag = "") {
    CheckOutcome o;
    o.name = "limfgn" + tag;
    o.family = "essential test norms vs essential power criterion";
    constexpr double kPowFloor = 1e-8;

    auto measure = [&](const VerifyConfig& c, double& e_test, double& e_pow, double& q_test) {
        DiskGrid zg = c.z_grid();
        DiskGrid ag = c.a_grid();
        PairContext ctx(pair, params, zg);
        auto curve = test_curve(ctx, ag, c.refine);
        e_test = quantity_test_essential(curve, ag).value;
        q_test = quantity_test(curve).value;
        e_pow = quantity_pow_essential(pow_curve(ctx, c.n_schedule, c.refine), c.tail_start).value;
        return ag.radius(c.a_levels);
    };

    double et1, ep1, qt1, et2, ep2, qt2;
    measure(cfg, et1, ep1, qt1);
    double r_top = measure(cfg.doubled(), et2, ep2, qt2);

    if (ep2 <= kPowFloor) {
        // vanishing power tail: require the essential test norms to sit at the
        // grid's boundary resolution, (1 - r_top^2)^alpha of the bounded scale
        double floor = 8.0 * std::pow(1.0 - r_top * r_top, params.alpha) * std::max(qt2, 1.0);
        o.constant = 0.0;
        o.margin = (floor - et2) / std::max(qt2, 1e-12);
        o.pass = et2 <= floor;
        std::ostringstream note;
        note << "compact path: E_test=" << et2 << " floor=" << floor << " E_pow=" << ep2;
        o.note = note.str();
        return o;
    }
    double c1 = et1 / std::max(ep1, kPowFloor);
    double c2 = et2 / ep2;
    double drift = std::abs(c2 - c1) / std::max(c1, 1e-12);
    o.constant = c2;
    o.margin = 0.1 - drift;
    o.pass = o.margin >= 0.0 && std::isfinite(c2);
    std::ostringstream note;
    note << "C=" << c2 << " drift=" << drift;
    o.note = note.str();
    return o;
}

// --- smoothness transfer (difference quotient against the metric) -------------

/// |(1-|z|^2)^{alpha+m-1} f^{(m)}(z) - (1-|w|^2)^{alpha+m-1} f^{(m)}(w)|
/// <= C ||f||_{B^alpha} rho(z, w); C measured over a function family and
/// required to stay stable when the family doubles.
inline CheckOutcome check_lipschitz(const SpaceParams& params, const VerifyConfig& cfg,
                                    const std::string& tag = "") {
    CheckOutcome o;
    o.name = "lipschitz" + tag;
    DiskGrid grid = cfg.z_grid();
    const double texp = params.t_exponent();

    struct Member {
        std::string name;
        std::function<Cplx(Cplx)> fm; // m-th derivative
        double norm;                  // Bloch norm (exact or grid estimate)
    };

    auto build_family = [&](int scale) {
        std::vector<Member> fam;
        const int mono[] = {1, 2, 3, 5, 8, 13, 21, 34, 4, 6, 10, 16, 24, 40, 48, 64};
        int n_mono = 8 * scale;
        for (int t = 0; t < n_mono && t < 16; ++t) {
            int n = mono[t];
            if (n < params.m) continue;
            PowerSeries p = PowerSeries::monomial(n);
            PowerSeries pm = p.derivative(params.m);
            fam.push_back(Member{"z^" + std::to_string(n),
                                 [pm](Cplx z) { return pm.eval(z); },
                                 monomial_bloch_norm(n, params.alpha)});
        }
        detail::Rng rng(cfg.seed ^ 0x5eedu);
        int n_poly = 4 * scale;
        for (int t = 0; t < n_poly; ++t) {
            std::vector<Cplx> coeffs(17);
            for (auto& c : coeffs) c = rng.disk(1.0);
            PowerSeries p = PowerSeries::from_coeffs(std::move(coeffs));
            PowerSeries pm = p.derivative(params.m);
            double norm = bloch_norm(p, params.alpha, grid, cfg.refine);
            fam.push_back(Member{"poly#" + std::to_string(t),
                                 [pm](Cplx z) { return pm.eval(z); }, norm});
        }
        const double mods[] = {0.3, 0.5, 0.7, 0.85, 0.4, 0.6, 0.8, 0.2};
        int n_a = 4 * scale;
        for (int t = 0; t < n_a && t < 8; ++t) {
            double arg = 0.7 * t;
            Cplx a{mods[t] * std::cos(arg), mods[t] * std::sin(arg)};
            int order = choose_order(a, params, grid.max_radius(), 1e-10);
            PowerSeries fa = fa_series(a, params, order);
            double norm = bloch_norm(fa, params.alpha, grid, cfg.refine);
            SpaceParams p = params;
            fam.push_back(Member{"f_a |a|=" + std::to_string(mods[t]),
                                 [a, p](Cplx z) { return fa_deriv_closed(a, z, p); }, norm});
        }
        return fam;
    };

    auto measure = [&](int scale, std::string* witness) {
        auto fam = build_family(scale);
        detail::Rng rng(cfg.seed ^ 0xa11ceu);
        int n_pairs = 160 * scale;
        double best = 0.0;
        for (int t = 0; t < n_pairs; ++t) {
            Cplx z = rng.disk(0.9);
            Cplx w = rng.disk(0.9);
            double d = rho(z, w);
            if (d < 1e-6) continue;
            for (const auto& f : fam) {
                double lhs = std::abs(std::pow(1.0 - std::norm(z), texp) * f.fm(z) -
                                      std::pow(1.0 - std::norm(w), texp) * f.fm(w));
                double ratio = lhs / (f.norm * d);
                if (ratio > best) {
                    best = ratio;
                    if (witness) *witness = f.name;
                }
            }
        }
        return best;
    };

    std::string witness;
    double c1 = measure(1, nullptr);
    double c2 = measure(2, &witness);
    double drift = std::abs(c2 - c1) / std::max(c1, 1e-12);
    o.family = "monomials + random polynomials + kernel family; seeded point pairs";
    o.constant = c2;
    o.witness = witness;
    o.margin = 0.2 - drift;
    o.pass = std::isfinite(c2) && o.margin >= 0.0;
    std::ostringstream note;
    note << "C(base)=" << c1 << " C(doubled)=" << c2;
    o.note = note.str();
    return o;
}

// --- asymptotic identities -----------------------------------------------------

/// Sum_{k>=1} gamma_k k^{1-alpha-m} q^k stays within a fixed band of (1-q)^{-alpha}.
inline CheckOutcome check_stirling(const SpaceParams& params,
                                   const std::vector<double>& a_moduli = {0.9, 0.99, 0.999},
                                   double band = 4.0) {
    CheckOutcome o;
    o.name = "stirling";
    o.family = "ratio of the gamma-weighted sum to (1-q)^{-alpha}";
    const double b = params.series_base();
    const double expo = 1.0 - params.alpha - params.m;
    double worst = 1.0;
    double worst_q = 0.0;
    for (double q : a_moduli) {
        if (!(q > 0.0 && q < 1.0)) throw ConfigError("check_stirling: moduli must be in (0,1)");
        double gamma = 1.0; // gamma_k, starting at k = 0
        double qk = 1.0;
        double acc = 0.0;
        const long kmax = 5'000'000;
        for (long k = 1; k <= kmax; ++k) {
            gamma *= (k - 1 + b) / k;
            qk *= q;
            double term = gamma * std::pow(static_cast<double>(k), expo) * qk;
            acc += term;
            if (k > 64 && term / (1.0 - q) < 1e-12 * acc) break;
        }
        double ratio = acc * std::pow(1.0 - q, params.alpha);
        double c = std::max(ratio, 1.0 / ratio);
        if (c > worst) {
            worst = c;
            worst_q = q;
        }
    }
    o.constant = worst;
    o.margin = band - worst;
    o.pass = worst <= band;
    std::ostringstream w;
    w << "|a| = " << worst_q;
    o.witness = w.str();
    return o;
}

/// a_k = sum_{l<k} l^{2 alpha + m - 2} obeys a_k / k^{2 alpha + m - 1} -> 1/(2 alpha + m - 1).
inline CheckOutcome check_stolz(const SpaceParams& params, long k_max = 10000, double tol = 1e-2) {
    CheckOutcome o;
    o.name = "stolz";
    o.family = "partial power sums vs the limiting ratio";
    const double b = params.series_base();
    const double s = b - 1.0;
    double acc = 0.0;
    for (long l = 0; l < k_max; ++l) {
        if (l == 0)
            acc += (s == 0.0) ? 1.0 : 0.0;
        else
            acc += std::pow(static_cast<double>(l), s);
    }
    double ratio = acc / std::pow(static_cast<double>(k_max), b);
    double dev = std::abs(ratio - 1.0 / b);
    o.constant = ratio;
    o.margin = tol - dev;
    o.pass = dev <= tol;
    std::ostringstream w;
    w << "k = " << k_max << ", deviation = " << dev;
    o.witness = w.str();
    return o;
}

/// n^{alpha-1} ||z^n||_{B^alpha} approaches (2 alpha / e)^alpha.
inline CheckOutcome check_znorm(const SpaceParams& params, int n_anchor = 4096, double tol = 0.02,
                                int grid_levels = 12, int grid_angular = 4) {
    CheckOutcome o;
    o.name = "znorm";
    o.family = "monomial norm asymptotic at n = " + std::to_string(n_anchor);
    DiskGrid grid(grid_levels, grid_angular);
    double norm = bloch_norm(PowerSeries::monomial(n_anchor), params.alpha, grid, 5);
    double scaled = norm * std::pow(static_cast<double>(n_anchor), params.alpha - 1.0);
    double target = std::pow(2.0 * params.alpha / M_E, params.alpha);
    double dev = std::abs(scaled - target) / target;
    o.constant = scaled;
    o.margin = tol - dev;
    o.pass = dev <= tol;
    std::ostringstream w;
    w << "n^{alpha-1} norm = " << scaled << ", limit = " << target;
    o.witness = w.str();
    return o;
}

// --- driver -------------------------------------------------------------------

struct RegressionResult {
    std::vector<CheckOutcome> outcomes;
    std::vector<std::pair<std::string, CriterionReport>> reports;
    bool all_pass = true;
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "lipschitz", "tfg", "fgn", "limfgn", "stirling", "stolz", "znorm"};
    return names;
}

inline RegressionResult run_regression(const VerifyConfig& cfg,
                                       const std::vector<std::string>& which = {},
                                       bool with_reports = false) {
    auto wanted = [&](const std::string& name) {
        if (which.empty()) return true;
        for (const auto& w : which)
            if (w == name || w == "all") return true;
        return false;
    };
    for (const auto& w : which) {
        if (w == "all") continue;
        bool known = false;
        for (const auto& k : known_checks()) known = known || k == w;
        if (!known) throw ConfigError("unknown check name: " + w);
    }

    auto family = regression_family(cfg.seed, cfg.n_random);
    if (family.empty()) throw ConfigError("run_regression: empty family");

    RegressionResult res;
    DiskGrid zg = cfg.z_grid();
    DiskGrid ag = cfg.a_grid();

    if (wanted("lipschitz")) {
        const std::pair<double, int> sets[] = {{1.0, 0}, {1.0, 1}, {1.5, 2}, {0.75, 1}};
        for (auto [alpha, m] : sets) {
            SpaceParams p(alpha, m, WeightSpec::standard_power(std::max(alpha + m - 1.0, alpha)));
            std::ostringstream tag;
            tag << "(alpha=" << alpha << ",m=" << m << ")";
            res.outcomes.push_back(check_lipschitz(p, cfg, tag.str()));
        }
    }

    for (const auto& rc : family) {
        PairContext ctx(rc.pair, rc.params, zg);
        if (wanted("tfg")) {
            TfgOutcome t = check_tfg(ctx, cfg.refine);
            t.part_i.name += "/" + rc.name;
            t.part_ii.name += "/" + rc.name;
            t.part_iii.name += "/" + rc.name;
            res.outcomes.push_back(t.part_i);
            res.outcomes.push_back(t.part_ii);
            res.outcomes.push_back(t.part_iii);
        }
        if (wanted("fgn")) res.outcomes.push_back(check_fgn(rc.pair, rc.params, cfg, "/" + rc.name));
        if (wanted("limfgn"))
            res.outcomes.push_back(check_limfgn(rc.pair, rc.params, cfg, "/" + rc.name));
        if (with_reports) {
            ReportOptions opt;
            opt.n_schedule = cfg.n_schedule;
            opt.tail_start = cfg.tail_start;
            opt.refine_curves = cfg.refine;
            opt.seed = cfg.seed;
            opt.with_oracle = false;
            res.reports.emplace_back(rc.name, full_report(ctx, ag, opt));
        }
    }

    if (wanted("stirling")) {
        res.outcomes.push_back(check_stirling(SpaceParams(1.0, 1, WeightSpec::standard_power(1.0))));
        res.outcomes.push_back(check_stirling(SpaceParams(1.0, 0, WeightSpec::standard_power(1.0))));
    }
    if (wanted("stolz")) {
        res.outcomes.push_back(check_stolz(SpaceParams(1.0, 1, WeightSpec::standard_power(1.0))));
        res.outcomes.push_back(check_stolz(SpaceParams(1.5, 0, WeightSpec::standard_power(1.5))));
        res.outcomes.push_back(check_stolz(SpaceParams(0.75, 2, WeightSpec::standard_power(1.75))));
    }
    if (wanted("znorm")) {
        res.outcomes.push_back(check_znorm(SpaceParams(1.0, 0, WeightSpec::standard_power(1.0))));
        res.outcomes.push_back(check_znorm(SpaceParams(1.5, 0, WeightSpec::standard_power(1.5))));
    }

    for (const auto& oc : res.outcomes) res.all_pass = res.all_pass && oc.pass;
    return res;
}

} // namespace blochdiff
