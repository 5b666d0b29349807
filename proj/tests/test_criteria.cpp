#include <catch2/catch_amalgamated.hpp>

#include "blochdiff/criteria.hpp"

#include "oracles.hpp"

using namespace blochdiff;
using Catch::Approx;

namespace {
SymbolExpr one() { return SymbolExpr::constant(1.0); }

SymbolPair identical_pair() {
    return SymbolPair{SymbolExpr::mobius(0.3), SymbolExpr::sum({one(), SymbolExpr::scale(0.2, SymbolExpr::identity())}),
                      SymbolExpr::mobius(0.3), SymbolExpr::sum({one(), SymbolExpr::scale(0.2, SymbolExpr::identity())})};
}
} // namespace

TEST_CASE("n-schedule") {
    auto ns = default_n_schedule();
    CHECK(ns.front() == 0);
    CHECK(std::find(ns.begin(), ns.end(), 64) != ns.end());
    CHECK(std::find(ns.begin(), ns.end(), 4096) != ns.end());
    CHECK(std::find(ns.begin(), ns.end(), 3072) != ns.end());
    CHECK(std::is_sorted(ns.begin(), ns.end()));
    CHECK(std::adjacent_find(ns.begin(), ns.end()) == ns.end());
}

TEST_CASE("degenerate pair zeroes every quantity") {
    SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
    DiskGrid grid(8, 4);
    DiskGrid a_grid(8, 4, 32);
    PairContext ctx(identical_pair(), params, grid);
    ReportOptions opt;
    opt.seed = 5;
    CriterionReport rep = full_report(ctx, a_grid, opt);
    CHECK(rep.q_t.value <= 1e-12);
    CHECK(rep.q_test.value <= 1e-12);
    CHECK(rep.q_pow.value <= 1e-12);
    CHECK(rep.e_t.value <= 1e-12);
    CHECK(rep.e_test.value <= 1e-12);
    CHECK(rep.e_pow.value <= 1e-12);
    CHECK(rep.oracle.value <= 1e-12);
}

TEST_CASE("quantity_T on degenerate exponent") {
    // alpha = 1, m = 0 makes the boundary quotient exponent vanish; with the
    // constant-one weight both quotients reduce to u, so only rho survives.
    SpaceParams params(1.0, 0, WeightSpec::one());
    DiskGrid grid(10, 4);
    SymbolPair pr{SymbolExpr::identity(), one(), SymbolExpr::constant(0.0), one()};
    PairContext ctx(pr, params, grid);
    QuantityT q = quantity_T(ctx, 3);
    CHECK(q.sup_t1_rho == Approx(grid.max_radius()).epsilon(1e-12));
    CHECK(q.sup_tdiff <= 1e-14);
    CHECK(q.value == Approx(grid.max_radius()).epsilon(1e-12));
}

TEST_CASE("quantity_T vanishes for identical identity symbols") {
    SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
    DiskGrid grid(8, 4);
    SymbolPair pr{SymbolExpr::identity(), one(), SymbolExpr::identity(), one()};
    PairContext ctx(pr, params, grid);
    QuantityT q = quantity_T(ctx, 2);
    CHECK(q.combo1 <= 1e-13);
    CHECK(q.combo2 <= 1e-13);
}

TEST_CASE("power criterion trace") {
    SpaceParams params(1.0, 0, WeightSpec::standard_power(1.0));
    DiskGrid grid(10, 4);
    SymbolPair pr{SymbolExpr::scale(0.5, SymbolExpr::identity()), one(), SymbolExpr::constant(0.0), one()};
    PairContext ctx(pr, params, grid);
    PowCurve curve = pow_curve(ctx, default_n_schedule(), 4);
    QuantityPow q = quantity_pow(curve);

    // term_n = 2^{-n} sup r^n (1-r^2); the supremum sits at n = 1
    double expect1 = 0.5 * oracles::radial_max([](double r) { return r * (1.0 - r * r); });
    CHECK(expect1 == Approx(0.19245008972987526).epsilon(1e-10));
    CHECK(q.value == Approx(expect1).epsilon(1e-5));
    CHECK(q.arg_n == 1);
    CHECK(q.n0_degenerate); // alpha + m - 1 == 0, flagged limit convention
    CHECK(curve.rows.front().n == 0);
    CHECK(curve.rows.front().term == 0.0); // u1 == u2

    // decaying tail for bounded symbols
    EssentialPow e = quantity_pow_essential(curve, 256);
    CHECK(e.value <= 1e-6);
    CHECK(e.value <= q.value);
}

TEST_CASE("essential power criterion sees the boundary mass") {
    // identity against the zero operator with the matching weight: the tail
    // terms approach (2 alpha / e)^alpha
    SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
    DiskGrid grid(12, 4);
    SymbolPair pr{SymbolExpr::identity(), one(), SymbolExpr::constant(0.0), SymbolExpr::constant(0.0)};
    PairContext ctx(pr, params, grid);
    PowCurve curve = pow_curve(ctx, default_n_schedule(), 4);
    EssentialPow e = quantity_pow_essential(curve, 256);
    double target = 2.0 / M_E;
    CHECK(e.value == Approx(target).epsilon(0.05));
    CHECK(quantity_pow(curve).value >= e.value);
}

TEST_CASE("essential T quantity") {
    SECTION("compact symbols produce empty regions and exact zero") {
        SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
        DiskGrid grid(10, 4);
        SymbolPair pr{SymbolExpr::scale(0.5, SymbolExpr::identity()), one(),
                      SymbolExpr::scale(Cplx{0.0, -0.6}, SymbolExpr::identity()), one()};
        PairContext ctx(pr, params, grid);
        EssentialT e = quantity_T_essential(ctx);
        CHECK(e.value == 0.0);
        CHECK(e.detail_t1.empty_region);
        CHECK(e.detail_t2.empty_region);
        CHECK(e.detail_diff.empty_region);
    }
    SECTION("identity against the zero map keeps the first term") {
        SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
        DiskGrid grid(12, 8);
        SymbolPair pr{SymbolExpr::identity(), one(), SymbolExpr::constant(0.0), one()};
        PairContext ctx(pr, params, grid);
        EssentialT e = quantity_T_essential(ctx);
        CHECK(e.term_t1 == Approx(1.0).epsilon(1e-3)); // limsup of rho = |z|
        CHECK(e.term_t2 == 0.0);                        // region never fills
        CHECK(e.detail_t2.empty_region);
        CHECK(e.term_diff == 0.0);
        CHECK(e.detail_diff.empty_region);
    }
}

TEST_CASE("test-function quantity against a brute-force double grid") {
    SpaceParams params(1.0, 0, WeightSpec::standard_power(1.0));
    DiskGrid grid(9, 4);
    DiskGrid a_grid(9, 4, 32);
    SymbolPair pr{SymbolExpr::scale(0.5, SymbolExpr::identity()), one(), SymbolExpr::constant(0.0), one()};
    PairContext ctx(pr, params, grid);
    auto curve = test_curve(ctx, a_grid, 3);
    QuantityTest q = quantity_test(curve);

    // brute force over dense polar (a, z) grids with the closed kernels
    double brute_f = 0.0, brute_g = 0.0;
    for (int ai = 0; ai <= 24; ++ai) {
        double amod = 0.99 * ai / 24.0;
        for (int at = 0; at < 16; ++at) {
            double aarg = 2.0 * M_PI * at / 16.0;
            Cplx a{amod * std::cos(aarg), amod * std::sin(aarg)};
            double best_f = 0.0, best_g = 0.0;
            for (int ri = 0; ri <= 48; ++ri) {
                double r = 0.998 * ri / 48.0;
                for (int ti = 0; ti < 24; ++ti) {
                    double th = 2.0 * M_PI * ti / 24.0;
                    Cplx z{r * std::cos(th), r * std::sin(th)};
                    auto fg = ctx.fg_at(a, z);
                    best_f = std::max(best_f, fg.f);
                    best_g = std::max(best_g, fg.g);
                }
            }
            brute_f = std::max(brute_f, best_f);
            brute_g = std::max(brute_g, best_g);
        }
    }
    CHECK(q.sup_f == Approx(brute_f).epsilon(0.05));
    CHECK(q.sup_g == Approx(brute_g).epsilon(0.05));

    // a = 0 contributes nothing when the multipliers agree (kernel == 1)
    for (const auto& row : curve)
        if (std::abs(row.a) == 0.0) CHECK(row.f_norm <= 1e-14);
}

TEST_CASE("essential orderings hold on assorted pairs") {
    struct Case {
        SpaceParams params;
        SymbolPair pair;
    };
    std::vector<Case> cases;
    cases.push_back({SpaceParams(1.0, 0, WeightSpec::standard_power(1.0)),
                     SymbolPair{SymbolExpr::mobius(0.3), one(), SymbolExpr::scale(0.7, SymbolExpr::identity()), one()}});
    cases.push_back({SpaceParams(1.0, 1, WeightSpec::standard_power(1.0)),
                     SymbolPair{SymbolExpr::mobius(0.5), one(),
                                SymbolExpr::compose(SymbolExpr::mobius(0.5), SymbolExpr::scale(0.95, SymbolExpr::identity())), one()}});
    cases.push_back({SpaceParams(0.8, 1, WeightSpec::standard_power(0.8)),
                     SymbolPair{SymbolExpr::compose(SymbolExpr::mobius(0.3), SymbolExpr::scale(0.8, SymbolExpr::identity())),
                                SymbolExpr::sum({one(), SymbolExpr::scale(-0.3, SymbolExpr::identity())}),
                                SymbolExpr::scale(0.45, SymbolExpr::sum({SymbolExpr::identity(),
                                                                         SymbolExpr::product({SymbolExpr::identity(), SymbolExpr::identity()})})),
                                SymbolExpr::constant(0.9)}});
    DiskGrid grid(9, 4);
    DiskGrid a_grid(9, 4, 32);
    for (const auto& c : cases) {
        PairContext ctx(c.pair, c.params, grid);
        ReportOptions opt;
        opt.with_oracle = false;
        CriterionReport rep = full_report(ctx, a_grid, opt);
        CHECK(rep.e_t.value <= rep.q_t.sum3 + 1e-12);
        CHECK(rep.e_test.value <= rep.q_test.value + 1e-12);
        CHECK(rep.e_pow.value <= rep.q_pow.value + 1e-12);
        CHECK(rep.q_t.value >= 0.0);
    }
}

TEST_CASE("oracle lower bound") {
    SpaceParams params(1.0, 1, WeightSpec::standard_power(1.0));
    DiskGrid grid(9, 4);
    DiskGrid a_grid(9, 4, 32);

    SECTION("identical pair gives zero") {
        PairContext ctx(identical_pair(), params, grid);
        OracleFamilySpec spec;
        CHECK(oracle_lower_bound(ctx, a_grid, spec, 3).value <= 1e-12);
    }
    SECTION("monomial branch dominates the hand computation") {
        SymbolPair pr{SymbolExpr::scale(0.8, SymbolExpr::identity()), one(), SymbolExpr::constant(0.0),
                      SymbolExpr::constant(0.0)};
        PairContext ctx(pr, params, grid);
        OracleFamilySpec spec;
        OracleResult res = oracle_lower_bound(ctx, a_grid, spec, 3);
        // hand value for n = 4, m = 1: ||4 (0.8 z)^3||_v / ||z^4||_B
        double op = 4.0 * std::pow(0.8, 3) *
                    oracles::radial_max([](double r) { return std::pow(r, 3) * (1.0 - r * r); });
        double lower = op / monomial_bloch_norm(4, 1.0);
        CHECK(res.value >= lower - 1e-9);
        CHECK_FALSE(res.witness.empty());
    }
}
