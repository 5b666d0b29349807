#include <catch2/catch_amalgamated.hpp>

#include "blochdiff/grid.hpp"
#include "blochdiff/metrics.hpp"
#include "blochdiff/series.hpp"

#include "oracles.hpp"

using namespace blochdiff;
using Catch::Approx;

TEST_CASE("disk grid shape") {
    DiskGrid grid(6, 4);
    CHECK(grid.radius(0) == 0.0);
    CHECK(grid.radius(1) == 0.5);
    CHECK(grid.radius(6) == Approx(1.0 - std::ldexp(1.0, -6)));
    for (int j = 0; j < 6; ++j) CHECK(grid.radius(j) < grid.radius(j + 1));
    CHECK(grid.count(0) == 4);
    CHECK(grid.count(3) == 32);
    for (const auto& p : grid.points()) CHECK(std::abs(p.z) < 1.0);
    DiskGrid capped(6, 4, 16);
    CHECK(capped.count(5) == 16);
}

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(rho(Cplx{0.3, 0.2}, Cplx{0.3, 0.2}) == 0.0);
    CHECK(rho(Cplx{0, 0}, Cplx{0.3, -0.4}) == Approx(0.5));
    CHECK(rho(Cplx{0.5, 0}, Cplx{-0.5, 0}) == Approx(0.8)); // 1 / 1.25
    CHECK_THROWS_AS(rho(Cplx{1.0, 0}, Cplx{0, 0}), DomainError);

    SECTION("symmetry and Mobius invariance") {
        oracles::Rng rng(3);
        for (int t = 0; t < 200; ++t) {
            Cplx w = rng.disk(0.9), z1 = rng.disk(0.9), z2 = rng.disk(0.9);
            CHECK(rho(z1, z2) == Approx(rho(z2, z1)).margin(1e-14));
            auto mob = SymbolExpr::mobius(w);
            double lhs = rho(mob.eval(z1), mob.eval(z2));
            CHECK(std::abs(lhs - rho(z1, z2)) < 1e-12);
        }
    }
}

TEST_CASE("rho over a symbol pair") {
    auto one = SymbolExpr::constant(1.0);
    (void)one;
    SymbolPair same{SymbolExpr::mobius(0.3), SymbolExpr::constant(1.0), SymbolExpr::mobius(0.3),
                    SymbolExpr::constant(1.0)};
    CHECK(rho_pair(same, Cplx{0.2, 0.6}) == 0.0);

    SymbolPair idzero{SymbolExpr::identity(), SymbolExpr::constant(1.0), SymbolExpr::constant(0.0),
                      SymbolExpr::constant(1.0)};
    CHECK(rho_pair(idzero, Cplx{0.3, 0.0}) == Approx(0.3));

    SymbolPair scaled{SymbolExpr::scale(0.5, SymbolExpr::identity()), SymbolExpr::constant(1.0),
                      SymbolExpr::scale(-0.5, SymbolExpr::identity()), SymbolExpr::constant(1.0)};
    CHECK(rho_pair(scaled, Cplx{0.5, 0.0}) == Approx(0.5 / 1.0625).epsilon(1e-12));
}

TEST_CASE("boundary quotient") {
    SECTION("cancelling exponents give exactly 1") {
        SpaceParams p(1.0, 1, WeightSpec::standard_power(1.0)); // exponent alpha+m-1 = 1
        auto t = t_quantity(p, SymbolExpr::constant(1.0), SymbolExpr::identity(), Cplx{0.7, 0.1});
        CHECK(std::abs(t.value) == Approx(1.0).epsilon(1e-14));
        CHECK_FALSE(t.overflow);
    }
    SECTION("constant-0 map leaves v u") {
        SpaceParams p(1.5, 2, WeightSpec::standard_power(0.8));
        Cplx z{0.4, -0.3};
        auto t = t_quantity(p, SymbolExpr::constant(Cplx{2.0, 1.0}), SymbolExpr::constant(0.0), z);
        CHECK(std::abs(t.value - eval_weight(p.weight, z) * Cplx{2.0, 1.0}) < 1e-14);
    }
    SECTION("frozen example") {
        SpaceParams p(1.0, 1, WeightSpec::standard_power(1.0));
        auto t = t_quantity(p, SymbolExpr::constant(1.0), SymbolExpr::scale(0.5, SymbolExpr::identity()),
                            Cplx{0.8, 0.0});
        CHECK(t.value.real() == Approx(0.36 / 0.84).epsilon(1e-14));
    }
}

TEST_CASE("operator difference application") {
    SpaceParams p(1.0, 1, WeightSpec::standard_power(1.0));
    SymbolPair same{SymbolExpr::mobius(0.4), SymbolExpr::constant(1.0), SymbolExpr::mobius(0.4),
                    SymbolExpr::constant(1.0)};
    PowerSeries any = PowerSeries::from_coeffs({Cplx{1, 0}, Cplx{2, 0}, Cplx{0, 3}});
    CHECK(std::abs(apply_operator_diff(same, p, any, Cplx{0.3, 0.3})) == 0.0);

    // f = z^{m+1} with m = 1: f'(w) = 2w
    SymbolPair pr{SymbolExpr::scale(0.5, SymbolExpr::identity()), SymbolExpr::constant(1.0),
                  SymbolExpr::constant(0.0), SymbolExpr::constant(1.0)};
    Cplx got = apply_operator_diff(pr, p, PowerSeries::monomial(2), Cplx{0.4, 0.0});
    CHECK(got.real() == Approx(0.4).epsilon(1e-14));
    CHECK(got.imag() == 0.0);

    // constant m-th derivative cancels for equal multipliers
    Cplx zero = apply_operator_diff(pr, p, PowerSeries::monomial(1), Cplx{0.4, 0.0});
    CHECK(std::abs(zero) == 0.0);
}

TEST_CASE("sup_disk") {
    DiskGrid grid(10, 8);
    SECTION("constants and radially monotone functions") {
        auto est1 = sup_disk([](Cplx) { return 1.0; }, grid, 3);
        CHECK(est1.value == 1.0);
        auto est2 = sup_disk([](Cplx z) { return std::abs(z); }, grid, 3);
        CHECK(est2.value == Approx(grid.max_radius()).epsilon(1e-14));
        CHECK(std::abs(est2.argmax) == Approx(grid.max_radius()).epsilon(1e-14));
    }
    SECTION("Bloch integrand of z^2 reaches the interior optimum") {
        auto est = sup_disk([](Cplx z) { return (1.0 - std::norm(z)) * 2.0 * std::abs(z); }, grid, 5);
        CHECK(est.value == Approx(4.0 / (3.0 * std::sqrt(3.0))).margin(1e-6));
    }
    SECTION("monotone in refinement and dominates probes") {
        auto fn = [](Cplx z) {
            return std::abs(std::sin(3.0 * z.real()) + std::cos(2.0 * z.imag())) * (1.0 - std::norm(z));
        };
        double prev = 0.0;
        for (int depth : {0, 1, 2, 3, 5}) {
            auto est = sup_disk(fn, grid, depth);
            CHECK(est.value >= prev - 1e-15);
            prev = est.value;
        }
        oracles::Rng rng(17);
        std::vector<Cplx> probes;
        for (int i = 0; i < 100; ++i) probes.push_back(rng.disk(grid.max_radius()));
        auto est = sup_disk(fn, grid, 5, probes);
        for (Cplx pz : probes) CHECK(est.value >= fn(pz));
    }
    SECTION("NaN is a hard error") {
        CHECK_THROWS(sup_disk([](Cplx) { return std::nan(""); }, grid, 0));
    }
}

TEST_CASE("bloch_norm on the grid") {
    DiskGrid grid(10, 4);
    SECTION("constants and z") {
        CHECK(bloch_norm(PowerSeries::from_coeffs({Cplx{2.5, 0}}), 1.0, grid) == Approx(2.5));
        CHECK(bloch_norm(PowerSeries::monomial(1), 1.0, grid) == Approx(1.0));
    }
    SECTION("z^2 at alpha = 1") {
        CHECK(bloch_norm(PowerSeries::monomial(2), 1.0, grid) ==
              Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-6));
    }
    SECTION("matches the closed monomial norm within 1e-4 relative for n <= 64") {
        for (int n = 1; n <= 64; ++n) {
            double got = bloch_norm(PowerSeries::monomial(n), 1.0, grid);
            double expect = monomial_bloch_norm(n, 1.0);
            CHECK(std::abs(got - expect) / expect < 1e-4);
        }
        for (int n : {3, 9, 27, 55}) {
            double got = bloch_norm(PowerSeries::monomial(n), 0.75, grid);
            CHECK(std::abs(got - monomial_bloch_norm(n, 0.75)) / monomial_bloch_norm(n, 0.75) < 1e-4);
        }
    }
}

TEST_CASE("weighted_norm") {
    DiskGrid grid(10, 4);
    SECTION("constants") {
        CHECK(weighted_norm([](Cplx) { return Cplx{1, 0}; }, WeightSpec::standard_power(1.0), grid) ==
              Approx(1.0));
        CHECK(weighted_norm([](Cplx) { return Cplx{0, 0}; }, WeightSpec::standard_power(1.0), grid) ==
              0.0);
    }
    SECTION("monomials against the dense 1-D oracle") {
        for (auto [n, beta] : {std::pair{3, 1.0}, {10, 0.5}, {24, 2.0}}) {
            double nn = n, b = beta;
            double expect =
                oracles::radial_max([nn, b](double r) { return std::pow(r, nn) * std::pow(1.0 - r * r, b); });
            double got = weighted_norm([n = n](Cplx z) { return std::pow(z, static_cast<double>(n)); },
                                       WeightSpec::standard_power(beta), grid);
            CHECK(got == Approx(expect).epsilon(1e-6));
            // closed optimum r*^2 = n/(n+2 beta)
            double r2 = nn / (nn + 2 * b);
            double closed = std::pow(r2, nn / 2) * std::pow(1.0 - r2, b);
            CHECK(got == Approx(closed).epsilon(1e-6));
        }
    }
}

TEST_CASE("boundary limsup over nested regions") {
    DiskGrid grid = DiskGrid::standard();
    const size_t n = grid.size();

    SECTION("bounded map empties the outer regions") {
        std::vector<double> vals(n, 1.0), mods(n);
        for (size_t i = 0; i < n; ++i) mods[i] = 0.5; // |phi| == 0.5 everywhere
        auto est = boundary_limsup(vals, mods, grid);
        CHECK(est.empty_region);
        CHECK(est.value == 0.0);
        CHECK(est.first_empty_level == 1);
    }
    SECTION("identity with fn = 1") {
        std::vector<double> vals(n, 1.0), mods(n);
        for (size_t i = 0; i < n; ++i) mods[i] = std::abs(grid.point(i).z);
        auto est = boundary_limsup(vals, mods, grid);
        CHECK_FALSE(est.empty_region);
        CHECK_FALSE(est.sparse);
        CHECK(est.value == 1.0);
    }
    SECTION("identity with fn = 1-|z|^2 decays at the level rate") {
        std::vector<double> vals(n), mods(n);
        for (size_t i = 0; i < n; ++i) {
            mods[i] = std::abs(grid.point(i).z);
            vals[i] = 1.0 - std::norm(grid.point(i).z);
        }
        auto est = boundary_limsup(vals, mods, grid);
        double r = grid.radius(grid.levels() - 2);
        CHECK(est.value <= 1.0 - r * r + 1e-12);
        CHECK(est.value > 0.0);
    }
    SECTION("continuous boundary values are recovered within 5%") {
        // |p(z)| for polynomial p, phi = identity; true limit = max over the circle
        auto p = [](Cplx z) { return z * z * z - Cplx{0.5, 0.2} * z + Cplx{0.3, -0.1}; };
        std::vector<double> vals(n), mods(n);
        for (size_t i = 0; i < n; ++i) {
            mods[i] = std::abs(grid.point(i).z);
            vals[i] = std::abs(p(grid.point(i).z));
        }
        auto est = boundary_limsup(vals, mods, grid);
        double truth = oracles::circle_max([&](double t) { return std::abs(p(Cplx{std::cos(t), std::sin(t)})); });
        CHECK(std::abs(est.value - truth) / truth < 0.05);
    }
}

TEST_CASE("ring limsup over an a-grid curve") {
    DiskGrid a_grid(8, 8, 64);
    std::vector<RingCurvePoint> curve;
    for (const auto& p : a_grid.points())
        curve.push_back({p.z, p.level, 2.0 - std::norm(p.z)}); // tends to 1 at the boundary
    auto est = ring_limsup(curve, a_grid);
    double r = a_grid.radius(6); // max over the last three rings peaks at the innermost of them
    CHECK(est.value == Approx(2.0 - r * r).epsilon(1e-12));
    CHECK_FALSE(est.sparse);
}
