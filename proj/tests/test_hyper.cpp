#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "hyper.hpp"
#include "oracles.hpp"

using namespace spinv;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("hyperradius of a single coordinate") {
    const auto g = make_geometry(1, 1, {3.0});
    const auto hr = hyperradius(g);
    CHECK(hr.value == 3.0);
    CHECK(hr.count.counted == 2);  // one squaring + one sqrt
    CHECK(hr.count.free == 0);
}

TEST_CASE("hyperradius counted ops are N*D + 1") {
    for (int n : {2, 4, 8, 16}) {
        std::vector<double> pos(static_cast<std::size_t>(n), 1.0);
        const auto hr = hyperradius(make_geometry(n, 1, std::move(pos)));
        CHECK(hr.count.counted == n + 1);
        CHECK(hr.count.free == n - 1);
    }
    const auto hr3 = hyperradius(make_geometry(2, 3, {1, 2, 3, 4, 5, 6}));
    CHECK(hr3.count.counted == 7);
    CHECK(hr3.value == doctest::Approx(std::sqrt(91.0)));
}

TEST_CASE("hyperradius of the origin is zero") {
    const auto hr = hyperradius(make_geometry(2, 2, {0, 0, 0, 0}));
    CHECK(hr.value == 0.0);
}

TEST_CASE("axis-aligned 2D angles") {
    auto a = hyperangles(make_geometry(2, 1, {1.0, 0.0}));
    REQUIRE(a.angles.size() == 1);
    CHECK(a.angles[0] == 0.0);
    CHECK_FALSE(a.degenerate[0]);

    a = hyperangles(make_geometry(2, 1, {0.0, 1.0}));
    CHECK(a.angles[0] == doctest::Approx(kPi / 2));

    // negative last component folds into [pi, 2*pi)
    a = hyperangles(make_geometry(2, 1, {0.0, -1.0}));
    CHECK(a.angles[0] == doctest::Approx(3 * kPi / 2));
}

TEST_CASE("3D (1,1,1) round-trips through the inverse map") {
    const auto g = make_geometry(3, 1, {1.0, 1.0, 1.0});
    const auto hr = hyperradius(g);
    const auto a = hyperangles(g);
    REQUIRE(a.angles.size() == 2);
    const auto back = positions_from_hyperspherical(hr.value, a.angles);
    REQUIRE(back.size() == 3);
    for (int i = 0; i < 3; ++i) REQUIRE(back[static_cast<std::size_t>(i)] ==
                                        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round-trip property on random vectors") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 9);
        std::vector<double> pos(static_cast<std::size_t>(m));
        for (double& v : pos) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 6.0 - 3.0;
        const auto g = make_geometry(m, 1, pos);
        const auto hr = hyperradius(g);
        const auto a = hyperangles(g);
        bool degenerate = false;
        for (bool flag : a.degenerate) degenerate = degenerate || flag;
        if (degenerate || hr.value == 0.0) continue;
        const auto back = positions_from_hyperspherical(hr.value, a.angles);
        for (int i = 0; i < m; ++i) {
            const double err = std::abs(back[static_cast<std::size_t>(i)] -
                                        pos[static_cast<std::size_t>(i)]);
            REQUIRE(err <= 1e-12 * std::max(1.0, hr.value));
        }
    }
}

TEST_CASE("degenerate suffix norms flag and zero the angle") {
    const auto a = hyperangles(make_geometry(3, 1, {2.0, 0.0, 0.0}));
    REQUIRE(a.angles.size() == 2);
    CHECK(a.angles[0] == 0.0);
    CHECK_FALSE(a.degenerate[0]);  // suffix (2,0,0) has norm 2
    CHECK(a.angles[1] == 0.0);
    CHECK(a.degenerate[1]);  // suffix (0,0) is zero

    const auto all_zero = hyperangles(make_geometry(2, 1, {0.0, 0.0}));
    CHECK(all_zero.degenerate[0]);
}

TEST_CASE("angle counts: naive is quadratic, cached is linear") {
    std::vector<std::int64_t> naive, cached;
    for (int m : {4, 8, 16, 32}) {
        std::vector<double> pos(static_cast<std::size_t>(m), 1.0);
        const auto a = hyperangles(make_geometry(m, 1, std::move(pos)));
        naive.push_back(a.naive.counted);
        cached.push_back(a.cached.counted);
    }
    // doubling m roughly quadruples the naive count and doubles the cached one
    CHECK(naive[3] > 3 * naive[2]);
    CHECK(cached[3] < 3 * cached[2]);
    // exact structural values for m = 4: naive angles use suffixes of length
    // 4,3,2 -> (4+3)+(3+3)+(2+3) = 18; cached: 4 squarings + 3 sqrts + 3*2
    CHECK(naive[0] == 18);
    CHECK(cached[0] == 13);
}

TEST_CASE("separable evaluation: gaussian with constant angular part") {
    const Expr phi = parse_expr("exp(-(x_0_0^2)/2)", 1, 1);
    const std::vector<Expr> ups(3, Expr{make_const(1.0), 1, 1});
    const auto g = make_geometry(4, 1, {1.0, 0.0, 2.0, -1.0});
    const auto result = eval_separable(phi, ups, g);
    const double rho = std::sqrt(1.0 + 0.0 + 4.0 + 1.0);
    CHECK(result.rho == doctest::Approx(rho));
    CHECK(result.value == doctest::Approx(std::exp(-rho * rho / 2.0)));
    // constant angular factors multiply for free
    CHECK(result.cost_upsilon.counted == 0);
    CHECK(result.product.counted == 0);
    CHECK(result.cost_phi.counted == 2);
}

TEST_CASE("separable evaluation: cosine of the polar angle") {
    const Expr phi{make_const(1.0), 1, 1};
    const std::vector<Expr> ups{parse_expr("cos(x_0_0)", 1, 1)};
    const auto g = make_geometry(2, 1, {1.0, 0.0});
    const auto result = eval_separable(phi, ups, g);
    CHECK(result.value == doctest::Approx(1.0));  // cos(0)
    CHECK(result.cost_upsilon.counted == 1);
}

TEST_CASE("separable evaluation arity mismatch") {
    const Expr phi{make_const(1.0), 1, 1};
    const std::vector<Expr> ups(2, Expr{make_const(1.0), 1, 1});
    CHECK_THROWS_AS(eval_separable(phi, ups, make_geometry(2, 1, {1.0, 1.0})), dimension_error);
}

TEST_CASE("separable-gaussian counted ops grow at most quadratically") {
    std::vector<double> logs_n, logs_ops;
    const Expr phi = parse_expr("exp(-(x_0_0^2)/2)", 1, 1);
    for (int n : {2, 4, 8, 16}) {
        std::vector<Expr> ups(static_cast<std::size_t>(n - 1), Expr{make_const(1.0), 1, 1});
        std::vector<double> pos(static_cast<std::size_t>(n), 0.5);
        const auto result = eval_separable(phi, ups, make_geometry(n, 1, std::move(pos)));
        logs_n.push_back(std::log(static_cast<double>(n)));
        logs_ops.push_back(std::log(static_cast<double>(result.total.counted)));
    }
    const double slope = (logs_ops.back() - logs_ops.front()) / (logs_n.back() - logs_n.front());
    CHECK(slope <= 2.0);
    CHECK(slope >= 0.5);
}

TEST_CASE("symbolic rho and angle expressions agree with the numeric path") {
    std::mt19937_64 rng(1717);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 4);
        std::vector<double> pos(static_cast<std::size_t>(m));
        for (double& v : pos) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
        const auto g = make_geometry(m, 1, pos);

        const Expr rho_sym = rho_expression(m, 1);
        REQUIRE(eval(rho_sym, pos) == doctest::Approx(hyperradius(g).value).epsilon(1e-14));

        const auto angles = hyperangles(g);
        bool degenerate = false;
        for (bool flag : angles.degenerate) degenerate = degenerate || flag;
        if (degenerate) continue;
        for (int k = 0; k + 2 < m; ++k) {
            // non-final angles: principal arccos everywhere
            const Expr a_sym = angle_expression(k, m, 1);
            REQUIRE(eval(a_sym, pos) ==
                    doctest::Approx(angles.angles[static_cast<std::size_t>(k)]).epsilon(1e-12));
        }
        if (pos[static_cast<std::size_t>(m - 1)] >= 0.0) {
            const Expr last = angle_expression(m - 2, m, 1);
            REQUIRE(eval(last, pos) ==
                    doctest::Approx(angles.angles[static_cast<std::size_t>(m - 2)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("compose_separable builds the full configuration-space expression") {
    const Expr phi = parse_expr("exp(-(x_0_0^2)/2)", 1, 1);
    const std::vector<Expr> ups(2, Expr{make_const(1.0), 1, 1});
    const Expr psi = compose_separable(phi, ups, 3, 1);
    const std::vector<double> pos{1.0, -2.0, 0.5};
    const double rho2 = 1.0 + 4.0 + 0.25;
    CHECK(eval(psi, pos) == doctest::Approx(std::exp(-rho2 / 2.0)).epsilon(1e-14));
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(make_geometry(0, 3, {}), validation_error);
    CHECK_THROWS_AS(make_geometry(2, 1, {1.0}), dimension_error);
    CHECK_THROWS_AS(make_geometry(1, 1, {std::nan("")}), validation_error);
}
