#include "oracles.hpp"

#include "orthent/error.hpp"
#include "orthent/quadrature.hpp"
#include "orthent/weights.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthent;

namespace {

// Mass of (1-x)^a (1+x)^b by a fixed Simpson grid in theta after t = cos: smooth for a, b >= 0.
double jacobi_mass_oracle(double a, double b) {
    auto f = [a, b](double th) {
        return std::pow(1.0 - std::cos(th), a) * std::pow(1.0 + std::cos(th), b) * std::sin(th);
    };
    return oracle::simpson(f, 0.0, oracle::pi, 20000);
}

std::vector<double> sampled(const std::function<double(double)>& f, int count) {
    std::vector<double> out;
    for (double x : tabulation_nodes(count)) out.push_back(f(x));
    return out;
}

} // namespace

TEST_CASE("chebyshev weight has w0 = 1 and zero szego constant") {
    const Weight w = build_weight(ChebyshevKind{});
    CHECK(w.w0(0.3) == 1.0);
    CHECK(w.log_w0(-0.9) == 0.0);
    CHECK(w.w(0.0) == doctest::Approx(1.0 / oracle::pi));
    CHECK(w.szego());
    CHECK(w.symmetric());
    CHECK(szego_constant(w) == 0.0);
    CHECK(kind_name(w.spec()) == "chebyshev");
}

TEST_CASE("jacobi mass matches quadrature oracle") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {0.5, 2.0}, {3.0, 0.25}}) {
        const Weight w = build_weight(JacobiKind{a, b});
        CHECK(w.mass() == doctest::Approx(jacobi_mass_oracle(a, b)).epsilon(1e-9));
    }
    CHECK(build_weight(JacobiKind{0.0, 0.0}).mass() == doctest::Approx(2.0));
}

TEST_CASE("jacobi weights are unitary") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, -0.3}, {-0.8, 0.0}, {2.0, 2.0}}) {
        const Weight w = build_weight(JacobiKind{a, b});
        quad::QuadratureOptions o;
        o.abs_tol = 1e-12;
        const double m = quad::integrate_adaptive([&](double th) { return w.w0_at_angle(th) / oracle::pi; }, 0.0,
                                                  0.5 * oracle::pi, {}, o).value +
                         quad::integrate_adaptive([&](double ps) { return w.w0_at_reflected_angle(ps) / oracle::pi; },
                                                  0.0, 0.5 * oracle::pi, {}, o).value;
        CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("angle forms agree with x forms") {
    const Weight w = build_weight(JacobiKind{0.5, -0.3});
    for (double th : {0.2, 1.0, 2.5}) {
        CHECK(w.w0_at_angle(th) == doctest::Approx(w.w0(std::cos(th))).epsilon(1e-12));
        CHECK(w.log_w0_at_angle(th) == doctest::Approx(w.log_w0(std::cos(th))).epsilon(1e-12));
        CHECK(w.log_w0_at_reflected_angle(th) == doctest::Approx(w.log_w0(-std::cos(th))).epsilon(1e-12));
    }
}

TEST_CASE("jacobi exponents at or below -1 are rejected") {
    CHECK_THROWS_AS(build_weight(JacobiKind{-2.0, 0.0}), IntegrabilityError);
    CHECK_THROWS_AS(build_weight(JacobiKind{0.0, -1.0}), IntegrabilityError);
    CHECK_THROWS_AS(build_weight(JacobiKind{std::nan(""), 0.0}), Error);
}

TEST_CASE("bernstein weight normalization and szego constant") {
    const Weight w = build_weight(BernsteinKind{{5.0, -4.0}});
    // ∫ rho / (5 - 4x) = 1/3
    CHECK(w.mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w.normalized_S(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.w0(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(szego_constant(w) == doctest::Approx(std::log(0.75)).epsilon(1e-10));
    CHECK_FALSE(w.symmetric());

    const Weight q = build_weight(BernsteinKind{{25.0, 0.0, -16.0}});
    CHECK(q.symmetric());
    CHECK(szego_constant(q) == doctest::Approx(std::log(15.0 / 16.0)).epsilon(1e-10));
}

TEST_CASE("bernstein positivity is enforced") {
    CHECK_THROWS_AS(build_weight(BernsteinKind{{1.0, -2.0}}), PositivityError);
    CHECK_THROWS_AS(build_weight(BernsteinKind{{1.0, -1.0}}), PositivityError);
    CHECK_THROWS_AS(build_weight(BernsteinKind{{}}), Error);
    // trailing zeros are trimmed
    const Weight w = build_weight(BernsteinKind{{5.0, -4.0, 0.0, 0.0}});
    CHECK(std::get<BernsteinKind>(w.spec()).S.size() >= 2);
    CHECK(w.mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tabulation nodes are ascending second-kind chebyshev points") {
    const auto nodes = tabulation_nodes(33);
    CHECK(nodes.front() == doctest::Approx(-1.0));
    CHECK(nodes.back() == doctest::Approx(1.0));
    CHECK(nodes[16] == doctest::Approx(0.0));
    for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);
}

TEST_CASE("tabulated weight reproduces a smooth analytic weight") {
    // w0 = 1 / (5 - 4x) sampled; interpolation is spectrally accurate.
    const auto samples = sampled([](double x) { return 1.0 / (5.0 - 4.0 * x); }, 65);
    const Weight t = build_weight(TabulatedKind{samples});
    const Weight b = build_weight(BernsteinKind{{5.0, -4.0}});
    // raw w0 = 1/(5-4x) has rho-mass 1/3, identical to the bernstein raw weight
    CHECK(t.mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    for (double x : {-0.97, -0.4, 0.1, 0.8}) CHECK(t.w0(x) == doctest::Approx(b.w0(x)).epsilon(1e-9));
    CHECK(szego_constant(t) == doctest::Approx(std::log(0.75)).epsilon(1e-8));
    CHECK(kind_name(t.spec()) == "tabulated");
}

TEST_CASE("tabulated weight validation") {
    CHECK_THROWS_AS(build_weight(TabulatedKind{std::vector<double>(32, 1.0)}), InvalidSpecError);
    auto s = std::vector<double>(33, 1.0);
    s[5] = -0.1;
    CHECK_THROWS_AS(build_weight(TabulatedKind{s}), PositivityError);
    CHECK_THROWS_AS(build_weight(TabulatedKind{std::vector<double>(33, 0.0)}), PositivityError);
}

TEST_CASE("tabulated weight vanishes between consecutive zero samples") {
    // Zero on x <= 0: that half is in the zero set, log w0 is not integrable there.
    const auto samples = sampled([](double x) { return x > 0.0 ? x : 0.0; }, 33);
    const Weight t = build_weight(TabulatedKind{samples});
    CHECK(t.w0(-0.5) == 0.0);
    CHECK(t.w0(0.5) > 0.0);
    CHECK_FALSE(t.szego());
    CHECK_FALSE(check_szego_condition(t).finite);
    CHECK_THROWS_AS(szego_constant(t), DivergenceError);
}

TEST_CASE("szego test on classical weights") {
    const auto legendre = check_szego_condition(build_weight(JacobiKind{0.0, 0.0}));
    REQUIRE(legendre.finite);
    REQUIRE(legendre.integral_of_abs_log.has_value());
    // |log(pi sin(t) / 2)| / pi integrated over (0, pi), split where sin t = 2/pi.
    auto g = [](double th) { return std::abs(std::log(oracle::pi * std::sin(th) / 2.0)) / oracle::pi; };
    const double t0 = std::asin(2.0 / oracle::pi);
    quad::QuadratureOptions o;
    o.abs_tol = 1e-11;
    o.max_panels = 100000;
    const std::vector<double> brk = {t0, oracle::pi - t0};
    const double expected = quad::integrate_adaptive(g, 0.0, oracle::pi, brk, o).value;
    CHECK(expected == doctest::Approx(0.5896955).epsilon(1e-6));
    CHECK(*legendre.integral_of_abs_log == doctest::Approx(expected).epsilon(1e-8));
    CHECK(szego_constant(build_weight(JacobiKind{0.0, 0.0})) == doctest::Approx(std::log(oracle::pi / 4.0)).epsilon(1e-10));
}

TEST_CASE("weight with exp(-1/(1-x^2)) decay fails the szego test") {
    const auto samples = sampled([](double x) { return x * x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }, 129);
    const Weight t = build_weight(TabulatedKind{samples});
    CHECK_FALSE(t.szego());
}
