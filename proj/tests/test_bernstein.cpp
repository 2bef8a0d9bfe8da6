#include "oracles.hpp"

#include "orthent/bernstein.hpp"
#include "orthent/entropy.hpp"
#include "orthent/error.hpp"
#include "orthent/orthopoly.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace orthent;

TEST_CASE("linear S factors as a multiple of 1 - z/2") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{5.0, -4.0}}));
    REQUIRE(f.degree() == 1);
    CHECK(f.q0 == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(f.q[1] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-13));
    REQUIRE(f.zeta.size() == 1);
    CHECK(f.zeta[0].real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(f.mass == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(f.min_exact_degree() == 1);
}

TEST_CASE("even quadratic S factors through 4 - z^2") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{25.0, 0.0, -16.0}}));
    REQUIRE(f.degree() == 2);
    const double s = std::sqrt(15.0);
    CHECK(f.q[0] == doctest::Approx(4.0 / s).epsilon(1e-12));
    CHECK(std::abs(f.q[1]) < 1e-12);
    CHECK(f.q[2] == doctest::Approx(-1.0 / s).epsilon(1e-12));
    CHECK(f.min_root_modulus() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(-2.0 * std::log(f.q0) == doctest::Approx(std::log(15.0 / 16.0)).epsilon(1e-12));
    CHECK(f.min_exact_degree() == 2);
}

TEST_CASE("factor reproduces S on the circle") {
    const std::vector<double> S = {3.0, 0.5, -0.7, 0.2};
    const auto f = fejer_riesz(build_weight(BernsteinKind{S}));
    for (double th : {0.0, 0.4, 1.7, 3.0}) {
        const double lhs = std::norm(f.eval(std::polar(1.0, th)));
        CHECK(lhs == doctest::Approx(f.mass * oracle::horner(S, std::cos(th))).epsilon(1e-11));
    }
    for (const auto& z : f.zeta) CHECK(std::abs(z) > 1.0);
    CHECK(f.log_eval({0.3, 0.2}).real() == doctest::Approx(std::log(std::abs(f.eval({0.3, 0.2})))).epsilon(1e-12));
}

TEST_CASE("factorization rejects a root on the unit circle") {
    const std::vector<double> S = {1.0, -1.0};
    CHECK_THROWS_AS(fejer_riesz(S, 1.0), RootOnCircleError);
    CHECK_THROWS_AS(fejer_riesz(std::vector<double>{}, 1.0), PreconditionError);
    CHECK_THROWS_AS(fejer_riesz(build_weight(ChebyshevKind{})), PreconditionError);
}

TEST_CASE("constant S factors trivially") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{2.0}}));
    CHECK(f.degree() == 0);
    CHECK(f.q0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(default_G_radius(f) == 1.5);
}

TEST_CASE("closed form agrees with the recurrence") {
    for (const std::vector<double>& S : {std::vector<double>{5.0, -4.0}, std::vector<double>{25.0, 0.0, -16.0},
                                         std::vector<double>{3.0, 0.5, -0.7, 0.2}}) {
        const Weight w = build_weight(BernsteinKind{S});
        const auto f = fejer_riesz(w);
        const auto t = recurrence_coefficients(w, 12);
        for (int n = f.min_exact_degree(); n <= 12; n += 3) {
            for (double x : {-0.95, -0.2, 0.35, 0.9}) {
                CHECK(bernstein_pn(f, n, x) == doctest::Approx(evaluate_pn(t, n, x)).epsilon(1e-9));
            }
            CHECK(bernstein_pn_at_angle(f, n, 1.1) == doctest::Approx(bernstein_pn(f, n, std::cos(1.1))).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed form needs 2n above deg q") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{25.0, 0.0, -16.0}}));
    CHECK_THROWS_AS(bernstein_pn(f, 1, 0.3), DegreeRangeError);
    CHECK_NOTHROW(bernstein_pn(f, 2, 0.3));
}

TEST_CASE("blaschke product is unimodular on the circle and has poles at roots") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{5.0, -4.0}}));
    const BlaschkeProduct b(f, 3);
    for (double th : {0.1, 2.0, 4.0}) CHECK(std::abs(b(std::polar(1.0, th))) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(blaschke_eval(b, {0.0, 0.0})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(b({2.0, 0.0}), PoleError);

    const auto g = fejer_riesz(build_weight(BernsteinKind{{25.0, 0.0, -16.0}}));
    const BlaschkeProduct low(g, 0);
    CHECK_THROWS_AS(low({0.0, 0.0}), PoleError);
}

TEST_CASE("F correction contour equals one") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{3.0, 0.5, -0.7, 0.2}}));
    for (int n = f.min_exact_degree(); n <= 8; ++n) {
        const auto c = correction_contour_F(f, n);
        CHECK(c.real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(c.imag()) < 1e-10);
        CHECK(exact_F(f, n) == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("G contour term") {
    const auto f = fejer_riesz(build_weight(BernsteinKind{{5.0, -4.0}}));
    CHECK(contour_term_G(f, 1, 1.5) == doctest::Approx(0.1369538).epsilon(1e-6));
    // the term is independent of the radius inside the annulus
    CHECK(contour_term_G(f, 1, 1.2) == doctest::Approx(contour_term_G(f, 1, 1.9)).epsilon(1e-11));
    CHECK_THROWS_AS(contour_term_G(f, 1, 2.5), PreconditionError);
    CHECK_THROWS_AS(contour_term_G(f, 1, 0.9), PreconditionError);
    CHECK(default_G_radius(f) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("exact G matches the quadrature value") {
    for (const std::vector<double>& S : {std::vector<double>{5.0, -4.0}, std::vector<double>{25.0, 0.0, -16.0},
                                         std::vector<double>{3.0, 0.5, -0.7, 0.2}}) {
        const Weight w = build_weight(BernsteinKind{S});
        const auto f = fejer_riesz(w);
        const auto t = recurrence_coefficients(w, 10);
        for (int n = f.min_exact_degree(); n <= 10; n += 2) {
            CHECK(exact_G(f, n) == doctest::Approx(functional_Gn(w, t, n).value).epsilon(1e-9));
        }
    }
    const auto f = fejer_riesz(build_weight(BernsteinKind{{5.0, -4.0}}));
    CHECK(exact_G(f, 1) == doctest::Approx(-0.42463585509643803).epsilon(1e-10));
}

TEST_CASE("entropy spread over degrees") {
    const auto c = fejer_riesz(build_weight(BernsteinKind{{1.0}}));
    CHECK(constant_entropy_probe(c, 1, 10).max_spread < 1e-12);
    // exact G against quadrature already pins the values, so the spread is the oracle's spread
    const Weight w = build_weight(BernsteinKind{{5.0, -4.0}});
    const auto f = fejer_riesz(w);
    const auto t = recurrence_coefficients(w, 10);
    double spread = 0.0;
    const double e2 = entropy_En(w, t, 2).value;
    for (int n = 3; n <= 10; ++n) spread = std::max(spread, std::abs(entropy_En(w, t, n).value - e2));
    const double probe = constant_entropy_probe(f, 2, 10).max_spread;
    CHECK(probe > 1e-6);
    CHECK(probe == doctest::Approx(spread).epsilon(1e-6));
    const auto g = fejer_riesz(build_weight(BernsteinKind{{25.0, 0.0, -16.0}}));
    CHECK(constant_entropy_probe(g, 3, 10).max_spread > 1e-8);
    CHECK_THROWS_AS(constant_entropy_probe(f, 5, 4), PreconditionError);
}
