#include "oracles.hpp"

#include "orthent/entropy.hpp"
#include "orthent/error.hpp"
#include "orthent/orthopoly.hpp"
#include "orthent/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace orthent;

namespace {

const double kLn2 = std::numbers::ln2;

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

std::vector<double> sampled(const std::function<double(double)>& f, int count) {
    std::vector<double> out;
    for (double x : tabulation_nodes(count)) out.push_back(f(x));
    return out;
}

} // namespace

TEST_CASE("chebyshev entropy and functionals") {
    const Weight w = build_weight(ChebyshevKind{});
    const auto t = recurrence_coefficients(w, 20);
    for (int n : {1, 2, 7, 20}) {
        CHECK(entropy_En(w, t, n).value == doctest::Approx(kLn2 - 1.0).epsilon(1e-11));
        CHECK(functional_Fn(w, t, n).value == doctest::Approx(kLn2 - 1.0).epsilon(1e-11));
        CHECK(std::abs(functional_Gn(w, t, n).value) < 1e-14);
    }
    CHECK(std::abs(entropy_En(w, t, 0).value) < 1e-14);
}

TEST_CASE("legendre E_5 against a fixed-grid oracle") {
    const Weight w = build_weight(JacobiKind{0.0, 0.0});
    const auto t = recurrence_coefficients(w, 5);
    auto f = [](double th) {
        const double p = oracle::legendre_pn(5, std::cos(th));
        return -xlogx(p * p) * 0.5 * std::sin(th);
    };
    const double expected = oracle::simpson(f, 0.0, oracle::pi, 400000);
    CHECK(entropy_En(w, t, 5).value == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("E = F + G") {
    for (const WeightSpec& spec : {WeightSpec{JacobiKind{0.5, -0.3}}, WeightSpec{BernsteinKind{{5.0, -4.0}}},
                                   WeightSpec{JacobiKind{-0.8, 0.0}}}) {
        const Weight w = build_weight(spec);
        const auto t = recurrence_coefficients(w, 12);
        for (int n : {1, 6, 12}) {
            const double e = entropy_En(w, t, n).value;
            const double f = functional_Fn(w, t, n).value;
            const double g = functional_Gn(w, t, n).value;
            CHECK(e == doctest::Approx(f + g).epsilon(1e-9));
        }
    }
}

TEST_CASE("bernstein F is log 2 - 1 past the threshold") {
    const Weight w = build_weight(BernsteinKind{{5.0, -4.0}});
    const auto t = recurrence_coefficients(w, 10);
    for (int n = 1; n <= 10; ++n) CHECK(functional_Fn(w, t, n).value == doctest::Approx(kLn2 - 1.0).epsilon(1e-10));
    CHECK(functional_Gn(w, t, 1).value == doctest::Approx(-0.42463585509643803).epsilon(1e-9));
}

TEST_CASE("G is undefined outside the Szegő class") {
    const auto samples = sampled([](double x) { return x > 0.0 ? x : 0.0; }, 33);
    const Weight w = build_weight(TabulatedKind{samples});
    const auto t = recurrence_coefficients(w, 4);
    CHECK_THROWS_AS(functional_Gn(w, t, 2), DivergenceError);
    const auto r = entropy_report(w, t, 2, 1.5);
    CHECK(r.G == -std::numeric_limits<double>::infinity());
    CHECK(r.szego_const == -std::numeric_limits<double>::infinity());
    CHECK(std::isfinite(r.E));
    CHECK(std::isfinite(r.F));
}

TEST_CASE("mutual entropy of nu_n relative to rho is F_n") {
    const Weight w = build_weight(JacobiKind{1.0, 0.5});
    const auto t = recurrence_coefficients(w, 6);
    const auto nu = nu_n_density(t, w, 4);
    const auto z = zeros(t, 4).zeros;
    const double s = mutual_entropy(nu, chebyshev_density, z);
    CHECK(s == doctest::Approx(functional_Fn(w, t, 4).value).epsilon(1e-7));
    CHECK(s <= 0.0);
}

TEST_CASE("mutual entropy special cases") {
    auto half = [](double) { return 0.5; };
    CHECK(std::abs(mutual_entropy(half, half)) < 1e-12);
    auto right = [](double x) { return x > 0.0 ? 1.0 : 0.0; };
    const std::vector<double> brk = {0.0};
    CHECK(mutual_entropy(half, right, brk) == -std::numeric_limits<double>::infinity());
    auto heavy = [](double) { return 1.0; };
    CHECK_THROWS_AS(mutual_entropy(heavy, half), MassMismatchError);
    // uniform against rho: -∫ log(pi sqrt(1-x^2)/2) dx/2 = 1 - log(pi)
    CHECK(mutual_entropy(half, chebyshev_density) == doctest::Approx(1.0 - std::log(oracle::pi)).epsilon(1e-8));
}

TEST_CASE("mutual logarithmic energy") {
    const Weight c = build_weight(ChebyshevKind{});
    const auto tc = recurrence_coefficients(c, 12);
    for (int n : {1, 3, 12}) {
        CHECK(mutual_energy(c, tc, n, EnergyMode::identity) == doctest::Approx(kLn2 - 0.5 / n).epsilon(1e-11));
        CHECK(mutual_energy(c, tc, n, EnergyMode::brute_force) == doctest::Approx(kLn2 - 0.5 / n).epsilon(1e-8));
    }
    const Weight w = build_weight(JacobiKind{0.5, -0.3});
    const auto t = recurrence_coefficients(w, 9);
    CHECK(mutual_energy(w, t, 9, EnergyMode::brute_force) ==
          doctest::Approx(mutual_energy(w, t, 9, EnergyMode::identity)).epsilon(1e-8));
}

TEST_CASE("truncation set is empty when f_n stays below M") {
    const Weight w = build_weight(JacobiKind{1.0, 1.0});
    const auto t = recurrence_coefficients(w, 10);
    for (int n : {1, 5, 10}) CHECK(truncation_set(w, t, n, 1.5).empty());
    const Weight c = build_weight(ChebyshevKind{});
    const auto tc = recurrence_coefficients(c, 5);
    CHECK(truncation_set(c, tc, 5, 1.42).empty());
    CHECK_THROWS_AS(truncation_set(c, tc, 5, std::numbers::sqrt2), PreconditionError);
    CHECK(correction_terms(w, t, 5, 1.5).correction_E == 0.0);
}

TEST_CASE("truncation set boundaries and measure") {
    for (auto [a, b] : {std::pair{2.0, 2.0}, {-0.8, 0.0}}) {
        const Weight w = build_weight(JacobiKind{a, b});
        const auto t = recurrence_coefficients(w, 5);
        const double M = 1.5;
        const auto delta = truncation_set(w, t, 5, M);
        REQUIRE_FALSE(delta.empty());
        auto f = [&](double th) {
            const double x = std::cos(th);
            return std::abs(evaluate_pn(t, 5, x)) * std::sqrt(w.w0_at_angle(th));
        };
        for (const auto& [lo, hi] : delta.intervals()) {
            if (lo > 0.0) CHECK(f(lo) == doctest::Approx(M).epsilon(1e-9));
            if (hi < oracle::pi) CHECK(f(hi) == doctest::Approx(M).epsilon(1e-9));
            CHECK(f(0.5 * (lo + hi)) >= M);
        }
        // count a fine grid
        const int grid = 2000000;
        int inside = 0;
        for (int i = 0; i < grid; ++i) {
            if (f(oracle::pi * (i + 0.5) / grid) >= M) ++inside;
        }
        CHECK(delta.rho_measure() == doctest::Approx(static_cast<double>(inside) / grid).epsilon(1e-5));

        const auto c = correction_terms(w, t, 5, M);
        CHECK(c.correction_E >= 0.0);
        CHECK(c.correction_F > 0.0);
    }
}

TEST_CASE("correction F on a set matches a fixed-grid oracle") {
    const Weight w = build_weight(JacobiKind{2.0, 2.0});
    const auto t = recurrence_coefficients(w, 5);
    const auto delta = truncation_set(w, t, 5, 1.5);
    double expected = 0.0;
    for (const auto& [lo, hi] : delta.intervals()) {
        expected += oracle::simpson([&](double th) {
            const double p = evaluate_pn(t, 5, std::cos(th));
            return xlogx(p * p * w.w0_at_angle(th)) / oracle::pi;
        }, lo, hi, 20000);
    }
    CHECK(correction_terms(w, t, 5, delta).correction_F == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("sufficient-condition suprema for chebyshev") {
    const Weight w = build_weight(ChebyshevKind{});
    const auto t = recurrence_coefficients(w, 8);
    const std::vector<int> ns = {1, 2, 4, 8};
    const auto s = condition_check(w, t, ns, 0.5);
    const double pow_expected = std::pow(2.0, 1.5) * 4.0 / (3.0 * oracle::pi);
    CHECK(pow_expected == doctest::Approx(1.2004218).epsilon(1e-7));
    CHECK(s.supF_pow == doctest::Approx(pow_expected).epsilon(1e-9));
    CHECK(s.supE_pow == doctest::Approx(pow_expected).epsilon(1e-9));
    const double log_expected = oracle::simpson([](double th) {
        const double v = 2.0 * std::cos(th) * std::cos(th);
        return v > 1.0 ? std::pow(std::log(v), 1.5) * v / oracle::pi : 0.0;
    }, 0.0, oracle::pi, 200000);
    CHECK(s.supF_log == doctest::Approx(log_expected).epsilon(1e-6));
    CHECK(s.supE_log == doctest::Approx(log_expected).epsilon(1e-6));
    CHECK_FALSE(s.divergent);
}

TEST_CASE("entropy report fields") {
    const Weight w = build_weight(JacobiKind{2.0, 2.0});
    const auto t = recurrence_coefficients(w, 10);
    const auto r = entropy_report(w, t, 10, 1.5);
    CHECK(r.n == 10);
    CHECK(r.E == doctest::Approx(r.F + r.G).epsilon(1e-9));
    CHECK(r.szego_const == doctest::Approx(szego_constant(w)).epsilon(1e-12));
    CHECK(r.delta_measure > 0.0);
    CHECK(r.M == 1.5);
    CHECK(r.I_energy == doctest::Approx(mutual_energy(w, t, 10, EnergyMode::identity)).epsilon(1e-12));
    CHECK(std::isnan(entropy_report(w, t, 0, 1.5).I_energy));
}
