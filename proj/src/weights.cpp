#include "orthent/weights.hpp"

#include "orthent/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>

namespace orthent {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

// Second-kind Chebyshev grid including both endpoints.
std::vector<double> positivity_grid(int count) {
    std::vector<double> g(count);
    for (int k = 0; k < count; ++k) g[k] = std::cos(kPi * k / (count - 1));
    return g;
}

double jacobi_log_mass(double alpha, double beta) {
    return (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
           std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
}

} // namespace

std::string kind_name(const WeightSpec& spec) {
    return std::visit(Overloaded{
                          [](const ChebyshevKind&) { return std::string("chebyshev"); },
                          [](const JacobiKind&) { return std::string("jacobi"); },
                          [](const BernsteinKind&) { return std::string("bernstein"); },
                          [](const TabulatedKind&) { return std::string("tabulated"); },
                      },
                      spec);
}

double chebyshev_density(double x) {
    return 1.0 / (kPi * std::sqrt((1.0 - x) * (1.0 + x)));
}

std::vector<double> tabulation_nodes(int count) {
    std::vector<double> x(count);
    for (int j = 0; j < count; ++j) x[j] = -std::cos(kPi * j / (count - 1));
    // Exact symmetry and endpoints.
    for (int j = 0; j < count / 2; ++j) x[count - 1 - j] = -x[j];
    if (count % 2 == 1) x[count / 2] = 0.0;
    x.front() = -1.0;
    x.back() = 1.0;
    return x;
}

double Weight::raw_w0_tabulated(double x) const {
    const auto& f = std::get<TabulatedKind>(spec_).w0;
    const auto& nodes = tab_nodes_;
    const std::size_t n = nodes.size();
    x = std::clamp(x, -1.0, 1.0);
    auto upper = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t j = static_cast<std::size_t>(std::distance(nodes.begin(), upper));
    j = std::clamp<std::size_t>(j, 1, n - 1);
    // Zero between two zero samples: the interval is part of the zero set.
    if (f[j - 1] <= 0.0 && f[j] <= 0.0) return 0.0;

    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = x - nodes[k];
        if (d == 0.0) return std::max(f[k], 0.0);
        const double t = tab_bary_[k] / d;
        num += t * f[k];
        den += t;
    }
    return std::max(num / den, 0.0);
}

double Weight::w0(double x) const {
    return std::visit(
        Overloaded{
            [](const ChebyshevKind&) { return 1.0; },
            [&](const JacobiKind& j) {
                return std::exp(std::log(kPi) - log_mass_ + (j.alpha + 0.5) * std::log1p(-x) +
                                (j.beta + 0.5) * std::log1p(x));
            },
            [&](const BernsteinKind& b) { return 1.0 / (mass_ * horner(b.S, x)); },
            [&](const TabulatedKind&) { return raw_w0_tabulated(x) / mass_; },
        },
        spec_);
}

double Weight::log_w0(double x) const {
    return std::visit(
        Overloaded{
            [](const ChebyshevKind&) { return 0.0; },
            [&](const JacobiKind& j) {
                return std::log(kPi) - log_mass_ + (j.alpha + 0.5) * std::log1p(-x) +
                       (j.beta + 0.5) * std::log1p(x);
            },
            [&](const BernsteinKind& b) { return -std::log(mass_ * horner(b.S, x)); },
            [&](const TabulatedKind&) { return std::log(raw_w0_tabulated(x)) - log_mass_; },
        },
        spec_);
}

double Weight::w0_at_angle(double theta) const {
    if (std::holds_alternative<JacobiKind>(spec_)) return std::exp(log_w0_at_angle(theta));
    return w0(std::cos(theta));
}

double Weight::log_w0_at_angle(double theta) const {
    if (const auto* j = std::get_if<JacobiKind>(&spec_)) {
        const double s = std::sin(0.5 * theta);
        const double c = std::cos(0.5 * theta);
        return std::log(kPi) - log_mass_ + (j->alpha + 0.5) * std::log(2.0 * s * s) +
               (j->beta + 0.5) * std::log(2.0 * c * c);
    }
    return log_w0(std::cos(theta));
}

double Weight::w0_at_reflected_angle(double psi) const {
    if (std::holds_alternative<JacobiKind>(spec_)) return std::exp(log_w0_at_reflected_angle(psi));
    return w0(-std::cos(psi));
}

double Weight::log_w0_at_reflected_angle(double psi) const {
    if (const auto* j = std::get_if<JacobiKind>(&spec_)) {
        const double s = std::sin(0.5 * psi);
        const double c = std::cos(0.5 * psi);
        return std::log(kPi) - log_mass_ + (j->alpha + 0.5) * std::log(2.0 * c * c) +
               (j->beta + 0.5) * std::log(2.0 * s * s);
    }
    return log_w0(-std::cos(psi));
}

double Weight::w(double x) const {
    if (const auto* j = std::get_if<JacobiKind>(&spec_)) {
        return std::exp(j->alpha * std::log1p(-x) + j->beta * std::log1p(x) - log_mass_);
    }
    return w0(x) * chebyshev_density(x);
}

double Weight::normalized_S(double x) const {
    const auto* b = std::get_if<BernsteinKind>(&spec_);
    if (b == nullptr) throw PreconditionError("normalized_S: weight is not of bernstein kind");
    return mass_ * horner(b->S, x);
}

Weight build_weight(const WeightSpec& spec) {
    Weight weight;
    weight.spec_ = spec;
    // Masses range over many orders of magnitude; ask for relative accuracy near rounding.
    auto relative_mass = [](const std::function<double(double)>& f, std::span<const double> brk) {
        quad::QuadratureOptions coarse;
        coarse.abs_tol = 1e-6;
        const double rough = quad::integrate_adaptive(f, 0.0, kPi, brk, coarse).value;
        quad::QuadratureOptions fine;
        fine.abs_tol = 1e-13 * std::max(std::abs(rough), std::numeric_limits<double>::min());
        return quad::integrate_adaptive(f, 0.0, kPi, brk, fine).value;
    };

    std::visit(
        Overloaded{
            [&](const ChebyshevKind&) {
                weight.mass_ = 1.0;
                weight.symmetric_ = true;
            },
            [&](const JacobiKind& j) {
                if (!std::isfinite(j.alpha) || !std::isfinite(j.beta)) {
                    throw InvalidSpecError("jacobi exponents must be finite");
                }
                if (!(j.alpha > -1.0) || !(j.beta > -1.0)) {
                    throw IntegrabilityError("jacobi exponents must satisfy alpha > -1 and beta > -1 (got alpha=" +
                                             format_g(j.alpha) +
                                             ", beta=" + format_g(j.beta) + ")");
                }
                weight.mass_ = std::exp(jacobi_log_mass(j.alpha, j.beta));
                weight.symmetric_ = (j.alpha == j.beta);
            },
            [&](const BernsteinKind&) {
                auto& S = std::get<BernsteinKind>(weight.spec_).S;
                while (S.size() > 1 && S.back() == 0.0) S.pop_back();
                if (S.empty()) throw InvalidSpecError("bernstein S needs at least one coefficient");
                for (double c : S) {
                    if (!std::isfinite(c)) throw InvalidSpecError("bernstein S has a non-finite coefficient");
                }
                for (double x : positivity_grid(1024)) {
                    if (!(horner(S, x) > 0.0)) {
                        throw PositivityError("bernstein S is not positive at x = " + format_g(x));
                    }
                }
                const auto inv = [&](double theta) { return 1.0 / (kPi * horner(S, std::cos(theta))); };
                weight.mass_ = relative_mass(inv, {});
                bool even = true;
                for (std::size_t k = 1; k < S.size(); k += 2) even = even && S[k] == 0.0;
                weight.symmetric_ = even;
            },
            [&](const TabulatedKind& t) {
                const auto& f = t.w0;
                if (f.size() < 33) {
                    throw InvalidSpecError("tabulated w0 needs at least 33 samples (got " +
                                           std::to_string(f.size()) + ")");
                }
                bool any_positive = false;
                for (double v : f) {
                    if (!std::isfinite(v)) throw InvalidSpecError("tabulated w0 has a non-finite sample");
                    if (v < 0.0) throw PositivityError("tabulated w0 has a negative sample");
                    any_positive = any_positive || v > 0.0;
                }
                if (!any_positive) throw PositivityError("tabulated w0 is identically zero");
                const int n = static_cast<int>(f.size());
                weight.tab_nodes_ = tabulation_nodes(n);
                weight.tab_bary_.assign(n, 1.0);
                for (int j = 0; j < n; ++j) {
                    if (j % 2 == 1) weight.tab_bary_[j] = -1.0;
                }
                weight.tab_bary_.front() *= 0.5;
                weight.tab_bary_.back() *= 0.5;
                for (int j = n - 2; j >= 1; --j) weight.feature_angles_.push_back(kPi * j / (n - 1));
                std::sort(weight.feature_angles_.begin(), weight.feature_angles_.end());
                bool sym = true;
                for (int j = 0; j < n; ++j) sym = sym && f[j] == f[n - 1 - j];
                weight.symmetric_ = sym;
                weight.mass_ = 1.0;
                const auto raw = [&](double theta) {
                    return weight.raw_w0_tabulated(std::cos(theta)) / kPi;
                };
                weight.mass_ = relative_mass(raw, weight.feature_angles_);
                if (!(weight.mass_ > 0.0)) throw PositivityError("tabulated w0 has zero mass");
            },
        },
        spec);

    weight.log_mass_ = std::log(weight.mass_);
    weight.szego_ = check_szego_condition(weight).finite;
    return weight;
}

SzegoDiagnostic check_szego_condition(const Weight& weight) {
    auto integrand = [&](double theta) { return std::abs(weight.log_w0_at_angle(theta)) / kPi; };
    quad::QuadratureOptions options;
    options.abs_tol = 1e-11;

    const auto& features = weight.feature_angles();
    auto strip = [&](double lo, double hi) {
        std::vector<double> brk;
        for (double f : features) {
            if (f > lo && f < hi) brk.push_back(f);
        }
        return quad::integrate_adaptive(integrand, lo, hi, brk, options).value;
    };

    constexpr int kDepth = 20;
    try {
        double delta = 0.25 * kPi;
        double total = strip(delta, kPi - delta);
        double last_increment = 0.0;
        for (int level = 1; level <= kDepth; ++level) {
            const double next = 0.5 * delta;
            last_increment = strip(next, delta) + strip(kPi - delta, kPi - next);
            total += last_increment;
            delta = next;
        }
        if (!(last_increment <= 1e-3) || !std::isfinite(total)) return SzegoDiagnostic{false, std::nullopt};
        // The remaining end caps still carry O(delta log delta) for logarithmic endpoint behaviour.
        auto reflected = [&](double psi) { return std::abs(weight.log_w0_at_reflected_angle(psi)) / kPi; };
        total += strip(0.0, delta) + quad::integrate_adaptive(reflected, 0.0, delta, {}, options).value;
        return SzegoDiagnostic{true, total};
    } catch (const DivergenceError&) {
        return SzegoDiagnostic{false, std::nullopt};
    } catch (const BudgetExceededError&) {
        return SzegoDiagnostic{false, std::nullopt};
    }
}

double szego_constant(const Weight& weight, double abs_tol) {
    if (!weight.szego()) {
        throw DivergenceError("szego_constant: log w0 is not integrable against rho (S = -inf)");
    }
    if (std::holds_alternative<ChebyshevKind>(weight.spec())) return 0.0;
    quad::QuadratureOptions options;
    options.abs_tol = abs_tol;
    auto integrand = [&](double theta) { return weight.log_w0_at_angle(theta) / kPi; };
    return quad::integrate_adaptive(integrand, 0.0, kPi, weight.feature_angles(), options).value;
}

} // namespace orthent
