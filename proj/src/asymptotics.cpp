#include "orthent/asymptotics.hpp"

#include "orthent/error.hpp"

#include "angle_split.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orthent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPi = 1.0 / std::numbers::pi;

void require_szego(const Weight& weight, const char* what) {
    if (!weight.szego()) {
        throw DivergenceError(std::string(what) + ": weight is outside the Szegő class");
    }
}

void require_n(const RecurrenceTable& table, int n, const char* what) {
    if (n < 1 || n > table.n_max()) {
        throw DegreeRangeError(std::string(what) + ": degree " + std::to_string(n) +
                               " outside [1, " + std::to_string(table.n_max()) + "]");
    }
}

std::vector<double> oscillation_breaks(int n) {
    const int panels = 8 * std::max(n, 1);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(panels));
    for (int k = 1; k < panels; ++k) out.push_back(kPi * k / panels);
    return out;
}

using detail::AnglePoint;

double gamma_from_origin(const std::function<double(double)>& h, double theta,
                         const quad::QuadratureOptions& options);

double f_at_point(const RecurrenceTable& table, int n, const AnglePoint& pt) {
    return evaluate_pn(table, n, pt.x) * std::sqrt(pt.w0);
}

double gamma_at_point(const Weight& weight, const AnglePoint& pt, const quad::QuadratureOptions& options) {
    if (std::holds_alternative<ChebyshevKind>(weight.spec())) return 0.0;
    if (!pt.reflected) {
        return gamma_from_origin([&](double phi) { return weight.log_w0_at_angle(phi); }, pt.angle, options);
    }
    return -gamma_from_origin([&](double psi) { return weight.log_w0_at_reflected_angle(psi); }, pt.angle,
                              options);
}

double g_at_point(const Weight& weight, int n, const AnglePoint& pt, const quad::QuadratureOptions& options) {
    return std::numbers::sqrt2 * std::cos(n * pt.theta() + gamma_at_point(weight, pt, options));
}

// (1/pi) ∫ (u - g_n)^2 dtheta over [lo, hi].
double squared_gap(const std::function<double(const AnglePoint&)>& u, const Weight& weight, int n, double lo,
                   double hi, std::span<const double> breaks, const quad::QuadratureOptions& options) {
    auto integrand = [&](const AnglePoint& pt) {
        const double d = u(pt) - g_at_point(weight, n, pt, options);
        return d * d * kInvPi;
    };
    return detail::integrate_split(weight, integrand, lo, hi, breaks, options).value;
}

struct Deviations {
    double plain = 0.0;
    double truncated = 0.0;
};

Deviations deviations(const Weight& weight, const RecurrenceTable& table, int n,
                      const IntervalSet* delta, const quad::QuadratureOptions& options) {
    const auto breaks = oscillation_breaks(n);
    auto f = [&](const AnglePoint& pt) { return f_at_point(table, n, pt); };
    Deviations out;
    const double whole = squared_gap(f, weight, n, 0.0, kPi, breaks, options);
    out.plain = std::sqrt(std::max(whole, 0.0));
    if (delta == nullptr) return out;
    // f~ differs from f only on Delta, so swap that part of the integral.
    double adjusted = whole;
    auto one = [](const AnglePoint&) { return 1.0; };
    for (const auto& [lo, hi] : delta->intervals()) {
        if (!(hi > lo)) continue;
        adjusted -= squared_gap(f, weight, n, lo, hi, breaks, options);
        adjusted += squared_gap(one, weight, n, lo, hi, breaks, options);
    }
    out.truncated = std::sqrt(std::max(adjusted, 0.0));
    return out;
}

// (sin theta / 2pi) ∫_0^pi (h(theta) - h(phi)) / (cos theta - cos phi) dphi, which is gamma after
// t = cos(phi). The kernel turns 1/(theta - phi) into 1/(cos theta - cos phi), written as a
// sine product so nothing cancels near theta.
double gamma_from_origin(const std::function<double(double)>& h, double theta,
                         const quad::QuadratureOptions& options) {
    quad::PvOptions pv;
    pv.method = quad::PvMethod::difference_quotient;
    pv.quadrature = options;
    const double prefactor = std::sin(theta) / (2.0 * kPi);
    // The tolerance applies to gamma, not to the PV integral that grows like 1/sin(theta).
    pv.quadrature.abs_tol = options.abs_tol / prefactor;
    auto kernel = [theta](double phi) {
        const double u = 0.5 * (phi - theta);
        const double sinc = (u == 0.0) ? 1.0 : u / std::sin(u);
        return -sinc / std::sin(0.5 * (theta + phi));
    };
    return -prefactor * quad::principal_value(h, kernel, theta, 0.0, kPi, pv);
}

} // namespace

double conjugate_gamma_at_angle(const Weight& weight, double theta,
                                const quad::QuadratureOptions& options) {
    require_szego(weight, "conjugate_gamma");
    if (!(theta > 0.0 && theta < kPi)) {
        throw PreconditionError("conjugate_gamma: x must lie in (-1,1)");
    }
    // Angles near pi carry little relative precision, so work from the nearer endpoint.
    const bool reflected = theta > 0.5 * kPi;
    return gamma_at_point(weight, detail::make_point(weight, reflected ? kPi - theta : theta, reflected), options);
}

double conjugate_gamma(const Weight& weight, double x, const quad::QuadratureOptions& options) {
    if (!(x > -1.0 && x < 1.0)) throw PreconditionError("conjugate_gamma: x must lie in (-1,1)");
    return conjugate_gamma_at_angle(weight, std::acos(x), options);
}

double szego_gn(const Weight& weight, int n, double x, const quad::QuadratureOptions& options) {
    if (n < 0) throw DegreeRangeError("szego_gn: n must be >= 0");
    return std::numbers::sqrt2 * std::cos(n * std::acos(x) + conjugate_gamma(weight, x, options));
}

double l2_deviation(const Weight& weight, const RecurrenceTable& table, int n,
                    const quad::QuadratureOptions& options) {
    require_szego(weight, "l2_deviation");
    require_n(table, n, "l2_deviation");
    return deviations(weight, table, n, nullptr, options).plain;
}

std::function<double(double)> truncated_f(const Weight& weight, const RecurrenceTable& table, int n,
                                          double M) {
    const IntervalSet delta = truncation_set(weight, table, n, M);
    return [weight, table, n, delta](double x) {
        const double theta = std::acos(std::clamp(x, -1.0, 1.0));
        if (delta.contains_angle(theta)) return 1.0;
        const bool reflected = x < 0.0;
        const double angle = reflected ? std::acos(std::clamp(-x, -1.0, 1.0)) : theta;
        return f_at_point(table, n, detail::make_point(weight, angle, reflected));
    };
}

double truncated_l2_deviation(const Weight& weight, const RecurrenceTable& table, int n, double M,
                              const quad::QuadratureOptions& options) {
    require_szego(weight, "truncated_l2_deviation");
    require_n(table, n, "truncated_l2_deviation");
    const IntervalSet delta = truncation_set(weight, table, n, M);
    return deviations(weight, table, n, &delta, options).truncated;
}

std::vector<LeadingCoeffEntry> leading_coeff_limit(const Weight& weight, const RecurrenceTable& table,
                                                   std::span<const int> n_list,
                                                   const quad::QuadratureOptions& options) {
    require_szego(weight, "leading_coeff_limit");
    const double limit = -0.5 * (std::numbers::ln2 + szego_constant(weight, options.abs_tol));
    std::vector<LeadingCoeffEntry> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        LeadingCoeffEntry e;
        e.n = n;
        e.gamma_log_ratio = log_leading_coefficient(table, n) - n * std::numbers::ln2;
        e.gamma_limit = limit;
        e.gap = std::abs(e.gamma_log_ratio - limit);
        out.push_back(e);
    }
    return out;
}

OscillatoryAverage oscillatory_average(const std::function<double(double)>& g,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& gamma_fn, int n,
                                       const quad::QuadratureOptions& options) {
    if (n < 0) throw PreconditionError("oscillatory_average: n must be >= 0");
    const auto breaks = oscillation_breaks(n);
    auto product = [&](double t) { return g(n * t + gamma_fn(t)) * f(t); };
    OscillatoryAverage out;
    out.value = quad::integrate_adaptive(product, 0.0, kPi, breaks, options).value;
    const double mean_g = quad::integrate_adaptive(g, 0.0, kPi, {}, options).value * kInvPi;
    const double int_f = quad::integrate_adaptive(f, 0.0, kPi, {}, options).value;
    out.limit = mean_g * int_f;
    return out;
}

AsymptoticsReport asymptotics_report(const Weight& weight, const RecurrenceTable& table, int n,
                                     double M, const quad::QuadratureOptions& options) {
    require_szego(weight, "asymptotics_report");
    require_n(table, n, "asymptotics_report");
    const IntervalSet delta = truncation_set(weight, table, n, M);
    const auto dev = deviations(weight, table, n, &delta, options);
    const std::array<int, 1> one = {n};
    const auto lead = leading_coeff_limit(weight, table, one, options).front();
    AsymptoticsReport r;
    r.n = n;
    r.l2_dev = dev.plain;
    r.trunc_l2_dev = dev.truncated;
    r.gamma_log_ratio = lead.gamma_log_ratio;
    r.gamma_limit = lead.gamma_limit;
    return r;
}

} // namespace orthent
