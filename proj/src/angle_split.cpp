#include "angle_split.hpp"

#include <cmath>
#include <vector>

namespace orthent::detail {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
} // namespace

double AnglePoint::sin_theta() const {
    return std::sin(angle);
}

AnglePoint make_point(const Weight& weight, double angle, bool reflected) {
    AnglePoint p;
    p.angle = angle;
    p.reflected = reflected;
    if (reflected) {
        p.x = -std::cos(angle);
        p.w0 = weight.w0_at_reflected_angle(angle);
        p.log_w0 = weight.log_w0_at_reflected_angle(angle);
    } else {
        p.x = std::cos(angle);
        p.w0 = weight.w0_at_angle(angle);
        p.log_w0 = weight.log_w0_at_angle(angle);
    }
    return p;
}

quad::IntegralResult integrate_split(const Weight& weight, const std::function<double(const AnglePoint&)>& f,
                                     double lo, double hi, std::span<const double> theta_breaks,
                                     const quad::QuadratureOptions& options) {
    quad::IntegralResult total;
    if (!(hi > lo)) return total;
    const bool both = lo < kHalfPi && hi > kHalfPi;
    quad::QuadratureOptions part = options;
    if (both) part.abs_tol = 0.5 * options.abs_tol;

    auto add = [&](const quad::IntegralResult& r) {
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.panels_used += r.panels_used;
    };
    if (lo < kHalfPi) {
        const double end = std::min(hi, kHalfPi);
        std::vector<double> brk;
        for (double b : theta_breaks) {
            if (b > lo && b < end) brk.push_back(b);
        }
        auto g = [&](double theta) { return f(make_point(weight, theta, false)); };
        add(quad::integrate_adaptive(g, lo, end, brk, part));
    }
    if (hi > kHalfPi) {
        // psi runs over [pi - hi, pi - max(lo, pi/2)].
        const double start = std::max(lo, kHalfPi);
        const double psi_lo = kPi - hi;
        const double psi_hi = kPi - start;
        std::vector<double> brk;
        for (double b : theta_breaks) {
            const double psi = kPi - b;
            if (psi > psi_lo && psi < psi_hi) brk.push_back(psi);
        }
        auto g = [&](double psi) { return f(make_point(weight, psi, true)); };
        add(quad::integrate_adaptive(g, std::max(psi_lo, 0.0), psi_hi, brk, part));
    }
    return total;
}

} // namespace orthent::detail
