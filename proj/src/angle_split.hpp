#pragma once

#include "orthent/quadrature.hpp"
#include "orthent/weights.hpp"

#include <functional>
#include <numbers>
#include <span>

namespace orthent::detail {

// A quadrature node on [0, pi]. Nodes past pi/2 are carried as psi = pi - theta so that
// x, w0 and log w0 keep their relative accuracy near x = -1.
struct AnglePoint {
    double angle = 0.0;
    bool reflected = false;
    double x = 0.0;
    double w0 = 0.0;
    double log_w0 = 0.0;

    double theta() const { return reflected ? std::numbers::pi - angle : angle; }
    double sin_theta() const;
};

AnglePoint make_point(const Weight& weight, double angle, bool reflected);

// ∫_lo^hi f dtheta, split at pi/2; the tolerance is shared between the halves.
quad::IntegralResult integrate_split(const Weight& weight, const std::function<double(const AnglePoint&)>& f,
                                     double lo, double hi, std::span<const double> theta_breaks,
                                     const quad::QuadratureOptions& options);

} // namespace orthent::detail
