#pragma once

#include "orthent/quadrature.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orthent {

struct ChebyshevKind {};

/// Raw weight (1-x)^alpha (1+x)^beta.
struct JacobiKind {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Raw weight rho(x)/S(x); coefficients of S in increasing degree.
struct BernsteinKind {
    std::vector<double> S;
};

/// Raw trigonometric weight w0 sampled at the Chebyshev points of the second kind
/// x_j = -cos(j pi / (N-1)), j = 0..N-1 (ascending), N >= 33.
struct TabulatedKind {
    std::vector<double> w0;
};

using WeightSpec = std::variant<ChebyshevKind, JacobiKind, BernsteinKind, TabulatedKind>;

std::string kind_name(const WeightSpec& spec);

/// Chebyshev density rho(x) = 1/(pi sqrt(1-x^2)).
double chebyshev_density(double x);

/// A unitary weight w on [-1,1] together with its trigonometric companion
/// w0(x) = pi sqrt(1-x^2) w(x). Immutable; all evaluations are pure.
///
/// The *_at_angle forms take theta with x = cos(theta) and are what the integrators use:
/// they avoid the loss of accuracy in 1 - x^2 near the endpoints.
class Weight {
public:
    const WeightSpec& spec() const noexcept { return spec_; }
    /// Mass of the raw weight before normalization.
    double mass() const noexcept { return mass_; }
    bool szego() const noexcept { return szego_; }
    /// True when w(-x) = w(x) follows from the weight description itself.
    bool symmetric() const noexcept { return symmetric_; }

    double w(double x) const;
    double w0(double x) const;
    double log_w0(double x) const;
    double w0_at_angle(double theta) const;
    double log_w0_at_angle(double theta) const;
    /// w0 and log w0 at x = -cos(psi); keep full relative accuracy as x approaches -1.
    double w0_at_reflected_angle(double psi) const;
    double log_w0_at_reflected_angle(double psi) const;

    /// Angles of the tabulation nodes (empty for analytic kinds); kinks of w0 can sit there.
    const std::vector<double>& feature_angles() const noexcept { return feature_angles_; }

    /// Mass-normalized S~ = mass * S for the Bernstein kind, so w0 = 1/S~.
    double normalized_S(double x) const;

private:
    friend Weight build_weight(const WeightSpec& spec);
    Weight() = default;

    double raw_w0_tabulated(double x) const;

    WeightSpec spec_{};
    double mass_ = 1.0;
    double log_mass_ = 0.0;
    bool szego_ = false;
    bool symmetric_ = false;
    std::vector<double> tab_nodes_;
    std::vector<double> tab_bary_;
    std::vector<double> feature_angles_;
};

/// Validates the description, computes the raw mass and returns the normalized weight.
/// Throws PositivityError (S <= 0 on the check grid, negative samples),
/// IntegrabilityError (Jacobi exponent <= -1) or InvalidSpecError.
Weight build_weight(const WeightSpec& spec);

/// Outcome of the Szegő-condition test; `integral_of_abs_log` is empty when divergent.
struct SzegoDiagnostic {
    bool finite = false;
    std::optional<double> integral_of_abs_log;
};

/// Tests whether ∫|log w0| rho dx converges: the integral is accumulated over strips
/// approaching both endpoints geometrically (20 levels) and declared divergent if the last
/// level still adds more than 1e-3, or if log w0 is infinite somewhere inside. For a finite
/// integral the two remaining end caps are added to the reported value.
SzegoDiagnostic check_szego_condition(const Weight& weight);

/// S(rho, w) = ∫ log(w0) rho dx. Throws DivergenceError when the weight fails the Szegő test.
double szego_constant(const Weight& weight, double abs_tol = 1e-10);

/// Chebyshev points of the second kind used by the tabulated kind, ascending.
std::vector<double> tabulation_nodes(int count);

} // namespace orthent
