#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace orthent::quad {

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

struct Interval {
    double lo;
    double hi;
};

/// A fixed rule: sum_i weights[i] * f(nodes[i]) approximates the integral over `domain`
/// (including whatever weight function the rule was built for).
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights, Interval domain);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    Interval domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Affine image of this rule on `target`; weights rescale by the length ratio.
    QuadratureRule mapped_to(Interval target) const;

    template <class F>
    double apply(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
        return sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    Interval domain_;
};

/// n-point Gauss–Legendre rule on [-1,1], exact for degree <= 2n-1.
QuadratureRule gauss_legendre_rule(int n_points);

/// n-point Gauss–Chebyshev (first kind) rule on [-1,1] for the weight 1/sqrt(1-x^2):
/// nodes cos((2k-1)pi/(2n)) in increasing order, all weights pi/n.
QuadratureRule gauss_chebyshev_rule(int n_points);

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_panels = 4096;
};

/// Globally adaptive composite Gauss–Kronrod (G7/K15) integration of f over [a,b].
///
/// The interval is first cut at `breakpoints` (which must lie in [a,b]; points equal to an
/// endpoint are dropped, order and duplicates do not matter). The panel with the largest error
/// estimate is bisected until the summed estimate drops below `abs_tol`, so panels never straddle a
/// breakpoint and the integrand is never sampled at a panel endpoint.
///
/// Throws BudgetExceededError once `max_panels` panels are in use without meeting the
/// tolerance, and DivergenceError if f returns a non-finite value.
IntegralResult integrate_adaptive(const RealFunction& f, double a, double b,
                                  std::span<const double> breakpoints = {},
                                  const QuadratureOptions& options = {});

enum class PvMethod {
    /// The difference quotient is integrated as an ordinary integrand with a breakpoint at x.
    difference_quotient,
    /// Symmetric excision |t-x| >= r with r, r/2, r/4 (r = 1e-2 (b-a)) and two-point
    /// Richardson extrapolation in r.
    excision,
};

enum class Substitution {
    none,
    /// t = mid + half*cos(phi), phi in [0,pi]; removes 1/sqrt endpoint singularities.
    cosine,
};

struct PvOptions {
    PvMethod method = PvMethod::difference_quotient;
    Substitution substitution = Substitution::none;
    QuadratureOptions quadrature{};
    /// Agreement required between the two Richardson estimates (excision only).
    double stabilization_tol = 1e-6;
};

/// PV integral_a^b (h(t) - h(x)) / (x - t) * k(t) dt for x in (a,b).
///
/// With a Hölder (or smooth) h the quotient is at most weakly singular at t = x; the
/// excision method exists for data where that is not enough. Throws ConvergenceError when the
/// extrapolated excision estimates disagree by more than `stabilization_tol`.
double principal_value(const RealFunction& h, const RealFunction& kernel, double x, double a,
                       double b, const PvOptions& options = {});

struct ContourOptions {
    int initial_samples = 16;
    double tol = 1e-13;
    int max_doublings = 12;
};

/// (1/(2 pi i)) ∮_{|z|=radius} g(z) dz / z, i.e. the mean of g over the circle, by the
/// trapezoidal rule with sample doubling until two successive doublings agree to `tol`
/// (relative to max(1, |value|)). Throws ConvergenceError after `max_doublings` doublings.
std::complex<double> contour_integral_circle(const ComplexFunction& g, double radius,
                                             const ContourOptions& options = {});

} // namespace orthent::quad
