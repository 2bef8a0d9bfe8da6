#pragma once

#include "orthent/orthopoly.hpp"
#include "orthent/quadrature.hpp"
#include "orthent/weights.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace orthent {

/// Disjoint closed subintervals of [-1,1], stored as sorted, disjoint angle intervals
/// [theta_lo, theta_hi] in [0, pi] (x = cos theta).
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<std::pair<double, double>> theta_intervals);

    const std::vector<std::pair<double, double>>& intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }
    bool contains_angle(double theta) const;
    /// rho-measure: sum of interval lengths / pi.
    double rho_measure() const;

private:
    std::vector<std::pair<double, double>> intervals_;
};

/// E_n = -∫ p_n^2 log(p_n^2) w dx, integrated in theta with breakpoints at the zeros of p_n.
quad::IntegralResult entropy_En(const Weight& weight, const RecurrenceTable& table, int n,
                                const quad::QuadratureOptions& options = {});

/// F_n = -∫ log(p_n^2 w0) p_n^2 w dx.
quad::IntegralResult functional_Fn(const Weight& weight, const RecurrenceTable& table, int n,
                                   const quad::QuadratureOptions& options = {});

/// G_n = ∫ log(w0) p_n^2 w dx. Throws DivergenceError for weights outside the Szegő class.
quad::IntegralResult functional_Gn(const Weight& weight, const RecurrenceTable& table, int n,
                                   const quad::QuadratureOptions& options = {});

/// S(mu, nu) = -∫ log(dmu/dnu) dmu for Lebesgue densities on [-1,1].
///
/// `x_breakpoints` marks points where either density is non-smooth. Returns -infinity when nu
/// vanishes where mu does not; throws MassMismatchError if either mass is off by more than 1e-6.
double mutual_entropy(const std::function<double(double)>& density_mu,
                      const std::function<double(double)>& density_nu,
                      std::span<const double> x_breakpoints = {},
                      const quad::QuadratureOptions& options = {});

enum class EnergyMode { identity, brute_force };

/// Mutual logarithmic energy I(mu_n, nu_n) of the zero counting measure and p_n^2 w.
/// identity: (E_n + 2 log gamma_n) / (2n); brute_force: -(1/n) sum_j ∫ log|zeta_j - t| p_n^2 w dt.
double mutual_energy(const Weight& weight, const RecurrenceTable& table, int n, EnergyMode mode,
                     const quad::QuadratureOptions& options = {});

/// Delta_n(M) = {x : |f_n(x)| >= M}, f_n = p_n sqrt(w0). Crossings are bracketed on a theta grid
/// of max(64 n, 1024) points and bisected to 1e-12. Throws PreconditionError unless M > sqrt(2).
IntervalSet truncation_set(const Weight& weight, const RecurrenceTable& table, int n, double M);

struct CorrectionTerms {
    double correction_E = 0.0; ///< ∫_{Delta_n(M)} p_n^2 log+(p_n^2) w dx
    double correction_F = 0.0; ///< ∫_{Delta_n(M)} f_n^2 log(f_n^2) rho dx
    double quad_error = 0.0;
};

CorrectionTerms correction_terms(const Weight& weight, const RecurrenceTable& table, int n,
                                 double M, const quad::QuadratureOptions& options = {});
CorrectionTerms correction_terms(const Weight& weight, const RecurrenceTable& table, int n,
                                 const IntervalSet& delta, const quad::QuadratureOptions& options = {});

struct ConditionSuprema {
    double supE_log = 0.0; ///< sup ∫ (log+ p_n^2)^{1+eps} p_n^2 w
    double supE_pow = 0.0; ///< sup ∫ (p_n^2)^{1+eps} w
    double supF_log = 0.0; ///< sup ∫ (log+ f_n^2)^{1+eps} f_n^2 rho
    double supF_pow = 0.0; ///< sup ∫ (f_n^2)^{1+eps} rho
    /// Some running supremum grew faster than linearly in n over the last grid step.
    bool divergent = false;
};

ConditionSuprema condition_check(const Weight& weight, const RecurrenceTable& table,
                                 std::span<const int> n_list, double epsilon,
                                 const quad::QuadratureOptions& options = {});

/// Per-degree record written by the CLI.
struct EntropyReport {
    int n = 0;
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
    double szego_const = 0.0;
    double correction_E = 0.0;
    double correction_F = 0.0;
    double delta_measure = 0.0;
    double M = 1.5;
    double I_energy = 0.0;
    double quad_error = 0.0;
};

/// Assembles every EntropyReport field for one degree. For non-Szegő weights G and
/// szego_const are -infinity and F is still computed directly.
EntropyReport entropy_report(const Weight& weight, const RecurrenceTable& table, int n, double M,
                             const quad::QuadratureOptions& options = {});

} // namespace orthent
