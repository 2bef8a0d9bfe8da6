#pragma once

#include "orthent/entropy.hpp"
#include "orthent/orthopoly.hpp"
#include "orthent/quadrature.hpp"
#include "orthent/weights.hpp"

#include <functional>
#include <span>
#include <vector>

namespace orthent {

/// Harmonic conjugate of log w0:
///   gamma(x) = (1/2pi) PV ∫ (log w0(x) - log w0(t)) / (x - t) * sqrt((1-x^2)/(1-t^2)) dt.
/// Requires a Szegő weight (DivergenceError otherwise) and x in (-1,1).
double conjugate_gamma(const Weight& weight, double x, const quad::QuadratureOptions& options = {});
/// Same with x = cos(theta), theta in (0, pi).
double conjugate_gamma_at_angle(const Weight& weight, double theta,
                                const quad::QuadratureOptions& options = {});

/// g_n(x) = sqrt(2) cos(n arccos x + gamma(x)).
double szego_gn(const Weight& weight, int n, double x, const quad::QuadratureOptions& options = {});

/// ||f_n - g_n|| in L2(rho), f_n = p_n sqrt(w0). Panels are at most pi/(8n) wide in theta.
double l2_deviation(const Weight& weight, const RecurrenceTable& table, int n,
                    const quad::QuadratureOptions& options = {});

/// f~_n: equal to f_n off Delta_n(M) and to 1 on it. Argument is x.
std::function<double(double)> truncated_f(const Weight& weight, const RecurrenceTable& table, int n,
                                          double M);

/// ||f~_n - g_n|| in L2(rho).
double truncated_l2_deviation(const Weight& weight, const RecurrenceTable& table, int n, double M,
                              const quad::QuadratureOptions& options = {});

struct LeadingCoeffEntry {
    int n = 0;
    double gamma_log_ratio = 0.0; ///< log(gamma_n / 2^n)
    double gamma_limit = 0.0;     ///< -(log 2 + S(rho,w)) / 2
    double gap = 0.0;             ///< |gamma_log_ratio - gamma_limit|
};

std::vector<LeadingCoeffEntry> leading_coeff_limit(const Weight& weight, const RecurrenceTable& table,
                                                   std::span<const int> n_list,
                                                   const quad::QuadratureOptions& options = {});

struct OscillatoryAverage {
    double value = 0.0; ///< ∫_0^pi g(n t + gamma(t)) f(t) dt
    double limit = 0.0; ///< (1/pi) ∫_0^pi g · ∫_0^pi f
};

/// g must be pi-periodic.
OscillatoryAverage oscillatory_average(const std::function<double(double)>& g,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& gamma_fn, int n,
                                       const quad::QuadratureOptions& options = {});

struct AsymptoticsReport {
    int n = 0;
    double l2_dev = 0.0;
    double gamma_log_ratio = 0.0;
    double gamma_limit = 0.0;
    double trunc_l2_dev = 0.0;
};

AsymptoticsReport asymptotics_report(const Weight& weight, const RecurrenceTable& table, int n,
                                     double M, const quad::QuadratureOptions& options = {});

} // namespace orthent
