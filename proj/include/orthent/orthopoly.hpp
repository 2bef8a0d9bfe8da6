#pragma once

#include "orthent/weights.hpp"

#include <functional>
#include <span>
#include <vector>

namespace orthent {

/// Three-term recurrence b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x), p_0 = 1,
/// of the orthonormal family of a unitary weight.
class RecurrenceTable {
public:
    /// `a` holds a_0..a_{n-1}, `b` holds b_1..b_n; both of length n = n_max.
    RecurrenceTable(std::vector<double> a, std::vector<double> b);

    int n_max() const noexcept { return static_cast<int>(a_.size()); }
    double a(int k) const { return a_.at(static_cast<std::size_t>(k)); }
    /// 1-based: b(1) .. b(n_max).
    double b(int k) const { return b_.at(static_cast<std::size_t>(k - 1)); }
    std::span<const double> a_coeffs() const noexcept { return a_; }
    std::span<const double> b_coeffs() const noexcept { return b_; }

private:
    std::vector<double> a_;
    std::vector<double> b_;
};

struct RecurrenceOptions {
    /// Discretization: Gauss–Legendre in theta with at least max(min_nodes, nodes_per_degree * n_max)
    /// nodes. Jacobi weights get extra geometrically graded panels toward both endpoints.
    int min_nodes = 4096;
    int nodes_per_degree = 16;
    double certificate_tol = 1e-8;
};

/// Stieltjes procedure on the discretized inner product <f,g> = (1/pi) ∫_0^pi f g w0 dtheta.
/// Throws OrthogonalityLossError when max |<p_i,p_j> - delta_ij| exceeds the certificate tolerance.
RecurrenceTable recurrence_coefficients(const Weight& weight, int n_max,
                                        const RecurrenceOptions& options = {});

/// Largest |<p_i, p_j> - delta_ij|, 0 <= i,j <= degree, on the build discretization of `weight`.
double orthonormality_residual(const RecurrenceTable& table, const Weight& weight, int degree,
                               const RecurrenceOptions& options = {});

double evaluate_pn(const RecurrenceTable& table, int n, double x);

/// p_0(x) .. p_n(x) into `out` (size n+1).
void evaluate_upto(const RecurrenceTable& table, int n, double x, std::span<double> out);

/// gamma_n = 1/(b_1 ... b_n), 1 <= n <= n_max.
double leading_coefficient(const RecurrenceTable& table, int n);
/// log(gamma_n) = -sum log b_k; avoids overflow for large n.
double log_leading_coefficient(const RecurrenceTable& table, int n);

struct ZeroSet {
    int n = 0;
    std::vector<double> zeros; ///< ascending
};

/// Eigenvalues of the n x n Jacobi matrix.
ZeroSet zeros(const RecurrenceTable& table, int n);

/// x -> p_n(x)^2 w(x); a probability density on [-1,1].
std::function<double(double)> nu_n_density(const RecurrenceTable& table, const Weight& weight, int n);

} // namespace orthent
