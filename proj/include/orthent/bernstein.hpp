#pragma once

#include "orthent/weights.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace orthent {

using Complex = std::complex<double>;

/// Fejér–Riesz factor of a Bernstein weight: a real polynomial q~ with all roots outside the
/// closed unit disk and q~(0) > 0 such that |q~(e^{it})|^2 = S~(cos t), S~ = mass * S.
/// The unitary weight then has w0 = 1/|q~|^2 on the circle.
struct FejerRieszFactor {
    std::vector<double> q;     ///< coefficients of q~, increasing degree
    std::vector<Complex> zeta; ///< roots of q~, each |zeta| > 1
    double q0 = 1.0;           ///< q~(0)
    double mass = 1.0;         ///< raw mass of rho/S

    int degree() const noexcept { return static_cast<int>(q.size()) - 1; }
    /// Smallest n with 2n > deg q, so that B_n(0) = 0.
    int min_exact_degree() const noexcept { return degree() / 2 + 1; }

    Complex eval(Complex z) const;
    /// z^d q~(1/z).
    Complex eval_reversed(Complex z) const;
    /// Branch of log q~ analytic on |z| < min |zeta|: log q0 + sum log(1 - z/zeta_j).
    Complex log_eval(Complex z) const;
    double min_root_modulus() const;
};

/// Factorizes S (increasing-degree coefficients, positive on [-1,1]) through the roots of its
/// Laurent lift z^d S((z + 1/z)/2), then rescales by sqrt(mass) so the result belongs to the
/// unitary weight.
/// Throws RootOnCircleError if a root lies within 1e-8 of the unit circle and PairingError if
/// the roots do not split d/d or the reconstruction residual exceeds 1e-10.
FejerRieszFactor fejer_riesz(std::span<const double> S, double mass);
FejerRieszFactor fejer_riesz(const Weight& bernstein_weight);

/// Closed-form orthonormal polynomial p_n(x) = (z^n q(1/z) + z^-n q(z))/sqrt(2), z = e^{i arccos x}.
/// Requires 2n > deg q (DegreeRangeError otherwise).
double bernstein_pn(const FejerRieszFactor& factor, int n, double x);
double bernstein_pn_at_angle(const FejerRieszFactor& factor, int n, double theta);

/// B_n(z) = z^{2n} q(1/z) / q(z).
class BlaschkeProduct {
public:
    BlaschkeProduct(FejerRieszFactor factor, int n);

    int n() const noexcept { return n_; }
    const FejerRieszFactor& factor() const noexcept { return factor_; }
    /// Throws PoleError at (numerical) roots of q.
    Complex operator()(Complex z) const;

private:
    FejerRieszFactor factor_;
    int n_;
};

Complex blaschke_eval(const BlaschkeProduct& product, Complex z);

/// (1/2 pi i) ∮ log(1 + B_n(z)) / B_n(z) dz/z on |z| = 1/2; equals 1 whenever 2n > deg q.
Complex correction_contour_F(const FejerRieszFactor& factor, int n);

/// F_n = log 2 - 1 for 2n > deg q. The correction contour integral is evaluated and must equal
/// 1 within 1e-10 (ConvergenceError otherwise).
double exact_F(const FejerRieszFactor& factor, int n);

/// Contour term (1/2 pi i) ∮_{|z|=R} log(q~(z)) B_n(1/z) dz/z.
double contour_term_G(const FejerRieszFactor& factor, int n, double radius);

/// Default contour radius: geometric midpoint sqrt(min|zeta|) of (1, min|zeta|); 1.5 if q is constant.
double default_G_radius(const FejerRieszFactor& factor);

/// G_n = -2 log q~(0) - contour_term_G(R) with 1 < R < min|zeta|.
double exact_G(const FejerRieszFactor& factor, int n, std::optional<double> radius = std::nullopt);

struct ConstantEntropyProbe {
    double max_spread = 0.0;
};

/// max over n in [n_lo, n_hi] of |E_n - E_{n_lo}| with E_n = exact_F + exact_G.
ConstantEntropyProbe constant_entropy_probe(const FejerRieszFactor& factor, int n_lo, int n_hi);

} // namespace orthent
