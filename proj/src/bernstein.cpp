#include "orthent/bernstein.hpp"

#include "orthent/error.hpp"
#include "orthent/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orthent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCircleGuard = 1e-8;

template <class T>
Complex horner(const std::vector<T>& c, Complex z) {
    Complex v{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + Complex(*it);
    return v;
}

double horner_real(std::span<const double> c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

// Coefficients (increasing degree) of z^d S((z + 1/z)/2).
std::vector<double> laurent_lift(std::span<const double> S) {
    const int d = static_cast<int>(S.size()) - 1;
    std::vector<double> lift(static_cast<std::size_t>(2 * d + 1), 0.0);
    for (int k = 0; k <= d; ++k) {
        double binom = 1.0;
        const double scale = S[k] * std::ldexp(1.0, -k);
        for (int j = 0; j <= k; ++j) {
            lift[static_cast<std::size_t>(d + 2 * j - k)] += scale * binom;
            binom = binom * (k - j) / (j + 1);
        }
    }
    return lift;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& c) {
    const int deg = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw PairingError("fejer_riesz: companion eigensolver did not converge");
    }
    std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);
    // Newton polish on the original polynomial.
    std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) dc[k - 1] = static_cast<double>(k) * c[k];
    for (auto& r : roots) {
        for (int it = 0; it < 4; ++it) {
            const Complex f = horner(c, r);
            const Complex df = horner(dc, r);
            if (std::abs(df) == 0.0) break;
            const Complex step = f / df;
            r -= step;
            if (std::abs(step) <= 1e-16 * std::abs(r)) break;
        }
    }
    return roots;
}

void require_exact_degree(const FejerRieszFactor& factor, int n, const char* what) {
    if (2 * n <= factor.degree()) {
        throw DegreeRangeError(std::string(what) + ": closed form needs 2n > deg q (n = " +
                               std::to_string(n) + ", deg q = " + std::to_string(factor.degree()) +
                               ")");
    }
}

} // namespace

Complex FejerRieszFactor::eval(Complex z) const {
    return horner(q, z);
}

Complex FejerRieszFactor::eval_reversed(Complex z) const {
    std::vector<double> rev(q.rbegin(), q.rend());
    return horner(rev, z);
}

Complex FejerRieszFactor::log_eval(Complex z) const {
    Complex v{std::log(q0), 0.0};
    for (const auto& r : zeta) v += std::log(1.0 - z / r);
    return v;
}

double FejerRieszFactor::min_root_modulus() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : zeta) m = std::min(m, std::abs(r));
    return m;
}

FejerRieszFactor fejer_riesz(std::span<const double> S_in, double mass) {
    std::vector<double> S(S_in.begin(), S_in.end());
    while (S.size() > 1 && S.back() == 0.0) S.pop_back();
    if (S.empty()) throw PreconditionError("fejer_riesz: S has no coefficients");
    if (!(mass > 0.0)) throw PreconditionError("fejer_riesz: mass must be positive");
    const int d = static_cast<int>(S.size()) - 1;

    FejerRieszFactor factor;
    factor.mass = mass;
    if (d == 0) {
        if (!(S[0] > 0.0)) throw PositivityError("fejer_riesz: constant S must be positive");
        factor.q0 = std::sqrt(mass * S[0]);
        factor.q = {factor.q0};
        return factor;
    }

    const auto lift = laurent_lift(S);
    const auto roots = polynomial_roots(lift);
    std::vector<Complex> outside;
    std::vector<Complex> inside;
    for (const auto& r : roots) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) <= kCircleGuard) {
            throw RootOnCircleError("fejer_riesz: Laurent lift has a root on the unit circle (|zeta| = " +
                                    format_g(m) + "); S vanishes on [-1,1]");
        }
        (m > 1.0 ? outside : inside).push_back(r);
    }
    if (static_cast<int>(outside.size()) != d || static_cast<int>(inside.size()) != d) {
        throw PairingError("fejer_riesz: roots do not split evenly across the unit circle");
    }
    for (const auto& r : outside) {
        const Complex partner = 1.0 / r;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : inside) best = std::min(best, std::abs(s - partner));
        if (best > 1e-6 * std::max(1.0, std::abs(partner))) {
            throw PairingError("fejer_riesz: root without reciprocal partner");
        }
    }
    std::sort(outside.begin(), outside.end(), [](const Complex& l, const Complex& r) {
        if (std::abs(l) != std::abs(r)) return std::abs(l) < std::abs(r);
        return l.imag() < r.imag();
    });

    // Match q(z) q(1/z) = S~((z+1/z)/2) at z = 1.
    Complex at_one{1.0, 0.0};
    for (const auto& r : outside) at_one *= (1.0 - 1.0 / r);
    const double s_tilde_one = mass * horner_real(S, 1.0);
    const double c = std::sqrt(s_tilde_one / std::norm(at_one));

    std::vector<Complex> poly{Complex(1.0, 0.0)};
    for (const auto& r : outside) {
        std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k];
            next[k + 1] -= poly[k] / r;
        }
        poly = std::move(next);
    }
    factor.q.resize(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (std::abs(poly[k].imag()) > 1e-8 * std::max(1.0, std::abs(poly[k]))) {
            throw PairingError("fejer_riesz: factor has non-real coefficients");
        }
        factor.q[k] = c * poly[k].real();
    }
    factor.zeta = std::move(outside);
    factor.q0 = factor.q[0];

    // Reconstruction residual on the circle.
    for (int k = 0; k < 1024; ++k) {
        const double theta = kPi * (k + 0.5) / 1024.0;
        const double lhs = std::norm(factor.eval(std::polar(1.0, theta)));
        const double rhs = mass * horner_real(S, std::cos(theta));
        if (std::abs(lhs - rhs) > 1e-10 * std::abs(rhs)) {
            throw PairingError("fejer_riesz: |q(e^it)|^2 does not reproduce S~ (residual " +
                               format_g(std::abs(lhs - rhs) / std::abs(rhs)) + ")");
        }
    }
    return factor;
}

FejerRieszFactor fejer_riesz(const Weight& weight) {
    const auto* b = std::get_if<BernsteinKind>(&weight.spec());
    if (b == nullptr) throw PreconditionError("fejer_riesz: weight is not of bernstein kind");
    return fejer_riesz(b->S, weight.mass());
}

double bernstein_pn_at_angle(const FejerRieszFactor& factor, int n, double theta) {
    require_exact_degree(factor, n, "bernstein_pn");
    // (z^n conj(q(z)) + z^-n q(z))/sqrt(2) = sqrt(2) Re(z^-n q(z)) on |z| = 1.
    const Complex z = std::polar(1.0, theta);
    const Complex v = std::polar(1.0, -n * theta) * factor.eval(z);
    return std::numbers::sqrt2 * v.real();
}

double bernstein_pn(const FejerRieszFactor& factor, int n, double x) {
    return bernstein_pn_at_angle(factor, n, std::acos(std::clamp(x, -1.0, 1.0)));
}

BlaschkeProduct::BlaschkeProduct(FejerRieszFactor factor, int n) : factor_(std::move(factor)), n_(n) {
    if (n < 0) throw DegreeRangeError("BlaschkeProduct: n must be >= 0");
}

Complex BlaschkeProduct::operator()(Complex z) const {
    const Complex denom = factor_.eval(z);
    double scale = 0.0;
    for (std::size_t k = 0; k < factor_.q.size(); ++k) {
        scale += std::abs(factor_.q[k]) * std::pow(std::abs(z), static_cast<double>(k));
    }
    if (std::abs(denom) <= 1e-14 * scale) {
        throw PoleError("BlaschkeProduct: z is a root of q");
    }
    const int d = factor_.degree();
    if (2 * n_ >= d) {
        return std::pow(z, 2 * n_ - d) * factor_.eval_reversed(z) / denom;
    }
    if (z == Complex(0.0, 0.0)) throw PoleError("BlaschkeProduct: B_n has a pole at 0 for 2n < deg q");
    return std::pow(z, 2 * n_) * factor_.eval(1.0 / z) / denom;
}

Complex blaschke_eval(const BlaschkeProduct& product, Complex z) {
    return product(z);
}

Complex correction_contour_F(const FejerRieszFactor& factor, int n) {
    require_exact_degree(factor, n, "correction_contour_F");
    const BlaschkeProduct blaschke(factor, n);
    auto integrand = [&](Complex z) {
        const Complex b = blaschke(z);
        if (std::abs(b) < 1e-6) return 1.0 - b / 2.0 + b * b / 3.0;
        // log(1 + b) without the cancellation in 1 + b for small |b|
        const Complex lg(0.5 * std::log1p(2.0 * b.real() + std::norm(b)), std::atan2(b.imag(), 1.0 + b.real()));
        return lg / b;
    };
    return quad::contour_integral_circle(integrand, 0.5);
}

double exact_F(const FejerRieszFactor& factor, int n) {
    const Complex c = correction_contour_F(factor, n);
    if (std::abs(c - 1.0) > 1e-10) {
        throw ConvergenceError("exact_F: correction contour integral differs from 1 by " +
                               format_g(std::abs(c - 1.0)));
    }
    return std::numbers::ln2 - 1.0;
}

double default_G_radius(const FejerRieszFactor& factor) {
    if (factor.zeta.empty()) return 1.5;
    return std::sqrt(factor.min_root_modulus());
}

double contour_term_G(const FejerRieszFactor& factor, int n, double radius) {
    require_exact_degree(factor, n, "contour_term_G");
    if (!(radius > 1.0) || !(radius < factor.min_root_modulus())) {
        throw PreconditionError("contour_term_G: radius must satisfy 1 < R < min|zeta|");
    }
    const BlaschkeProduct blaschke(factor, n);
    auto integrand = [&](Complex z) { return factor.log_eval(z) * blaschke(1.0 / z); };
    return quad::contour_integral_circle(integrand, radius).real();
}

double exact_G(const FejerRieszFactor& factor, int n, std::optional<double> radius) {
    const double r = radius.value_or(default_G_radius(factor));
    return -2.0 * std::log(factor.q0) - contour_term_G(factor, n, r);
}

ConstantEntropyProbe constant_entropy_probe(const FejerRieszFactor& factor, int n_lo, int n_hi) {
    require_exact_degree(factor, n_lo, "constant_entropy_probe");
    if (n_hi < n_lo) throw PreconditionError("constant_entropy_probe: n_hi < n_lo");
    const double base = exact_F(factor, n_lo) + exact_G(factor, n_lo);
    ConstantEntropyProbe probe;
    for (int n = n_lo + 1; n <= n_hi; ++n) {
        const double e = exact_F(factor, n) + exact_G(factor, n);
        probe.max_spread = std::max(probe.max_spread, std::abs(e - base));
    }
    return probe;
}

} // namespace orthent
