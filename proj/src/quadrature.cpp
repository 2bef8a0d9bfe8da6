#include "orthent/quadrature.hpp"

#include "orthent/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace orthent::quad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

bool finite(double v) { return std::isfinite(v); }

double checked(const RealFunction& f, double x) {
    const double v = f(x);
    if (!finite(v)) {
        throw DivergenceError("integrand is not finite at x = " + format_g(x));
    }
    return v;
}

Panel kronrod15(const RealFunction& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    const double fc = checked(f, centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        const double f1 = checked(f, centr - absc);
        const double f2 = checked(f, centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        const double f1 = checked(f, centr - absc);
        const double f2 = checked(f, centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        abserr = std::max(kEps * 50.0 * resabs, abserr);
    }
    return Panel{a, b, resk * hlgth, abserr};
}

bool splittable(const Panel& p) {
    const double scale = std::max({std::abs(p.a), std::abs(p.b), 1e-300});
    return (p.b - p.a) > 1e3 * kEps * scale;
}

struct ByError {
    bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

} // namespace

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                               Interval domain)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), domain_(domain) {
    if (nodes_.size() != weights_.size()) {
        throw PreconditionError("quadrature rule: nodes and weights differ in length");
    }
}

QuadratureRule QuadratureRule::mapped_to(Interval target) const {
    const double scale = (target.hi - target.lo) / (domain_.hi - domain_.lo);
    std::vector<double> x(nodes_.size());
    std::vector<double> w(weights_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        x[i] = target.lo + (nodes_[i] - domain_.lo) * scale;
        w[i] = weights_[i] * scale;
    }
    return QuadratureRule(std::move(x), std::move(w), target);
}

QuadratureRule gauss_legendre_rule(int n_points) {
    if (n_points < 1) throw PreconditionError("gauss_legendre_rule: n_points must be >= 1");
    const int n = n_points;
    std::vector<double> x(n);
    std::vector<double> w(n);
    // Newton iteration in the angle theta (x = cos theta) keeps 1 - x^2 = sin^2 theta accurate.
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        double theta = kPi * (i - 0.25) / (n + 0.5);
        double pn = 0.0;
        double pnm1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double c = std::cos(theta);
            double p0 = 1.0;
            double p1 = c;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * c * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pn = (n == 1) ? c : p1;
            pnm1 = (n == 1) ? 1.0 : p0;
            const double s = std::sin(theta);
            const double denom = n * (c * pn - pnm1);
            const double step = pn * s / denom;
            theta -= step;
            if (std::abs(step) < 4 * kEps * std::max(theta, 1e-3)) break;
        }
        const double c = std::cos(theta);
        double p0 = 1.0;
        double p1 = c;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * c * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        pn = (n == 1) ? c : p1;
        pnm1 = (n == 1) ? 1.0 : p0;
        const double s = std::sin(theta);
        const double d = n * (c * pn - pnm1);
        const double weight = 2.0 * s * s / (d * d);
        // theta_i increasing in i gives x decreasing; store ascending.
        x[n - i] = c;
        w[n - i] = weight;
        x[i - 1] = -c;
        w[i - 1] = weight;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return QuadratureRule(std::move(x), std::move(w), Interval{-1.0, 1.0});
}

QuadratureRule gauss_chebyshev_rule(int n_points) {
    if (n_points < 1) throw PreconditionError("gauss_chebyshev_rule: n_points must be >= 1");
    const int n = n_points;
    std::vector<double> x(n);
    std::vector<double> w(n, kPi / n);
    for (int k = 1; k <= n; ++k) {
        x[n - k] = std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return QuadratureRule(std::move(x), std::move(w), Interval{-1.0, 1.0});
}

IntegralResult integrate_adaptive(const RealFunction& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& options) {
    if (!(options.abs_tol > 0.0)) throw PreconditionError("integrate_adaptive: abs_tol must be > 0");
    if (a == b) return IntegralResult{0.0, 0.0, 0};
    if (!(a < b)) throw PreconditionError("integrate_adaptive: requires a < b");

    std::vector<double> cuts;
    cuts.reserve(breakpoints.size() + 2);
    cuts.push_back(a);
    for (double p : breakpoints) {
        if (p < a || p > b || !finite(p)) {
            throw PreconditionError("integrate_adaptive: breakpoint outside [a,b]");
        }
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const int initial = static_cast<int>(cuts.size()) - 1;
    if (initial > options.max_panels) {
        throw BudgetExceededError("integrate_adaptive: more breakpoints than panel budget", 0.0,
                                  std::numeric_limits<double>::infinity());
    }

    std::vector<Panel> heap;
    heap.reserve(static_cast<std::size_t>(std::max(initial, 16)) * 2);
    std::vector<Panel> frozen;
    double total_error = 0.0;
    for (int i = 0; i < initial; ++i) {
        heap.push_back(kronrod15(f, cuts[i], cuts[i + 1]));
        total_error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), ByError{});

    auto resum = [&] {
        double e = 0.0;
        for (const auto& p : heap) e += p.error;
        for (const auto& p : frozen) e += p.error;
        return e;
    };

    int iterations = 0;
    while (total_error > options.abs_tol && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), ByError{});
        Panel worst = heap.back();
        heap.pop_back();
        if (!splittable(worst)) {
            frozen.push_back(worst);
            continue;
        }
        if (static_cast<int>(heap.size() + frozen.size()) + 2 > options.max_panels) {
            heap.push_back(worst);
            double value = 0.0;
            for (const auto& p : heap) value += p.value;
            for (const auto& p : frozen) value += p.value;
            throw BudgetExceededError("integrate_adaptive: panel budget of " +
                                          std::to_string(options.max_panels) +
                                          " exhausted (error estimate " +
                                          format_g(resum()) + ")",
                                      value, resum());
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod15(f, worst.a, mid);
        const Panel right = kronrod15(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), ByError{});
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), ByError{});
        if (++iterations % 64 == 0) total_error = resum();
    }

    // Sum in position order so the result does not depend on heap layout.
    std::vector<Panel> all(heap.begin(), heap.end());
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    IntegralResult result;
    for (const auto& p : all) {
        result.value += p.value;
        result.error_estimate += p.error;
    }
    result.panels_used = static_cast<int>(all.size());
    return result;
}

double principal_value(const RealFunction& h, const RealFunction& kernel, double x, double a,
                       double b, const PvOptions& options) {
    if (!(a < x && x < b)) throw PreconditionError("principal_value: x must lie in (a,b)");
    const double hx = h(x);
    auto quotient = [&](double t) {
        const double d = x - t;
        if (d == 0.0) return 0.0;
        return (h(t) - hx) / d * kernel(t);
    };

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Integrate the quotient over the t-interval [lo,hi] (lo < hi) in the chosen variable.
    auto integrate_piece = [&](double lo, double hi, std::span<const double> t_breaks) {
        if (options.substitution == Substitution::none) {
            return integrate_adaptive(quotient, lo, hi, t_breaks, options.quadrature).value;
        }
        auto to_angle = [&](double t) {
            return std::acos(std::clamp((t - mid) / half, -1.0, 1.0));
        };
        std::vector<double> phi_breaks;
        const double phi_lo = to_angle(hi);
        const double phi_hi = to_angle(lo);
        for (double t : t_breaks) {
            const double p = to_angle(t);
            if (p > phi_lo && p < phi_hi) phi_breaks.push_back(p);
        }
        auto in_angle = [&](double phi) {
            const double t = mid + half * std::cos(phi);
            return quotient(t) * half * std::sin(phi);
        };
        return integrate_adaptive(in_angle, phi_lo, phi_hi, phi_breaks, options.quadrature).value;
    };

    if (options.method == PvMethod::difference_quotient) {
        const std::array<double, 1> brk = {x};
        return integrate_piece(a, b, brk);
    }

    const double r0 = 1e-2 * (b - a);
    std::array<double, 3> excised{};
    for (int level = 0; level < 3; ++level) {
        const double r = r0 / static_cast<double>(1 << level);
        double sum = 0.0;
        if (x - r > a) sum += integrate_piece(a, x - r, {});
        if (x + r < b) sum += integrate_piece(x + r, b, {});
        excised[level] = sum;
    }
    // The excised strip contributes ~ c*r for Hölder-1 data; eliminate the linear term.
    const double coarse = 2.0 * excised[1] - excised[0];
    const double fine = 2.0 * excised[2] - excised[1];
    if (!(std::abs(fine - coarse) <= options.stabilization_tol)) {
        throw ConvergenceError("principal_value: excision estimates did not stabilize (" +
                               format_g(coarse) + " vs " + format_g(fine) + ")");
    }
    return fine;
}

std::complex<double> contour_integral_circle(const ComplexFunction& g, double radius,
                                             const ContourOptions& options) {
    if (!(radius > 0.0)) throw PreconditionError("contour_integral_circle: radius must be > 0");
    if (options.initial_samples < 1) {
        throw PreconditionError("contour_integral_circle: initial_samples must be >= 1");
    }
    auto sample = [&](int k, int n) {
        const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        return g(std::polar(radius, phi));
    };
    int n = options.initial_samples;
    std::complex<double> sum{0.0, 0.0};
    for (int k = 0; k < n; ++k) sum += sample(k, n);
    std::complex<double> value = sum / static_cast<double>(n);
    // One agreement is not enough: a Laurent term z^N shifts the N and 2N sample means alike.
    int agreements = 0;
    for (int doubling = 0; doubling < options.max_doublings; ++doubling) {
        const int m = 2 * n;
        for (int k = 1; k < m; k += 2) sum += sample(k, m);
        const std::complex<double> next = sum / static_cast<double>(m);
        const double diff = std::abs(next - value);
        n = m;
        value = next;
        if (!std::isfinite(diff)) break;
        agreements = (diff <= options.tol * std::max(1.0, std::abs(next))) ? agreements + 1 : 0;
        if (agreements == 2) return next;
    }
    throw ConvergenceError("contour_integral_circle: no convergence after " +
                           std::to_string(options.max_doublings) + " doublings");
}

} // namespace orthent::quad
