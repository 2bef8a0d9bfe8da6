#include "orthent/entropy.hpp"

#include "orthent/error.hpp"

#include "angle_split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace orthent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPi = 1.0 / std::numbers::pi;

double xlogx(double y) {
    return y > 0.0 ? y * std::log(y) : 0.0;
}

double log_plus(double y) {
    return y > 1.0 ? std::log(y) : 0.0;
}

std::vector<double> zero_angles(const RecurrenceTable& table, int n) {
    if (n < 1) return {};
    const auto z = zeros(table, n);
    std::vector<double> theta(z.zeros.size());
    for (std::size_t j = 0; j < z.zeros.size(); ++j) theta[j] = std::acos(std::clamp(z.zeros[j], -1.0, 1.0));
    std::sort(theta.begin(), theta.end());
    return theta;
}

void require_degree(const RecurrenceTable& table, int n, const char* what) {
    if (n < 0 || n > table.n_max()) {
        throw DegreeRangeError(std::string(what) + ": degree " + std::to_string(n) +
                               " outside [0, " + std::to_string(table.n_max()) + "]");
    }
}

void require_M(double M) {
    if (!(M > std::numbers::sqrt2)) {
        throw PreconditionError("truncation level M must exceed sqrt(2) (got " + format_g(M) + ")");
    }
}

using detail::AnglePoint;

quad::IntegralResult integrate_angle(const Weight& weight, const std::function<double(const AnglePoint&)>& f,
                                     const std::vector<double>& breaks,
                                     const quad::QuadratureOptions& options) {
    return detail::integrate_split(weight, f, 0.0, kPi, breaks, options);
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

} // namespace

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> theta_intervals)
    : intervals_(std::move(theta_intervals)) {
    std::sort(intervals_.begin(), intervals_.end());
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (intervals_[i].first > intervals_[i].second) {
            throw PreconditionError("IntervalSet: interval with lo > hi");
        }
        if (i > 0 && intervals_[i].first <= intervals_[i - 1].second) {
            throw PreconditionError("IntervalSet: intervals overlap");
        }
    }
}

bool IntervalSet::contains_angle(double theta) const {
    for (const auto& [lo, hi] : intervals_) {
        if (theta >= lo && theta <= hi) return true;
    }
    return false;
}

double IntervalSet::rho_measure() const {
    double s = 0.0;
    for (const auto& [lo, hi] : intervals_) s += hi - lo;
    return s * kInvPi;
}

quad::IntegralResult entropy_En(const Weight& weight, const RecurrenceTable& table, int n,
                                const quad::QuadratureOptions& options) {
    require_degree(table, n, "entropy_En");
    if (n == 0) return quad::IntegralResult{0.0, 0.0, 0};
    auto integrand = [&](const AnglePoint& pt) {
        const double p = evaluate_pn(table, n, pt.x);
        return -xlogx(p * p) * pt.w0 * kInvPi;
    };
    return integrate_angle(weight, integrand, merged(zero_angles(table, n), weight.feature_angles()), options);
}

quad::IntegralResult functional_Fn(const Weight& weight, const RecurrenceTable& table, int n,
                                   const quad::QuadratureOptions& options) {
    require_degree(table, n, "functional_Fn");
    auto integrand = [&](const AnglePoint& pt) {
        const double p = evaluate_pn(table, n, pt.x);
        return -xlogx(p * p * pt.w0) * kInvPi;
    };
    return integrate_angle(weight, integrand, merged(zero_angles(table, n), weight.feature_angles()), options);
}

quad::IntegralResult functional_Gn(const Weight& weight, const RecurrenceTable& table, int n,
                                   const quad::QuadratureOptions& options) {
    require_degree(table, n, "functional_Gn");
    if (!weight.szego()) {
        throw DivergenceError("functional_Gn: log w0 is not integrable for this weight (G_n = -inf)");
    }
    auto integrand = [&](const AnglePoint& pt) {
        const double p = evaluate_pn(table, n, pt.x);
        const double mass = p * p * pt.w0;
        if (mass == 0.0) return 0.0;
        return pt.log_w0 * mass * kInvPi;
    };
    return integrate_angle(weight, integrand, merged(zero_angles(table, n), weight.feature_angles()), options);
}

double mutual_entropy(const std::function<double(double)>& density_mu,
                      const std::function<double(double)>& density_nu,
                      std::span<const double> x_breakpoints, const quad::QuadratureOptions& options) {
    std::vector<double> breaks;
    for (double x : x_breakpoints) {
        const double t = std::acos(std::clamp(x, -1.0, 1.0));
        if (t > 0.0 && t < kPi) breaks.push_back(t);
    }
    auto mass_of = [&](const std::function<double(double)>& d) {
        auto f = [&](double theta) { return d(std::cos(theta)) * std::sin(theta); };
        return quad::integrate_adaptive(f, 0.0, kPi, breaks, options).value;
    };
    const double mass_mu = mass_of(density_mu);
    const double mass_nu = mass_of(density_nu);
    if (std::abs(mass_mu - 1.0) > 1e-6 || std::abs(mass_nu - 1.0) > 1e-6) {
        throw MassMismatchError("mutual_entropy: densities must have unit mass (got " +
                                format_g(mass_mu) + ", " + format_g(mass_nu) + ")");
    }
    bool singular = false;
    auto integrand = [&](double theta) {
        const double x = std::cos(theta);
        const double mu = density_mu(x);
        if (mu <= 0.0) return 0.0;
        const double nu = density_nu(x);
        if (nu <= 0.0) {
            singular = true;
            return 0.0;
        }
        return -std::log(mu / nu) * mu * std::sin(theta);
    };
    const double value = quad::integrate_adaptive(integrand, 0.0, kPi, breaks, options).value;
    if (singular) return -std::numeric_limits<double>::infinity();
    return value;
}

double mutual_energy(const Weight& weight, const RecurrenceTable& table, int n, EnergyMode mode,
                     const quad::QuadratureOptions& options) {
    require_degree(table, n, "mutual_energy");
    if (n < 1) throw PreconditionError("mutual_energy: requires n >= 1");
    if (mode == EnergyMode::identity) {
        const double e = entropy_En(weight, table, n, options).value;
        return (e + 2.0 * log_leading_coefficient(table, n)) / (2.0 * n);
    }
    const auto breaks = merged(zero_angles(table, n), weight.feature_angles());
    const auto zs = zeros(table, n).zeros;
    double sum = 0.0;
    for (double z : zs) {
        // The zero's angle in each frame of the split integration.
        const double direct = std::acos(std::clamp(z, -1.0, 1.0));
        const double mirrored = std::acos(std::clamp(-z, -1.0, 1.0));
        auto integrand = [&](const AnglePoint& pt) {
            const double p = evaluate_pn(table, n, pt.x);
            const double m = p * p * pt.w0;
            if (m == 0.0) return 0.0;
            const double tj = pt.reflected ? mirrored : direct;
            // |x - z| without cancellation.
            const double d = 2.0 * std::sin(0.5 * (pt.angle + tj)) * std::sin(0.5 * (pt.angle - tj));
            if (d == 0.0) return 0.0;
            return std::log(std::abs(d)) * m * kInvPi;
        };
        sum += integrate_angle(weight, integrand, breaks, options).value;
    }
    return -sum / n;
}

IntervalSet truncation_set(const Weight& weight, const RecurrenceTable& table, int n, double M) {
    require_M(M);
    require_degree(table, n, "truncation_set");
    const double m2 = M * M;
    auto excess = [&](double theta) {
        const bool reflected = theta > 0.5 * kPi;
        const auto pt = detail::make_point(weight, reflected ? kPi - theta : theta, reflected);
        const double p = evaluate_pn(table, n, pt.x);
        const double v = p * p * pt.w0 - m2;
        return std::isnan(v) ? -1.0 : v;
    };
    auto crossing = [&](double lo, double hi, bool lo_inside) {
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if ((excess(mid) >= 0.0) == lo_inside) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    const int grid = std::max(64 * n, 1024);
    std::vector<std::pair<double, double>> out;
    double prev_theta = 0.0;
    bool inside = excess(0.0) >= 0.0;
    double start = 0.0;
    for (int i = 1; i <= grid; ++i) {
        const double theta = (i == grid) ? kPi : kPi * i / grid;
        const bool now = excess(theta) >= 0.0;
        if (now != inside) {
            const double c = crossing(prev_theta, theta, inside);
            if (now) {
                start = c;
            } else {
                out.emplace_back(start, c);
            }
            inside = now;
        }
        prev_theta = theta;
    }
    if (inside) out.emplace_back(start, kPi);
    return IntervalSet(std::move(out));
}

CorrectionTerms correction_terms(const Weight& weight, const RecurrenceTable& table, int n,
                                 const IntervalSet& delta, const quad::QuadratureOptions& options) {
    require_degree(table, n, "correction_terms");
    CorrectionTerms out;
    for (const auto& [lo, hi] : delta.intervals()) {
        if (!(hi > lo)) continue;
        auto e_part = [&](const AnglePoint& pt) {
            const double p = evaluate_pn(table, n, pt.x);
            const double p2 = p * p;
            return p2 * log_plus(p2) * pt.w0 * kInvPi;
        };
        auto f_part = [&](const AnglePoint& pt) {
            const double p = evaluate_pn(table, n, pt.x);
            return xlogx(p * p * pt.w0) * kInvPi;
        };
        const auto e = detail::integrate_split(weight, e_part, lo, hi, {}, options);
        const auto f = detail::integrate_split(weight, f_part, lo, hi, {}, options);
        out.correction_E += e.value;
        out.correction_F += f.value;
        out.quad_error += e.error_estimate + f.error_estimate;
    }
    return out;
}

CorrectionTerms correction_terms(const Weight& weight, const RecurrenceTable& table, int n,
                                 double M, const quad::QuadratureOptions& options) {
    return correction_terms(weight, table, n, truncation_set(weight, table, n, M), options);
}

ConditionSuprema condition_check(const Weight& weight, const RecurrenceTable& table,
                                 std::span<const int> n_list, double epsilon,
                                 const quad::QuadratureOptions& options) {
    if (!(epsilon > 0.0)) throw PreconditionError("condition_check: epsilon must be > 0");
    if (n_list.empty()) throw PreconditionError("condition_check: empty degree list");
    std::vector<int> degrees(n_list.begin(), n_list.end());
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    const double power = 1.0 + epsilon;

    ConditionSuprema out;
    std::array<double, 4> prev{};
    int prev_n = 0;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        const int n = degrees[k];
        require_degree(table, n, "condition_check");
        const auto breaks = merged(zero_angles(table, n), weight.feature_angles());
        auto run = [&](auto&& fn) {
            return integrate_angle(weight, [&](const AnglePoint& pt) {
                const double p = evaluate_pn(table, n, pt.x);
                return fn(p * p, pt.w0) * kInvPi;
            }, breaks, options).value;
        };
        const double e_log = run([&](double p2, double w0) {
            const double l = log_plus(p2);
            return l > 0.0 ? std::pow(l, power) * p2 * w0 : 0.0;
        });
        const double e_pow = run([&](double p2, double w0) { return p2 > 0.0 ? std::pow(p2, power) * w0 : 0.0; });
        const double f_log = run([&](double p2, double w0) {
            const double f2 = p2 * w0;
            const double l = log_plus(f2);
            return l > 0.0 ? std::pow(l, power) * f2 : 0.0;
        });
        const double f_pow = run([&](double p2, double w0) {
            const double f2 = p2 * w0;
            return f2 > 0.0 ? std::pow(f2, power) : 0.0;
        });
        const std::array<double, 4> cur = {std::max(out.supE_log, e_log), std::max(out.supE_pow, e_pow),
                                           std::max(out.supF_log, f_log), std::max(out.supF_pow, f_pow)};
        if (k > 0 && k + 1 == degrees.size() && prev_n > 0) {
            const double ratio = static_cast<double>(n) / prev_n;
            for (int i = 0; i < 4; ++i) {
                if (prev[i] > 0.0 && cur[i] > prev[i] * ratio) out.divergent = true;
            }
        }
        out.supE_log = cur[0];
        out.supE_pow = cur[1];
        out.supF_log = cur[2];
        out.supF_pow = cur[3];
        prev = cur;
        prev_n = n;
    }
    return out;
}

EntropyReport entropy_report(const Weight& weight, const RecurrenceTable& table, int n, double M,
                             const quad::QuadratureOptions& options) {
    require_M(M);
    EntropyReport r;
    r.n = n;
    r.M = M;
    const auto e = entropy_En(weight, table, n, options);
    const auto f = functional_Fn(weight, table, n, options);
    r.E = e.value;
    r.F = f.value;
    r.quad_error = e.error_estimate + f.error_estimate;
    if (weight.szego()) {
        const auto g = functional_Gn(weight, table, n, options);
        r.G = g.value;
        r.quad_error += g.error_estimate;
        r.szego_const = szego_constant(weight, options.abs_tol);
    } else {
        r.G = -std::numeric_limits<double>::infinity();
        r.szego_const = -std::numeric_limits<double>::infinity();
    }
    const auto delta = truncation_set(weight, table, n, M);
    const auto corr = correction_terms(weight, table, n, delta, options);
    r.correction_E = corr.correction_E;
    r.correction_F = corr.correction_F;
    r.delta_measure = delta.rho_measure();
    r.I_energy = (n >= 1) ? (r.E + 2.0 * log_leading_coefficient(table, n)) / (2.0 * n)
                          : std::numeric_limits<double>::quiet_NaN();
    return r;
}

} // namespace orthent
