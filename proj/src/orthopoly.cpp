#include "orthent/orthopoly.hpp"

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

struct DiscreteMeasure {
    std::vector<double> x;
    std::vector<double> lambda;
};

int discretization_size(int n_max, const RecurrenceOptions& options) {
    return std::max(options.min_nodes, options.nodes_per_degree * n_max);
}

// Angles in [lo, hi]; with `reflected` they are measured from pi, i.e. x = -cos(angle).
void append_panel(const Weight& weight, double lo, double hi, int points, DiscreteMeasure& m,
                  bool reflected = false) {
    const auto rule = quad::gauss_legendre_rule(points);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double angle = mid + half * rule.nodes()[i];
        const double w0 = reflected ? weight.w0_at_reflected_angle(angle) : weight.w0_at_angle(angle);
        m.x.push_back(reflected ? -std::cos(angle) : std::cos(angle));
        // The 1/pi of the angle form is folded in here.
        m.lambda.push_back(half * rule.weights()[i] * w0 / kPi);
    }
}

// Number of halvings toward an endpoint where w0 ~ theta^(2e+1): enough that the innermost
// panel carries mass below 1e-17.
int grading_levels(double exponent) {
    const double power = 2.0 * exponent + 2.0;
    const int levels = static_cast<int>(std::ceil(17.0 * std::log2(10.0) / power)) + 4;
    return std::clamp(levels, 8, 400);
}

DiscreteMeasure discretize(const Weight& weight, int n_nodes, int n_max) {
    DiscreteMeasure m;
    const auto* jacobi = std::get_if<JacobiKind>(&weight.spec());
    if (jacobi == nullptr) {
        const auto& breaks = weight.feature_angles();
        if (breaks.empty()) {
            append_panel(weight, 0.0, kPi, n_nodes, m);
            return m;
        }
        // Tabulated w0 may have kinks at the nodes, so each gap gets its own rule.
        std::vector<double> edges = {0.0};
        for (double t : breaks) {
            if (t > edges.back() && t < kPi) edges.push_back(t);
        }
        edges.push_back(kPi);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double width = edges[i + 1] - edges[i];
            const int pts = std::max(16, static_cast<int>(std::ceil(n_nodes * width / kPi)));
            append_panel(weight, edges[i], edges[i + 1], pts, m);
        }
        return m;
    }
    // Jacobi: graded panels at both ends resolve the algebraic endpoint behaviour.
    constexpr double kEdge = kPi / 8.0;
    auto panel_points = [n_max](double width) { return 16 + static_cast<int>(std::ceil(n_max * width)); };
    DiscreteMeasure left;
    DiscreteMeasure right;
    int graded = 0;
    double hi = kEdge;
    const int levels_left = grading_levels(jacobi->alpha);
    for (int k = 0; k < levels_left; ++k) {
        const double lo = (k + 1 == levels_left) ? 0.0 : 0.5 * hi;
        const int pts = panel_points(hi - lo);
        append_panel(weight, lo, hi, pts, left);
        graded += pts;
        hi = lo;
    }
    hi = kEdge;
    const int levels_right = grading_levels(jacobi->beta);
    for (int k = 0; k < levels_right; ++k) {
        const double lo = (k + 1 == levels_right) ? 0.0 : 0.5 * hi;
        const int pts = panel_points(hi - lo);
        append_panel(weight, lo, hi, pts, right, true);
        graded += pts;
        hi = lo;
    }
    const int middle = std::max(n_nodes - graded, n_nodes / 2);
    append_panel(weight, kEdge, kPi - kEdge, middle, m);
    m.x.insert(m.x.end(), left.x.begin(), left.x.end());
    m.lambda.insert(m.lambda.end(), left.lambda.begin(), left.lambda.end());
    m.x.insert(m.x.end(), right.x.begin(), right.x.end());
    m.lambda.insert(m.lambda.end(), right.lambda.begin(), right.lambda.end());
    return m;
}

// Gram residual of the rows of `scaled` (rows are sqrt(lambda) * p_k at the nodes).
double gram_residual(const Eigen::MatrixXd& scaled) {
    const Eigen::MatrixXd gram = scaled * scaled.transpose();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

void check_degree(const RecurrenceTable& table, int n, int lowest, const char* what) {
    if (n < lowest || n > table.n_max()) {
        throw DegreeRangeError(std::string(what) + ": degree " + std::to_string(n) +
                               " outside [" + std::to_string(lowest) + ", " +
                               std::to_string(table.n_max()) + "]");
    }
}

} // namespace

RecurrenceTable::RecurrenceTable(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) throw PreconditionError("RecurrenceTable: a and b differ in length");
    for (double v : b_) {
        if (!(v > 0.0)) throw PreconditionError("RecurrenceTable: b_k must be positive");
    }
}

RecurrenceTable recurrence_coefficients(const Weight& weight, int n_max,
                                        const RecurrenceOptions& options) {
    if (n_max < 1) throw PreconditionError("recurrence_coefficients: n_max must be >= 1");
    const int n_nodes = discretization_size(n_max, options);
    const DiscreteMeasure m = discretize(weight, n_nodes, n_max);
    const std::size_t size = m.x.size();

    std::vector<double> a(n_max);
    std::vector<double> b(n_max);
    Eigen::MatrixXd scaled(n_max + 1, static_cast<Eigen::Index>(size));

    std::vector<double> prev(size, 0.0);
    std::vector<double> cur(size, 1.0);
    std::vector<double> next(size);
    double mass = 0.0;
    for (std::size_t i = 0; i < size; ++i) mass += m.lambda[i];

    for (int k = 0; k <= n_max; ++k) {
        for (std::size_t i = 0; i < size; ++i) {
            scaled(k, static_cast<Eigen::Index>(i)) = std::sqrt(m.lambda[i]) * cur[i];
        }
        if (k == n_max) break;
        double ax = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double l = m.lambda[i] * cur[i] * cur[i];
            ax += l * m.x[i];
            norm += l;
        }
        a[k] = ax / (k == 0 ? mass : norm);
        const double bk = (k == 0) ? 0.0 : b[k - 1];
        double rr = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            next[i] = (m.x[i] - a[k]) * cur[i] - bk * prev[i];
            rr += m.lambda[i] * next[i] * next[i];
        }
        const double bnext = std::sqrt(rr);
        if (!(bnext > 0.0) || !std::isfinite(bnext)) {
            throw OrthogonalityLossError("recurrence_coefficients: vanishing b_" + std::to_string(k + 1) +
                                         " (measure has too few points of increase)");
        }
        b[k] = bnext;
        for (std::size_t i = 0; i < size; ++i) next[i] /= bnext;
        std::swap(prev, cur);
        std::swap(cur, next);
    }

    const double residual = gram_residual(scaled);
    if (!(residual <= options.certificate_tol)) {
        throw OrthogonalityLossError("recurrence_coefficients: orthonormality residual " +
                                     format_g(residual) + " exceeds " +
                                     format_g(options.certificate_tol));
    }
    return RecurrenceTable(std::move(a), std::move(b));
}

double orthonormality_residual(const RecurrenceTable& table, const Weight& weight, int degree,
                               const RecurrenceOptions& options) {
    check_degree(table, degree, 0, "orthonormality_residual");
    const DiscreteMeasure m = discretize(weight, discretization_size(table.n_max(), options), table.n_max());
    Eigen::MatrixXd scaled(degree + 1, static_cast<Eigen::Index>(m.x.size()));
    std::vector<double> values(static_cast<std::size_t>(degree) + 1);
    for (std::size_t i = 0; i < m.x.size(); ++i) {
        evaluate_upto(table, degree, m.x[i], values);
        const double s = std::sqrt(m.lambda[i]);
        for (int k = 0; k <= degree; ++k) scaled(k, static_cast<Eigen::Index>(i)) = s * values[k];
    }
    return gram_residual(scaled);
}

void evaluate_upto(const RecurrenceTable& table, int n, double x, std::span<double> out) {
    check_degree(table, n, 0, "evaluate_upto");
    if (out.size() < static_cast<std::size_t>(n) + 1) {
        throw PreconditionError("evaluate_upto: output span too short");
    }
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = (x - table.a(0)) / table.b(1);
    for (int k = 1; k < n; ++k) {
        out[k + 1] = ((x - table.a(k)) * out[k] - table.b(k) * out[k - 1]) / table.b(k + 1);
    }
}

double evaluate_pn(const RecurrenceTable& table, int n, double x) {
    check_degree(table, n, 0, "evaluate_pn");
    const auto a = table.a_coeffs();
    const auto b = table.b_coeffs();
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double bk = (k == 0) ? 0.0 : b[k - 1];
        const double next = ((x - a[k]) * cur - bk * prev) / b[k];
        prev = cur;
        cur = next;
    }
    return cur;
}

double leading_coefficient(const RecurrenceTable& table, int n) {
    return std::exp(log_leading_coefficient(table, n));
}

double log_leading_coefficient(const RecurrenceTable& table, int n) {
    check_degree(table, n, 1, "leading_coefficient");
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s -= std::log(table.b(k));
    return s;
}

ZeroSet zeros(const RecurrenceTable& table, int n) {
    check_degree(table, n, 1, "zeros");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag(k) = table.a(k);
    for (int k = 0; k + 1 < n; ++k) sub(k) = table.b(k + 1);
    ZeroSet out;
    out.n = n;
    if (n == 1) {
        out.zeros = {diag(0)};
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("zeros: tridiagonal eigensolver did not converge for n = " +
                               std::to_string(n));
    }
    out.zeros.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(out.zeros.begin(), out.zeros.end());
    return out;
}

std::function<double(double)> nu_n_density(const RecurrenceTable& table, const Weight& weight, int n) {
    check_degree(table, n, 0, "nu_n_density");
    return [table, weight, n](double x) {
        const double p = evaluate_pn(table, n, x);
        return p * p * weight.w(x);
    };
}

} // namespace orthent
