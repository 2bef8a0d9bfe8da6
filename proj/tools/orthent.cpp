#include "orthent/acceptance.hpp"
#include "orthent/asymptotics.hpp"
#include "orthent/bernstein.hpp"
#include "orthent/entropy.hpp"
#include "orthent/error.hpp"
#include "orthent/orthopoly.hpp"
#include "orthent/report.hpp"
#include "orthent/weights.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

using namespace orthent;

namespace {

struct RunConfig {
    std::string weight;
    std::string degrees = "1..20";
    double M = 1.5;
    double epsilon = 0.5;
    double abs_tol = 1e-10;
    std::string output;
    std::string format = "csv";
    bool allow_large_n = false;
    std::string S;
};

constexpr int kDefaultDegreeCap = 200;

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpecError("cannot open weight spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WeightSpec load_spec(const std::string& arg) {
    if (arg.empty()) throw InvalidSpecError("--weight is required");
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') return parse_weight_spec(arg);
    return parse_weight_spec(read_text(arg));
}

quad::QuadratureOptions quadrature_options(const RunConfig& cfg) {
    if (!(cfg.abs_tol > 0.0)) throw PreconditionError("--abs-tol must be positive");
    quad::QuadratureOptions q;
    q.abs_tol = cfg.abs_tol;
    if (const char* env = std::getenv("ORTHENT_MAX_PANELS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw InvalidSpecError(std::string("ORTHENT_MAX_PANELS must be a positive integer (got '") + env + "')");
        }
        q.max_panels = static_cast<int>(v);
    }
    return q;
}

std::vector<int> degree_list(const RunConfig& cfg) {
    auto ns = parse_degree_list(cfg.degrees);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (!cfg.allow_large_n && ns.back() > kDefaultDegreeCap) {
        throw InvalidSpecError("degree " + std::to_string(ns.back()) + " exceeds " +
                               std::to_string(kDefaultDegreeCap) + " (pass --allow-large-n)");
    }
    return ns;
}

void require_M(double M) {
    if (!(M > std::numbers::sqrt2)) throw PreconditionError("--M must exceed sqrt(2)");
}

// Runs job(i) for i in [0, count) on a small pool; rethrows the failure with the lowest index.
template <class Job>
void run_parallel(std::size_t count, Job&& job) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t extra = std::min<std::size_t>(hw, count) > 0 ? std::min<std::size_t>(hw, count) - 1 : 0;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < extra; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw PreconditionError("cannot write output file '" + cfg.output + "'");
    out << text;
}

bool json_format(const RunConfig& cfg) {
    if (cfg.format == "json") return true;
    if (cfg.format == "csv") return false;
    throw InvalidSpecError("--format must be csv or json");
}

int cmd_entropy(const RunConfig& cfg) {
    const bool as_json = json_format(cfg);
    require_M(cfg.M);
    const Weight weight = build_weight(load_spec(cfg.weight));
    const auto ns = degree_list(cfg);
    const auto opts = quadrature_options(cfg);
    const auto table = recurrence_coefficients(weight, std::max(ns.back(), 1));
    std::vector<EntropyReport> rows(ns.size());
    run_parallel(ns.size(), [&](std::size_t i) { rows[i] = entropy_report(weight, table, ns[i], cfg.M, opts); });
    if (as_json) {
        emit(cfg, entropy_json(rows) + "\n");
    } else {
        std::string text = entropy_csv_header() + "\n";
        for (const auto& r : rows) text += entropy_csv_row(r) + "\n";
        emit(cfg, text);
    }
    return 0;
}

int cmd_asymptotics(const RunConfig& cfg) {
    const bool as_json = json_format(cfg);
    require_M(cfg.M);
    const Weight weight = build_weight(load_spec(cfg.weight));
    const auto ns = degree_list(cfg);
    if (ns.front() < 1) throw PreconditionError("asymptotics needs degrees n >= 1");
    const auto opts = quadrature_options(cfg);
    const auto table = recurrence_coefficients(weight, ns.back());
    std::vector<AsymptoticsReport> rows(ns.size());
    run_parallel(ns.size(), [&](std::size_t i) { rows[i] = asymptotics_report(weight, table, ns[i], cfg.M, opts); });
    if (as_json) {
        emit(cfg, asymptotics_json(rows) + "\n");
    } else {
        std::string text = asymptotics_csv_header() + "\n";
        for (const auto& r : rows) text += asymptotics_csv_row(r) + "\n";
        emit(cfg, text);
    }
    return 0;
}

int cmd_bernstein(const RunConfig& cfg, bool degrees_given) {
    const bool as_json = json_format(cfg);
    WeightSpec spec;
    if (!cfg.S.empty()) {
        spec = parse_weight_spec("{\"kind\":\"bernstein\",\"S\":" + cfg.S + "}");
    } else {
        spec = load_spec(cfg.weight);
        if (!std::holds_alternative<BernsteinKind>(spec)) {
            throw InvalidSpecError("bernstein: weight must be of bernstein kind");
        }
    }
    const auto factor = fejer_riesz(build_weight(spec));
    int lo = factor.min_exact_degree();
    int hi = lo + 10;
    if (degrees_given) {
        const auto ns = degree_list(cfg);
        lo = std::max(lo, ns.front());
        hi = ns.back();
        if (hi < lo) throw DegreeRangeError("bernstein: no requested degree satisfies 2n > deg S");
    }
    emit(cfg, bernstein_summary(factor, lo, hi, as_json));
    return 0;
}

int cmd_conditions(const RunConfig& cfg) {
    const bool as_json = json_format(cfg);
    const Weight weight = build_weight(load_spec(cfg.weight));
    const auto ns = degree_list(cfg);
    const auto opts = quadrature_options(cfg);
    const auto table = recurrence_coefficients(weight, std::max(ns.back(), 1));
    emit(cfg, conditions_text(condition_check(weight, table, ns, cfg.epsilon, opts), cfg.epsilon, as_json));
    return 0;
}

int cmd_verify() {
    const auto results = run_acceptance();
    bool ok = true;
    for (const auto& r : results) {
        std::cout << format_criterion(r) << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int exit_code_for(const std::string& code) {
    if (code == "invalid_spec" || code == "positivity" || code == "integrability" || code == "precondition" ||
        code == "degree_range" || code == "usage") {
        return 2;
    }
    if (code == "budget_exceeded") return 3;
    return 1;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal-polynomial entropy toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--weight", cfg.weight, "weight spec as inline JSON or a file path");
        sub->add_option("--n", cfg.degrees, "degrees: a..b or n1,n2,...");
        sub->add_option("--abs-tol", cfg.abs_tol, "absolute quadrature tolerance");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--output", cfg.output, "output file (default stdout)");
        sub->add_flag("--allow-large-n", cfg.allow_large_n, "permit degrees above 200");
    };

    auto* entropy = app.add_subcommand("entropy", "E_n, F_n, G_n and correction terms per degree");
    add_common(entropy);
    entropy->add_option("--M", cfg.M, "truncation level, > sqrt(2)");

    auto* asym = app.add_subcommand("asymptotics", "Szegő comparison per degree");
    add_common(asym);
    asym->add_option("--M", cfg.M, "truncation level, > sqrt(2)");

    auto* bern = app.add_subcommand("bernstein", "Fejér–Riesz factor and exact F/G table");
    add_common(bern);
    bern->add_option("--S", cfg.S, "coefficients of S as a JSON array, increasing degree");

    auto* cond = app.add_subcommand("conditions", "suprema of the sufficient-condition integrals");
    add_common(cond);
    cond->add_option("--epsilon", cfg.epsilon, "exponent offset, > 0");

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << one_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (entropy->parsed()) return cmd_entropy(cfg);
        if (asym->parsed()) return cmd_asymptotics(cfg);
        if (bern->parsed()) return cmd_bernstein(cfg, bern->count("--n") > 0);
        if (cond->parsed()) return cmd_conditions(cfg);
        if (verify->parsed()) return cmd_verify();
    } catch (const Error& e) {
        std::cerr << "error[" << e.code() << "]: " << one_line(e.what()) << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << one_line(e.what()) << "\n";
        return 1;
    }
    return 1;
}
