#include "orthent/report.hpp"

#include "orthent/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace orthent {

namespace {

using nlohmann::json;

std::vector<double> real_array(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_array()) {
        throw InvalidSpecError(std::string("weight spec: '") + field + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j.at(field)) {
        if (!v.is_number()) {
            throw InvalidSpecError(std::string("weight spec: '") + field + "' must be an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

double real_field(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_number()) {
        throw InvalidSpecError(std::string("weight spec: '") + field + "' must be a number");
    }
    return j.at(field).get<double>();
}

// JSON has no inf/nan; keep them as strings so the output stays parsable.
json real_json(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw InvalidSpecError("degree list: '" + s + "' is not an integer");
    }
    if (used != s.size()) throw InvalidSpecError("degree list: '" + s + "' is not an integer");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

WeightSpec parse_weight_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidSpecError(std::string("weight spec: malformed JSON (") + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw InvalidSpecError("weight spec: expected an object with a string 'kind'");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "chebyshev") return ChebyshevKind{};
    if (kind == "jacobi") return JacobiKind{real_field(j, "alpha"), real_field(j, "beta")};
    if (kind == "bernstein") return BernsteinKind{real_array(j, "S")};
    if (kind == "tabulated") return TabulatedKind{real_array(j, "w0")};
    throw InvalidSpecError("weight spec: unknown kind '" + kind + "'");
}

std::string weight_spec_to_json(const WeightSpec& spec) {
    json j;
    j["kind"] = kind_name(spec);
    if (const auto* p = std::get_if<JacobiKind>(&spec)) {
        j["alpha"] = p->alpha;
        j["beta"] = p->beta;
    } else if (const auto* b = std::get_if<BernsteinKind>(&spec)) {
        j["S"] = b->S;
    } else if (const auto* t = std::get_if<TabulatedKind>(&spec)) {
        j["w0"] = t->w0;
    }
    return j.dump();
}

std::vector<int> parse_degree_list(const std::string& text) {
    const std::string s = trim(text);
    std::vector<int> out;
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(trim(s.substr(0, dots)));
        const int hi = parse_int(trim(s.substr(dots + 2)));
        if (hi < lo) throw InvalidSpecError("degree list: empty range " + s);
        for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item)));
    }
    if (out.empty()) throw InvalidSpecError("degree list: no degrees given");
    for (int n : out) {
        if (n < 0) throw InvalidSpecError("degree list: negative degree " + std::to_string(n));
    }
    return out;
}

std::string entropy_csv_header() {
    return "n,E,F,G,szego_const,correction_E,correction_F,delta_measure,M,I_energy,quad_error";
}

std::string entropy_csv_row(const EntropyReport& r) {
    std::string s = std::to_string(r.n);
    for (double v : {r.E, r.F, r.G, r.szego_const, r.correction_E, r.correction_F, r.delta_measure, r.M,
                     r.I_energy, r.quad_error}) {
        s += ',';
        s += format_real(v);
    }
    return s;
}

std::string entropy_json(const std::vector<EntropyReport>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"E", real_json(r.E)},
                       {"F", real_json(r.F)},
                       {"G", real_json(r.G)},
                       {"szego_const", real_json(r.szego_const)},
                       {"correction_E", real_json(r.correction_E)},
                       {"correction_F", real_json(r.correction_F)},
                       {"delta_measure", real_json(r.delta_measure)},
                       {"M", real_json(r.M)},
                       {"I_energy", real_json(r.I_energy)},
                       {"quad_error", real_json(r.quad_error)}});
    }
    return arr.dump(2);
}

std::string asymptotics_csv_header() {
    return "n,l2_dev,gamma_log_ratio,gamma_limit,trunc_l2_dev";
}

std::string asymptotics_csv_row(const AsymptoticsReport& r) {
    std::string s = std::to_string(r.n);
    for (double v : {r.l2_dev, r.gamma_log_ratio, r.gamma_limit, r.trunc_l2_dev}) {
        s += ',';
        s += format_real(v);
    }
    return s;
}

std::string asymptotics_json(const std::vector<AsymptoticsReport>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"l2_dev", real_json(r.l2_dev)},
                       {"gamma_log_ratio", real_json(r.gamma_log_ratio)},
                       {"gamma_limit", real_json(r.gamma_limit)},
                       {"trunc_l2_dev", real_json(r.trunc_l2_dev)}});
    }
    return arr.dump(2);
}

std::string conditions_text(const ConditionSuprema& s, double epsilon, bool as_json) {
    if (as_json) {
        json j = {{"epsilon", epsilon},
                  {"supE_log", real_json(s.supE_log)},
                  {"supE_pow", real_json(s.supE_pow)},
                  {"supF_log", real_json(s.supF_log)},
                  {"supF_pow", real_json(s.supF_pow)},
                  {"divergent", s.divergent}};
        return j.dump(2) + "\n";
    }
    std::string out = "epsilon,supE_log,supE_pow,supF_log,supF_pow,divergent\n";
    out += format_real(epsilon) + ',' + format_real(s.supE_log) + ',' + format_real(s.supE_pow) + ',' +
           format_real(s.supF_log) + ',' + format_real(s.supF_pow) + ',' + (s.divergent ? "1" : "0") + '\n';
    return out;
}

std::string bernstein_summary(const FejerRieszFactor& factor, int n_lo, int n_hi, bool as_json) {
    const double g_inf = -2.0 * std::log(factor.q0);
    json roots = json::array();
    for (const auto& z : factor.zeta) roots.push_back({z.real(), z.imag()});
    json table = json::array();
    for (int n = n_lo; n <= n_hi; ++n) {
        const double f = exact_F(factor, n);
        const double g = exact_G(factor, n);
        table.push_back({{"n", n}, {"F", f}, {"G", g}, {"E", f + g}});
    }
    if (as_json) {
        json j = {{"q", factor.q}, {"roots", roots}, {"q0", factor.q0}, {"mass", factor.mass},
                  {"G_inf", g_inf}, {"threshold", factor.min_exact_degree()}, {"table", table}};
        return j.dump(2) + "\n";
    }
    std::string out;
    out += "q coefficients:";
    for (double c : factor.q) out += ' ' + format_real(c);
    out += "\nroots:";
    for (const auto& z : factor.zeta) {
        out += ' ' + format_real(z.real());
        if (z.imag() != 0.0) out += (z.imag() > 0 ? "+" : "") + format_real(z.imag()) + "i";
    }
    out += "\nq0: " + format_real(factor.q0);
    out += "\nmass: " + format_real(factor.mass);
    out += "\nG_inf: " + format_real(g_inf);
    out += "\nthreshold n: " + std::to_string(factor.min_exact_degree());
    out += "\nn,F,G,E\n";
    for (const auto& row : table) {
        out += std::to_string(row["n"].get<int>()) + ',' + format_real(row["F"].get<double>()) + ',' +
               format_real(row["G"].get<double>()) + ',' + format_real(row["E"].get<double>()) + '\n';
    }
    return out;
}

} // namespace orthent
