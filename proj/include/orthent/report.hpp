#pragma once

#include "orthent/asymptotics.hpp"
#include "orthent/bernstein.hpp"
#include "orthent/entropy.hpp"
#include "orthent/weights.hpp"

#include <string>
#include <vector>

namespace orthent {

/// {"kind":"chebyshev"}, {"kind":"jacobi","alpha":a,"beta":b}, {"kind":"bernstein","S":[...]},
/// {"kind":"tabulated","w0":[...]}. Throws InvalidSpecError on malformed JSON or fields.
WeightSpec parse_weight_spec(const std::string& json_text);
std::string weight_spec_to_json(const WeightSpec& spec);

/// Degree list from "a..b" or "n1,n2,...". Throws InvalidSpecError.
std::vector<int> parse_degree_list(const std::string& text);

std::string entropy_csv_header();
std::string entropy_csv_row(const EntropyReport& r);
std::string entropy_json(const std::vector<EntropyReport>& rows);

std::string asymptotics_csv_header();
std::string asymptotics_csv_row(const AsymptoticsReport& r);
std::string asymptotics_json(const std::vector<AsymptoticsReport>& rows);

std::string conditions_text(const ConditionSuprema& s, double epsilon, bool as_json);

/// Factorization summary and exact F/G table for degrees n_lo..n_hi.
std::string bernstein_summary(const FejerRieszFactor& factor, int n_lo, int n_hi, bool as_json);

/// %.17g, with inf/nan spelled "inf", "-inf", "nan".
std::string format_real(double v);

} // namespace orthent
