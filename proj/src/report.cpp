#include "primebounds/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "primebounds/errors.hpp"

namespace primebounds {
namespace {

// Text output rounds floats for reading; csv keeps full precision.
std::string cell(const Json& v, bool full = false) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_number_float() && !full) {
    std::ostringstream os;
    os << std::setprecision(7) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> row_keys(const Json& rows) {
  std::vector<std::string> keys;
  for (const auto& row : rows) {
    for (const auto& [k, _] : row.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  return keys;
}

const char* side_name(int side) {
  return side < 0 ? "left" : side > 0 ? "right" : "at";
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  throw ParameterError("unknown output format '" + name + "' (json, csv, text)");
}

Json to_json(const Real& r) {
  const double d = r.to_double();
  if (!std::isfinite(d)) return r.str(17);
  return d;
}

Json to_json(const IterationState& s) {
  return {{"variant", s.variant.name()}, {"a", to_json(s.variant.a)}, {"A", to_json(s.A)},
          {"B", to_json(s.B)},           {"C", to_json(s.C)},         {"D", to_json(s.D)},
          {"E", to_json(s.E)}};
}

Json to_json(const RoundRecord& r) {
  Json j = to_json(r.state);
  j["coef1"] = to_json(r.profile.coef1);
  j["coef2"] = to_json(r.profile.coef2);
  j["alpha3"] = to_json(r.profile.alpha3);
  j["coef4"] = to_json(r.profile.coef4);
  j["e_at_A"] = to_json(r.e_at_A);
  j["c_min"] = to_json(r.c_min);
  j["B_exact"] = to_json(r.B_exact);
  j["x_max"] = to_json(r.x_max);
  return j;
}

Json to_json(const DerivationReport& r) {
  Json rounds = Json::array();
  for (const auto& rec : r.rounds) rounds.push_back(to_json(rec));
  return {{"equation", threshold_kind_name(r.equation)},
          {"T", to_json(r.T)},
          {"K", to_json(r.final_K)},
          {"C", to_json(r.final_C)},
          {"x_max", to_json(r.x_max)},
          {"x_max_exact", r.x_max.str(12)},
          {"rounds", rounds},
          {"notes", r.notes}};
}

Json to_json(const ScanReport& r) {
  Json j = {{"spec", r.spec.name()},
            {"kind", kind_name(r.spec.kind)},
            {"a", to_json(r.spec.a)},
            {"holds_everywhere", r.holds_everywhere},
            {"points", r.points},
            {"violations", r.violations}};
  if (r.last_violation) {
    j["last_violation"] = to_json(r.last_violation->x);
    j["last_violation_side"] = side_name(r.last_violation->side);
  } else {
    j["last_violation"] = nullptr;
  }
  return j;
}

Json to_json(const ZeroSumVerdict& v) {
  return {{"pass", v.pass},
          {"t2", to_json(v.t2)},
          {"empirical", to_json(v.empirical)},
          {"bound", to_json(v.bound)},
          {"margin", to_json(v.margin)},
          {"zeros_used", v.zeros_used},
          {"convention", "sum of 1/|Im rho| over all zeros = sum of 2/gamma over gamma > 0"}};
}

Json to_json(const KernelWeightVerdict& v) {
  return {{"pass", v.pass},
          {"checked", v.checked},
          {"skipped", v.skipped},
          {"max_weight", to_json(v.max_weight)},
          {"min_weight", to_json(v.min_weight)},
          {"warnings", v.warnings}};
}

Json to_json(const ZeroCountVerdict& v) {
  return {{"pass", v.pass},
          {"t", to_json(v.t)},
          {"count", v.count},
          {"expected", to_json(v.expected)},
          {"relative_error", to_json(v.relative_error)}};
}

Json to_json(const Regime& r) {
  return {{"label", r.label},
          {"z_lo", to_json(r.z_lo)},
          {"z_hi", to_json(r.z_hi)},
          {"a", to_json(r.a)},
          {"delta", to_json(r.delta)},
          {"floor_valid", to_json(r.floor_valid)},
          {"delta_reconstructed", r.delta_reconstructed},
          {"total_steps", r.total_steps()}};
}

Json to_json(const StepReport& r) {
  Json j = {{"pass", r.pass()},
            {"steps_checked", r.steps_checked},
            {"z_start", r.z_start.str(15)},
            {"min_margin", to_json(r.min_margin)},
            {"min_margin_at", r.min_margin_at.str(15)},
            {"min_relative_margin", to_json(r.min_relative_margin)},
            {"precision_bits", r.precision_bits}};
  j["first_failure"] = r.first_failure ? Json(r.first_failure->str(15)) : nullptr;
  return j;
}

Json to_json(const CounterexampleVerdict& v) {
  return {{"x", v.x},
          {"outcome", outcome_name(v.outcome)},
          {"pi_x", v.pi_x},
          {"pi_x_over_e", v.pi_x_over_e},
          {"lhs", v.lhs.str(20)},
          {"rhs", v.rhs.str(20)},
          {"reason", v.reason}};
}

Json Emission::document() const {
  return {{"schema", kOutputSchema}, {"command", command}, {"pass", pass},
          {"summary", summary},      {"rows", rows},       {"warnings", warnings}};
}

void Emission::render(OutputFormat format, std::ostream& out) const {
  switch (format) {
    case OutputFormat::json:
      out << document().dump(2) << "\n";
      return;
    case OutputFormat::csv: {
      if (rows.empty()) {
        out << "key,value\n";
        for (const auto& [k, v] : summary.items()) out << csv_escape(k) << "," << csv_escape(cell(v, true)) << "\n";
        return;
      }
      const auto keys = row_keys(rows);
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << csv_escape(keys[i]);
      out << "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          out << (i ? "," : "") << (row.contains(keys[i]) ? csv_escape(cell(row[keys[i]], true)) : "");
        }
        out << "\n";
      }
      return;
    }
    case OutputFormat::text: {
      out << command << ": " << (pass ? "PASS" : "FAIL") << "\n";
      for (const auto& [k, v] : summary.items()) out << "  " << k << " = " << cell(v) << "\n";
      if (!rows.empty()) {
        const auto keys = row_keys(rows);
        std::vector<std::size_t> width(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
          width[i] = keys[i].size();
          for (const auto& row : rows) {
            if (row.contains(keys[i])) width[i] = std::max(width[i], cell(row[keys[i]]).size());
          }
        }
        out << " ";
        for (std::size_t i = 0; i < keys.size(); ++i) out << " " << std::setw(int(width[i])) << keys[i];
        out << "\n";
        for (const auto& row : rows) {
          out << " ";
          for (std::size_t i = 0; i < keys.size(); ++i) {
            out << " " << std::setw(int(width[i]))
                << (row.contains(keys[i]) ? cell(row[keys[i]]) : std::string());
          }
          out << "\n";
        }
      }
      for (const auto& w : warnings) out << "  warning: " << w << "\n";
      return;
    }
  }
}

}  // namespace primebounds
