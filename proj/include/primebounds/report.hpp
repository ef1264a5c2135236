#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "primebounds/engine.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/ramanujan.hpp"
#include "primebounds/zeros.hpp"

namespace primebounds {

using Json = nlohmann::ordered_json;

inline constexpr const char* kOutputSchema = "primebounds-output 1";

enum class OutputFormat { json, csv, text };

OutputFormat parse_output_format(const std::string& name);

// Reals go out as JSON numbers (doubles); exact decimal strings live under
// "*_exact" keys where they matter.
Json to_json(const Real& r);
Json to_json(const IterationState& s);
Json to_json(const RoundRecord& r);
Json to_json(const DerivationReport& r);
Json to_json(const ScanReport& r);
Json to_json(const ZeroSumVerdict& v);
Json to_json(const KernelWeightVerdict& v);
Json to_json(const ZeroCountVerdict& v);
Json to_json(const Regime& r);
Json to_json(const StepReport& r);
Json to_json(const CounterexampleVerdict& v);

// What a command produces: flat summary fields, optional table rows (flat
// objects sharing keys) and warnings.
struct Emission {
  std::string command;
  Json summary = Json::object();
  Json rows = Json::array();
  std::vector<std::string> warnings;
  bool pass = true;

  Json document() const;
  void render(OutputFormat format, std::ostream& out) const;
};

}  // namespace primebounds
