#include "primebounds/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "primebounds/engine.hpp"
#include "primebounds/errors.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/published.hpp"
#include "primebounds/ramanujan.hpp"
#include "primebounds/zeros.hpp"

#ifndef PRIMEBOUNDS_DEFAULT_ZEROS_FILE
#define PRIMEBOUNDS_DEFAULT_ZEROS_FILE ""
#endif

namespace primebounds {
namespace fs = std::filesystem;

namespace {

Real parse_real(const std::string& text, const std::string& what) {
  try {
    return Real(std::string_view(text));
  } catch (const ParameterError&) {
    throw ParameterError(what + ": not a number '" + text + "'");
  }
}

std::uint64_t parse_count(const std::string& text, const std::string& what) {
  const Real v = parse_real(text, what);
  if (!v.is_integer() || v.sign() < 0 || v >= Real("1.8e19")) {
    throw ParameterError(what + " must be a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(mpfr_get_uj(v.get(), MPFR_RNDZ));
}

// Strings collected by CLI11, turned into a RunConfig once parsing is done.
struct RawConfig {
  unsigned precision_bits = 192;
  std::string T = "3e12";
  std::string cache_dir;
  std::string format = "text";
  unsigned grid_density = 16;
  std::string sieve_limit = "1e6";
  std::string zeros_file;

  RunConfig resolve() const {
    RunConfig c;
    c.precision_bits = precision_bits;
    c.T = parse_real(T, "--T");
    c.cache_dir = cache_dir;
    c.output_format = parse_output_format(format);
    c.grid_density = grid_density;
    c.sieve_limit = parse_count(sieve_limit, "--sieve-limit");
    c.zeros_file = zeros_file;
    if (c.zeros_file.empty()) {
      if (const char* env = std::getenv("PRIMEBOUNDS_ZEROS_FILE")) c.zeros_file = env;
    }
    if (c.zeros_file.empty()) c.zeros_file = PRIMEBOUNDS_DEFAULT_ZEROS_FILE;
    c.validate();
    return c;
  }
};

SieveOptions sieve_options(const RunConfig& cfg) {
  SieveOptions o;
  if (!cfg.cache_dir.empty()) o.cache_dir = fs::path(cfg.cache_dir);
  return o;
}

Real from_published(const nlohmann::json& v) { return Real(std::string_view(v.get<std::string>())); }

// ---- derive ---------------------------------------------------------------

struct DeriveArgs {
  std::string variant = "strong";
  std::string a;
  std::string A, D, E;
  unsigned max_rounds = 4;
};

Emission cmd_derive(const RunConfig& cfg, const DeriveArgs& args) {
  IterateOptions opts;
  opts.max_rounds = args.max_rounds;
  DerivationReport report;
  if (args.variant == "strong") {
    if (!args.a.empty()) throw ParameterError("--a applies to the weak variant only");
    IterationState seed = strong_seed(cfg.T);
    if (!args.A.empty()) seed.A = parse_real(args.A, "--A");
    if (!args.D.empty()) seed.D = parse_real(args.D, "--D");
    if (!args.E.empty()) seed.E = parse_real(args.E, "--E");
    report = iterate(cfg.T, seed, opts);
  } else {
    const Real a = parse_real(args.a.empty() ? "1" : args.a, "--a");
    if (!(a.sign() > 0)) throw ParameterError("--a must be positive");
    std::optional<Real> A;
    if (!args.A.empty()) A = parse_real(args.A, "--A");
    if (args.D.empty() && args.E.empty()) {
      report = derive_weak(a, cfg.T, A, opts);
    } else {
      const Real start = A ? *A : round_down_sig(iterate(cfg.T, strong_seed(cfg.T), opts).x_max, 4);
      IterationState seed{start, Real(0), Real(0),
                          args.D.empty() ? Real(0) : parse_real(args.D, "--D"),
                          args.E.empty() ? Real("2.4") / a : parse_real(args.E, "--E"),
                          BoundVariant::weak(a)};
      IterateOptions o = opts;
      o.search = SearchOptions::weak_defaults(a);
      report = iterate(cfg.T, seed, o);
    }
  }

  Emission e;
  e.command = "derive";
  const Json j = to_json(report);
  e.summary = {{"variant", args.variant}, {"equation", j["equation"]}, {"T", j["T"]},
               {"K", j["K"]},             {"C", j["C"]},               {"x_max", j["x_max"]},
               {"rounds", report.rounds.size()}};
  if (args.variant != "strong") e.summary["a"] = to_json(report.rounds.front().state.variant.a);
  for (std::size_t i = 0; i < report.rounds.size(); ++i) {
    Json row = to_json(report.rounds[i]);
    row.erase("variant");
    row.erase("a");
    Json ordered = {{"round", i + 1}};
    ordered.update(row);
    e.rows.push_back(ordered);
  }
  for (const auto& n : report.notes) e.warnings.push_back(n);
  return e;
}

// ---- tables ---------------------------------------------------------------

struct TablesArgs {
  std::string which;
  bool compare = false;
  std::vector<std::string> keys;
};

Emission cmd_tables(const RunConfig& cfg, const TablesArgs& args) {
  if (args.which != "1" && args.which != "2") {
    throw ParameterError("table selection must be 1 or 2, got '" + args.which + "'");
  }
  const bool first = args.which == "1";
  const auto& pv = published_values();
  const auto& published_rows = pv[first ? "table1" : "table2"];
  const char* key_name = first ? "T0" : "a";

  std::vector<std::string> keys = args.keys;
  if (keys.empty()) {
    for (const auto& row : published_rows) keys.push_back(row[key_name].get<std::string>());
  }
  std::vector<Real> values;
  for (const auto& k : keys) values.push_back(parse_real(k, key_name));

  const std::vector<TableRow> rows = first ? table1(values) : table2(values, cfg.T);

  Emission e;
  e.command = std::string("tables ") + args.which;
  e.summary = {{"table", std::stoi(args.which)}, {"rows", rows.size()}};
  if (!first) e.summary["T"] = to_json(cfg.T);
  const Real tolerance("0.995");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Json r = {{key_name, keys[i]},
              {"K", to_json(rows[i].K)},
              {"x_max", rows[i].x_max.str(5)},
              {"rounds", rows[i].report.rounds.size()}};
    if (args.compare) {
      const nlohmann::json* match = nullptr;
      for (const auto& p : published_rows) {
        if (from_published(p[key_name]) == rows[i].key) match = &p;
      }
      if (match) {
        const Real pk = from_published((*match)["K"]);
        const Real px = from_published((*match)["x_max"]);
        const bool ok = rows[i].K <= pk && rows[i].x_max >= tolerance * px;
        r["published_K"] = (*match)["K"];
        r["published_x_max"] = (*match)["x_max"];
        r["verdict"] = ok ? "pass" : "fail";
        if (!ok) e.pass = false;
      } else {
        r["verdict"] = "no published row";
      }
    }
    e.rows.push_back(r);
  }
  return e;
}

// ---- verify-primes ----------------------------------------------------------

struct VerifyArgs {
  std::string limit;
  std::vector<std::string> specs;
  bool weak = false;
  std::string a;
};

Emission cmd_verify_primes(const RunConfig& cfg, const VerifyArgs& args) {
  const std::uint64_t limit = args.limit.empty() ? cfg.sieve_limit : parse_count(args.limit, "--limit");
  const auto& pv = published_values()["prime_thresholds"];

  Real a = args.weak ? Real(1) : 1 / (8 * const_pi());
  const bool custom_a = !args.a.empty();
  if (custom_a) a = parse_real(args.a, "--a");
  if (!(a.sign() > 0)) throw ParameterError("--a must be positive");
  const nlohmann::json* thresholds = nullptr;
  if (!custom_a) thresholds = &pv[args.weak ? "weak" : "strong"];

  std::vector<std::string> names = args.specs;
  if (names.empty()) {
    names = args.weak ? std::vector<std::string>{"psi_sq", "theta_sq", "Pi_li", "pi_li"}
                      : std::vector<std::string>{"psi_sq",      "theta_sq", "psi_shift",
                                                 "theta_shift", "Pi_li",    "pi_li"};
  }
  std::vector<InequalitySpec> specs;
  for (const auto& n : names) {
    InequalitySpec s{parse_inequality_kind(n), a, Real(0)};
    if (pv["shift_C"].contains(n)) s.C = from_published(pv["shift_C"][n]);
    specs.push_back(s);
  }

  Emission e;
  e.command = "verify-primes";
  const PrimeTables tables = PrimeTables::build(limit, sieve_options(cfg));
  ScanOptions so;
  so.interior_samples = cfg.grid_density;
  const auto reports = scan_inequalities(specs, Real(2), Real(static_cast<unsigned long long>(limit)),
                                         tables, so);
  e.summary = {{"limit", limit},
               {"a", to_json(a)},
               {"primes", tables.primes().size()},
               {"segments_restored", tables.restored_segments()}};
  for (const auto& w : tables.warnings()) e.warnings.push_back(w);
  if (limit < 10000) {
    e.warnings.push_back("limit " + std::to_string(limit) +
                         " is below 10^4; thresholds above it cannot be confirmed");
  }

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ScanReport& r = reports[i];
    Json row = to_json(r);
    row.erase("holds_everywhere");
    row.erase("kind");
    std::string verdict = "reported";
    if (thresholds && thresholds->contains(names[i])) {
      const std::uint64_t t = (*thresholds)[names[i]].get<std::uint64_t>();
      row["threshold"] = t;
      if (t > limit) {
        verdict = "unconfirmed";
        e.warnings.push_back(names[i] + ": threshold " + std::to_string(t) +
                             " lies above the sieve limit");
      } else if (r.holds_from(Real(static_cast<unsigned long long>(t)))) {
        verdict = "confirmed";
      } else {
        verdict = "contradicted";
        e.pass = false;
      }
    }
    row["verdict"] = verdict;
    e.rows.push_back(row);
  }
  return e;
}

// ---- zeros ------------------------------------------------------------------

struct ZerosArgs {
  std::string file;
  std::string t2 = "5000";
  std::string c = "35";
  std::string eps = "1e-8";
  std::uint64_t count = 100;
  std::vector<std::string> heights{"100", "1000", "5000"};
};

ZeroList zeros_for(const RunConfig& cfg, const ZerosArgs& args) {
  const std::string path = args.file.empty() ? cfg.zeros_file : args.file;
  if (path.empty()) throw ParameterError("no zero file given (--file or PRIMEBOUNDS_ZEROS_FILE)");
  return load_zeros(path);
}

Emission cmd_zeros_check(const RunConfig& cfg, const ZerosArgs& args) {
  const ZeroList zeros = zeros_for(cfg, args);
  const ZeroSumVerdict v = check_zero_sum(zeros, parse_real(args.t2, "--t2"));
  Emission e;
  e.command = "zeros check";
  e.summary = to_json(v);
  e.summary.erase("pass");
  e.summary["file"] = zeros.source;
  e.summary["decimals"] = zeros.decimals;
  e.pass = v.pass;
  return e;
}

Emission cmd_zeros_weights(const RunConfig& cfg, const ZerosArgs& args) {
  const ZeroList zeros = zeros_for(cfg, args).first(args.count);
  const KernelParams params{parse_real(args.c, "--c"), parse_real(args.eps, "--eps")};
  const KernelWeightVerdict v = check_kernel_weights(zeros, params);
  Emission e;
  e.command = "zeros weights";
  e.summary = to_json(v);
  e.summary.erase("pass");
  e.summary.erase("warnings");
  e.summary["c"] = to_json(params.c);
  e.summary["eps"] = to_json(params.eps);
  e.warnings = v.warnings;
  e.pass = v.pass;
  return e;
}

Emission cmd_zeros_count(const RunConfig& cfg, const ZerosArgs& args) {
  const ZeroList zeros = zeros_for(cfg, args);
  Emission e;
  e.command = "zeros count";
  e.summary = {{"file", zeros.source}, {"zeros", zeros.size()}, {"tolerance", 0.05}};
  for (const auto& h : args.heights) {
    const ZeroCountVerdict v = check_zero_count(zeros, parse_real(h, "--t"));
    e.rows.push_back(to_json(v));
    if (!v.pass) e.pass = false;
  }
  return e;
}

// ---- ramanujan --------------------------------------------------------------

struct RamanujanArgs {
  int rung = 0;
  std::uint64_t steps = 20000;
  std::string at = "start";
  bool full = false;
  bool stability = false;
  std::string z_lo, z_hi, delta, a;
  std::string counterexample;
};

Emission cmd_ramanujan(const RunConfig& cfg, const RamanujanArgs& args) {
  Emission e;
  e.command = "ramanujan";
  if (!args.counterexample.empty()) {
    const CounterexampleVerdict v = counterexample_check(parse_count(args.counterexample, "--counterexample"));
    e.summary = to_json(v);
    e.pass = v.outcome == InequalityOutcome::holds;
    return e;
  }
  const std::vector<Regime> ladder = regime_schedule();
  if (args.rung < 0 || static_cast<std::size_t>(args.rung) >= ladder.size()) {
    throw ParameterError("rung " + std::to_string(args.rung) + " is out of range 0.." +
                         std::to_string(ladder.size() - 1));
  }
  Regime r = ladder[static_cast<std::size_t>(args.rung)];
  if (!args.a.empty()) r.a = parse_real(args.a, "--a");
  if (!args.delta.empty()) {
    r.delta = parse_real(args.delta, "--delta");
    r.delta_reconstructed = false;
  }
  if (!args.z_lo.empty()) r.z_lo = parse_real(args.z_lo, "--z-lo");
  if (!args.z_hi.empty()) r.z_hi = parse_real(args.z_hi, "--z-hi");
  if (args.at != "start" && args.at != "end") throw ParameterError("--at must be start or end");
  if (!args.full && args.at == "end") r = tail_of(r, args.steps);
  r.validate();

  StepOptions so;
  so.precision_bits = std::max(cfg.precision_bits, 192u);
  if (!args.full) so.max_steps = args.steps;

  e.summary["regime"] = to_json(r);
  e.summary["rung"] = args.rung;
  if (r.delta_reconstructed) {
    e.warnings.push_back("delta for this rung is a reconstruction (sqrt(a_prev/a) scaling), not a published value");
  }
  if (args.stability) {
    const StabilityVerdict v = precision_stability(r, so.max_steps.value_or(r.total_steps()),
                                                   so.precision_bits);
    e.summary["report"] = to_json(v.base);
    e.summary["doubled"] = to_json(v.doubled);
    e.summary["relative_change"] = to_json(v.relative_change);
    e.pass = v.pass;
  } else {
    const StepReport rep = step_verify(r, so);
    e.summary["report"] = to_json(rep);
    e.pass = rep.pass();
  }
  return e;
}

// ---- cache ------------------------------------------------------------------

fs::path require_cache_dir(const RunConfig& cfg) {
  if (cfg.cache_dir.empty()) {
    throw ParameterError("no cache directory; use --cache-dir or PRIMEBOUNDS_CACHE_DIR");
  }
  return fs::path(cfg.cache_dir);
}

bool is_cache_file(const fs::directory_entry& entry) {
  const std::string name = entry.path().filename().string();
  return entry.is_regular_file() && name.rfind("primes-", 0) == 0 && entry.path().extension() == ".txt";
}

Emission cmd_cache_info(const RunConfig& cfg) {
  const fs::path dir = require_cache_dir(cfg);
  Emission e;
  e.command = "cache info";
  e.summary = {{"cache_dir", dir.string()}, {"exists", fs::exists(dir)}};
  if (fs::exists(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (is_cache_file(entry)) {
        e.rows.push_back({{"file", entry.path().filename().string()}, {"bytes", entry.file_size()}});
      }
    }
  }
  e.summary["files"] = e.rows.size();
  return e;
}

Emission cmd_cache_clear(const RunConfig& cfg) {
  const fs::path dir = require_cache_dir(cfg);
  Emission e;
  e.command = "cache clear";
  std::size_t removed = 0;
  if (fs::exists(dir)) {
    std::vector<fs::path> doomed;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (is_cache_file(entry)) doomed.push_back(entry.path());
    }
    for (const auto& p : doomed) removed += fs::remove(p) ? 1 : 0;
  }
  e.summary = {{"cache_dir", dir.string()}, {"removed", removed}};
  return e;
}

Emission cmd_cache_build(const RunConfig& cfg, const std::string& limit_text) {
  const fs::path dir = require_cache_dir(cfg);
  const std::uint64_t limit = limit_text.empty() ? cfg.sieve_limit : parse_count(limit_text, "--limit");
  fs::create_directories(dir);
  const PrimeTables t = PrimeTables::build(limit, sieve_options(cfg));
  Emission e;
  e.command = "cache build";
  e.summary = {{"cache_dir", dir.string()},
               {"limit", limit},
               {"segments", t.checkpoints().size()},
               {"segments_restored", t.restored_segments()},
               {"file", cache_file_path(dir, limit, t.segment_size()).string()}};
  e.warnings = t.warnings();
  return e;
}

}  // namespace

void RunConfig::validate() const {
  if (precision_bits < 100) {
    throw ParameterError("precision must be at least 100 bits, got " + std::to_string(precision_bits));
  }
  if (sieve_limit < 10000) {
    throw ParameterError("sieve limit must be at least 10^4, got " + std::to_string(sieve_limit));
  }
  if (!(T.sign() > 0)) throw ParameterError("T must be positive");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit prime-counting bounds under partial RH verification: derivation and checks",
               "primebounds"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; flags given on the command line win");

  RawConfig raw;
  app.add_option("--precision", raw.precision_bits, "working precision in bits (>= 100)");
  app.add_option("--T", raw.T, "height to which RH is assumed verified");
  app.add_option("--cache-dir", raw.cache_dir, "prime table cache directory")
      ->envname("PRIMEBOUNDS_CACHE_DIR");
  app.add_option("--format", raw.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--grid-density", raw.grid_density, "interior samples per gap in prime scans");
  app.add_option("--sieve-limit", raw.sieve_limit, "default sieve limit (>= 1e4)");
  app.add_option("--zeros-file", raw.zeros_file, "zeta zero ordinate file");

  std::function<Emission(const RunConfig&)> action;

  DeriveArgs derive;
  auto* d = app.add_subcommand("derive", "run the constant-tightening iteration");
  d->add_option("--variant", derive.variant)->check(CLI::IsMember({"strong", "weak"}));
  d->add_option("--a", derive.a, "weak variant constant");
  d->add_option("--A", derive.A, "seed lower threshold");
  d->add_option("--D", derive.D, "seed D");
  d->add_option("--E", derive.E, "seed E");
  d->add_option("--max-rounds", derive.max_rounds)->check(CLI::Range(1u, 50u));
  d->callback([&] { action = [&](const RunConfig& c) { return cmd_derive(c, derive); }; });

  TablesArgs tables;
  auto* t = app.add_subcommand("tables", "reproduce table 1 (T0 rows) or table 2 (a rows)");
  t->add_option("which", tables.which, "1 or 2")->required();
  t->add_flag("--compare-published", tables.compare, "add published values and per-row verdicts");
  t->add_option("--rows", tables.keys, "T0 values (table 1) or a values (table 2)");
  t->callback([&] { action = [&](const RunConfig& c) { return cmd_tables(c, tables); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify-primes", "scan the prime-counting inequalities");
  v->add_option("--limit", verify.limit, "sieve limit");
  v->add_option("--spec", verify.specs, "inequality kinds")
      ->check(CLI::IsMember({"psi_sq", "theta_sq", "psi_shift", "theta_shift", "Pi_li", "pi_li"}));
  v->add_flag("--weak", verify.weak, "weak forms with a = 1");
  v->add_option("--a", verify.a, "leading constant (no published thresholds apply)");
  v->callback([&] { action = [&](const RunConfig& c) { return cmd_verify_primes(c, verify); }; });

  ZerosArgs zeros;
  auto* z = app.add_subcommand("zeros", "checks against zeta zero data");
  z->fallthrough();
  z->require_subcommand(1);
  z->add_option("--file", zeros.file, "ordinate file");
  auto* zc = z->add_subcommand("check", "zero sum against its bound");
  zc->add_option("--t2", zeros.t2);
  zc->callback([&] { action = [&](const RunConfig& c) { return cmd_zeros_check(c, zeros); }; });
  auto* zw = z->add_subcommand("weights", "kernel weights on the first zeros");
  zw->add_option("--c", zeros.c);
  zw->add_option("--eps", zeros.eps);
  zw->add_option("--count", zeros.count);
  zw->callback([&] { action = [&](const RunConfig& c) { return cmd_zeros_weights(c, zeros); }; });
  auto* zn = z->add_subcommand("count", "zero counts against the main term");
  zn->add_option("--t", zeros.heights);
  zn->callback([&] { action = [&](const RunConfig& c) { return cmd_zeros_count(c, zeros); }; });

  RamanujanArgs ram;
  auto* r = app.add_subcommand("ramanujan", "stepping verification of Ramanujan's inequality");
  r->add_option("--rung", ram.rung, "index into the regime ladder");
  r->add_option("--steps", ram.steps, "steps to check");
  r->add_option("--at", ram.at, "start or end of the rung");
  r->add_flag("--full", ram.full, "check the whole rung (very slow)");
  r->add_flag("--stability", ram.stability, "repeat at doubled precision");
  r->add_option("--z-lo", ram.z_lo);
  r->add_option("--z-hi", ram.z_hi);
  r->add_option("--delta", ram.delta);
  r->add_option("--a", ram.a);
  r->add_option("--counterexample", ram.counterexample, "exact check at integer x (sieves to x)");
  r->callback([&] { action = [&](const RunConfig& c) { return cmd_ramanujan(c, ram); }; });

  std::string cache_limit;
  auto* c = app.add_subcommand("cache", "prime table cache management");
  c->fallthrough();
  c->require_subcommand(1);
  c->add_subcommand("info")->callback([&] { action = cmd_cache_info; });
  c->add_subcommand("clear")->callback([&] { action = cmd_cache_clear; });
  auto* cb = c->add_subcommand("build");
  cb->add_option("--limit", cache_limit);
  cb->callback([&] { action = [&](const RunConfig& cfg) { return cmd_cache_build(cfg, cache_limit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  OutputFormat format = OutputFormat::text;
  try {
    const RunConfig cfg = raw.resolve();
    format = cfg.output_format;
    set_precision_bits(cfg.precision_bits);
    if (!action) throw ParameterError("no command selected");
    const Emission e = action(cfg);
    e.render(format, out);
    return e.pass ? kExitPass : kExitFail;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad published data: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace primebounds
