#include "primebounds/zeros.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "primebounds/errors.hpp"

namespace primebounds {
namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

int decimal_places(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return 0;
  int n = 0;
  for (std::size_t i = dot + 1; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    ++n;
  }
  return n;
}

}  // namespace

ZeroList ZeroList::first(std::size_t n) const {
  ZeroList out;
  out.source = source;
  out.decimals = decimals;
  const std::size_t k = std::min(n, gammas.size());
  out.gammas.assign(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

ZeroList parse_zeros(const std::string& text, const std::string& source,
                     const std::optional<Real>& limit) {
  ZeroList out;
  out.source = source;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() > 2 || (tokens.size() == 2 && !is_integer_token(tokens[0]))) {
      throw ParseError(line_no, "expected an ordinate, optionally after an index: '" + line + "'");
    }
    const std::string& value = tokens.back();
    Real gamma;
    try {
      gamma = Real(std::string_view(value));
    } catch (const ParameterError&) {
      throw ParseError(line_no, "not a number: '" + value + "'");
    }
    const int places = decimal_places(value);
    if (places < kMinZeroDecimals) {
      throw ParseError(line_no, "ordinate '" + value + "' has " + std::to_string(places) +
                                    " decimal places, need at least " +
                                    std::to_string(kMinZeroDecimals));
    }
    if (gamma.sign() <= 0) throw ParseError(line_no, "ordinate must be positive");
    if (out.gammas.empty()) {
      if (!(gamma > Real("14.13") && gamma < Real("14.14"))) {
        throw ParseError(line_no, "first ordinate " + value + " is not the first zeta zero");
      }
    } else if (!(gamma > out.gammas.back())) {
      throw ParseError(line_no, "ordinates are not strictly ascending: " + value + " after " +
                                    out.gammas.back().str(15));
    }
    if (limit && gamma > *limit) break;
    out.decimals = out.gammas.empty() ? places : std::min(out.decimals, places);
    out.gammas.push_back(std::move(gamma));
  }
  return out;
}

ZeroList load_zeros(const std::filesystem::path& path, const std::optional<Real>& limit) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zero file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for zero file " + path.string());
  return parse_zeros(buf.str(), path.string(), limit);
}

ZeroSumVerdict check_zero_sum(const ZeroList& zeros, const Real& t2) {
  Real bound = zero_sum_bound(t2);
  if (zeros.empty() || zeros.gammas.back() < t2) {
    throw CoverageError("zero sum up to t2 = " + t2.str(8) +
                        " needs ordinates up to that height; loaded data ends at " +
                        (zeros.empty() ? std::string("nothing") : zeros.gammas.back().str(10)));
  }
  Real sum(0);
  std::size_t used = 0;
  for (const Real& g : zeros.gammas) {
    if (g > t2) break;
    sum += 2 / g;
    ++used;
  }
  Real margin = bound - sum;
  const bool pass = margin.sign() > 0;
  return {pass, t2, std::move(sum), std::move(bound), std::move(margin), used};
}

KernelWeightVerdict check_kernel_weights(const ZeroList& zeros, const KernelParams& params) {
  params.validate();
  KernelWeightVerdict v{true, 0, 0, Real(0), Real(1), {}};
  const Real strip = params.c / params.eps;
  for (const Real& g : zeros.gammas) {
    if (g > strip) {
      ++v.skipped;
      continue;
    }
    const Real w = a_weight(g, params);
    ++v.checked;
    v.max_weight = max(v.max_weight, w);
    v.min_weight = min(v.min_weight, w);
    if (!(w.sign() > 0 && w <= 1)) v.pass = false;
  }
  if (zeros.empty()) v.warnings.push_back("no zeros loaded; the check is vacuous");
  if (v.checked == 0 && !zeros.empty()) {
    v.warnings.push_back("every ordinate lies above c/eps = " + strip.str(8) +
                         "; the check is vacuous");
  }
  if (v.skipped > 0) {
    v.warnings.push_back(std::to_string(v.skipped) + " ordinates above c/eps were skipped");
  }
  return v;
}

ZeroCountVerdict check_zero_count(const ZeroList& zeros, const Real& t) {
  if (zeros.empty() || zeros.gammas.back() < t) {
    throw CoverageError("zero count at t = " + t.str(8) + " is beyond the loaded data");
  }
  std::size_t count = 0;
  for (const Real& g : zeros.gammas) {
    if (g > t) break;
    ++count;
  }
  const Real u = t / (2 * const_pi());
  Real expected = u * log(u) - u + Real(7) / 8;
  Real rel = abs(Real(static_cast<unsigned long>(count)) - expected) / expected;
  const bool pass = rel <= Real("0.05");
  return {pass, t, count, std::move(expected), std::move(rel)};
}

}  // namespace primebounds
