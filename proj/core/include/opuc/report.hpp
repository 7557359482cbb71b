#ifndef OPUC_REPORT_HPP
#define OPUC_REPORT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "opuc/config.hpp"
#include "opuc/opuc_system.hpp"
#include "opuc/verification.hpp"

namespace opuc {

/// Machine-readable result of one suite run (schema 1).
struct VerificationReport {
  std::string suite;        // anchor id, e.g. "thm-3.1-functional-eq"
  std::string suite_name;   // short name, e.g. "functional-eq"
  std::string family;
  std::map<std::string, double> params;
  std::vector<ResidualCheck> checks;
  long long runtime_ms = 0;
  std::string config_hash;

  bool all_pass() const { return opuc::all_pass(checks); }
};

struct SuiteInfo {
  std::string name;         // CLI name
  std::string anchor;       // identity the suite certifies
  std::string description;  // the mathematical statement being checked
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& name);

/// Runs one suite; unknown suites throw DomainError.
VerificationReport run_suite(const SuiteRequest& req);

/// Runs a whole config; reports come back in config order.
std::vector<VerificationReport> run_report_all(const Config& cfg);

/// JSON (schema 1). Deterministic: keys sorted, shortest-round-trip doubles.
std::string report_to_json(const VerificationReport& r);
std::string aggregate_to_json(const std::vector<VerificationReport>& rs,
                              const std::string& cfg_hash);

/// Strips the volatile runtime fields; two runs of the same config must agree
/// byte-for-byte on this form.
std::string aggregate_to_json_deterministic(const std::vector<VerificationReport>& rs,
                                            const std::string& cfg_hash);

/// Human-readable one-line-per-check table.
void print_report(std::ostream& os, const VerificationReport& r);
void print_summary(std::ostream& os, const std::vector<VerificationReport>& rs);

/// System construction used by the CLI: route is "closed", "recurrence" or
/// "moments"; family as in SuiteRequest.
OPUCSystem make_system(const std::string& family, const std::map<std::string, double>& params,
                       int N, const std::string& route);

/// OPUCSystem serialization (coefficients as [re, im] pairs, binary64
/// round-trip via shortest-repr decimals).
std::string system_to_json(const OPUCSystem& sys);

/// Reflection-system generator for the randomized suites (|r_n| <= rho_max).
OPUCSystem random_reflection_system(unsigned long long seed, int N, double rho_max);

/// CustomMoments wire format: JSON array of [re, im] pairs for c_0..c_N
/// (negative indices filled by conjugation).
WeightSpec parse_custom_moments_json(const std::string& text);

/// Residual-vs-n gnuplot data (columns: n residual tolerance).
void write_residual_dat(std::ostream& os, const VerificationReport& r);

/// Atomic file write (temp + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Discriminant CSV table over n for one family
/// (columns family,params,n,method,log_abs,phase_re,phase_im,rel_agreement).
std::string discriminant_csv(const std::string& family,
                             const std::map<std::string, double>& params, int nmax);

}  // namespace opuc

#endif  // OPUC_REPORT_HPP
