#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qderham/json_io.hpp"

namespace qdr {

// One entry of a check manifest.  Every named check pins the SHA-256 digest
// of the canonical JSON produced by its registered operation; a check with
// an empty digest is reported as unpinned (a configuration error) together
// with the digest it computed, so new entries can be filled in from a first
// run and then frozen.
struct CheckSpec {
  std::string name;
  std::string module;
  std::string operation;
  std::string source;  // "stated", "derived", or "trivial"
  OJson params;
  OJson precision;  // {"p", "p_prec", "q_prec"}, decimal strings
  std::string digest;
};

struct CheckResult {
  std::string name;
  std::string module;
  std::string operation;
  std::string source;
  std::string status;  // "pass", "mismatch", or "error"
  std::string digest;  // computed digest, empty when the operation failed
  std::string detail;  // mismatch diff or error message
};

struct CheckReport {
  std::vector<CheckResult> results;  // in manifest order
  int exit_code = 0;                 // 0 pass, 1 mismatch, 2 config/precision
};

// Thrown by check operations for configuration and precision problems that
// must not be confused with mathematical mismatches.
struct CheckConfigError : std::runtime_error {
  explicit CheckConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A check operation builds the canonical output document.  The seed feeds
// sampled property checks; their output must not depend on it unless the
// property itself fails.
using CheckFn = std::function<OJson(const CheckSpec&, uint64_t seed)>;

// Registered operations, keyed "module.operation".
const std::map<std::string, CheckFn>& check_registry();

// Parses and validates a manifest file.  Throws CheckConfigError on parse
// errors, missing fields, or duplicate names.
std::vector<CheckSpec> parse_manifest(const std::string& path);

// Shell-style glob match (*, ?, [...]) on the check name.
bool glob_match(const std::string& pattern, const std::string& name);

// Runs the checks whose names match the filter on `jobs` worker threads.
// Results are reported in manifest order regardless of completion order.
CheckReport run_checks(const std::vector<CheckSpec>& specs,
                       const std::string& filter, unsigned jobs, uint64_t seed);

// QDR_SEED from the environment, or the fixed default when unset/invalid.
uint64_t seed_from_env();

OJson report_json(const CheckReport& rep);
std::string report_table(const CheckReport& rep);

}  // namespace qdr
