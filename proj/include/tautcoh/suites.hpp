#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tautcoh/corpus.hpp"

namespace tautcoh {

inline constexpr const char* kEngineVersion = "tautcoh 0.1.0";

/// Dimension vectors keyed by (canonical realization, expression, field),
/// one JSON file per key. Disabled when no directory is given.
class DimCache {
 public:
  explicit DimCache(std::optional<std::string> dir = {});
  std::vector<std::size_t> cohomology(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts);
  std::size_t hits() const { return hits_; }

 private:
  std::optional<std::string> dir_;
  std::size_t hits_ = 0;
};

struct CaseResult {
  std::string id;
  std::string entry;
  bool pass = true;
  bool skipped = false;
  bool report_only = false;  // recorded but never counted as a failure
  std::string detail;
  Json data = Json::object();
  Json counterexample;  // realization, expression and weight, when failing
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  Field field;
  std::vector<CaseResult> cases;

  std::size_t failures() const;
  std::size_t skipped() const;
  bool all_pass() const { return failures() == 0; }
  /// Without timings the output is byte-stable for a fixed corpus and field.
  Json to_json(bool timings = true) const;
};

struct SuiteOptions {
  Field field;
  CohomologyOptions cohomology;
  std::optional<std::string> cache_dir;
  std::string repro_dir = "tautcoh-repro";
  std::size_t max_ground = 4;      // geometric suites
  std::size_t max_pushforward = 5;  // upstairs ground size for thm15/thm16
  std::size_t max_p = 4;
};

const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown suite.
VerificationReport run_suite(const std::string& name, const Corpus& corpus, const SuiteOptions& opts = {});

}  // namespace tautcoh
