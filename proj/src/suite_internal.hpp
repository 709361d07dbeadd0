#pragma once

#include <chrono>
#include <functional>

#include "tautcoh/errors.hpp"
#include "tautcoh/suites.hpp"

namespace tautcoh::detail {

struct SuiteContext {
  const Corpus& corpus;
  const SuiteOptions& opts;
  DimCache cache;
  VerificationReport& report;
};

/// Runs `body` on a fresh case, timing it and tagging any error with the case id.
void run_case(SuiteContext& ctx, const std::string& id, const std::string& entry,
              const std::function<void(CaseResult&)>& body);

void add_skip(SuiteContext& ctx, const std::string& id, const std::string& entry, const std::string& why);

/// First weight whose higher cohomology is nonzero, as a counterexample.
Json failing_weight(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts);

Json counterexample(const Realization& L, const std::string& expr, const Json& weight = nullptr);

void suite_thm12(SuiteContext& ctx);
void suite_thm13(SuiteContext& ctx);
void suite_thm15(SuiteContext& ctx);
void suite_thm16(SuiteContext& ctx);
void suite_one_component(SuiteContext& ctx);
void suite_p1(SuiteContext& ctx);
void suite_cor14(SuiteContext& ctx);
void suite_cor51(SuiteContext& ctx);
void suite_cor53(SuiteContext& ctx);
void suite_speyer(SuiteContext& ctx);
void suite_gf(SuiteContext& ctx);

}  // namespace tautcoh::detail
