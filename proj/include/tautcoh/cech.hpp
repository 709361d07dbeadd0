#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tautcoh/bundle.hpp"

namespace tautcoh {

/// Largest ground set the cellular route accepts.
inline constexpr std::size_t kMaxCohomologyGround = 5;
/// Largest ground set for the alternating complex on maximal charts.
inline constexpr std::size_t kMaxCechGround = 3;

enum class Engine {
  cellular,  // cones as cells, differential to facets, ending at the torus
  cech,      // alternating complex over tuples of maximal charts
};

struct CohomologyOptions {
  Engine engine = Engine::cellular;
  bool per_weight = false;
  bool check_d2 = true;
  long margin = 2;  // extra shells around the threshold box
  int jobs = 0;     // 0: OpenMP default
};

struct WeightDims {
  std::vector<long> mu;
  std::vector<std::size_t> h;
};

struct CohomologyReport {
  std::vector<std::size_t> h;          // degrees 0..|E|-1
  std::vector<WeightDims> per_weight;  // nonzero weights, when requested
  std::size_t weights_scanned = 0;
  std::size_t distinct_pieces = 0;

  long euler() const;
  bool higher_vanish() const;
  std::size_t h0() const { return h.empty() ? 0 : h[0]; }
};

/// Shifted weights (coordinate sum = model degree) in the box that contains
/// every weight with nonzero cohomology; `margin` widens it.
std::vector<std::vector<long>> weight_support(const BundleModel& m, long margin = 2);

/// Cohomology dimensions at one weight. Throws InternalError if d∘d != 0.
std::vector<std::size_t> weight_cohomology(const BundleModel& m, const std::vector<long>& mu,
                                           Engine engine = Engine::cellular, bool check_d2 = true);

/// Parallel over weights (OpenMP).
CohomologyReport cohomology(const BundleModel& m, const CohomologyOptions& opts = {});
/// Same computation on one thread; kept as the reference for the parallel path.
CohomologyReport cohomology_serial(const BundleModel& m, const CohomologyOptions& opts = {});

CohomologyReport cohomology(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts = {});
long euler_char(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts = {});

/// Global sections at weight mu as an rref basis of representatives in the
/// ambient coordinates, reduced modulo A0.
Matrix global_sections(const BundleModel& m, const std::vector<long>& mu);

enum class PowerFamily { extS, extQ, symS, symQ };
std::string family_name(PowerFamily f);
PowerFamily parse_family(const std::string& s);

struct PushforwardReport {
  PowerFamily family = PowerFamily::extS;
  std::size_t p = 0;
  std::size_t element = 0;
  std::string branch;  // "loop", "coloop" or "neither"
  std::vector<std::size_t> upstairs;
  std::vector<std::size_t> downstairs;
  bool h0_only = false;
  bool pass = false;
};

/// Compares H^*(X_E, F) with H^*(X_{E∖n}, f_* F) for the power bundle F of the
/// given family, where f_* F is written as the direct sum predicted by the
/// deletion-contraction branch of `element` (default: the last element).
PushforwardReport pushforward_check(const Realization& L, PowerFamily family, std::size_t p,
                                    std::optional<std::size_t> element = {}, const CohomologyOptions& opts = {});

}  // namespace tautcoh
