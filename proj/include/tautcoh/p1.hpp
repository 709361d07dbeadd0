#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tautcoh/bundle.hpp"

namespace tautcoh {

/// Bundles on P^1 with k* scaling only the distinguished coordinate n.
enum class P1Bundle { S, Q, LS, LQ };
enum class P1Functor { wedge, sym };

P1Bundle parse_p1_bundle(const std::string& s);
P1Functor parse_p1_functor(const std::string& s);

/// Subquotient model of the chosen bundle over the two-ray fan.
BundleModel p1_model(const Realization& L, std::size_t element, P1Bundle which);

/// Degrees of the line-bundle summands, ascending, read off from
/// k -> h^0(E(k)) by finite differences.
std::vector<long> splitting_type(const Realization& L, std::size_t element, P1Bundle which);
std::vector<long> splitting_type(const BundleModel& m, long window);

struct P1Dims {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  friend bool operator==(const P1Dims&, const P1Dims&) = default;
};

/// Exact Čech dimensions of the p-th power of S' or Q'.
P1Dims p1_cohomology(const Realization& L, std::size_t element, P1Functor functor, std::size_t p, P1Bundle which);

/// Dimensions predicted by the loop/coloop/neither case tables.
P1Dims p1_predicted(const Realization& L, std::size_t element, P1Functor functor, std::size_t p, P1Bundle which);

}  // namespace tautcoh
