#pragma once

#include <optional>
#include <vector>

#include "tautcoh/cech.hpp"

namespace tautcoh {

inline constexpr std::size_t kMaxWonderfulGround = 4;

/// H^0(∧^p Q_L ⊗ T), p = 0..c with c = |E| - rank, and the maps given by
/// wedging with the image s of the all-ones vector in Q_L.
struct GlobalSectionComplex {
  std::size_t corank = 0;
  std::vector<CohomologyReport> terms;  // engine report for each term
  std::vector<std::size_t> dims;        // dim H^0 of each term
  std::vector<Matrix> differentials;    // d_p : term p -> term p+1, row convention
  std::vector<std::size_t> homology;    // H^p of the complex
  bool d2_zero = true;
};

/// `twist` may mention Q' and S', which refer to `second`.
GlobalSectionComplex global_section_complex(const Realization& L, const std::optional<BundleExpr>& twist = {},
                                            const std::optional<Realization>& second = {});

/// Cohomology on W_L read off a twisted global-section complex.
struct WonderfulCohomology {
  GlobalSectionComplex complex;
  std::vector<std::size_t> h;  // degrees 0..dim W
  bool collapsed = false;      // every term has vanishing higher cohomology
  bool exact_below_top = false;
};

/// O_W(K + ∂). Throws InternalError if a term has nonvanishing higher cohomology.
WonderfulCohomology log_canonical_cohomology(const Realization& L);

struct ImmaculateReport {
  std::size_t loops_small = 0;  // loops of the matroid of the smaller subspace
  std::vector<CohomologyReport> koszul_terms;  // ∧^q Q_L^∨ ⊗ (twist line)^∨, q = 0..c
  std::vector<std::size_t> predicted_h0;       // C(loops', q+1) - C(loops, q+1)
  WonderfulCohomology restricted;
  bool immaculate = false;
  bool pass = false;
};

/// Flag `smaller` ⊂ L with dim L = dim smaller + 1. The line bundle is
/// det Q_L ⊗ det Q_smaller^∨ restricted to W_L.
ImmaculateReport immaculate_check(const Realization& L, const Realization& smaller);

struct IdealSheafReport {
  WonderfulCohomology structure;  // O_W
  WonderfulCohomology twisted;    // det Q_L restricted to W
  std::size_t sections_detq = 0;  // dim H^0(det Q_L)
  std::size_t restricted_sections = 0;
  bool surjective = false;
  bool pass = false;
};

IdealSheafReport ideal_sheaf_check(const Realization& L);

struct SpeyerReport {
  long chi = 0;
  long signed_value = 0;  // (-1)^(r-1) chi
  bool nonnegative = false;
  std::vector<long> term_chis;
};

SpeyerReport speyer_chi(const Realization& L);

/// Whether the distinguished section vanishes at the torus point t.
bool section_vanishes(const Realization& L, const std::vector<Scalar>& t);

}  // namespace tautcoh
