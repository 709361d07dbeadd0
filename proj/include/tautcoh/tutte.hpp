#pragma once

#include <vector>

#include "tautcoh/matroid.hpp"
#include "tautcoh/polynomial.hpp"

namespace tautcoh {

enum class TutteRoute { recursion, corank_nullity };

/// Tutte polynomial T_M(x, y). The recursion removes the largest element that
/// is neither a loop nor a coloop and memoizes on (ground, bases).
BiPolynomial tutte(const Matroid& M, TutteRoute route);

enum class ExtSRoute { closed, recursion };
/// Σ_p dim H^0(∧^p S_L) u^p: (u+1)^{#coloops}, or the contraction recursion.
Polynomial ext_s_gf(const Matroid& M, ExtSRoute route);

enum class ExtQRoute { spanning_enum, recursion, tutte };
/// Σ_{S spanning} u^{|E|-|S|} by enumeration, by deletion-contraction, or as
/// u^{|E|-r} T_M(1, 1 + 1/u) expanded exactly.
Polynomial ext_q_gf(const Matroid& M, ExtQRoute route);

/// Coefficients of (1-u)^{-(|E| - #coloops)} up to degree P.
std::vector<mpz_class> sym_q_gf(const Matroid& M, std::size_t degree);

/// Bases containing no broken circuit. `order[e]` is the position of e in the
/// total order; the broken circuit drops the order-minimal element.
std::size_t nbc_count(const Matroid& M, const std::vector<std::size_t>& order);

/// Σ_{S spanning} (-1)^{|S| - r}.
mpz_class log_canonical_number(const Matroid& M);

}  // namespace tautcoh
