#pragma once

#include <span>
#include <string>
#include <vector>

#include "tautcoh/fan.hpp"
#include "tautcoh/matrix.hpp"
#include "tautcoh/matroid.hpp"

namespace tautcoh {

enum class BundleOp { S, Q, O, OE, line, wedge, sym, dual, det, tensor, crem };

/// Symbolic functor expression over the tautological bundles.
///
/// Leaves S and Q refer to a realization slot (0 is L, 1 is a second
/// subspace such as the L' of a flag; written S' and Q'). `line` is the
/// invariant divisor sum of a(S) D_S, with a indexed by subset mask.
struct BundleExpr {
  BundleOp op = BundleOp::O;
  std::size_t power = 0;  // wedge, sym
  std::size_t slot = 0;   // S, Q
  std::vector<long> divisor;
  std::vector<BundleExpr> args;

  static BundleExpr S(std::size_t slot = 0) { return {BundleOp::S, 0, slot, {}, {}}; }
  static BundleExpr Q(std::size_t slot = 0) { return {BundleOp::Q, 0, slot, {}, {}}; }
  static BundleExpr O() { return {}; }
  static BundleExpr OE() { return {BundleOp::OE, 0, 0, {}, {}}; }
  static BundleExpr line(std::vector<long> divisor) { return {BundleOp::line, 0, 0, std::move(divisor), {}}; }
  static BundleExpr wedge(std::size_t p, BundleExpr x) { return {BundleOp::wedge, p, 0, {}, {std::move(x)}}; }
  static BundleExpr sym(std::size_t p, BundleExpr x) { return {BundleOp::sym, p, 0, {}, {std::move(x)}}; }
  static BundleExpr dual(BundleExpr x) { return {BundleOp::dual, 0, 0, {}, {std::move(x)}}; }
  static BundleExpr det(BundleExpr x) { return {BundleOp::det, 0, 0, {}, {std::move(x)}}; }
  static BundleExpr crem(BundleExpr x) { return {BundleOp::crem, 0, 0, {}, {std::move(x)}}; }
  static BundleExpr tensor(BundleExpr a, BundleExpr b) {
    return {BundleOp::tensor, 0, 0, {}, {std::move(a), std::move(b)}};
  }

  /// Grammar: S | Q | S' | Q' | O | OE | wedge(p,X) | sym(p,X) | dual(X) |
  /// det(X) | crem(X) | tensor(X,Y,...). Throws InputError.
  static BundleExpr parse(const std::string& text);
  std::string to_string() const;
  std::size_t max_slot() const;

  friend bool operator==(const BundleExpr&, const BundleExpr&) = default;
};

/// Pairing of an integer vector with the indicator of S.
long pairing(std::span<const long> v, Subset s);

/// A bundle presented as a subquotient A1/A0 of a trivial bundle with basis
/// e_0..e_{N-1}, where e_i carries the equivariant weight w_i. Over a torus
/// point t the fiber is t^{-w} A1 / t^{-w} A0. The optional divisor shift a
/// twists everything by O(sum a(S) D_S).
///
/// Over the chart of a cone with rays S_1..S_k, the weight-mu sections are
/// (A1 ∩ k^I) / (A0 ∩ k^I) with I = { i : <mu, e_S> >= threshold(i, S) for all rays }.
struct BundleModel {
  Field field;
  std::size_t ground = 0;
  std::vector<std::vector<long>> weights;
  Matrix a1;  // rref
  Matrix a0;  // rref, rowspace inside rowspace(a1)
  std::vector<long> shift;  // indexed by subset mask; empty means zero
  long degree = 0;          // coordinate sum of every weight

  std::size_t ambient() const { return weights.size(); }
  std::size_t rank() const { return a1.rows() - a0.rows(); }
  bool a1_full() const { return a1.rows() == ambient(); }
  long shift_at(Subset s) const { return shift.empty() ? 0 : shift[s]; }
  long threshold(std::size_t i, Subset s) const { return pairing(weights[i], s) - shift_at(s); }
};

/// Builds the subquotient model. All slots must share the field and ground size.
BundleModel build_model(const BundleExpr& expr, std::span<const Realization> slots);
BundleModel build_model(const BundleExpr& expr, const Realization& L);

// Functor operations on models, for callers that build leaves by hand.
BundleModel power_model(const BundleModel& m, std::size_t p, PowerKind kind);
BundleModel tensor_model(const BundleModel& a, const BundleModel& b);
BundleModel dual_model(const BundleModel& m);
BundleModel crem_model(const BundleModel& m);

/// One graded piece (A1 ∩ k^I) / (A0 ∩ k^I): `sub` is the rref basis of the
/// denominator, `quotient` an rref basis of a complement that vanishes at
/// the pivots of `sub`.
struct ChartSpace {
  Matrix sub;
  Matrix quotient;
  std::size_t dim() const { return quotient.rows(); }
};

ChartSpace chart_space(const BundleModel& m, const std::vector<bool>& allowed);

/// Matrix (row convention) of the map X -> Y induced by inclusion; requires
/// the allowed set of X to be contained in that of Y.
Matrix chart_inclusion(const ChartSpace& x, const ChartSpace& y);

/// Ambient coordinates allowed at weight mu over the cone of F.
std::vector<bool> allowed_coordinates(const BundleModel& m, const OrderedSetPartition& F, std::span<const long> mu);

enum class BaseBundle { S, Q, O };

struct ChartWeightSpace {
  Subset support = 0;  // S(mu, sigma) as a subset of E
  ChartSpace space;
};

/// Requires sum(mu) = 1 for S/Q and 0 for O; throws InternalError otherwise.
ChartWeightSpace chart_weight_space(const Realization& L, BaseBundle base, const OrderedSetPartition& sigma,
                                    std::span<const long> mu);

struct TrivializationGenerator {
  std::vector<long> weight;
  std::vector<Scalar> vector;  // ambient coordinates; reduced representative for quotients
};

struct ChartTrivialization {
  OrderedSetPartition cone;
  std::vector<TrivializationGenerator> generators;
};

/// Homogeneous free basis of the sections over a maximal chart. Weights are
/// scanned by increasing pairing with the interior of the cone; ties broken
/// lexicographically on the ray pairings.
ChartTrivialization expr_trivialization(const BundleModel& m, const OrderedSetPartition& sigma);
ChartTrivialization chart_trivialization(const Realization& L, BaseBundle base, const OrderedSetPartition& sigma);

/// Weight with the given ray pairings y_k = <mu, e_{S_k}> on a maximal cone.
std::vector<long> weight_from_pairings(const OrderedSetPartition& sigma, std::span<const long> y, long degree);

}  // namespace tautcoh
