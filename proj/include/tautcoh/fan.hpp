#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tautcoh/matroid.hpp"

namespace tautcoh {

/// Sequence of disjoint nonempty blocks covering a ground set. Indexes the
/// cones of the permutohedral fan: the cone is spanned by the indicator
/// vectors of the proper prefix unions F1, F1∪F2, ...
class OrderedSetPartition {
 public:
  OrderedSetPartition() = default;
  /// Throws InputError unless the blocks are disjoint, nonempty and cover `ground`.
  OrderedSetPartition(Subset ground, std::vector<Subset> blocks);

  /// The single-block partition (zero cone).
  static OrderedSetPartition trivial(Subset ground);
  /// Rebuilds a partition from a strictly increasing chain of proper nonempty subsets.
  static OrderedSetPartition from_chain(Subset ground, const std::vector<Subset>& chain);

  Subset ground() const { return ground_; }
  const std::vector<Subset>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  /// Proper prefix unions, i.e. the ray generators of the cone.
  std::vector<Subset> prefix_chain() const;
  bool is_maximal() const { return blocks_.size() == static_cast<std::size_t>(popcount(ground_)); }

  std::string to_string() const;  // e.g. "({1},{2,3})"

  friend bool operator==(const OrderedSetPartition&, const OrderedSetPartition&) = default;
  friend auto operator<=>(const OrderedSetPartition& a, const OrderedSetPartition& b) {
    if (auto c = a.ground_ <=> b.ground_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  Subset ground_ = 0;
  std::vector<Subset> blocks_;
};

inline constexpr std::size_t kMaxEnumeratedGround = 6;

/// All ordered set partitions of `ground`, grouped by block count (fewest first).
/// With `blocks` set, only partitions with exactly that many blocks. Refuses
/// ground sets larger than kMaxEnumeratedGround.
std::vector<OrderedSetPartition> enumerate_partitions(Subset ground, std::optional<std::size_t> blocks = {});

/// Integer lift of the ray generator for a prefix set S: the indicator vector.
std::vector<long> ray_lift(Subset s, std::size_t n);

/// <mu - (sum mu / n) 1, e_S> >= 0 for every ray of the cone, scaled by n.
bool dual_cone_membership(const OrderedSetPartition& F, const std::vector<long>& mu);

/// Common face: the partition whose prefix chain is the intersection of both chains.
OrderedSetPartition cone_intersection(const OrderedSetPartition& F, const OrderedSetPartition& G);

/// Cones of Σ_E over the cone of F in Σ_{E∖n}.
struct FanMapFiber {
  OrderedSetPartition source;
  std::size_t element = 0;
  std::vector<OrderedSetPartition> inserted;  // F^i, i = 1..ℓ+1
  std::vector<OrderedSetPartition> merged;    // F(i), i = 1..ℓ
};

FanMapFiber fiber_partitions(const OrderedSetPartition& F, std::size_t element);

/// Drops `element` from every block (and empty blocks): the image cone under
/// the coordinate projection.
OrderedSetPartition project_partition(const OrderedSetPartition& F, std::size_t element);

/// Reversal of the blocks: the cone -σ_F.
OrderedSetPartition crem_partition(const OrderedSetPartition& F);

/// 0-based indices k such that `element` is neither a loop nor a coloop of
/// the matroid of L_{F(k+1)}. F is a partition of E∖element.
std::vector<std::size_t> nonconstant_components(const Realization& L, const OrderedSetPartition& F,
                                                std::size_t element);

/// |det| of the ray lifts of a maximal cone together with the all-ones vector.
long maximal_cone_determinant(const OrderedSetPartition& F);

}  // namespace tautcoh
