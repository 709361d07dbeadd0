#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tautcoh/matrix.hpp"

namespace tautcoh {

/// Subset of the ground set as a bitmask; element e is bit e (0-based).
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxGround = 16;

inline int popcount(Subset s) { return std::popcount(s); }
inline Subset full_set(std::size_t n) { return n == 0 ? 0 : (Subset{1} << n) - 1; }
std::vector<std::size_t> elements(Subset s);
std::string subset_string(Subset s);  // 1-based, e.g. "{1,3}"

class OrderedSetPartition;

/// A subspace L of k^E, stored as a reduced-echelon basis (rows) with n columns.
class Realization {
 public:
  Realization() = default;
  /// Row-reduces `generators`; the rank may be smaller than the row count.
  explicit Realization(Matrix generators);

  Field field() const { return basis_.field(); }
  std::size_t ground_size() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }

  friend bool operator==(const Realization&, const Realization&) = default;

 private:
  Matrix basis_;
};

/// A matroid given by its bases on a ground set (a bitmask, not necessarily
/// contiguous so that minors keep their element labels).
class Matroid {
 public:
  Matroid() = default;
  /// Checks the basis exchange axiom when `validate` is set; throws InputError.
  Matroid(Subset ground, std::vector<Subset> bases, bool validate = false);

  Subset ground() const { return ground_; }
  std::size_t size() const { return static_cast<std::size_t>(popcount(ground_)); }
  std::size_t rank() const { return rank_; }
  const std::vector<Subset>& bases() const { return bases_; }
  bool is_basis(Subset s) const;

  std::size_t rank_of(Subset s) const;
  bool is_spanning(Subset s) const { return rank_of(s) == rank_; }
  bool is_independent(Subset s) const;

  Subset loops() const;
  Subset coloops() const;

  Matroid deletion(std::size_t e) const;
  Matroid contraction(std::size_t e) const;
  Matroid dual() const;

  friend bool operator==(const Matroid&, const Matroid&) = default;

 private:
  Subset ground_ = 0;
  std::size_t rank_ = 0;
  std::vector<Subset> bases_;  // sorted ascending
};

Matroid matroid_from_realization(const Realization& L);

struct LoopsColoops {
  Subset loops = 0;
  Subset coloops = 0;
};
LoopsColoops loops_coloops(const Matroid& M);

enum class MinorMode { remove, contract };

/// Deletion (projection away from S) or contraction (L ∩ {x_S = 0}, then
/// drop S). The result lives on the remaining coordinates, in order.
Realization minor(const Realization& L, Subset s, MinorMode mode);

/// Orthogonal complement under the standard dot product.
Realization dual(const Realization& L);

/// L_F: the direct sum over blocks of L|(F1..Fi)/(F1..F(i-1)), kept in the
/// original coordinates of k^E.
Realization partition_minor(const Realization& L, const OrderedSetPartition& F);

using WeightVector = std::vector<long>;

std::vector<Subset> max_weight_bases(const Matroid& M, const WeightVector& w);

bool is_connected(const Matroid& M);

/// All circuits (minimal dependent sets), ascending.
std::vector<Subset> circuits(const Matroid& M);

enum class StandardKind { uniform, graphic, boolean, with_loop, with_coloop };

struct StandardParams {
  std::size_t rank = 0;
  std::size_t size = 0;
  /// Graphic only: edges as (u, v) vertex pairs, 0-based.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Realizations of standard matroids. Uniform matroids use Vandermonde rows
/// (plus a point at infinity over small prime fields); graphic matroids use
/// the cut space of the signed vertex-edge incidence matrix. `with_loop` and
/// `with_coloop` append a loop or coloop to U(rank, size).
Realization standard_realization(StandardKind kind, const StandardParams& params, Field field);

Realization uniform_realization(std::size_t r, std::size_t n, Field field);
Realization graphic_realization(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                Field field);
Realization boolean_realization(std::size_t n, Field field);
Realization append_loop(const Realization& L);
Realization append_coloop(const Realization& L);

/// Reinterprets an integer realization over another field (entries reduced).
Realization change_field(const Realization& L, Field field);

}  // namespace tautcoh
