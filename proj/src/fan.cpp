#include "tautcoh/fan.hpp"

#include <algorithm>
#include <functional>

#include "tautcoh/errors.hpp"

namespace tautcoh {

OrderedSetPartition::OrderedSetPartition(Subset ground, std::vector<Subset> blocks)
    : ground_(ground), blocks_(std::move(blocks)) {
  Subset seen = 0;
  for (Subset b : blocks_) {
    if (b == 0) throw InputError("ordered set partition has an empty block");
    if (b & seen) throw InputError("ordered set partition blocks overlap");
    seen |= b;
  }
  if (seen != ground_) throw InputError("ordered set partition does not cover the ground set");
  if (ground_ != 0 && blocks_.empty()) throw InputError("ordered set partition has no blocks");
}

OrderedSetPartition OrderedSetPartition::trivial(Subset ground) {
  if (ground == 0) return OrderedSetPartition(0, {});
  return OrderedSetPartition(ground, {ground});
}

OrderedSetPartition OrderedSetPartition::from_chain(Subset ground, const std::vector<Subset>& chain) {
  std::vector<Subset> blocks;
  Subset prev = 0;
  for (Subset s : chain) {
    if ((s & prev) != prev || s == prev || (s & ~ground) || s == ground)
      throw InternalError("from_chain: not a strict chain of proper subsets");
    blocks.push_back(s & ~prev);
    prev = s;
  }
  if (ground != 0) blocks.push_back(ground & ~prev);
  return OrderedSetPartition(ground, std::move(blocks));
}

std::vector<Subset> OrderedSetPartition::prefix_chain() const {
  std::vector<Subset> chain;
  Subset acc = 0;
  for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
    acc |= blocks_[i];
    chain.push_back(acc);
  }
  return chain;
}

std::string OrderedSetPartition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + subset_string(blocks_[i]);
  return s + ")";
}

std::vector<OrderedSetPartition> enumerate_partitions(Subset ground, std::optional<std::size_t> blocks) {
  const auto n = static_cast<std::size_t>(popcount(ground));
  if (n > kMaxEnumeratedGround)
    throw Refusal("refusing to enumerate ordered set partitions of a " + std::to_string(n) +
                  "-element set (cap is " + std::to_string(kMaxEnumeratedGround) + ")");
  std::vector<OrderedSetPartition> out;
  if (ground == 0) {
    if (!blocks || *blocks == 0) out.push_back(OrderedSetPartition(0, {}));
    return out;
  }
  std::vector<Subset> cur;
  std::function<void(Subset, std::size_t)> rec = [&](Subset rest, std::size_t want) {
    if (rest == 0) {
      if (cur.size() == want) out.emplace_back(ground, cur);
      return;
    }
    if (cur.size() >= want) return;
    // Iterate nonempty subsets of `rest` in increasing order.
    for (Subset b = rest & (~rest + 1);; b = (b - rest) & rest) {
      if (b == 0) break;
      cur.push_back(b);
      rec(rest & ~b, want);
      cur.pop_back();
    }
  };
  for (std::size_t k = 1; k <= n; ++k) {
    if (blocks && *blocks != k) continue;
    rec(ground, k);
  }
  return out;
}

std::vector<long> ray_lift(Subset s, std::size_t n) {
  std::vector<long> v(n, 0);
  for (std::size_t e : elements(s)) v[e] = 1;
  return v;
}

bool dual_cone_membership(const OrderedSetPartition& F, const std::vector<long>& mu) {
  const long n = static_cast<long>(mu.size());
  long total = 0;
  for (long x : mu) total += x;
  for (Subset s : F.prefix_chain()) {
    long pairing = 0;
    for (std::size_t e : elements(s)) pairing += n * mu[e] - total;
    if (pairing < 0) return false;
  }
  return true;
}

OrderedSetPartition cone_intersection(const OrderedSetPartition& F, const OrderedSetPartition& G) {
  if (F.ground() != G.ground()) throw InputError("cone_intersection: different ground sets");
  auto a = F.prefix_chain();
  auto b = G.prefix_chain();
  std::vector<Subset> common;
  for (Subset s : a)
    if (std::find(b.begin(), b.end(), s) != b.end()) common.push_back(s);
  return OrderedSetPartition::from_chain(F.ground(), common);
}

FanMapFiber fiber_partitions(const OrderedSetPartition& F, std::size_t element) {
  const Subset n = Subset{1} << element;
  if (F.ground() & n) throw InputError("fiber_partitions: element already in the ground set");
  FanMapFiber out;
  out.source = F;
  out.element = element;
  const Subset ground = F.ground() | n;
  const auto& blocks = F.blocks();
  for (std::size_t i = 0; i <= blocks.size(); ++i) {
    std::vector<Subset> b(blocks.begin(), blocks.end());
    b.insert(b.begin() + static_cast<long>(i), n);
    out.inserted.emplace_back(ground, std::move(b));
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::vector<Subset> b(blocks.begin(), blocks.end());
    b[i] |= n;
    out.merged.emplace_back(ground, std::move(b));
  }
  return out;
}

OrderedSetPartition project_partition(const OrderedSetPartition& F, std::size_t element) {
  const Subset n = Subset{1} << element;
  std::vector<Subset> blocks;
  for (Subset b : F.blocks())
    if (b & ~n) blocks.push_back(b & ~n);
  return OrderedSetPartition(F.ground() & ~n, std::move(blocks));
}

OrderedSetPartition crem_partition(const OrderedSetPartition& F) {
  std::vector<Subset> blocks(F.blocks().rbegin(), F.blocks().rend());
  return OrderedSetPartition(F.ground(), std::move(blocks));
}

std::vector<std::size_t> nonconstant_components(const Realization& L, const OrderedSetPartition& F,
                                                std::size_t element) {
  if (element >= L.ground_size()) throw InputError("nonconstant_components: element outside the ground set");
  const Subset bit = Subset{1} << element;
  if (F.ground() != (full_set(L.ground_size()) & ~bit))
    throw InputError("nonconstant_components: F must partition E minus the element");
  std::vector<std::size_t> out;
  FanMapFiber fiber = fiber_partitions(F, element);
  for (std::size_t k = 0; k < fiber.merged.size(); ++k) {
    Matroid M = matroid_from_realization(partition_minor(L, fiber.merged[k]));
    auto lc = loops_coloops(M);
    if (!(lc.loops & bit) && !(lc.coloops & bit)) out.push_back(k);
  }
  return out;
}

long maximal_cone_determinant(const OrderedSetPartition& F) {
  if (!F.is_maximal()) throw InputError("maximal_cone_determinant: cone is not maximal");
  const auto ground = elements(F.ground());
  const std::size_t n = ground.size();
  Matrix m(Field::rationals(), 0, n);
  auto compress = [&](const std::vector<long>& full) {
    std::vector<Scalar> v;
    for (std::size_t e : ground) v.emplace_back(Field::rationals(), full[e]);
    return v;
  };
  const std::size_t width = ground.empty() ? 0 : ground.back() + 1;
  for (Subset s : F.prefix_chain()) m.append_row(compress(ray_lift(s, width)));
  m.append_row(compress(std::vector<long>(width, 1)));
  // |det| via the product of pivots of an LU-free elimination.
  Scalar det = Scalar::one(Field::rationals());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return 0;
    m.swap_rows(p, c);
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  mpq_class q = det.to_mpq();
  if (q < 0) q = -q;
  return q.get_num().get_si();
}

}  // namespace tautcoh
