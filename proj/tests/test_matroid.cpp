#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "tautcoh/corpus.hpp"
#include "tautcoh/fan.hpp"

using namespace tautcoh;
using namespace tautcoh::testing;

namespace {

std::vector<Subset> masks(std::initializer_list<std::initializer_list<std::size_t>> sets) {
  std::vector<Subset> out;
  for (const auto& s : sets) {
    Subset m = 0;
    for (std::size_t e : s) m |= Subset{1} << (e - 1);
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Relabels the ground set of M onto 0..k-1, keeping the order.
std::vector<Subset> compressed_bases(const Matroid& M) {
  std::vector<std::size_t> labels;
  for (std::size_t e = 0; e < 32; ++e)
    if (M.ground() & (Subset{1} << e)) labels.push_back(e);
  std::vector<Subset> out;
  for (Subset b : M.bases()) {
    Subset c = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (b & (Subset{1} << labels[i])) c |= Subset{1} << i;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> sorted(std::vector<Subset> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Realization> corpus_realizations() {
  std::vector<Realization> out;
  for (const auto& e : make_corpus().entries) out.push_back(*realize(e, e.native));
  return out;
}

}  // namespace

TEST(MatroidFromRealization, Examples) {
  EXPECT_EQ(sorted(matroid_from_realization(real({{1, 0, 1}, {0, 1, 1}})).bases()), masks({{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(matroid_from_realization(Realization(Matrix::identity(kQ, 3))).bases(), masks({{1, 2, 3}}));
  EXPECT_EQ(matroid_from_realization(real({{1, 0, 1, 1}, {0, 1, 1, 2}})).bases().size(), 6u);
}

TEST(LoopsColoops, Examples) {
  const Matroid b = matroid_from_realization(Realization(Matrix::identity(kQ, 3)));
  EXPECT_EQ(b.coloops(), 0b111u);
  EXPECT_EQ(b.loops(), 0u);
  const Matroid u = matroid_from_realization(real({{1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(u.loops() | u.coloops(), 0u);
  const Matroid e1 = matroid_from_realization(real({{1, 0, 0}}));
  EXPECT_EQ(e1.coloops(), 0b001u);
  EXPECT_EQ(e1.loops(), 0b110u);
}

TEST(Minor, Examples) {
  const auto L = real({{1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(minor(L, 0, MinorMode::remove), L);
  EXPECT_EQ(minor(L, 0b100, MinorMode::contract), real({{1, -1}}));
  EXPECT_EQ(minor(L, 0b100, MinorMode::remove), Realization(Matrix::identity(kQ, 2)));
}

TEST(Dual, Examples) {
  const auto L = real({{1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(dual(dual(L)), L);
  EXPECT_EQ(dual(Realization(Matrix::identity(kQ, 3))).rank(), 0u);
  EXPECT_EQ(dual(real({{1, 1}})), real({{1, -1}}));
}

TEST(PartitionMinor, Examples) {
  const auto L = real({{1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(partition_minor(L, OrderedSetPartition::trivial(0b111)), L);
  const OrderedSetPartition F(0b111, {0b001, 0b010, 0b100});
  EXPECT_EQ(partition_minor(L, F), real({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_ANY_THROW(OrderedSetPartition(0b111, {0b001, 0b011}));
}

TEST(MaxWeightBases, Examples) {
  const Matroid u = matroid_from_realization(real({{1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(sorted(max_weight_bases(u, {0, 0, 0})), sorted(u.bases()));
  EXPECT_EQ(max_weight_bases(u, {2, 1, 0}), masks({{1, 2}}));
}

TEST(StandardRealization, Examples) {
  EXPECT_EQ(standard_realization(StandardKind::uniform, {1, 2, {}}, kQ), real({{1, 1}}));
  const auto k3 = graphic_realization(3, {{0, 1}, {1, 2}, {0, 2}}, kQ);
  EXPECT_EQ(sorted(matroid_from_realization(k3).bases()), masks({{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(boolean_realization(3, kQ), Realization(Matrix::identity(kQ, 3)));
  EXPECT_THROW(uniform_realization(2, 4, Field::fp(2)), UnrealizableError);
}

TEST(Connected, Examples) {
  EXPECT_TRUE(is_connected(matroid_from_realization(real({{1, 0, 1, 1}, {0, 1, 1, 2}}))));
  EXPECT_FALSE(is_connected(matroid_from_realization(Realization(Matrix::identity(kQ, 2)))));
  EXPECT_TRUE(is_connected(matroid_from_realization(real({{1, 1}}))));
}

TEST(MatroidValidation, RejectsNonMatroids) {
  EXPECT_THROW(Matroid(0b1111, {0b0011, 0b1100}, true), InputError);
  EXPECT_NO_THROW(Matroid(0b111, {0b011, 0b101, 0b110}, true));
}

TEST(MatroidCorpus, DualRealizationGivesDualMatroid) {
  for (const auto& L : corpus_realizations()) {
    const Matroid M = matroid_from_realization(L);
    std::vector<Subset> complements;
    for (Subset b : M.bases()) complements.push_back(M.ground() & ~b);
    EXPECT_EQ(sorted(matroid_from_realization(dual(L)).bases()), sorted(complements));
    EXPECT_EQ(M.dual().bases(), sorted(complements));
    EXPECT_EQ(M.coloops(), M.dual().loops());
  }
}

TEST(MatroidCorpus, DeleteContractCommute) {
  for (const auto& L : corpus_realizations()) {
    const std::size_t n = L.ground_size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const Matroid M = matroid_from_realization(L);
        const Matroid x = M.deletion(a).contraction(b);
        const Matroid y = M.contraction(b).deletion(a);
        EXPECT_EQ(x, y);
        // Realization minors agree with the matroid operations.
        const auto r = minor(L, Subset{1} << b, MinorMode::contract);
        EXPECT_EQ(compressed_bases(M.contraction(b)), sorted(matroid_from_realization(r).bases()));
        EXPECT_EQ(compressed_bases(M.deletion(a)),
                  sorted(matroid_from_realization(minor(L, Subset{1} << a, MinorMode::remove)).bases()));
      }
  }
}

TEST(MatroidCorpus, PartitionMinorKeepsDimensionAndIsGreedy) {
  for (const auto& L : corpus_realizations()) {
    if (L.ground_size() > 4) continue;
    const Matroid M = matroid_from_realization(L);
    for (const auto& F : enumerate_partitions(M.ground())) {
      const auto LF = partition_minor(L, F);
      EXPECT_EQ(LF.rank(), L.rank());
      WeightVector w(L.ground_size(), 0);
      for (std::size_t i = 0; i < F.size(); ++i)
        for (std::size_t e = 0; e < L.ground_size(); ++e)
          if (F.blocks()[i] & (Subset{1} << e)) w[e] = static_cast<long>(F.size() - i);
      EXPECT_EQ(sorted(max_weight_bases(M, w)), sorted(matroid_from_realization(LF).bases())) << F.to_string();
    }
  }
}

TEST(MatroidRandom, PartitionMinorDimension) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const Realization L(random_matrix(rng, kQ, 1 + rng() % n, n));
    for (const auto& F : enumerate_partitions(full_set(n))) EXPECT_EQ(partition_minor(L, F).rank(), L.rank());
  }
}
