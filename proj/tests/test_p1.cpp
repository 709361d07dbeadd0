#include <gtest/gtest.h>

#include <numeric>

#include "helpers.hpp"
#include "tautcoh/cech.hpp"
#include "tautcoh/corpus.hpp"
#include "tautcoh/p1.hpp"

using namespace tautcoh;
using namespace tautcoh::testing;

namespace {

long sum(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

// h^0 and h^1 of a split bundle on P^1 from its degrees.
P1Dims split_dims(const std::vector<long>& degrees) {
  P1Dims d;
  for (long a : degrees) {
    if (a >= 0) d.h0 += static_cast<std::size_t>(a + 1);
    if (a <= -2) d.h1 += static_cast<std::size_t>(-a - 1);
  }
  return d;
}

}  // namespace

TEST(P1, SplittingTypeExamples) {
  const auto L = real({{1, 1}});
  EXPECT_EQ(splitting_type(L, 1, P1Bundle::S), (std::vector<long>{-1}));
  EXPECT_EQ(splitting_type(L, 1, P1Bundle::Q), (std::vector<long>{1}));
  EXPECT_EQ(splitting_type(L, 1, P1Bundle::LS), (std::vector<long>{-1}));
  EXPECT_EQ(splitting_type(L, 1, P1Bundle::LQ), (std::vector<long>{1}));

  const auto loop = real({{1, 0, 0}, {0, 1, 0}});  // element 3 is a loop
  EXPECT_EQ(splitting_type(loop, 2, P1Bundle::S), (std::vector<long>{0, 0}));
  EXPECT_EQ(splitting_type(loop, 2, P1Bundle::Q), (std::vector<long>{0}));
  EXPECT_TRUE(splitting_type(loop, 2, P1Bundle::LS).empty());
  EXPECT_TRUE(splitting_type(loop, 2, P1Bundle::LQ).empty());

  const auto coloop = real({{1, 1, 0}, {0, 0, 1}});  // element 3 is a coloop
  EXPECT_TRUE(splitting_type(coloop, 2, P1Bundle::LQ).empty());
  EXPECT_EQ(splitting_type(coloop, 2, P1Bundle::LS), (std::vector<long>{0}));
}

TEST(P1, CohomologyExamples) {
  const auto L = real({{1, 1}});
  EXPECT_EQ(p1_cohomology(L, 1, P1Functor::wedge, 1, P1Bundle::Q), (P1Dims{2, 0}));
  EXPECT_EQ(p1_cohomology(L, 1, P1Functor::sym, 2, P1Bundle::S), (P1Dims{0, 1}));
  EXPECT_EQ(p1_predicted(L, 1, P1Functor::wedge, 1, P1Bundle::Q), (P1Dims{2, 0}));
  EXPECT_EQ(p1_predicted(L, 1, P1Functor::sym, 2, P1Bundle::S), (P1Dims{0, 1}));

  const auto loop = real({{1, 0, 0}, {0, 1, 0}});
  for (std::size_t p = 0; p <= 3; ++p) {
    EXPECT_EQ(p1_cohomology(loop, 2, P1Functor::wedge, p, P1Bundle::S).h1, 0u);
    EXPECT_EQ(p1_cohomology(loop, 2, P1Functor::sym, p, P1Bundle::S), (P1Dims{p + 1, 0}));
  }
  // coloop, sym: Sym^p(L/n ⊕ k) with dim L/n = 1
  const auto coloop = real({{1, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(p1_predicted(coloop, 2, P1Functor::sym, 3, P1Bundle::S), (P1Dims{4, 0}));
  EXPECT_EQ(p1_cohomology(coloop, 2, P1Functor::sym, 3, P1Bundle::S), (P1Dims{4, 0}));
  EXPECT_THROW(p1_predicted(L, 1, P1Functor::sym, 2, P1Bundle::LS), InputError);
  EXPECT_THROW(p1_model(L, 5, P1Bundle::S), InputError);
}

TEST(P1, CaseTablesMatchTheEngine) {
  std::size_t cases[3] = {0, 0, 0};
  for (const auto& e : make_corpus().entries) {
    if (e.ground > 4) continue;
    const auto L = *realize(e, e.native);
    const auto M = matroid_from_realization(L);
    for (std::size_t n = 0; n < L.ground_size(); ++n) {
      const Subset bit = Subset{1} << n;
      ++cases[(M.loops() & bit) ? 0 : (M.coloops() & bit) ? 1 : 2];
      for (auto which : {P1Bundle::S, P1Bundle::Q})
        for (auto fn : {P1Functor::wedge, P1Functor::sym})
          for (std::size_t p = 0; p <= 4; ++p)
            EXPECT_EQ(p1_cohomology(L, n, fn, p, which), p1_predicted(L, n, fn, p, which))
                << e.name << " n=" << n + 1 << " p=" << p;
    }
  }
  EXPECT_GT(cases[0], 0u);
  EXPECT_GT(cases[1], 0u);
  EXPECT_GT(cases[2], 0u);
}

TEST(P1, SplittingTypesAreConsistent) {
  for (const auto& e : make_corpus().entries) {
    if (e.ground > 4) continue;
    const auto L = *realize(e, e.native);
    for (std::size_t n = 0; n < L.ground_size(); ++n) {
      const auto s = splitting_type(L, n, P1Bundle::S);
      const auto q = splitting_type(L, n, P1Bundle::Q);
      EXPECT_EQ(s.size(), L.rank());
      EXPECT_EQ(q.size(), L.ground_size() - L.rank());
      EXPECT_EQ(sum(s) + sum(q), 0) << e.name;
      // χ(S') + χ(Q') = χ(O^E)
      const long chi = static_cast<long>(s.size() + q.size()) + sum(s) + sum(q);
      EXPECT_EQ(chi, static_cast<long>(L.ground_size()));
      // The degrees reproduce the engine's h^0 and h^1.
      EXPECT_EQ(split_dims(s), p1_cohomology(L, n, P1Functor::wedge, 1, P1Bundle::S)) << e.name;
      EXPECT_EQ(split_dims(q), p1_cohomology(L, n, P1Functor::wedge, 1, P1Bundle::Q)) << e.name;
    }
  }
}
