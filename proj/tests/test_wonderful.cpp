#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "tautcoh/corpus.hpp"
#include "tautcoh/tutte.hpp"
#include "tautcoh/wonderful.hpp"

using namespace tautcoh;
using namespace tautcoh::testing;

namespace {

std::vector<std::size_t> zeros(std::size_t n) { return std::vector<std::size_t>(n, 0); }

std::vector<std::size_t> point(std::size_t n) {
  auto h = zeros(n);
  h[0] = 1;
  return h;
}

Matrix product(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

std::vector<Realization> loopless_upto4() {
  std::vector<Realization> out;
  for (const auto& e : make_corpus().entries) {
    if (e.ground > 4 || e.ground < 2) continue;
    const auto L = *realize(e, e.native);
    if (matroid_from_realization(L).loops() == 0) out.push_back(L);
  }
  return out;
}

}  // namespace

TEST(GlobalSectionComplex, Examples) {
  const auto U12 = real({{1, 1}});
  const auto c = global_section_complex(U12);
  EXPECT_EQ(c.corank, 1u);
  EXPECT_EQ(c.dims, (std::vector<std::size_t>{1, 2}));

  const auto B = Realization(Matrix::identity(kQ, 3));
  const auto b = global_section_complex(B);
  EXPECT_EQ(b.corank, 0u);
  EXPECT_EQ(b.dims, (std::vector<std::size_t>{1}));

  const auto U24 = real({{1, 1, 1, 0}, {0, 1, 2, 1}});
  const auto u = global_section_complex(U24);
  ASSERT_EQ(u.differentials.size(), 2u);
  EXPECT_TRUE(u.d2_zero);
  EXPECT_TRUE(is_zero(product(u.differentials[0], u.differentials[1])));
}

TEST(GlobalSectionComplex, DimsMatchEngine) {
  for (const auto& L : loopless_upto4()) {
    const auto c = global_section_complex(L);
    for (std::size_t p = 0; p < c.dims.size(); ++p)
      EXPECT_EQ(c.dims[p], cohomology(BundleExpr::wedge(p, BundleExpr::Q()), L).h0());
    for (std::size_t p = 0; p + 1 < c.differentials.size(); ++p)
      EXPECT_TRUE(is_zero(product(c.differentials[p], c.differentials[p + 1])));
  }
}

TEST(GlobalSectionComplex, RefusesLoopsAndLargeGround) {
  EXPECT_THROW(global_section_complex(real({{1, 0, 0}, {0, 1, 0}})), Refusal);
  EXPECT_THROW(global_section_complex(real({{1, 1, 1, 1, 1}})), Refusal);
}

TEST(LogCanonical, Examples) {
  const auto K3 = real({{1, 0, 1}, {0, 1, 1}});  // graphic K3 = U_{2,3}
  const auto r = log_canonical_cohomology(K3);
  EXPECT_EQ(r.h[0], 2u);
  for (std::size_t i = 1; i < r.h.size(); ++i) EXPECT_EQ(r.h[i], 0u);
  EXPECT_TRUE(r.exact_below_top);
  const auto B = log_canonical_cohomology(Realization(Matrix::identity(kQ, 2)));
  EXPECT_EQ(B.h[0], 1u);
}

TEST(LogCanonical, CokernelIsTheNbcCount) {
  std::mt19937 rng(3);
  for (const auto& L : loopless_upto4()) {
    const auto M = matroid_from_realization(L);
    const auto r = log_canonical_cohomology(L);
    EXPECT_TRUE(r.collapsed);
    EXPECT_TRUE(r.exact_below_top) << L.basis().to_string();
    std::vector<std::size_t> order(L.ground_size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(mpz_class(r.h[0]), log_canonical_number(M)) << L.basis().to_string();
    EXPECT_EQ(r.h[0], nbc_count(M, order));
    for (std::size_t i = 1; i < r.h.size(); ++i) EXPECT_EQ(r.h[i], 0u);
  }
}

TEST(Immaculate, Examples) {
  const auto k2 = Realization(Matrix::identity(kQ, 2));
  const auto a = immaculate_check(k2, real({{1, 1}}));
  EXPECT_TRUE(a.immaculate);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.restricted.h, zeros(a.restricted.h.size()));

  const auto b = immaculate_check(k2, real({{1, 0}}));
  EXPECT_FALSE(b.immaculate);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.restricted.h, point(b.restricted.h.size()));

  EXPECT_THROW(immaculate_check(Realization(Matrix::identity(kQ, 3)), real({{1, 1, 1}})), InputError);
  EXPECT_THROW(immaculate_check(real({{1, 1, 0}, {0, 0, 1}}), real({{1, 0, 0}})), InputError);
}

TEST(IdealSheaf, Examples) {
  const auto U23 = real({{1, 0, 1}, {0, 1, 1}});
  const auto r = ideal_sheaf_check(U23);
  EXPECT_EQ(r.structure.h, point(r.structure.h.size()));
  EXPECT_TRUE(r.surjective);
  EXPECT_TRUE(r.pass);
  for (std::size_t i = 1; i < r.twisted.h.size(); ++i) EXPECT_EQ(r.twisted.h[i], 0u);
  EXPECT_LE(r.restricted_sections, r.sections_detq);

  const auto U12 = ideal_sheaf_check(real({{1, 1}}));
  EXPECT_TRUE(U12.pass);
  EXPECT_EQ(U12.structure.h[0], 1u);

  EXPECT_THROW(ideal_sheaf_check(real({{1, 1, 0, 0}, {0, 0, 1, 1}})), Refusal);
}

TEST(SignedEuler, ValuesAreNonnegativeAndFieldIndependent) {
  const auto U12 = speyer_chi(real({{1, 1}}));
  EXPECT_TRUE(U12.nonnegative);
  const auto U23 = speyer_chi(real({{1, 0, 1}, {0, 1, 1}}));
  EXPECT_TRUE(U23.nonnegative);
  EXPECT_EQ(U23.chi, speyer_chi(real({{1, 0, 1}, {0, 1, 1}}, Field::fp(3))).chi);
  EXPECT_THROW(speyer_chi(real({{1, 1, 0, 0}, {0, 0, 1, 1}})), Refusal);
  const auto U24 = real({{1, 1, 1, 0}, {0, 1, 2, 1}});
  EXPECT_EQ(speyer_chi(U24).chi, speyer_chi(real({{1, 1, 1, 0}, {0, 1, 2, 1}}, Field::fp(5))).chi);
}

// The section vanishes at t exactly when (1,...,1) lies in t^{-1} L, i.e. t ∈ L.
TEST(Section, ZeroLocusIsTheLinearSpace) {
  std::mt19937_64 rng(11);
  for (Field f : {kQ, Field::fp(5), Field::fp(7)}) {
    const auto L = real({{1, 0, 1, 1}, {0, 1, 1, 2}}, f);
    std::uniform_int_distribution<long> c(1, 4);
    std::size_t hits = 0;
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Scalar> t(4, Scalar::zero(f));
      if (trial % 2 == 0) {
        const Scalar a(f, c(rng)), b(f, c(rng));
        for (std::size_t j = 0; j < 4; ++j) t[j] = a * L.basis()(0, j) + b * L.basis()(1, j);
      } else {
        for (auto& x : t) x = Scalar(f, c(rng));
      }
      if (std::any_of(t.begin(), t.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
      Matrix stacked = L.basis();
      stacked.append_row(t);
      const bool in_L = rank(stacked) == L.rank();
      hits += in_L;
      EXPECT_EQ(section_vanishes(L, t), in_L);
    }
    EXPECT_GT(hits, 0u);
  }
}
