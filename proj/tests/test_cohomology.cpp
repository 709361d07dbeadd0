#include <gtest/gtest.h>

#include <map>
#include <random>

#include "helpers.hpp"
#include "tautcoh/cech.hpp"
#include "tautcoh/corpus.hpp"

using namespace tautcoh;
using namespace tautcoh::testing;

namespace {

std::vector<Realization> corpus_upto(std::size_t max_ground, std::size_t min_ground = 1) {
  std::vector<Realization> out;
  for (const auto& e : make_corpus().entries)
    if (e.ground <= max_ground && e.ground >= min_ground) out.push_back(*realize(e, e.native));
  return out;
}

CohomologyReport run(const char* text, const Realization& L, Engine engine = Engine::cellular, bool per_weight = false) {
  CohomologyOptions o;
  o.engine = engine;
  o.per_weight = per_weight;
  return cohomology(BundleExpr::parse(text), L, o);
}

std::map<std::vector<long>, std::vector<std::size_t>> weight_map(const CohomologyReport& r) {
  std::map<std::vector<long>, std::vector<std::size_t>> out;
  for (const auto& w : r.per_weight) out[w.mu] = w.h;
  return out;
}

// ---- independent oracle for invariant line bundles -------------------------
// H^p(O(D))_m is the reduced cohomology in degree p-1 of the subcomplex of the
// fan spanned by rays S with <m, e_S> < b_S (b = -a). Faces of the fan are
// chains of proper nonempty subsets.

constexpr long kPrime = 1000003;

std::size_t rank_mod(std::vector<std::vector<long>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % kPrime == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    long inv = 1, base = ((a[r][c] % kPrime) + kPrime) % kPrime;
    for (long e = kPrime - 2; e > 0; e >>= 1, base = base * base % kPrime)
      if (e & 1) inv = inv * base % kPrime;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] % kPrime == 0) continue;
      const long f = (a[i][c] % kPrime + kPrime) % kPrime * inv % kPrime;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % kPrime + kPrime) % kPrime;
    }
    ++r;
  }
  return r;
}

void chains_from(const std::vector<Subset>& verts, std::vector<Subset>& cur, std::vector<std::vector<Subset>>& out) {
  out.push_back(cur);
  for (Subset v : verts) {
    if (!cur.empty() && !((cur.back() & v) == cur.back() && cur.back() != v)) continue;
    cur.push_back(v);
    chains_from(verts, cur, out);
    cur.pop_back();
  }
}

std::vector<std::size_t> oracle_at(std::size_t n, const std::vector<long>& b, const std::vector<long>& m) {
  std::vector<Subset> neg;
  for (Subset s = 1; s + 1 < (Subset{1} << n); ++s) {
    long p = 0;
    for (std::size_t e = 0; e < n; ++e)
      if (s & (Subset{1} << e)) p += m[e];
    if (p < b[s]) neg.push_back(s);
  }
  std::vector<std::vector<Subset>> faces;
  std::vector<Subset> cur;
  chains_from(neg, cur, faces);  // includes the empty face
  std::vector<std::vector<std::vector<Subset>>> by_dim(n + 1);
  for (auto& f : faces) by_dim[f.size()].push_back(f);
  // boundary from size k to size k-1
  std::vector<std::size_t> rk(n + 2, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    if (by_dim[k].empty() || by_dim[k - 1].empty()) continue;
    std::map<std::vector<Subset>, std::size_t> idx;
    for (std::size_t i = 0; i < by_dim[k - 1].size(); ++i) idx[by_dim[k - 1][i]] = i;
    std::vector<std::vector<long>> d(by_dim[k].size(), std::vector<long>(by_dim[k - 1].size(), 0));
    for (std::size_t i = 0; i < by_dim[k].size(); ++i)
      for (std::size_t j = 0; j < k; ++j) {
        auto face = by_dim[k][i];
        face.erase(face.begin() + static_cast<long>(j));
        d[i][idx.at(face)] = (j % 2 == 0) ? 1 : kPrime - 1;
      }
    rk[k] = rank_mod(d);
  }
  // H^p = reduced H_{p-1} = faces of size p, minus ranks
  std::vector<std::size_t> h(n, 0);
  for (std::size_t p = 0; p < n; ++p) h[p] = by_dim[p].size() - rk[p] - rk[p + 1];
  return h;
}

std::vector<std::vector<long>> weight_box(std::size_t n, long sum, long bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(n, -bound);
  for (;;) {
    long s = 0;
    for (long x : v) s += x;
    if (s == sum) out.push_back(v);
    std::size_t i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

// Compares the engine with the oracle on every weight of a generous box.
void expect_matches_oracle(const CohomologyReport& r, std::size_t n, const std::vector<long>& b, long sum, long bound,
                           const std::string& what) {
  const auto engine = weight_map(r);
  std::vector<std::size_t> total(n, 0);
  for (const auto& m : weight_box(n, sum, bound)) {
    const auto h = oracle_at(n, b, m);
    for (std::size_t p = 0; p < n; ++p) total[p] += h[p];
    const bool zero = std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; });
    auto it = engine.find(m);
    if (it == engine.end())
      EXPECT_TRUE(zero) << what << " oracle sees weight missing from the engine";
    else
      EXPECT_EQ(it->second, h) << what;
  }
  EXPECT_EQ(r.h, total) << what;
}

std::vector<long> b_from_divisor(const std::vector<long>& a) {
  std::vector<long> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = -a[i];
  return b;
}

}  // namespace

TEST(Cohomology, Examples) {
  const auto B3 = Realization(Matrix::identity(kQ, 3));
  EXPECT_EQ(run("O", B3).h, (std::vector<std::size_t>{1, 0, 0}));
  const auto U23 = real({{1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(run("wedge(1,Q)", U23).h0(), 3u);
  const auto U12 = real({{1, 1}});
  EXPECT_EQ(run("sym(2,Q)", U12).h, (std::vector<std::size_t>{3, 0}));
  const auto U23_2 = real({{1, 0, 1}, {0, 1, 1}}, Field::fp(2));
  EXPECT_EQ(run("Q", U23).euler(), run("Q", U23_2).euler());
}

TEST(Cohomology, LineBundlesMatchSimplicialOracle) {
  std::mt19937 rng(7);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto L = Realization(Matrix::identity(kQ, n));
    const std::size_t samples = n == 4 ? 4 : 12;
    for (std::size_t t = 0; t < samples; ++t) {
      std::vector<long> a(std::size_t{1} << n, 0);
      std::uniform_int_distribution<long> coef(-2, 2);
      for (Subset s = 1; s + 1 < (Subset{1} << n); ++s) a[s] = coef(rng);
      if (t == 0) std::fill(a.begin() + 1, a.end() - 1, 1);
      if (t == 1) std::fill(a.begin() + 1, a.end() - 1, -1);
      CohomologyOptions o;
      o.per_weight = true;
      const auto r = cohomology(BundleExpr::line(a), L, o);
      expect_matches_oracle(r, n, b_from_divisor(a), 0, n == 4 ? 6 : 8, "line sample " + std::to_string(t));
    }
  }
}

TEST(Cohomology, AnticanonicalHexagon) {
  std::vector<long> a(8, 1);
  a[0] = a[7] = 0;
  const auto r = cohomology(BundleExpr::line(a), Realization(Matrix::identity(kQ, 3)));
  EXPECT_EQ(r.h, (std::vector<std::size_t>{7, 0, 0}));
  std::vector<long> k(8, -1);
  k[0] = k[7] = 0;
  EXPECT_EQ(cohomology(BundleExpr::line(k), Realization(Matrix::identity(kQ, 3))).h, (std::vector<std::size_t>{0, 0, 1}));
}

// Determinant bundles are line bundles whose Cartier data comes from the
// chart generators; the oracle then recomputes their cohomology.
TEST(Cohomology, DeterminantsMatchSimplicialOracle) {
  for (const auto& L : corpus_upto(4, 2)) {
    const std::size_t n = L.ground_size();
    for (const char* text : {"det(Q)", "det(S)", "dual(det(Q))", "tensor(det(Q),det(Q))"}) {
      const auto m = build_model(BundleExpr::parse(text), L);
      std::vector<long> b(std::size_t{1} << n, 0);
      std::vector<bool> seen(b.size(), false);
      for (const auto& F : enumerate_partitions(full_set(n), n)) {
        const auto g = expr_trivialization(m, F).generators;
        ASSERT_EQ(g.size(), 1u);
        for (Subset s : F.prefix_chain()) {
          const long v = pairing(g[0].weight, s);
          if (seen[s]) ASSERT_EQ(b[s], v) << "Cartier data disagree on overlaps";
          b[s] = v;
          seen[s] = true;
        }
      }
      CohomologyOptions o;
      o.per_weight = true;
      const auto r = cohomology(m, o);
      expect_matches_oracle(r, n, b, m.degree, n == 4 ? 5 : 6, std::string(text) + " " + L.basis().to_string());
    }
  }
}

TEST(Cohomology, CechAgreesWithCellular) {
  for (const auto& L : corpus_upto(3)) {
    for (const char* text : {"S", "Q", "O", "wedge(2,Q)", "sym(2,S)", "dual(Q)", "dual(S)", "tensor(Q,dual(S))",
                             "det(Q)", "sym(2,dual(Q))", "crem(Q)"}) {
      const auto a = run(text, L, Engine::cellular, true);
      const auto b = run(text, L, Engine::cech, true);
      EXPECT_EQ(a.h, b.h) << text << " " << L.basis().to_string();
      EXPECT_EQ(weight_map(a), weight_map(b)) << text;
    }
  }
  EXPECT_THROW(run("Q", real({{1, 0, 1, 1}, {0, 1, 1, 2}}), Engine::cech), Refusal);
}

TEST(Cohomology, SerialMatchesParallel) {
  const auto L = real({{1, 0, 1, 1}, {0, 1, 1, 2}});
  for (const char* text : {"sym(2,Q)", "wedge(2,S)", "tensor(Q,dual(S))", "sym(2,dual(S))"}) {
    CohomologyOptions o;
    o.per_weight = true;
    o.jobs = 4;
    const auto m = build_model(BundleExpr::parse(text), L);
    const auto a = cohomology(m, o);
    const auto b = cohomology_serial(m, o);
    EXPECT_EQ(a.h, b.h) << text;
    EXPECT_EQ(weight_map(a), weight_map(b)) << text;
    EXPECT_EQ(a.weights_scanned, b.weights_scanned);
  }
}

TEST(Cohomology, WiderBoxChangesNothing) {
  const auto L = real({{1, 0, 1, 1}, {0, 1, 1, 2}});
  for (const char* text : {"Q", "sym(2,S)", "dual(wedge(2,Q))"}) {
    CohomologyOptions wide;
    wide.margin = 5;
    EXPECT_EQ(run(text, L).h, cohomology(BundleExpr::parse(text), L, wide).h) << text;
  }
}

TEST(Cohomology, CremonaConsistency) {
  for (const auto& L : corpus_upto(4, 2)) {
    const auto Lp = dual(L);
    EXPECT_EQ(run("dual(Q)", L).h, run("S", Lp).h) << L.basis().to_string();
    EXPECT_EQ(run("dual(S)", L).h, run("Q", Lp).h);
    EXPECT_EQ(run("wedge(2,dual(Q))", L).h, run("wedge(2,S)", Lp).h);
    for (const char* text : {"Q", "sym(2,S)", "tensor(Q,dual(S))"}) {
      const std::string c = std::string("crem(") + text + ")";
      EXPECT_EQ(run(text, L).h, run(c.c_str(), L).h) << text;
    }
  }
}

TEST(Cohomology, FieldIndependence) {
  for (const auto& e : make_corpus().entries) {
    if (e.ground > 4 || e.native != kQ) continue;
    const auto LQ = *realize(e, kQ);
    for (Field f : {Field::fp(2), Field::fp(3), Field::fp(5)}) {
      const auto Lf = realize(e, f);
      if (!Lf) continue;  // matroid changes mod p
      for (const char* text : {"Q", "wedge(2,Q)", "sym(2,S)", "dual(S)"})
        EXPECT_EQ(run(text, LQ).h, run(text, *Lf).h) << e.name << " " << text << " p=" << f.prime;
    }
  }
}

TEST(Cohomology, DifferentialSquaresToZeroEverywhere) {
  for (const auto& L : corpus_upto(4, 2)) {
    const auto m = build_model(BundleExpr::parse("tensor(wedge(2,Q),dual(S))"), L);
    for (const auto& mu : weight_support(m, 1)) EXPECT_NO_THROW(weight_cohomology(m, mu, Engine::cellular, true));
  }
}

TEST(Cohomology, GlobalSectionsMatchH0) {
  const auto L = real({{1, 0, 1, 1}, {0, 1, 1, 2}});
  const auto m = build_model(BundleExpr::parse("wedge(2,Q)"), L);
  std::size_t total = 0;
  for (const auto& mu : weight_support(m)) total += global_sections(m, mu).rows();
  EXPECT_EQ(total, cohomology(m).h0());
}
