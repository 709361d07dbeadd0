#include <algorithm>

#include "suite_internal.hpp"
#include "tautcoh/p1.hpp"
#include "tautcoh/tutte.hpp"
#include "tautcoh/wonderful.hpp"

namespace tautcoh::detail {

namespace {

// Calls fn(entry, L) for entries within the size cap, recording a skip when
// the entry cannot be moved to the suite field.
template <class Fn>
void for_each_entry(SuiteContext& ctx, const std::vector<CorpusEntry>& entries, std::size_t max_ground,
                    const std::string& suffix, Fn fn) {
  for (const auto& e : entries) {
    if (e.ground == 0 || e.ground > max_ground) continue;
    const auto L = realize(e, ctx.opts.field);
    if (!L) {
      add_skip(ctx, e.name + suffix, e.name, "not realizable with the same matroid over " + ctx.opts.field.name());
      continue;
    }
    fn(e, *L);
  }
}

template <class Fn>
void for_each_entry(SuiteContext& ctx, std::size_t max_ground, const std::string& suffix, Fn fn) {
  for_each_entry(ctx, ctx.corpus.entries, max_ground, suffix, fn);
}

// The corpus plus the five-element entries of the extension, for the cheap
// suites that reach |E| = 5.
std::vector<CorpusEntry> up_to_five(const Corpus& corpus) {
  std::vector<CorpusEntry> out = corpus.entries;
  for (auto& x : gf_extension(corpus.seed))
    if (x.ground == 5) out.push_back(std::move(x));
  return out;
}

bool higher_nonzero(const std::vector<std::size_t>& h) {
  return std::any_of(h.begin() + 1, h.end(), [](std::size_t x) { return x != 0; });
}

void fail(CaseResult& c, const std::string& why, Json cx = nullptr) {
  if (!c.pass) return;
  c.pass = false;
  c.detail = why;
  c.counterexample = std::move(cx);
}

Polynomial from_dims(const std::vector<std::size_t>& h0) {
  std::vector<mpz_class> v;
  for (auto x : h0) v.emplace_back(static_cast<unsigned long>(x));
  return Polynomial(std::move(v));
}

std::vector<std::size_t> order_identity(std::size_t n, bool reversed) {
  std::vector<std::size_t> o(n);
  for (std::size_t e = 0; e < n; ++e) o[e] = reversed ? n - 1 - e : e;
  return o;
}

std::string branch_of(const Matroid& M, std::size_t e) {
  const Subset bit = Subset{1} << e;
  if (M.loops() & bit) return "loop";
  if (M.coloops() & bit) return "coloop";
  return "neither";
}

void exterior_case(SuiteContext& ctx, const CorpusEntry& e, const Realization& L, bool sub) {
  run_case(ctx, e.name + (sub ? "/extS" : "/extQ"), e.name, [&](CaseResult& c) {
    const Matroid M = matroid_from_realization(L);
    const Polynomial expected = sub ? ext_s_gf(M, ExtSRoute::closed) : ext_q_gf(M, ExtQRoute::spanning_enum);
    Json dims = Json::array();
    std::vector<std::size_t> h0;
    for (std::size_t p = 0; p <= L.ground_size(); ++p) {
      const auto expr = BundleExpr::wedge(p, sub ? BundleExpr::S() : BundleExpr::Q());
      const auto h = ctx.cache.cohomology(expr, L, ctx.opts.cohomology);
      dims.push_back(h);
      h0.push_back(h[0]);
      if (higher_nonzero(h))
        fail(c, "higher cohomology of " + expr.to_string(),
             counterexample(L, expr.to_string(), failing_weight(expr, L, ctx.opts.cohomology)));
    }
    const Polynomial got = from_dims(h0);
    c.data["dims"] = dims;
    c.data["gf"] = got.to_string();
    c.data["expected"] = expected.to_string();
    if (!(got == expected)) fail(c, "generating function mismatch", counterexample(L, sub ? "wedge(p,S)" : "wedge(p,Q)"));
  });
}

}  // namespace

void suite_thm12(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/ext", [&](const CorpusEntry& e, const Realization& L) {
    exterior_case(ctx, e, L, true);
    exterior_case(ctx, e, L, false);
  });
}

void suite_thm13(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/symQ", [&](const CorpusEntry& e, const Realization& L) {
    run_case(ctx, e.name + "/symQ", e.name, [&](CaseResult& c) {
      const auto expected = sym_q_gf(matroid_from_realization(L), ctx.opts.max_p);
      Json dims = Json::array();
      std::vector<std::size_t> h0;
      for (std::size_t p = 0; p <= ctx.opts.max_p; ++p) {
        const auto expr = BundleExpr::sym(p, BundleExpr::Q());
        const auto h = ctx.cache.cohomology(expr, L, ctx.opts.cohomology);
        dims.push_back(h);
        h0.push_back(h[0]);
        if (higher_nonzero(h))
          fail(c, "higher cohomology of " + expr.to_string(),
               counterexample(L, expr.to_string(), failing_weight(expr, L, ctx.opts.cohomology)));
        if (mpz_class(static_cast<unsigned long>(h[0])) != expected[p])
          fail(c, "h0 of " + expr.to_string() + " is " + std::to_string(h[0]) + ", expected " + expected[p].get_str(),
               counterexample(L, expr.to_string()));
      }
      c.data["dims"] = dims;
      c.data["h0"] = h0;
    });
  });
}

namespace {

void pushforward_suite(SuiteContext& ctx, std::initializer_list<PowerFamily> families) {
  for (const auto& e : ctx.corpus.entries) {
    if (e.ground < 2 || e.ground > ctx.opts.max_pushforward) continue;
    const auto L = realize(e, ctx.opts.field);
    for (const PowerFamily fam : families) {
      const std::string id = e.name + "/" + family_name(fam);
      if (!L) {
        add_skip(ctx, id, e.name, "not realizable with the same matroid over " + ctx.opts.field.name());
        continue;
      }
      run_case(ctx, id, e.name, [&](CaseResult& c) {
        Json rows = Json::array();
        for (std::size_t p = 0; p <= std::min<std::size_t>(3, ctx.opts.max_p); ++p) {
          const auto r = pushforward_check(*L, fam, p, std::nullopt, ctx.opts.cohomology);
          c.data["branch"] = r.branch;
          rows.push_back({{"p", p}, {"upstairs", r.upstairs}, {"downstairs", r.downstairs}, {"h0_only", r.h0_only}});
          if (!r.pass)
            fail(c, "pushforward mismatch at p = " + std::to_string(p),
                 counterexample(*L, family_name(fam) + " p=" + std::to_string(p)));
        }
        c.data["rows"] = rows;
      });
    }
  }
}

}  // namespace

void suite_thm15(SuiteContext& ctx) { pushforward_suite(ctx, {PowerFamily::extS, PowerFamily::extQ}); }
void suite_thm16(SuiteContext& ctx) { pushforward_suite(ctx, {PowerFamily::symS, PowerFamily::symQ}); }

void suite_one_component(SuiteContext& ctx) {
  for_each_entry(ctx, up_to_five(ctx.corpus), 5, "/components", [&](const CorpusEntry& e, const Realization& L) {
    if (e.ground < 2) return;
    const Matroid M = matroid_from_realization(L);
    for (std::size_t n = 0; n < e.ground; ++n) {
      run_case(ctx, e.name + "/components/" + std::to_string(n), e.name, [&](CaseResult& c) {
        const std::string branch = branch_of(M, n);
        const std::size_t want = branch == "neither" ? 1 : 0;
        const Subset rest = M.ground() & ~(Subset{1} << n);
        std::size_t checked = 0;
        for (const auto& F : enumerate_partitions(rest)) {
          ++checked;
          const auto comps = nonconstant_components(L, F, n);
          if (comps.size() != want)
            fail(c, std::to_string(comps.size()) + " nonconstant components for a " + branch + " element",
                 counterexample(L, "partition " + std::to_string(checked)));
        }
        c.data["branch"] = branch;
        c.data["partitions"] = checked;
      });
    }
  });
}

void suite_p1(SuiteContext& ctx) {
  for_each_entry(ctx, up_to_five(ctx.corpus), 5, "/p1", [&](const CorpusEntry& e, const Realization& L) {
    if (L.rank() > 3) return;
    const Matroid M = matroid_from_realization(L);
    for (std::size_t n = 0; n < e.ground; ++n) {
      run_case(ctx, e.name + "/p1/" + std::to_string(n), e.name, [&](CaseResult& c) {
        const std::string branch = branch_of(M, n);
        c.data["branch"] = branch;
        std::size_t compared = 0;
        for (auto fn : {P1Functor::wedge, P1Functor::sym})
          for (auto which : {P1Bundle::S, P1Bundle::Q})
            for (std::size_t p = 0; p <= ctx.opts.max_p; ++p) {
              const auto got = p1_cohomology(L, n, fn, p, which);
              const auto want = p1_predicted(L, n, fn, p, which);
              ++compared;
              if (!(got == want)) {
                const std::string expr = std::string(fn == P1Functor::wedge ? "wedge(" : "sym(") + std::to_string(p) +
                                         (which == P1Bundle::S ? ",S')" : ",Q')");
                fail(c, expr + ": got (" + std::to_string(got.h0) + "," + std::to_string(got.h1) + "), predicted (" +
                            std::to_string(want.h0) + "," + std::to_string(want.h1) + ")",
                     counterexample(L, expr));
              }
            }
        c.data["compared"] = compared;

        const auto ls = splitting_type(L, n, P1Bundle::LS);
        const auto lq = splitting_type(L, n, P1Bundle::LQ);
        std::vector<long> want_ls, want_lq;
        if (branch == "neither") want_ls = {-1}, want_lq = {1};
        if (branch == "coloop") want_ls = {0};
        c.data["LS"] = ls;
        c.data["LQ"] = lq;
        if (ls != want_ls || lq != want_lq) fail(c, "splitting types of LS/LQ off the case table");

        const auto s = splitting_type(L, n, P1Bundle::S);
        const auto q = splitting_type(L, n, P1Bundle::Q);
        c.data["S'"] = s;
        c.data["Q'"] = q;
        long deg = 0, chi = 0;
        for (long d : s) deg += d, chi += d + 1;
        for (long d : q) deg += d, chi += d + 1;
        if (deg != 0 || chi != static_cast<long>(e.ground)) fail(c, "S' and Q' do not add up to the trivial bundle");
        if (branch == "loop" &&
            (std::any_of(s.begin(), s.end(), [](long d) { return d != 0; }) ||
             std::any_of(q.begin(), q.end(), [](long d) { return d != 0; })))
          fail(c, "S' and Q' should be trivial for a loop");
      });
    }
  });
}

void suite_cor14(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/logcanonical", [&](const CorpusEntry& e, const Realization& L) {
    const Matroid M = matroid_from_realization(L);
    if (M.loops() || L.rank() == 0) return;
    run_case(ctx, e.name + "/logcanonical", e.name, [&](CaseResult& c) {
      const auto w = log_canonical_cohomology(L);
      const mpz_class lcn = log_canonical_number(M);
      const std::size_t n = e.ground;
      const std::size_t nbc = nbc_count(M, order_identity(n, false));
      const std::size_t nbc_rev = nbc_count(M, order_identity(n, true));
      const mpz_class t10 = tutte(M, TutteRoute::recursion).evaluate(1, 0);
      const std::size_t coker = w.complex.homology.back();
      c.data["dims"] = w.complex.dims;
      c.data["homology"] = w.complex.homology;
      c.data["log_canonical_number"] = lcn.get_str();
      c.data["nbc"] = nbc;
      if (!w.complex.d2_zero) fail(c, "s wedge s is not zero");
      if (!w.exact_below_top) fail(c, "complex not exact below the top degree", counterexample(L, "wedge(p,Q)"));
      if (mpz_class(static_cast<unsigned long>(coker)) != lcn || nbc != coker || nbc_rev != coker || t10 != lcn)
        fail(c, "cokernel " + std::to_string(coker) + " vs log canonical number " + lcn.get_str(),
             counterexample(L, "wedge(p,Q)"));
    });
  });
}

namespace {

std::vector<Realization> hyperplane_flags(const Realization& L) {
  const Matrix& b = L.basis();
  const std::size_t r = b.rows();
  std::vector<Realization> out;
  auto push = [&](const Matrix& m) {
    Realization cand(m.rows() ? m : Matrix(L.field(), 0, L.ground_size()));
    for (const auto& x : out)
      if (x == cand) return;
    out.push_back(std::move(cand));
  };
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < r; ++k)
      if (k != i) keep.push_back(k);
    push(b.select_rows(keep));
  }
  Matrix generic(L.field(), r ? r - 1 : 0, L.ground_size());
  for (std::size_t k = 0; k + 1 < r; ++k)
    for (std::size_t j = 0; j < L.ground_size(); ++j) generic(k, j) = b(k, j) + b(k + 1, j);
  push(generic);
  return out;
}

}  // namespace

void suite_cor51(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/flags", [&](const CorpusEntry& e, const Realization& L) {
    if (matroid_from_realization(L).loops() || L.rank() == 0) return;
    const auto flags = hyperplane_flags(L);
    for (std::size_t k = 0; k < flags.size(); ++k) {
      run_case(ctx, e.name + "/flag" + std::to_string(k), e.name, [&](CaseResult& c) {
        const auto r = immaculate_check(L, flags[k]);
        c.data["smaller"] = realization_to_json(flags[k]);
        c.data["loops_smaller"] = r.loops_small;
        c.data["h"] = r.restricted.h;
        c.data["immaculate"] = r.immaculate;
        Json terms = Json::array();
        for (const auto& t : r.koszul_terms) terms.push_back(t.h);
        c.data["koszul_terms"] = terms;
        c.data["predicted_h0"] = r.predicted_h0;
        if (!r.pass) {
          Json cx = counterexample(L, "det(Q) x dual(det(Q'))");
          cx["smaller"] = realization_to_json(flags[k]);
          fail(c, r.loops_small ? "expected h0 = 1 and no higher cohomology" : "expected the line bundle to be immaculate",
               cx);
        }
      });
    }
  });
}

void suite_cor53(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/ideal", [&](const CorpusEntry& e, const Realization& L) {
    const Matroid M = matroid_from_realization(L);
    if (M.loops() || L.rank() == 0 || !is_connected(M)) return;
    run_case(ctx, e.name + "/ideal", e.name, [&](CaseResult& c) {
      const auto r = ideal_sheaf_check(L);
      c.data["O_W"] = r.structure.h;
      c.data["detQ_W"] = r.twisted.h;
      c.data["h0_detQ"] = r.sections_detq;
      c.data["surjective"] = r.surjective;
      if (!r.pass) fail(c, "ideal sheaf check failed", counterexample(L, "wedge(p,Q) x dual(det(Q))"));
    });
  });
}

void suite_speyer(SuiteContext& ctx) {
  for_each_entry(ctx, ctx.opts.max_ground, "/speyer", [&](const CorpusEntry& e, const Realization& L) {
    const Matroid M = matroid_from_realization(L);
    if (M.loops() || L.rank() == 0 || !is_connected(M)) return;
    run_case(ctx, e.name + "/speyer", e.name, [&](CaseResult& c) {
      c.report_only = true;
      const auto r = speyer_chi(L);
      c.data["chi"] = r.chi;
      c.data["signed"] = r.signed_value;
      c.data["terms"] = r.term_chis;
      c.pass = r.nonnegative;
      if (!c.pass) c.detail = "negative signed Euler characteristic";
    });
  });
}

void suite_gf(SuiteContext& ctx) {
  std::vector<CorpusEntry> entries = ctx.corpus.entries;
  for (auto& x : gf_extension(ctx.corpus.seed)) entries.push_back(std::move(x));
  for (const auto& e : entries) {
    const auto L = realize(e, e.native);
    run_case(ctx, e.name + "/gf", e.name, [&](CaseResult& c) {
      const Matroid M = matroid_from_realization(*L);
      const auto t1 = tutte(M, TutteRoute::recursion);
      const auto t2 = tutte(M, TutteRoute::corank_nullity);
      if (!(t1 == t2)) fail(c, "Tutte routes disagree");
      const auto q1 = ext_q_gf(M, ExtQRoute::spanning_enum);
      const auto q2 = ext_q_gf(M, ExtQRoute::recursion);
      const auto q3 = ext_q_gf(M, ExtQRoute::tutte);
      if (!(q1 == q2) || !(q1 == q3)) fail(c, "exterior Q generating function routes disagree");
      if (!(ext_s_gf(M, ExtSRoute::closed) == ext_s_gf(M, ExtSRoute::recursion)))
        fail(c, "exterior S generating function routes disagree");
      const mpz_class t10 = t1.evaluate(1, 0);
      const mpz_class lcn = log_canonical_number(M);
      const std::size_t n = e.ground;
      const mpz_class nbc(static_cast<unsigned long>(nbc_count(M, order_identity(n, false))));
      const mpz_class nbc_rev(static_cast<unsigned long>(nbc_count(M, order_identity(n, true))));
      if (t10 != lcn || nbc != lcn || nbc_rev != lcn) fail(c, "nbc count, T(1,0) and log canonical number disagree");
      c.data["tutte"] = t1.to_string();
      c.data["ext_q"] = q1.to_string();
      c.data["T10"] = t10.get_str();
      if (!c.pass) c.counterexample = counterexample(*L, "tutte");
    });
  }
}

}  // namespace tautcoh::detail
