#include "tautcoh/wonderful.hpp"

#include <algorithm>
#include <map>

#include "tautcoh/errors.hpp"
#include "tautcoh/polynomial.hpp"

namespace tautcoh {

namespace {

using WeightKey = std::vector<long>;

struct GradedSections {
  std::map<WeightKey, Matrix> basis;  // rref, reduced modulo A0
  std::map<WeightKey, std::size_t> offset;
  std::size_t total = 0;
};

GradedSections graded_sections(const BundleModel& m, const CohomologyReport& rep) {
  GradedSections out;
  for (const auto& w : rep.per_weight) {
    if (w.h.empty() || w.h[0] == 0) continue;
    Matrix b = global_sections(m, w.mu);
    if (b.rows() != w.h[0])
      throw InternalError("global sections disagree with the engine at a weight");
    out.offset[w.mu] = out.total;
    out.total += b.rows();
    out.basis.emplace(w.mu, std::move(b));
  }
  return out;
}

// Index of each p-subset in the colex order of the wedge model.
std::map<std::vector<std::size_t>, std::size_t> subset_index(std::size_t n, std::size_t p) {
  std::map<std::vector<std::size_t>, std::size_t> out;
  const auto basis = power_basis(n, p, PowerKind::wedge);
  for (std::size_t k = 0; k < basis.size(); ++k) out[basis[k]] = k;
  return out;
}

// d = s ∧ (-) from term p to term p+1, on the ambient of the tensor with the
// twist (index J * twist_ambient + t).
Matrix wedge_differential(std::size_t n, std::size_t p, std::size_t twist_ambient, const BundleModel& target,
                          const GradedSections& src, const GradedSections& dst) {
  const Field f = target.field;
  const auto src_sets = power_basis(n, p, PowerKind::wedge);
  const auto dst_index = subset_index(n, p + 1);
  Matrix d(f, src.total, dst.total);
  for (const auto& [mu, b] : src.basis) {
    const std::size_t row0 = src.offset.at(mu);
    for (std::size_t k = 0; k < b.rows(); ++k) {
      for (std::size_t e = 0; e < n; ++e) {
        std::vector<Scalar> img(target.ambient(), Scalar::zero(f));
        bool any = false;
        for (std::size_t J = 0; J < src_sets.size(); ++J) {
          const auto& set = src_sets[J];
          std::size_t before = 0;
          bool hit = false;
          for (std::size_t j : set) {
            if (j == e) hit = true;
            if (j < e) ++before;
          }
          if (hit) continue;
          std::vector<std::size_t> grown = set;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), e), e);
          const std::size_t J2 = dst_index.at(grown);
          for (std::size_t t = 0; t < twist_ambient; ++t) {
            const Scalar& v = b(k, J * twist_ambient + t);
            if (v.is_zero()) continue;
            img[J2 * twist_ambient + t] += (before % 2) ? -v : v;
            any = true;
          }
        }
        if (!any) continue;
        img = reduce_modulo(target.a0, img);
        WeightKey nu = mu;
        nu[e] += 1;
        const auto it = dst.basis.find(nu);
        if (it == dst.basis.end()) {
          for (const auto& x : img)
            if (!x.is_zero()) throw InternalError("s ∧ (-) leaves the global sections");
          continue;
        }
        const auto c = coordinates_in(it->second, img);
        const std::size_t col0 = dst.offset.at(nu);
        for (std::size_t i = 0; i < c.size(); ++i) d(row0 + k, col0 + i) += c[i];
      }
    }
  }
  return d;
}

bool is_zero_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row(i))
      if (!x.is_zero()) return false;
  return true;
}

std::vector<Realization> slot_list(const Realization& L, const std::optional<Realization>& second) {
  std::vector<Realization> s{L};
  if (second) s.push_back(*second);
  return s;
}

void require_wonderful(const Realization& L, bool connected) {
  if (L.ground_size() == 0) throw InputError("empty ground set");
  if (L.ground_size() > kMaxWonderfulGround)
    throw Refusal("wonderful checks are capped at |E| <= " + std::to_string(kMaxWonderfulGround));
  const Matroid M = matroid_from_realization(L);
  if (M.loops()) throw Refusal("the matroid has loops, so W_L is not defined");
  if (connected && !is_connected(M)) throw Refusal("the matroid is not connected");
}

WonderfulCohomology read_off(GlobalSectionComplex cx, std::size_t rank) {
  WonderfulCohomology out;
  out.collapsed = true;
  for (const auto& t : cx.terms) out.collapsed = out.collapsed && t.higher_vanish();
  out.exact_below_top = true;
  for (std::size_t p = 0; p < cx.corank; ++p) out.exact_below_top = out.exact_below_top && cx.homology[p] == 0;
  out.h.assign(std::max<std::size_t>(rank, 1), 0);
  out.h[0] = cx.homology[cx.corank];
  out.complex = std::move(cx);
  return out;
}

}  // namespace

GlobalSectionComplex global_section_complex(const Realization& L, const std::optional<BundleExpr>& twist,
                                            const std::optional<Realization>& second) {
  require_wonderful(L, false);
  const std::size_t n = L.ground_size();
  const auto slots = slot_list(L, second);
  GlobalSectionComplex cx;
  cx.corank = n - L.rank();

  std::size_t twist_ambient = 1;
  if (twist) twist_ambient = build_model(*twist, slots).ambient();

  CohomologyOptions opts;
  opts.per_weight = true;
  std::vector<BundleModel> models;
  std::vector<GradedSections> sections;
  for (std::size_t p = 0; p <= cx.corank; ++p) {
    BundleExpr e = BundleExpr::wedge(p, BundleExpr::Q());
    if (twist) e = BundleExpr::tensor(e, *twist);
    models.push_back(build_model(e, slots));
    cx.terms.push_back(cohomology(models.back(), opts));
    sections.push_back(graded_sections(models.back(), cx.terms.back()));
    cx.dims.push_back(sections.back().total);
  }
  for (std::size_t p = 0; p < cx.corank; ++p)
    cx.differentials.push_back(wedge_differential(n, p, twist_ambient, models[p + 1], sections[p], sections[p + 1]));
  for (std::size_t p = 0; p + 1 < cx.differentials.size(); ++p)
    if (!is_zero_matrix(cx.differentials[p] * cx.differentials[p + 1])) cx.d2_zero = false;

  std::vector<std::size_t> ranks;
  for (const auto& d : cx.differentials) ranks.push_back(rank(d));
  for (std::size_t p = 0; p <= cx.corank; ++p) {
    const std::size_t out_rank = p < ranks.size() ? ranks[p] : 0;
    const std::size_t in_rank = p > 0 ? ranks[p - 1] : 0;
    cx.homology.push_back(cx.dims[p] - out_rank - in_rank);
  }
  return cx;
}

WonderfulCohomology log_canonical_cohomology(const Realization& L) {
  require_wonderful(L, false);
  auto out = read_off(global_section_complex(L), L.rank());
  if (!out.collapsed) throw InternalError("a term of the Koszul complex has higher cohomology");
  return out;
}

ImmaculateReport immaculate_check(const Realization& L, const Realization& smaller) {
  require_wonderful(L, false);
  if (smaller.field() != L.field() || smaller.ground_size() != L.ground_size())
    throw InputError("flag members must share field and ground set");
  if (smaller.rank() + 1 != L.rank()) throw InputError("flag needs dim L = dim L' + 1");
  for (std::size_t i = 0; i < smaller.rank(); ++i)
    if (!in_row_space(L.basis(), smaller.basis().row(i))) throw InputError("L' is not contained in L");

  ImmaculateReport out;
  const std::size_t loops_small = static_cast<std::size_t>(popcount(matroid_from_realization(smaller).loops()));
  out.loops_small = loops_small;
  const std::vector<Realization> slots{L, smaller};
  const std::size_t c = L.ground_size() - L.rank();
  const BundleExpr line_dual = BundleExpr::tensor(BundleExpr::det(BundleExpr::Q()),
                                                  BundleExpr::dual(BundleExpr::det(BundleExpr::Q(1))));
  for (std::size_t q = 0; q <= c; ++q) {
    const BundleExpr e = BundleExpr::tensor(BundleExpr::dual(BundleExpr::wedge(q, BundleExpr::Q())), line_dual);
    out.koszul_terms.push_back(cohomology(build_model(e, slots)));
    // M itself is loopless here, so its binomial term vanishes.
    out.predicted_h0.push_back(binomial(static_cast<long>(loops_small), static_cast<long>(q + 1)).get_ui());
  }

  // ∧^q Q^∨ ⊗ det Q ⊗ det Q'^∨ is ∧^(c-q) Q ⊗ det Q'^∨, so the Koszul
  // resolution becomes the s-wedge complex with that twist.
  out.restricted = read_off(
      global_section_complex(L, BundleExpr::dual(BundleExpr::det(BundleExpr::Q(1))), smaller), L.rank());

  bool consistent = out.restricted.complex.d2_zero;
  for (std::size_t q = 0; q <= c; ++q) {
    consistent = consistent && out.koszul_terms[q].h == out.restricted.complex.terms[c - q].h;
    consistent = consistent && out.koszul_terms[q].h0() == out.predicted_h0[q];
  }
  out.immaculate = out.restricted.collapsed && out.restricted.exact_below_top &&
                   std::all_of(out.restricted.h.begin(), out.restricted.h.end(), [](std::size_t x) { return x == 0; });
  std::vector<std::size_t> expected(out.restricted.h.size(), 0);
  if (loops_small > 0) expected[0] = 1;
  out.pass = consistent && out.restricted.collapsed && out.restricted.exact_below_top && out.restricted.h == expected;
  return out;
}

IdealSheafReport ideal_sheaf_check(const Realization& L) {
  require_wonderful(L, true);
  IdealSheafReport out;
  out.structure = read_off(global_section_complex(L, BundleExpr::dual(BundleExpr::det(BundleExpr::Q()))), L.rank());
  out.twisted = read_off(global_section_complex(L), L.rank());
  const auto& cx = out.twisted.complex;
  out.sections_detq = cx.dims[cx.corank];
  out.restricted_sections = out.twisted.h[0];
  // With every term acyclic the edge map from H^0(det Q) onto H^0(W, det Q|_W)
  // is the quotient by the image of the last differential.
  out.surjective = out.twisted.collapsed;
  std::vector<std::size_t> one(out.structure.h.size(), 0);
  one[0] = 1;
  out.pass = out.structure.collapsed && out.structure.exact_below_top && out.structure.h == one &&
             out.twisted.exact_below_top && out.surjective && cx.d2_zero && out.structure.complex.d2_zero;
  return out;
}

SpeyerReport speyer_chi(const Realization& L) {
  require_wonderful(L, true);
  SpeyerReport out;
  const std::size_t c = L.ground_size() - L.rank();
  const BundleExpr det_dual = BundleExpr::dual(BundleExpr::det(BundleExpr::Q()));
  for (std::size_t p = 0; p <= c; ++p) {
    const BundleExpr e = BundleExpr::tensor(BundleExpr::wedge(p, BundleExpr::dual(BundleExpr::Q())), det_dual);
    const long chi = euler_char(e, L);
    out.term_chis.push_back(chi);
    out.chi += (p % 2) ? -chi : chi;
  }
  out.signed_value = (L.rank() % 2 == 1) ? out.chi : -out.chi;
  out.nonnegative = out.signed_value >= 0;
  return out;
}

bool section_vanishes(const Realization& L, const std::vector<Scalar>& t) {
  const std::size_t n = L.ground_size();
  if (t.size() != n) throw InputError("torus point has the wrong length");
  for (const auto& x : t)
    if (x.is_zero() || x.field() != L.field()) throw InputError("torus point needs nonzero entries in the field");
  const BundleModel q = build_model(BundleExpr::Q(), L);
  // s has the piece e_e at weight u_e; its value at t is sum_e t^(u_e - w_e) e_e.
  std::vector<Scalar> value(n, Scalar::zero(L.field()));
  for (std::size_t e = 0; e < n; ++e) {
    Scalar c = Scalar::one(L.field());
    for (std::size_t j = 0; j < n; ++j) {
      const long x = (j == e ? 1 : 0) - q.weights[e][j];
      for (long k = 0; k < x; ++k) c *= t[j];
      for (long k = 0; k < -x; ++k) c *= t[j].inverse();
    }
    value[e] += c;
  }
  // The fiber is t^{-w} A1 / t^{-w} A0: undo the twist and test A0.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (long k = 0; k < q.weights[i][j]; ++k) value[i] *= t[j];
  return in_row_space(q.a0, value);
}

}  // namespace tautcoh
