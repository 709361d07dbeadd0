#include "tautcoh/cech.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include <omp.h>

#include "tautcoh/errors.hpp"

namespace tautcoh {

long CohomologyReport::euler() const {
  long chi = 0;
  for (std::size_t i = 0; i < h.size(); ++i) chi += (i % 2 ? -1 : 1) * static_cast<long>(h[i]);
  return chi;
}

bool CohomologyReport::higher_vanish() const {
  return std::all_of(h.begin() + (h.empty() ? 0 : 1), h.end(), [](std::size_t x) { return x == 0; });
}

namespace {

// ---- sparse exact elimination ----

using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<SparseRow> rows;
};

// a - c * b, both sorted by column.
SparseRow subtract_scaled(const SparseRow& a, const Scalar& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(c * b[j].second));
      ++j;
    } else {
      Scalar v = a[i].second - c * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t sparse_rank(const SparseMatrix& m) {
  std::vector<int> pivot_of(m.cols, -1);
  std::vector<SparseRow> pivots;
  for (SparseRow r : m.rows) {
    while (!r.empty()) {
      const int p = pivot_of[r.front().first];
      if (p < 0) {
        const Scalar inv = r.front().second.inverse();
        for (auto& [c, v] : r) v *= inv;
        pivot_of[r.front().first] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(r));
        break;
      }
      const Scalar c = r.front().second;
      r = subtract_scaled(r, c, pivots[static_cast<std::size_t>(p)]);
    }
  }
  return pivots.size();
}

bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows.empty() || b.rows.empty()) return true;
  const Field f = [&] {
    for (const auto& r : a.rows)
      if (!r.empty()) return r.front().second.field();
    return Field{};
  }();
  std::vector<Scalar> acc(b.cols, Scalar::zero(f));
  std::vector<std::uint32_t> touched;
  for (const auto& row : a.rows) {
    touched.clear();
    for (const auto& [k, v] : row)
      for (const auto& [c, w] : b.rows[k]) {
        acc[c] += v * w;
        touched.push_back(c);
      }
    bool zero = true;
    for (std::uint32_t c : touched) {
      if (!acc[c].is_zero()) zero = false;
      acc[c] = Scalar::zero(f);
    }
    if (!zero) return false;
  }
  return true;
}

void add_block(SparseMatrix& d, std::size_t row0, std::size_t col0, const Matrix& block, bool negate) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    SparseRow& r = d.rows[row0 + i];
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (block(i, j).is_zero()) continue;
      r.emplace_back(static_cast<std::uint32_t>(col0 + j), negate ? -block(i, j) : block(i, j));
    }
  }
}

void sort_rows(SparseMatrix& d) {
  for (auto& r : d.rows) std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

// ---- fan cells ----

struct FanCells {
  std::size_t n = 0;
  std::vector<OrderedSetPartition> cones;
  std::vector<std::vector<Subset>> rays;
  std::vector<std::vector<std::pair<std::size_t, bool>>> facets;  // (cone, negative sign)
  std::vector<std::vector<std::size_t>> by_level;                  // cohomological degree -> cones
  std::vector<std::size_t> maximal;
  std::map<OrderedSetPartition, std::size_t> index;
};

FanCells build_fan(std::size_t n) {
  FanCells fan;
  fan.n = n;
  fan.cones = enumerate_partitions(full_set(n));
  for (std::size_t c = 0; c < fan.cones.size(); ++c) fan.index.emplace(fan.cones[c], c);
  fan.by_level.assign(n, {});
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    auto chain = fan.cones[c].prefix_chain();
    std::vector<std::pair<std::size_t, bool>> fs;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      auto smaller = chain;
      smaller.erase(smaller.begin() + static_cast<long>(j));
      fs.emplace_back(fan.index.at(OrderedSetPartition::from_chain(full_set(n), smaller)), j % 2 == 1);
    }
    fan.by_level[n - 1 - chain.size()].push_back(c);
    if (fan.cones[c].is_maximal()) fan.maximal.push_back(c);
    fan.rays.push_back(std::move(chain));
    fan.facets.push_back(std::move(fs));
  }
  return fan;
}

// Threshold table t[S][i] with per-ray extremes.
struct Thresholds {
  std::size_t n = 0;
  std::vector<std::vector<long>> t;
  std::vector<long> lo, hi;
};

Thresholds build_thresholds(const BundleModel& m) {
  Thresholds th;
  th.n = m.ground;
  const std::size_t subsets = std::size_t{1} << m.ground;
  th.t.assign(subsets, {});
  th.lo.assign(subsets, 0);
  th.hi.assign(subsets, 0);
  for (Subset s = 1; s + 1 < subsets; ++s) {
    for (std::size_t i = 0; i < m.ambient(); ++i) th.t[s].push_back(m.threshold(i, s));
    if (!th.t[s].empty()) {
      th.lo[s] = *std::min_element(th.t[s].begin(), th.t[s].end());
      th.hi[s] = *std::max_element(th.t[s].begin(), th.t[s].end());
    }
  }
  return th;
}

// Section spaces of one weight over every cone, built lazily.
class WeightPieces {
 public:
  WeightPieces(const BundleModel& m, const FanCells& fan, const Thresholds& th, const std::vector<long>& mu)
      : m_(m), fan_(fan), th_(th), x_(std::size_t{1} << m.ground, 0), piece_of_(fan.cones.size(), -1) {
    for (Subset s = 1; s + 1 < x_.size(); ++s) x_[s] = pairing(mu, s);
  }

  std::size_t piece(std::size_t cone) {
    if (piece_of_[cone] >= 0) return static_cast<std::size_t>(piece_of_[cone]);
    std::vector<bool> allowed(m_.ambient(), true);
    for (Subset s : fan_.rays[cone])
      for (std::size_t i = 0; i < allowed.size(); ++i)
        if (x_[s] < th_.t[s][i]) allowed[i] = false;
    auto [it, inserted] = by_allowed_.emplace(allowed, spaces_.size());
    if (inserted) spaces_.push_back(chart_space(m_, allowed));
    piece_of_[cone] = static_cast<long>(it->second);
    return it->second;
  }

  const ChartSpace& space(std::size_t piece) const { return spaces_[piece]; }
  std::size_t dim_of_cone(std::size_t cone) { return spaces_[piece(cone)].dim(); }

  const Matrix& inclusion(std::size_t from, std::size_t to) {
    auto key = std::make_pair(from, to);
    auto it = inclusions_.find(key);
    if (it == inclusions_.end()) it = inclusions_.emplace(key, chart_inclusion(spaces_[from], spaces_[to])).first;
    return it->second;
  }

  std::size_t distinct() const { return spaces_.size(); }

 private:
  const BundleModel& m_;
  const FanCells& fan_;
  const Thresholds& th_;
  std::vector<long> x_;
  std::vector<long> piece_of_;
  std::map<std::vector<bool>, std::size_t> by_allowed_;
  std::vector<ChartSpace> spaces_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> inclusions_;
};

std::vector<std::size_t> dims_from_complex(const std::vector<std::size_t>& dims, const std::vector<SparseMatrix>& d,
                                           std::size_t degrees, bool check_d2) {
  std::vector<std::size_t> ranks(d.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) ranks[i] = sparse_rank(d[i]);
  if (check_d2)
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (!product_is_zero(d[i], d[i + 1])) throw InternalError("d∘d != 0 in weight complex");
  std::vector<std::size_t> h(degrees, 0);
  for (std::size_t i = 0; i < degrees; ++i) {
    const std::size_t out = i < ranks.size() ? ranks[i] : 0;
    const std::size_t in = i > 0 ? ranks[i - 1] : 0;
    if (out + in > dims[i]) throw InternalError("rank exceeds term dimension in weight complex");
    h[i] = dims[i] - out - in;
  }
  return h;
}

std::vector<std::size_t> cellular_weight(WeightPieces& w, const FanCells& fan, bool check_d2) {
  const std::size_t n = fan.n;
  // Constant coefficients on the sphere only leave H^0.
  const std::size_t first = w.piece(0);
  bool constant = true;
  for (std::size_t c = 1; c < fan.cones.size() && constant; ++c) constant = w.piece(c) == first;
  std::vector<std::size_t> h(n, 0);
  if (constant) {
    h[0] = w.space(first).dim();
    return h;
  }
  bool all_zero = true;
  for (std::size_t c = 0; c < fan.cones.size(); ++c) all_zero = all_zero && w.dim_of_cone(c) == 0;
  if (all_zero) return h;

  std::vector<std::size_t> offset(fan.cones.size(), 0), dims(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c : fan.by_level[i]) {
      offset[c] = dims[i];
      dims[i] += w.dim_of_cone(c);
    }
  std::vector<SparseMatrix> d(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i].cols = dims[i + 1];
    d[i].rows.assign(dims[i], {});
    for (std::size_t c : fan.by_level[i]) {
      const std::size_t pc = w.piece(c);
      if (w.space(pc).dim() == 0) continue;
      for (const auto& [f, negative] : fan.facets[c]) {
        const std::size_t pf = w.piece(f);
        if (w.space(pf).dim() == 0) continue;
        add_block(d[i], offset[c], offset[f], w.inclusion(pc, pf), negative);
      }
    }
    sort_rows(d[i]);
  }
  return dims_from_complex(dims, d, n, check_d2);
}

void combinations(std::size_t total, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < total; ++i) {
    cur.push_back(i);
    combinations(total, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::size_t> cech_weight(WeightPieces& w, const FanCells& fan, bool check_d2) {
  const std::size_t n = fan.n;
  const std::size_t charts = fan.maximal.size();
  std::vector<std::vector<std::vector<std::size_t>>> tuples(n + 1);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> where(n + 1);
  std::vector<std::vector<std::size_t>> face(n + 1), offset(n + 1);
  std::vector<std::size_t> dims(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> cur;
    combinations(charts, k + 1, 0, cur, tuples[k]);
    for (std::size_t t = 0; t < tuples[k].size(); ++t) {
      where[k].emplace(tuples[k][t], t);
      OrderedSetPartition F = fan.cones[fan.maximal[tuples[k][t][0]]];
      for (std::size_t j = 1; j < tuples[k][t].size(); ++j)
        F = cone_intersection(F, fan.cones[fan.maximal[tuples[k][t][j]]]);
      const std::size_t cone = fan.index.at(F);
      face[k].push_back(cone);
      offset[k].push_back(dims[k]);
      dims[k] += w.dim_of_cone(cone);
    }
  }
  std::vector<SparseMatrix> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    d[k].cols = dims[k + 1];
    d[k].rows.assign(dims[k], {});
    for (std::size_t t = 0; t < tuples[k + 1].size(); ++t) {
      const auto& big = tuples[k + 1][t];
      const std::size_t pt = w.piece(face[k + 1][t]);
      if (w.space(pt).dim() == 0) continue;
      for (std::size_t j = 0; j < big.size(); ++j) {
        auto small = big;
        small.erase(small.begin() + static_cast<long>(j));
        const std::size_t s = where[k].at(small);
        const std::size_t ps = w.piece(face[k][s]);
        if (w.space(ps).dim() == 0) continue;
        add_block(d[k], offset[k][s], offset[k + 1][t], w.inclusion(ps, pt), j % 2 == 1);
      }
    }
    sort_rows(d[k]);
  }
  return dims_from_complex(dims, d, n, check_d2);
}

std::vector<std::size_t> evaluate_weight(const BundleModel& m, const FanCells& fan, const Thresholds& th,
                                         const std::vector<long>& mu, Engine engine, bool check_d2,
                                         std::size_t* distinct = nullptr) {
  if (m.ambient() == 0 || m.rank() == 0) return std::vector<std::size_t>(m.ground, 0);
  WeightPieces w(m, fan, th, mu);
  auto h = engine == Engine::cellular ? cellular_weight(w, fan, check_d2) : cech_weight(w, fan, check_d2);
  if (distinct) *distinct = w.distinct();
  return h;
}

void check_ground(const BundleModel& m, Engine engine) {
  if (m.ground == 0) throw InputError("cohomology needs a nonempty ground set");
  const std::size_t cap = engine == Engine::cellular ? kMaxCohomologyGround : kMaxCechGround;
  if (m.ground > cap)
    throw Refusal("cohomology on |E| = " + std::to_string(m.ground) + " exceeds the cap " + std::to_string(cap) +
                  " for this engine");
}

struct Box {
  std::vector<long> lower, upper;
};

Box support_box(const BundleModel& m, const Thresholds& th, long margin) {
  const std::size_t n = m.ground;
  const Subset full = full_set(n);
  Box b;
  for (std::size_t e = 0; e < n; ++e) {
    const Subset s = Subset{1} << e;
    const Subset c = full & ~s;
    b.lower.push_back(std::min(th.lo[s] - 1, m.degree - th.hi[c]) - margin);
    b.upper.push_back(std::max(th.hi[s], m.degree - th.lo[c] + 1) + margin);
  }
  return b;
}

bool on_shell(const Box& b, const std::vector<long>& mu) {
  for (std::size_t e = 0; e < mu.size(); ++e)
    if (mu[e] == b.lower[e] || mu[e] == b.upper[e]) return true;
  return false;
}

std::vector<std::vector<long>> box_weights(const BundleModel& m, const Box& b) {
  const std::size_t n = m.ground;
  std::vector<std::vector<long>> out;
  if (m.ambient() == 0) return out;
  if (n == 1) return {{m.degree}};
  std::vector<long> mu(n, 0);
  auto rec = [&](auto&& self, std::size_t e, long partial) -> void {
    if (e + 1 == n) {
      const long last = m.degree - partial;
      if (last < b.lower[e] || last > b.upper[e]) return;
      mu[e] = last;
      out.push_back(mu);
      return;
    }
    for (long v = b.lower[e]; v <= b.upper[e]; ++v) {
      mu[e] = v;
      self(self, e + 1, partial + v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<long> clamped_key(const Thresholds& th, const std::vector<long>& mu) {
  std::vector<long> key;
  for (Subset s = 1; s + 1 < th.t.size(); ++s) key.push_back(std::clamp(pairing(mu, s), th.lo[s] - 1, th.hi[s]));
  return key;
}

CohomologyReport run(const BundleModel& m, const CohomologyOptions& opts, bool parallel) {
  check_ground(m, opts.engine);
  const FanCells fan = build_fan(m.ground);
  const Thresholds th = build_thresholds(m);
  long margin = opts.margin;
  for (int attempt = 0; attempt < 4; ++attempt, margin += 2) {
    CohomologyReport report;
    report.h.assign(m.ground, 0);
    const Box box = m.ground > 1 ? support_box(m, th, margin) : Box{};
    const auto weights = box_weights(m, box);
    report.weights_scanned = weights.size();

    std::map<std::vector<long>, std::size_t> key_index;
    std::vector<std::size_t> slot(weights.size());
    std::vector<std::size_t> representative;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      auto [it, inserted] = key_index.emplace(clamped_key(th, weights[i]), representative.size());
      if (inserted) representative.push_back(i);
      slot[i] = it->second;
    }

    const auto count = static_cast<long>(representative.size());
    std::vector<std::vector<std::size_t>> dims(representative.size());
    std::vector<std::size_t> distinct(representative.size(), 0);
    std::vector<std::exception_ptr> errors(representative.size());
    auto work = [&](long k) {
      const auto u = static_cast<std::size_t>(k);
      try {
        dims[u] = evaluate_weight(m, fan, th, weights[representative[u]], opts.engine, opts.check_d2, &distinct[u]);
      } catch (...) {
        errors[u] = std::current_exception();
      }
    };
    if (parallel) {
      const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
      for (long k = 0; k < count; ++k) work(k);
    } else {
      for (long k = 0; k < count; ++k) work(k);
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t d : distinct) report.distinct_pieces += d;

    bool shell_clean = true;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const auto& h = dims[slot[i]];
      const bool nonzero = std::any_of(h.begin(), h.end(), [](std::size_t x) { return x != 0; });
      if (!nonzero) continue;
      if (m.ground > 1 && on_shell(box, weights[i])) shell_clean = false;
      for (std::size_t j = 0; j < h.size(); ++j) report.h[j] += h[j];
      if (opts.per_weight) report.per_weight.push_back({weights[i], h});
    }
    if (shell_clean) return report;
  }
  throw InternalError("weight support did not stabilize: nonzero cohomology on the outer shell");
}

}  // namespace

std::vector<std::vector<long>> weight_support(const BundleModel& m, long margin) {
  if (m.ground == 0) return {};
  const Thresholds th = build_thresholds(m);
  return box_weights(m, m.ground > 1 ? support_box(m, th, margin) : Box{});
}

std::vector<std::size_t> weight_cohomology(const BundleModel& m, const std::vector<long>& mu, Engine engine,
                                           bool check_d2) {
  check_ground(m, engine);
  if (mu.size() != m.ground || pairing(mu, full_set(m.ground)) != m.degree)
    throw InternalError("weight_cohomology: weight has the wrong coordinate sum");
  const FanCells fan = build_fan(m.ground);
  const Thresholds th = build_thresholds(m);
  return evaluate_weight(m, fan, th, mu, engine, check_d2);
}

CohomologyReport cohomology(const BundleModel& m, const CohomologyOptions& opts) { return run(m, opts, true); }

CohomologyReport cohomology_serial(const BundleModel& m, const CohomologyOptions& opts) { return run(m, opts, false); }

CohomologyReport cohomology(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts) {
  return cohomology(build_model(expr, L), opts);
}

long euler_char(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts) {
  return cohomology(expr, L, opts).euler();
}

Matrix global_sections(const BundleModel& m, const std::vector<long>& mu) {
  Matrix acc(m.field, 0, m.ambient());
  if (m.rank() == 0) return acc;
  const auto cones = enumerate_partitions(full_set(m.ground), m.ground);
  bool first = true;
  for (const auto& sigma : cones) {
    const ChartSpace piece = chart_space(m, allowed_coordinates(m, sigma, mu));
    Matrix image(m.field, 0, m.ambient());
    for (std::size_t i = 0; i < piece.dim(); ++i) image.append_row(reduce_modulo(m.a0, piece.quotient.row(i)));
    image = row_space(image);
    acc = first ? image : subspace_intersect(acc, image);
    first = false;
    if (acc.rows() == 0) break;
  }
  return acc;
}

// ---- pushforward comparison ----

std::string family_name(PowerFamily f) {
  switch (f) {
    case PowerFamily::extS: return "extS";
    case PowerFamily::extQ: return "extQ";
    case PowerFamily::symS: return "symS";
    case PowerFamily::symQ: return "symQ";
  }
  return "?";
}

PowerFamily parse_family(const std::string& s) {
  for (auto f : {PowerFamily::extS, PowerFamily::extQ, PowerFamily::symS, PowerFamily::symQ})
    if (family_name(f) == s) return f;
  throw InputError("unknown power family '" + s + "'");
}

namespace {

BundleExpr family_expr(PowerFamily f, std::size_t p) {
  switch (f) {
    case PowerFamily::extS: return BundleExpr::wedge(p, BundleExpr::S());
    case PowerFamily::extQ: return BundleExpr::wedge(p, BundleExpr::Q());
    case PowerFamily::symS: return BundleExpr::sym(p, BundleExpr::S());
    case PowerFamily::symQ: return BundleExpr::sym(p, BundleExpr::Q());
  }
  return BundleExpr::O();
}

}  // namespace

PushforwardReport pushforward_check(const Realization& L, PowerFamily family, std::size_t p,
                                    std::optional<std::size_t> element, const CohomologyOptions& opts) {
  const std::size_t n = L.ground_size();
  if (n < 2) throw InputError("pushforward_check needs |E∖n| >= 1");
  PushforwardReport rep;
  rep.family = family;
  rep.p = p;
  rep.element = element.value_or(n - 1);
  if (rep.element >= n) throw InputError("distinguished element out of range");
  rep.h0_only = family == PowerFamily::symS;

  const Matroid M = matroid_from_realization(L);
  const Subset bit = Subset{1} << rep.element;
  const bool loop = M.loops() & bit;
  const bool coloop = M.coloops() & bit;
  rep.branch = loop ? "loop" : coloop ? "coloop" : "neither";
  const Realization contracted = minor(L, bit, MinorMode::contract);
  const Realization deleted = minor(L, bit, MinorMode::remove);

  // Summands of the predicted direct image on X_{E∖n}.
  std::vector<std::pair<const Realization*, BundleExpr>> parts;
  auto add = [&](const Realization& R, PowerFamily f, std::size_t q) { parts.emplace_back(&R, family_expr(f, q)); };
  switch (family) {
    case PowerFamily::extS:
      add(contracted, family, p);
      if (coloop && p >= 1) add(contracted, family, p - 1);
      break;
    case PowerFamily::extQ:
      if (loop) {
        add(deleted, family, p);
        if (p >= 1) add(deleted, family, p - 1);
      } else if (coloop) {
        add(contracted, family, p);
      } else {
        add(contracted, family, p);
        if (p >= 1) add(deleted, family, p - 1);
      }
      break;
    case PowerFamily::symS:
      if (coloop)
        for (std::size_t k = 0; k <= p; ++k) add(contracted, family, k);
      else
        add(contracted, family, p);
      break;
    case PowerFamily::symQ:
      if (coloop)
        add(contracted, family, p);
      else
        for (std::size_t k = 0; k <= p; ++k) add(contracted, family, k);
      break;
  }

  rep.upstairs = cohomology(family_expr(family, p), L, opts).h;
  rep.downstairs.assign(n, 0);
  for (const auto& [R, expr] : parts) {
    const auto h = cohomology(expr, *R, opts).h;
    for (std::size_t i = 0; i < h.size(); ++i) rep.downstairs[i] += h[i];
  }
  rep.pass = rep.h0_only ? rep.upstairs[0] == rep.downstairs[0] : rep.upstairs == rep.downstairs;
  return rep;
}

}  // namespace tautcoh
