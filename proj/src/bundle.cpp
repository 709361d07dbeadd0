#include "tautcoh/bundle.hpp"

#include <algorithm>
#include <cctype>

#include "tautcoh/errors.hpp"

namespace tautcoh {

// ---- expression syntax ----

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  BundleExpr parse_all() {
    BundleExpr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("bundle expression '" + text_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '^'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer");
    return std::stoul(text_.substr(start, pos_ - start));
  }

  BundleExpr parse_expr() {
    std::string name = identifier();
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == "s" || name == "q") {
      const std::size_t slot = accept('\'') ? 1 : 0;
      return name == "s" ? BundleExpr::S(slot) : BundleExpr::Q(slot);
    }
    if (name == "o") return BundleExpr::O();
    if (name == "oe" || name == "o^e") return BundleExpr::OE();
    expect('(');
    BundleExpr out;
    if (name == "wedge" || name == "sym") {
      const std::size_t p = number();
      expect(',');
      out = name == "wedge" ? BundleExpr::wedge(p, parse_expr()) : BundleExpr::sym(p, parse_expr());
    } else if (name == "dual") {
      out = BundleExpr::dual(parse_expr());
    } else if (name == "det") {
      out = BundleExpr::det(parse_expr());
    } else if (name == "crem") {
      out = BundleExpr::crem(parse_expr());
    } else if (name == "tensor") {
      out = parse_expr();
      expect(',');
      do out = BundleExpr::tensor(std::move(out), parse_expr());
      while (accept(','));
    } else {
      fail("unknown functor '" + name + "'");
    }
    expect(')');
    return out;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

BundleExpr BundleExpr::parse(const std::string& text) { return ExprParser(text).parse_all(); }

std::string BundleExpr::to_string() const {
  const std::string prime = slot ? "'" : "";
  switch (op) {
    case BundleOp::S: return "S" + prime;
    case BundleOp::Q: return "Q" + prime;
    case BundleOp::O: return "O";
    case BundleOp::OE: return "OE";
    case BundleOp::line: {
      std::string s = "O(";
      bool first = true;
      for (std::size_t m = 0; m < divisor.size(); ++m) {
        if (divisor[m] == 0) continue;
        if (!first) s += ",";
        s += subset_string(static_cast<Subset>(m)) + ":" + std::to_string(divisor[m]);
        first = false;
      }
      return s + ")";
    }
    case BundleOp::wedge: return "wedge(" + std::to_string(power) + "," + args[0].to_string() + ")";
    case BundleOp::sym: return "sym(" + std::to_string(power) + "," + args[0].to_string() + ")";
    case BundleOp::dual: return "dual(" + args[0].to_string() + ")";
    case BundleOp::det: return "det(" + args[0].to_string() + ")";
    case BundleOp::crem: return "crem(" + args[0].to_string() + ")";
    case BundleOp::tensor: return "tensor(" + args[0].to_string() + "," + args[1].to_string() + ")";
  }
  return "?";
}

std::size_t BundleExpr::max_slot() const {
  std::size_t s = (op == BundleOp::S || op == BundleOp::Q) ? slot : 0;
  for (const auto& a : args) s = std::max(s, a.max_slot());
  return s;
}

long pairing(std::span<const long> v, Subset s) {
  long acc = 0;
  for (std::size_t e = 0; e < v.size(); ++e)
    if (s & (Subset{1} << e)) acc += v[e];
  return acc;
}

// ---- model construction ----

namespace {

std::vector<long> unit_weight(std::size_t n, std::size_t e) {
  std::vector<long> w(n, 0);
  w[e] = 1;
  return w;
}

std::vector<long> add_weights(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<long> add_shifts(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<long> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<long> scale_shift(const std::vector<long>& a, long k) {
  std::vector<long> out = a;
  for (auto& x : out) x *= k;
  return out;
}

Matrix rows_subset(const Matrix& m, const std::vector<std::size_t>& keep) { return m.select_rows(keep); }

// p-th exterior or symmetric power of A1/A0 presented through a basis of A1
// extended from A0: the denominator is spanned by the monomials touching A0.
BundleModel power_model_impl(const BundleModel& base, std::size_t p, PowerKind kind) {
  BundleModel out;
  out.field = base.field;
  out.ground = base.ground;
  out.degree = static_cast<long>(p) * base.degree;
  out.shift = scale_shift(base.shift, static_cast<long>(p));

  const auto ambient_basis = power_basis(base.ambient(), p, kind);
  for (const auto& idx : ambient_basis) {
    std::vector<long> w(base.ground, 0);
    for (std::size_t i : idx) w = add_weights(w, base.weights[i]);
    out.weights.push_back(std::move(w));
  }

  auto [b, s] = extend_basis(base.a0, base.a1);
  const Matrix powered = induced_power_matrix(b, p, kind);
  const auto source_basis = power_basis(b.rows(), p, kind);
  std::vector<std::size_t> touching;
  for (std::size_t k = 0; k < source_basis.size(); ++k)
    if (std::any_of(source_basis[k].begin(), source_basis[k].end(), [s](std::size_t i) { return i < s; }))
      touching.push_back(k);
  out.a1 = row_space(powered);
  out.a0 = row_space(rows_subset(powered, touching));
  return out;
}

BundleModel tensor_model_impl(const BundleModel& a, const BundleModel& b) {
  BundleModel out;
  out.field = a.field;
  out.ground = a.ground;
  out.degree = a.degree + b.degree;
  out.shift = add_shifts(a.shift, b.shift);
  for (const auto& wa : a.weights)
    for (const auto& wb : b.weights) out.weights.push_back(add_weights(wa, wb));

  auto [ba, sa] = extend_basis(a.a0, a.a1);
  auto [bb, sb] = extend_basis(b.a0, b.a1);
  const Matrix k = kronecker(ba, bb);
  std::vector<std::size_t> touching;
  for (std::size_t i = 0; i < ba.rows(); ++i)
    for (std::size_t j = 0; j < bb.rows(); ++j)
      if (i < sa || j < sb) touching.push_back(i * bb.rows() + j);
  out.a1 = k.rows() ? row_space(k) : Matrix(a.field, 0, out.ambient());
  out.a0 = touching.empty() ? Matrix(a.field, 0, out.ambient()) : row_space(rows_subset(k, touching));
  return out;
}

BundleModel dual_model_impl(const BundleModel& m) {
  BundleModel out;
  out.field = m.field;
  out.ground = m.ground;
  out.degree = -m.degree;
  out.shift = scale_shift(m.shift, -1);
  for (const auto& w : m.weights) out.weights.push_back(scale_shift(w, -1));
  out.a1 = orthogonal_complement(m.a0);
  out.a0 = orthogonal_complement(m.a1);
  return out;
}

BundleModel crem_model_impl(const BundleModel& m) {
  BundleModel out = m;
  out.degree = -m.degree;
  for (auto& w : out.weights) w = scale_shift(w, -1);
  if (!m.shift.empty()) {
    const Subset full = full_set(m.ground);
    for (Subset s = 1; s < full; ++s) out.shift[s] = m.shift[full & ~s];
  }
  return out;
}

BundleModel leaf_model(const BundleExpr& e, std::span<const Realization> slots, Field field, std::size_t n) {
  BundleModel out;
  out.field = field;
  out.ground = n;
  switch (e.op) {
    case BundleOp::S:
    case BundleOp::Q: {
      if (e.slot >= slots.size()) throw InputError("bundle expression refers to a missing realization");
      const Matrix& L = slots[e.slot].basis();
      for (std::size_t i = 0; i < n; ++i) out.weights.push_back(unit_weight(n, i));
      out.degree = 1;
      if (e.op == BundleOp::S) {
        out.a1 = L;
        out.a0 = Matrix(field, 0, n);
      } else {
        out.a1 = Matrix::identity(field, n);
        out.a0 = L;
      }
      return out;
    }
    case BundleOp::OE:
      for (std::size_t i = 0; i < n; ++i) out.weights.push_back(unit_weight(n, i));
      out.degree = 1;
      out.a1 = Matrix::identity(field, n);
      out.a0 = Matrix(field, 0, n);
      return out;
    case BundleOp::O:
    case BundleOp::line:
      out.weights.push_back(std::vector<long>(n, 0));
      out.a1 = Matrix::identity(field, 1);
      out.a0 = Matrix(field, 0, 1);
      if (e.op == BundleOp::line) {
        if (e.divisor.size() != (std::size_t{1} << n)) throw InputError("divisor needs one coefficient per subset");
        out.shift = e.divisor;
        out.shift[0] = 0;
        out.shift[full_set(n)] = 0;
      }
      return out;
    default:
      throw InternalError("leaf_model called on a functor node");
  }
}

BundleModel build(const BundleExpr& e, std::span<const Realization> slots, Field field, std::size_t n) {
  switch (e.op) {
    case BundleOp::wedge: return power_model_impl(build(e.args.at(0), slots, field, n), e.power, PowerKind::wedge);
    case BundleOp::sym: return power_model_impl(build(e.args.at(0), slots, field, n), e.power, PowerKind::sym);
    case BundleOp::det: {
      BundleModel base = build(e.args.at(0), slots, field, n);
      const std::size_t r = base.rank();
      return power_model_impl(base, r, PowerKind::wedge);
    }
    case BundleOp::dual: return dual_model_impl(build(e.args.at(0), slots, field, n));
    case BundleOp::crem: return crem_model_impl(build(e.args.at(0), slots, field, n));
    case BundleOp::tensor:
      return tensor_model_impl(build(e.args.at(0), slots, field, n), build(e.args.at(1), slots, field, n));
    default: return leaf_model(e, slots, field, n);
  }
}

}  // namespace

BundleModel power_model(const BundleModel& m, std::size_t p, PowerKind kind) { return power_model_impl(m, p, kind); }
BundleModel tensor_model(const BundleModel& a, const BundleModel& b) { return tensor_model_impl(a, b); }
BundleModel dual_model(const BundleModel& m) { return dual_model_impl(m); }
BundleModel crem_model(const BundleModel& m) { return crem_model_impl(m); }

BundleModel build_model(const BundleExpr& expr, std::span<const Realization> slots) {
  if (slots.empty()) throw InputError("build_model needs at least one realization");
  const Field field = slots[0].field();
  const std::size_t n = slots[0].ground_size();
  for (const auto& L : slots)
    if (L.field() != field || L.ground_size() != n)
      throw InputError("realizations in one expression must share field and ground set");
  if (expr.max_slot() >= slots.size()) throw InputError("bundle expression refers to a missing realization");
  BundleModel m = build(expr, slots, field, n);
  for (const auto& w : m.weights)
    if (pairing(w, full_set(n)) != m.degree) throw InternalError("inhomogeneous bundle weights");
  return m;
}

BundleModel build_model(const BundleExpr& expr, const Realization& L) {
  return build_model(expr, std::span<const Realization>(&L, 1));
}

// ---- chart pieces ----

namespace {

// Basis of rowspace(a) ∩ k^I, in rref.
Matrix restrict_to_coordinates(const Matrix& a, const std::vector<bool>& allowed, bool full) {
  const Field f = a.field();
  const std::size_t n = a.cols();
  if (full) {
    Matrix out(f, 0, n);
    std::vector<Scalar> row(n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) {
      if (!allowed[i]) continue;
      row[i] = Scalar::one(f);
      out.append_row(row);
      row[i] = Scalar::zero(f);
    }
    return out;
  }
  if (a.rows() == 0) return Matrix(f, 0, n);
  std::vector<std::size_t> banned;
  for (std::size_t i = 0; i < n; ++i)
    if (!allowed[i]) banned.push_back(i);
  if (banned.empty()) return a;
  const Matrix coeffs = left_kernel_basis(a.select_columns(banned));
  if (coeffs.rows() == 0) return Matrix(f, 0, n);
  return row_space(coeffs * a);
}

}  // namespace

ChartSpace chart_space(const BundleModel& m, const std::vector<bool>& allowed) {
  ChartSpace out;
  out.sub = restrict_to_coordinates(m.a0, allowed, false);
  const Matrix top = restrict_to_coordinates(m.a1, allowed, m.a1_full());
  Matrix reduced(m.field, 0, m.ambient());
  for (std::size_t i = 0; i < top.rows(); ++i) reduced.append_row(reduce_modulo(out.sub, top.row(i)));
  out.quotient = row_space(reduced);
  if (out.quotient.rows() + out.sub.rows() != top.rows()) throw InternalError("chart_space: denominator escapes numerator");
  return out;
}

Matrix chart_inclusion(const ChartSpace& x, const ChartSpace& y) {
  const Field f = x.quotient.field();
  Matrix out(f, x.dim(), y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const auto v = reduce_modulo(y.sub, x.quotient.row(i));
    const auto c = coordinates_in(y.quotient, v);
    for (std::size_t j = 0; j < y.dim(); ++j) out(i, j) = c[j];
  }
  return out;
}

std::vector<bool> allowed_coordinates(const BundleModel& m, const OrderedSetPartition& F, std::span<const long> mu) {
  std::vector<bool> allowed(m.ambient(), true);
  for (Subset s : F.prefix_chain()) {
    const long x = pairing(mu, s);
    for (std::size_t i = 0; i < m.ambient(); ++i)
      if (allowed[i] && x < m.threshold(i, s)) allowed[i] = false;
  }
  return allowed;
}

namespace {

BundleExpr base_expr(BaseBundle base) {
  switch (base) {
    case BaseBundle::S: return BundleExpr::S();
    case BaseBundle::Q: return BundleExpr::Q();
    case BaseBundle::O: return BundleExpr::O();
  }
  return BundleExpr::O();
}

}  // namespace

ChartWeightSpace chart_weight_space(const Realization& L, BaseBundle base, const OrderedSetPartition& sigma,
                                    std::span<const long> mu) {
  const long expected = base == BaseBundle::O ? 0 : 1;
  if (mu.size() != L.ground_size() || pairing(mu, full_set(L.ground_size())) != expected)
    throw InternalError("chart_weight_space: weight has the wrong coordinate sum");
  const BundleModel m = build_model(base_expr(base), L);
  const auto allowed = allowed_coordinates(m, sigma, mu);
  ChartWeightSpace out;
  if (base == BaseBundle::O) {
    out.support = allowed[0] ? full_set(L.ground_size()) : 0;
  } else {
    for (std::size_t e = 0; e < allowed.size(); ++e)
      if (allowed[e]) out.support |= Subset{1} << e;
  }
  out.space = chart_space(m, allowed);
  return out;
}

// ---- trivializations ----

std::vector<long> weight_from_pairings(const OrderedSetPartition& sigma, std::span<const long> y, long degree) {
  if (!sigma.is_maximal()) throw InternalError("weight_from_pairings needs a maximal cone");
  const auto n = static_cast<std::size_t>(popcount(sigma.ground()));
  std::vector<long> mu(n, 0);
  long prev = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t e = elements(sigma.blocks()[k])[0];
    const long cur = k + 1 < n ? y[k] : degree;
    mu[e] = cur - prev;
    prev = cur;
  }
  return mu;
}

ChartTrivialization expr_trivialization(const BundleModel& m, const OrderedSetPartition& sigma) {
  if (!sigma.is_maximal()) throw InputError("trivializations are taken over maximal cones");
  const auto rays = sigma.prefix_chain();
  const std::size_t k = rays.size();
  ChartTrivialization out{sigma, {}};
  const std::size_t rank = m.rank();
  if (rank == 0) return out;

  // Past the largest threshold on every ray the piece is everything, so the
  // box [lo, hi] contains every generator.
  std::vector<long> lo(k, 0), hi(k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    lo[r] = hi[r] = m.threshold(0, rays[r]);
    for (std::size_t i = 1; i < m.ambient(); ++i) {
      lo[r] = std::min(lo[r], m.threshold(i, rays[r]));
      hi[r] = std::max(hi[r], m.threshold(i, rays[r]));
    }
  }
  std::vector<std::vector<long>> points{{}};
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::vector<long>> next;
    for (const auto& p : points)
      for (long v = lo[r]; v <= hi[r]; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  auto total = [](const std::vector<long>& p) {
    long s = 0;
    for (long v : p) s += v;
    return s;
  };
  std::stable_sort(points.begin(), points.end(), [&](const auto& a, const auto& b) {
    const long ta = total(a), tb = total(b);
    return ta != tb ? ta < tb : a < b;
  });

  std::vector<std::vector<long>> gen_y;
  for (const auto& y : points) {
    const auto mu = weight_from_pairings(sigma, y, m.degree);
    const ChartSpace piece = chart_space(m, allowed_coordinates(m, sigma, mu));
    Matrix span(m.field, 0, m.ambient());
    for (std::size_t j = 0; j < gen_y.size(); ++j) {
      bool below = true;
      for (std::size_t r = 0; r < k; ++r) below = below && gen_y[j][r] <= y[r];
      if (below) span.append_row(reduce_modulo(piece.sub, out.generators[j].vector));
    }
    Matrix echelon = row_space(span);
    if (echelon.rows() == piece.dim()) continue;
    for (std::size_t i = 0; i < piece.dim(); ++i) {
      if (in_row_space(echelon, piece.quotient.row(i))) continue;
      out.generators.push_back({mu, std::vector<Scalar>(piece.quotient.row(i).begin(), piece.quotient.row(i).end())});
      gen_y.push_back(y);
      span.append_row(piece.quotient.row(i));
      echelon = row_space(span);
    }
    if (out.generators.size() > rank) throw InternalError("trivialization produced more generators than the rank");
  }
  if (out.generators.size() != rank)
    throw InternalError("trivialization scan ended with " + std::to_string(out.generators.size()) +
                        " generators for rank " + std::to_string(rank));
  return out;
}

ChartTrivialization chart_trivialization(const Realization& L, BaseBundle base, const OrderedSetPartition& sigma) {
  return expr_trivialization(build_model(base_expr(base), L), sigma);
}

}  // namespace tautcoh
