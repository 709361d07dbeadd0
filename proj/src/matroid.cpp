#include "tautcoh/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "tautcoh/errors.hpp"
#include "tautcoh/fan.hpp"

namespace tautcoh {

std::vector<std::size_t> elements(Subset s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::string subset_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : elements(s)) {
    out += (first ? "" : ",") + std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

Realization::Realization(Matrix generators) : basis_(row_space(generators)) {
  if (basis_.cols() > kMaxGround) throw Refusal("ground sets are capped at 16 elements");
}

Matroid::Matroid(Subset ground, std::vector<Subset> bases, bool validate)
    : ground_(ground), bases_(std::move(bases)) {
  std::sort(bases_.begin(), bases_.end());
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  if (bases_.empty()) throw InputError("a matroid needs at least one basis");
  rank_ = static_cast<std::size_t>(popcount(bases_.front()));
  for (Subset b : bases_) {
    if (b & ~ground_) throw InputError("basis " + subset_string(b) + " leaves the ground set");
    if (static_cast<std::size_t>(popcount(b)) != rank_) throw InputError("bases of different sizes");
  }
  if (!validate) return;
  // For B1, B2 and x in B1∖B2 there is y in B2∖B1 with B1 - x + y a basis.
  for (Subset b1 : bases_)
    for (Subset b2 : bases_)
      for (std::size_t x : elements(b1 & ~b2)) {
        bool ok = false;
        for (std::size_t y : elements(b2 & ~b1))
          if (is_basis((b1 & ~(Subset{1} << x)) | (Subset{1} << y))) {
            ok = true;
            break;
          }
        if (!ok) throw InputError("basis exchange fails for " + subset_string(b1) + ", " + subset_string(b2));
      }
}

bool Matroid::is_basis(Subset s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

std::size_t Matroid::rank_of(Subset s) const {
  int best = 0;
  for (Subset b : bases_) best = std::max(best, popcount(b & s));
  return static_cast<std::size_t>(best);
}

bool Matroid::is_independent(Subset s) const {
  return std::any_of(bases_.begin(), bases_.end(), [s](Subset b) { return (b & s) == s; });
}

Subset Matroid::loops() const {
  Subset used = 0;
  for (Subset b : bases_) used |= b;
  return ground_ & ~used;
}

Subset Matroid::coloops() const {
  Subset all = ground_;
  for (Subset b : bases_) all &= b;
  return all;
}

Matroid Matroid::deletion(std::size_t e) const {
  const Subset bit = Subset{1} << e;
  std::vector<Subset> out;
  if (coloops() & bit) {
    for (Subset b : bases_) out.push_back(b & ~bit);
  } else {
    for (Subset b : bases_)
      if (!(b & bit)) out.push_back(b);
  }
  return Matroid(ground_ & ~bit, std::move(out));
}

Matroid Matroid::contraction(std::size_t e) const {
  const Subset bit = Subset{1} << e;
  std::vector<Subset> out;
  if (loops() & bit) {
    out = bases_;
  } else {
    for (Subset b : bases_)
      if (b & bit) out.push_back(b & ~bit);
  }
  return Matroid(ground_ & ~bit, std::move(out));
}

Matroid Matroid::dual() const {
  std::vector<Subset> out;
  out.reserve(bases_.size());
  for (Subset b : bases_) out.push_back(ground_ & ~b);
  return Matroid(ground_, std::move(out));
}

Matroid matroid_from_realization(const Realization& L) {
  const std::size_t n = L.ground_size();
  const std::size_t r = L.rank();
  std::vector<Subset> bases;
  for (Subset s = 0; s <= full_set(n); ++s) {
    if (static_cast<std::size_t>(popcount(s)) != r) continue;
    auto cols = elements(s);
    if (rank(L.basis().select_columns(cols)) == r) bases.push_back(s);
    if (n == 0) break;
  }
  return Matroid(full_set(n), std::move(bases));
}

LoopsColoops loops_coloops(const Matroid& M) { return {M.loops(), M.coloops()}; }

Realization minor(const Realization& L, Subset s, MinorMode mode) {
  const std::size_t n = L.ground_size();
  if (s & ~full_set(n)) throw InputError("minor: subset leaves the ground set");
  std::vector<std::size_t> keep;
  for (std::size_t e = 0; e < n; ++e)
    if (!(s & (Subset{1} << e))) keep.push_back(e);
  if (mode == MinorMode::remove) return Realization(L.basis().select_columns(keep));
  // Contraction: vectors x L with x L vanishing on S.
  auto drop = elements(s);
  if (drop.empty()) return L;
  Matrix coeffs = left_kernel_basis(L.basis().select_columns(drop));
  if (coeffs.rows() == 0) return Realization(Matrix(L.field(), 0, keep.size()));
  return Realization((coeffs * L.basis()).select_columns(keep));
}

Realization dual(const Realization& L) { return Realization(orthogonal_complement(L.basis())); }

Realization partition_minor(const Realization& L, const OrderedSetPartition& F) {
  const std::size_t n = L.ground_size();
  if (F.ground() != full_set(n)) throw InputError("partition_minor: F does not partition the ground set");
  Matrix out(L.field(), 0, n);
  Subset before = 0;
  for (Subset block : F.blocks()) {
    const Subset upto = before | block;
    // L|upto / before, living on the coordinates of `block`.
    Realization restricted = minor(L, full_set(n) & ~upto, MinorMode::remove);
    // Relabel `before` into the compressed coordinates of `restricted`.
    auto upto_elems = elements(upto);
    Subset before_local = 0;
    for (std::size_t i = 0; i < upto_elems.size(); ++i)
      if (before & (Subset{1} << upto_elems[i])) before_local |= Subset{1} << i;
    Realization piece = minor(restricted, before_local, MinorMode::contract);
    auto block_elems = elements(block);
    for (std::size_t i = 0; i < piece.rank(); ++i) {
      std::vector<Scalar> row(n, Scalar::zero(L.field()));
      for (std::size_t j = 0; j < block_elems.size(); ++j) row[block_elems[j]] = piece.basis()(i, j);
      out.append_row(row);
    }
    before = upto;
  }
  return Realization(std::move(out));
}

std::vector<Subset> max_weight_bases(const Matroid& M, const WeightVector& w) {
  auto weight = [&](Subset b) {
    long total = 0;
    for (std::size_t e : elements(b)) total += w.at(e);
    return total;
  };
  long best = 0;
  bool first = true;
  for (Subset b : M.bases()) {
    long x = weight(b);
    if (first || x > best) best = x;
    first = false;
  }
  std::vector<Subset> out;
  for (Subset b : M.bases())
    if (weight(b) == best) out.push_back(b);
  return out;
}

std::vector<Subset> circuits(const Matroid& M) {
  std::vector<Subset> out;
  const auto ground = elements(M.ground());
  const std::size_t n = ground.size();
  for (Subset local = 1; local < (Subset{1} << n); ++local) {
    Subset s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (local & (Subset{1} << i)) s |= Subset{1} << ground[i];
    if (M.is_independent(s)) continue;
    bool minimal = true;
    for (std::size_t e : elements(s))
      if (!M.is_independent(s & ~(Subset{1} << e))) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Matroid& M) {
  const auto ground = elements(M.ground());
  if (ground.size() <= 1) return true;
  auto cs = circuits(M);
  for (std::size_t i = 0; i < ground.size(); ++i)
    for (std::size_t j = i + 1; j < ground.size(); ++j) {
      const Subset pair = (Subset{1} << ground[i]) | (Subset{1} << ground[j]);
      if (std::none_of(cs.begin(), cs.end(), [pair](Subset c) { return (c & pair) == pair; })) return false;
    }
  return true;
}

Realization uniform_realization(std::size_t r, std::size_t n, Field field) {
  if (r > n) throw InputError("uniform matroid needs rank <= size");
  if (n > kMaxGround) throw Refusal("ground sets are capped at 16 elements");
  if (r == 0) return Realization(Matrix(field, 0, n));
  if (r == n) return boolean_realization(n, field);
  Matrix m(field, r, n);
  if (r == 1) {
    for (std::size_t j = 0; j < n; ++j) m(0, j) = Scalar::one(field);
    return Realization(std::move(m));
  }
  if (r == n - 1) {
    // {x : sum x = 0} has every (n-1)-subset as a basis over any field.
    for (std::size_t i = 0; i < r; ++i) {
      m(i, i) = Scalar::one(field);
      m(i, n - 1) = -Scalar::one(field);
    }
    return Realization(std::move(m));
  }
  // Columns (1, t, ..., t^{r-1}) at distinct t; over F_p also the point at
  // infinity (0, ..., 0, 1). No MDS matrix of this shape exists beyond p + 1
  // columns over a prime field.
  if (!field.is_rational() && n > field.prime + 1)
    throw UnrealizableError("U(" + std::to_string(r) + "," + std::to_string(n) + ") is not realizable over " +
                            field.name());
  for (std::size_t j = 0; j < n; ++j) {
    const bool infinity = !field.is_rational() && j == field.prime;
    const long t = field.is_rational() ? static_cast<long>(j) + 1 : static_cast<long>(j);
    Scalar power = Scalar::one(field);
    for (std::size_t i = 0; i < r; ++i) {
      if (infinity) {
        m(i, j) = Scalar(field, i + 1 == r ? 1 : 0);
      } else {
        m(i, j) = power;
        power *= Scalar(field, t);
      }
    }
  }
  return Realization(std::move(m));
}

Realization graphic_realization(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                Field field) {
  Matrix m(field, vertices, edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j) {
    auto [u, v] = edges[j];
    if (u >= vertices || v >= vertices) throw InputError("graphic: edge endpoint out of range");
    m(u, j) += Scalar::one(field);
    m(v, j) -= Scalar::one(field);
  }
  return Realization(std::move(m));
}

Realization boolean_realization(std::size_t n, Field field) { return Realization(Matrix::identity(field, n)); }

Realization append_loop(const Realization& L) {
  const std::size_t n = L.ground_size();
  Matrix m(L.field(), L.rank(), n + 1);
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = L.basis()(i, j);
  return Realization(std::move(m));
}

Realization append_coloop(const Realization& L) {
  const std::size_t n = L.ground_size();
  Matrix m(L.field(), L.rank() + 1, n + 1);
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = L.basis()(i, j);
  m(L.rank(), n) = Scalar::one(L.field());
  return Realization(std::move(m));
}

Realization standard_realization(StandardKind kind, const StandardParams& params, Field field) {
  switch (kind) {
    case StandardKind::uniform:
      return uniform_realization(params.rank, params.size, field);
    case StandardKind::graphic: {
      std::size_t vertices = 0;
      for (auto [u, v] : params.edges) vertices = std::max({vertices, u + 1, v + 1});
      return graphic_realization(vertices, params.edges, field);
    }
    case StandardKind::boolean:
      return boolean_realization(params.size, field);
    case StandardKind::with_loop:
      return append_loop(uniform_realization(params.rank, params.size, field));
    case StandardKind::with_coloop:
      return append_coloop(uniform_realization(params.rank, params.size, field));
  }
  throw InternalError("unknown standard realization kind");
}

Realization change_field(const Realization& L, Field field) {
  const Matrix& b = L.basis();
  Matrix m(field, b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = Scalar(field, b(i, j).to_mpq());
  return Realization(std::move(m));
}

}  // namespace tautcoh
