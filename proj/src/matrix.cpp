#include "tautcoh/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tautcoh/errors.hpp"

namespace tautcoh {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<long>>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<long>>& rows) {
  return from_ints(f, rows, rows.empty() ? 0 : rows.front().size());
}

void Matrix::append_row(std::span<const Scalar> values) {
  if (values.size() != cols_) throw InternalError("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
}

void Matrix::truncate_rows(std::size_t n) {
  rows_ = std::min(rows_, n);
  data_.resize(rows_ * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix m(field_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix m(field_, 0, cols_);
  for (std::size_t r : rows) m.append_row(row(r));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InternalError("matrix product: dimension mismatch");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

RrefResult rref(Matrix m) {
  RrefResult out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(r, pivot);
    if (!m(r, c).is_one()) {
      Scalar inv = m(r, c).inverse();
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix row_space(const Matrix& m) {
  RrefResult r = rref(m);
  r.matrix.truncate_rows(r.rank);
  return std::move(r.matrix);
}

Matrix kernel_basis(const Matrix& m) {
  const Field f = m.field();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  Matrix k(f, 0, m.cols());
  std::vector<Scalar> v(m.cols(), Scalar::zero(f));
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.matrix(i, free);
    k.append_row(v);
  }
  return row_space(k);
}

Matrix left_kernel_basis(const Matrix& m) { return kernel_basis(m.transpose()); }

namespace {
void require_same_ambient(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw InputError("ambient dimension mismatch: " + std::to_string(a.cols()) + " vs " + std::to_string(b.cols()));
}
}  // namespace

Matrix subspace_intersect(const Matrix& a, const Matrix& b) {
  require_same_ambient(a, b);
  Matrix ba = row_space(a);
  Matrix bb = row_space(b);
  if (ba.rows() == 0 || bb.rows() == 0) return Matrix(a.field(), 0, a.cols());
  // (x, y) with x A + y B = 0 gives x A in the intersection.
  Matrix stacked(a.field(), 0, a.cols());
  for (std::size_t i = 0; i < ba.rows(); ++i) stacked.append_row(ba.row(i));
  for (std::size_t i = 0; i < bb.rows(); ++i) stacked.append_row(bb.row(i));
  Matrix lk = left_kernel_basis(stacked);
  Matrix xs(a.field(), lk.rows(), ba.rows());
  for (std::size_t i = 0; i < lk.rows(); ++i)
    for (std::size_t j = 0; j < ba.rows(); ++j) xs(i, j) = lk(i, j);
  return row_space(xs * ba);
}

Matrix subspace_sum(const Matrix& a, const Matrix& b) {
  require_same_ambient(a, b);
  Matrix s = a;
  for (std::size_t i = 0; i < b.rows(); ++i) s.append_row(b.row(i));
  return row_space(s);
}

Matrix orthogonal_complement(const Matrix& a) { return kernel_basis(a); }

std::vector<Scalar> reduce_modulo(const Matrix& basis, std::span<const Scalar> v) {
  std::vector<Scalar> out(v.begin(), v.end());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t p = 0;
    while (p < basis.cols() && basis(i, p).is_zero()) ++p;
    if (p == basis.cols() || out[p].is_zero()) continue;
    Scalar factor = out[p];
    for (std::size_t j = p; j < basis.cols(); ++j)
      if (!basis(i, j).is_zero()) out[j] -= factor * basis(i, j);
  }
  return out;
}

bool in_row_space(const Matrix& basis, std::span<const Scalar> v) {
  auto r = reduce_modulo(basis, v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<Scalar> coordinates_in(const Matrix& basis, std::span<const Scalar> v) {
  std::vector<Scalar> c;
  c.reserve(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t p = 0;
    while (p < basis.cols() && basis(i, p).is_zero()) ++p;
    c.push_back(v[p]);
  }
  return c;
}

std::pair<Matrix, std::size_t> extend_basis(const Matrix& sub, const Matrix& super) {
  Matrix basis = row_space(sub);
  const std::size_t s = basis.rows();
  Matrix echelon = basis;
  for (std::size_t i = 0; i < super.rows(); ++i) {
    if (in_row_space(echelon, super.row(i))) continue;
    basis.append_row(super.row(i));
    echelon = row_space(basis);
  }
  return {std::move(basis), s};
}

namespace {

// Colex successor over sorted tuples; `strict` selects subsets over multisets.
void enumerate_colex(std::size_t n, std::size_t p, bool strict, std::vector<std::vector<std::size_t>>& out) {
  if (p == 0) {
    out.push_back({});
    return;
  }
  if (strict && p > n) return;
  if (n == 0) return;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = strict ? i : 0;
  for (;;) {
    out.push_back(cur);
    // Colex: increment the lowest position that can move, reset those below.
    std::size_t i = 0;
    for (; i < p; ++i) {
      if (i + 1 == p) {
        if (cur[i] + 1 < n) break;
      } else if (strict ? cur[i] + 1 < cur[i + 1] : cur[i] < cur[i + 1]) {
        break;
      }
    }
    if (i == p) return;
    ++cur[i];
    for (std::size_t j = 0; j < i; ++j) cur[j] = strict ? j : 0;
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> power_basis(std::size_t n, std::size_t p, PowerKind kind) {
  std::vector<std::vector<std::size_t>> out;
  enumerate_colex(n, p, kind == PowerKind::wedge, out);
  return out;
}

namespace {

Scalar determinant(Matrix m) {
  const Field f = m.field();
  const std::size_t n = m.rows();
  Scalar det = Scalar::one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Scalar::zero(f);
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

}  // namespace

Matrix induced_power_matrix(const Matrix& m, std::size_t p, PowerKind kind) {
  const Field f = m.field();
  auto row_idx = power_basis(m.rows(), p, kind);
  auto col_idx = power_basis(m.cols(), p, kind);
  Matrix out(f, row_idx.size(), col_idx.size());
  if (kind == PowerKind::wedge) {
    for (std::size_t a = 0; a < row_idx.size(); ++a)
      for (std::size_t b = 0; b < col_idx.size(); ++b) {
        Matrix sub(f, p, p);
        for (std::size_t i = 0; i < p; ++i)
          for (std::size_t j = 0; j < p; ++j) sub(i, j) = m(row_idx[a][i], col_idx[b][j]);
        out(a, b) = determinant(std::move(sub));
      }
    return out;
  }
  // Symmetric power: expand the product of the selected rows as a polynomial
  // in the column variables, keyed by sorted multisets.
  std::map<std::vector<std::size_t>, std::size_t> col_pos;
  for (std::size_t b = 0; b < col_idx.size(); ++b) col_pos[col_idx[b]] = b;
  for (std::size_t a = 0; a < row_idx.size(); ++a) {
    std::map<std::vector<std::size_t>, Scalar> poly;
    poly[{}] = Scalar::one(f);
    for (std::size_t i : row_idx[a]) {
      std::map<std::vector<std::size_t>, Scalar> next;
      for (const auto& [mono, coef] : poly)
        for (std::size_t j = 0; j < m.cols(); ++j) {
          if (m(i, j).is_zero()) continue;
          auto key = mono;
          key.insert(std::upper_bound(key.begin(), key.end(), j), j);
          auto it = next.find(key);
          if (it == next.end())
            next.emplace(std::move(key), coef * m(i, j));
          else
            it->second += coef * m(i, j);
        }
      poly = std::move(next);
    }
    for (const auto& [mono, coef] : poly) out(a, col_pos.at(mono)) = coef;
  }
  return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

}  // namespace tautcoh
