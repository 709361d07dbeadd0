#pragma once

#include <random>
#include <vector>

#include "tautcoh/matrix.hpp"
#include "tautcoh/errors.hpp"
#include "tautcoh/matroid.hpp"

namespace tautcoh::testing {

inline const Field kQ = Field::rationals();

inline Matrix ints(const std::vector<std::vector<long>>& rows, Field f = kQ) { return Matrix::from_ints(f, rows); }

inline Realization real(const std::vector<std::vector<long>>& rows, Field f = kQ) {
  return Realization(Matrix::from_ints(f, rows));
}

inline Matrix random_matrix(std::mt19937_64& rng, Field f, std::size_t r, std::size_t c, long lo = -3, long hi = 3) {
  std::uniform_int_distribution<long> d(lo, hi);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, d(rng));
  return m;
}

inline bool is_zero(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row(i))
      if (!x.is_zero()) return false;
  return true;
}

inline std::vector<Field> small_fields() { return {Field::rationals(), Field::fp(2), Field::fp(3), Field::fp(5)}; }

}  // namespace tautcoh::testing
