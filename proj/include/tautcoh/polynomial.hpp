#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tautcoh {

/// Univariate polynomial in u with arbitrary-precision integer coefficients.
/// Trailing zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpz_class> coefficients);
  static Polynomial constant(long c);
  static Polynomial monomial(std::size_t degree, long c = 1);
  /// (u + 1)^k
  static Polynomial one_plus_u_pow(std::size_t k);

  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  mpz_class coefficient(std::size_t degree) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  mpz_class evaluate(long u) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::vector<long> to_longs() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Bivariate polynomial in x, y; zero coefficients are never stored.
class BiPolynomial {
 public:
  using Exponent = std::pair<std::size_t, std::size_t>;

  BiPolynomial() = default;
  static BiPolynomial monomial(std::size_t i, std::size_t j, long c = 1);

  const std::map<Exponent, mpz_class>& terms() const { return terms_; }
  mpz_class coefficient(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, const mpz_class& c);
  mpz_class evaluate(long x, long y) const;

  friend BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b);
  /// Multiplication by x^i y^j.
  BiPolynomial shifted(std::size_t i, std::size_t j) const;
  friend bool operator==(const BiPolynomial& a, const BiPolynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Exponent, mpz_class> terms_;
};

mpz_class binomial(long n, long k);

}  // namespace tautcoh
