#include "tautcoh/polynomial.hpp"

namespace tautcoh {

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Polynomial::Polynomial(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(long c) { return Polynomial({mpz_class(c)}); }

Polynomial Polynomial::monomial(std::size_t degree, long c) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::one_plus_u_pow(std::size_t k) {
  std::vector<mpz_class> v;
  for (std::size_t i = 0; i <= k; ++i) v.push_back(binomial(static_cast<long>(k), static_cast<long>(i)));
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class Polynomial::coefficient(std::size_t degree) const { return degree < coeffs_.size() ? coeffs_[degree] : 0; }

mpz_class Polynomial::evaluate(long u) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(v));
}

std::vector<long> Polynomial::to_longs() const {
  std::vector<long> out;
  for (const auto& c : coeffs_) out.push_back(c.get_si());
  return out;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    const bool unit = coeffs_[i] == 1 && i > 0;
    if (!unit) s += coeffs_[i].get_str();
    if (i >= 1) s += "u";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

BiPolynomial BiPolynomial::monomial(std::size_t i, std::size_t j, long c) {
  BiPolynomial p;
  p.add(i, j, c);
  return p;
}

mpz_class BiPolynomial::coefficient(std::size_t i, std::size_t j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void BiPolynomial::add(std::size_t i, std::size_t j, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Exponent{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpz_class BiPolynomial::evaluate(long x, long y) const {
  mpz_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class px, py;
    mpz_pow_ui(px.get_mpz_t(), mpz_class(x).get_mpz_t(), e.first);
    mpz_pow_ui(py.get_mpz_t(), mpz_class(y).get_mpz_t(), e.second);
    acc += c * px * py;
  }
  return acc;
}

BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b) {
  BiPolynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add(e.first, e.second, c);
  return r;
}

BiPolynomial BiPolynomial::shifted(std::size_t i, std::size_t j) const {
  BiPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.first + i, e.second + j}, c);
  return r;
}

std::string BiPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    const bool has_var = e.first > 0 || e.second > 0;
    if (c != 1 || !has_var) s += c.get_str();
    if (e.first > 0) s += "x" + (e.first > 1 ? "^" + std::to_string(e.first) : std::string());
    if (e.second > 0) s += "y" + (e.second > 1 ? "^" + std::to_string(e.second) : std::string());
  }
  return s;
}

}  // namespace tautcoh
