#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace tautcoh {

/// Which exact field a computation runs over.
///
/// `prime == 0` selects the rationals. Any other value selects the prime
/// field of that order; the caller is responsible for passing a prime.
struct Field {
  std::uint32_t prime = 0;

  static Field rationals() { return {}; }
  static Field fp(std::uint32_t p);

  bool is_rational() const { return prime == 0; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

/// Parses "Q", "F2", "F3", "Fp" style names. Throws InputError otherwise.
Field parse_field(const std::string& name);

/// An exact element of a Field.
///
/// Rationals are kept in lowest terms with a positive denominator. Small
/// values live in two int64 words; anything that would overflow is promoted
/// to a GMP rational held behind an immutable shared pointer, so copies stay
/// cheap and the type keeps value semantics.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field f, std::int64_t v);
  Scalar(Field f, std::int64_t num, std::int64_t den);
  Scalar(Field f, const mpq_class& q);

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  /// Parses "3", "-2/5". Over a prime field the fraction is reduced mod p.
  static Scalar parse(Field f, const std::string& text);

  Field field() const { return Field{prime_}; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  Scalar operator-() const;
  Scalar inverse() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  mpq_class to_mpq() const;
  std::string to_string() const;

 private:
  void normalize_small(__int128 num, __int128 den);
  void set_big(mpq_class q);

  std::uint32_t prime_ = 0;
  // Rational: num_/den_ when big_ is null. Prime field: residue in num_, den_ = 1.
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace tautcoh
