#include "tautcoh/scalar.hpp"

#include <limits>
#include <numeric>

#include "tautcoh/errors.hpp"

namespace tautcoh {
namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min() + 1;

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod_reduce(__int128 v, std::uint32_t p) {
  __int128 r = v % static_cast<__int128>(p);
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint32_t p) {
  std::int64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = static_cast<std::int64_t>((__int128)result * base % p);
    base = static_cast<std::int64_t>((__int128)base * base % p);
    exp >>= 1U;
  }
  return result;
}

std::int64_t mpz_mod_p(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_si();
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::fp(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("field modulus " + std::to_string(p) + " is not a prime");
  return Field{p};
}

std::string Field::name() const { return is_rational() ? "Q" : "F" + std::to_string(prime); }

Field parse_field(const std::string& name) {
  if (name == "Q" || name == "QQ") return Field::rationals();
  if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
    try {
      unsigned long p = std::stoul(name.substr(1));
      if (p > (1UL << 31)) throw InputError("prime modulus exceeds 2^31");
      return Field::fp(static_cast<std::uint32_t>(p));
    } catch (const std::logic_error&) {
      throw InputError("unknown field '" + name + "'");
    }
  }
  throw InputError("unknown field '" + name + "'");
}

Scalar::Scalar(Field f, std::int64_t v) : prime_(f.prime) {
  if (prime_ != 0) {
    num_ = mod_reduce(v, prime_);
  } else {
    normalize_small(v, 1);
  }
}

Scalar::Scalar(Field f, std::int64_t num, std::int64_t den) : prime_(f.prime) {
  if (den == 0) throw InputError("zero denominator");
  if (prime_ != 0) {
    std::int64_t d = mod_reduce(den, prime_);
    if (d == 0) throw InputError("denominator vanishes modulo " + std::to_string(prime_));
    num_ = static_cast<std::int64_t>((__int128)mod_reduce(num, prime_) * mod_pow(d, prime_ - 2, prime_) % prime_);
  } else {
    normalize_small(num, den);
  }
}

Scalar::Scalar(Field f, const mpq_class& q) : prime_(f.prime) {
  if (prime_ != 0) {
    std::int64_t d = mpz_mod_p(q.get_den(), prime_);
    if (d == 0) throw InputError("denominator vanishes modulo " + std::to_string(prime_));
    num_ = static_cast<std::int64_t>((__int128)mpz_mod_p(q.get_num(), prime_) * mod_pow(d, prime_ - 2, prime_) % prime_);
  } else {
    set_big(q);
  }
}

Scalar Scalar::parse(Field f, const std::string& text) {
  try {
    mpq_class q(text, 10);
    if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    q.canonicalize();
    return Scalar(f, q);
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse scalar '" + text + "'");
  }
}

void Scalar::normalize_small(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  __int128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (num > kMax || num < kMin || den > kMax) {
    mpq_class q;
    // Split the 128-bit values through two 64-bit halves.
    auto to_mpz = [](__int128 v) {
      bool neg = v < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
      mpz_class hi(static_cast<unsigned long>(u >> 64));
      mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
      mpz_class r = (hi << 64) + lo;
      return neg ? mpz_class(-r) : r;
    };
    q.get_num() = to_mpz(num);
    q.get_den() = to_mpz(den);
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
    return;
  }
  num_ = static_cast<std::int64_t>(num);
  den_ = static_cast<std::int64_t>(den);
  big_.reset();
}

void Scalar::set_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    if (num_ == std::numeric_limits<std::int64_t>::min()) {
      big_ = std::make_shared<const mpq_class>(std::move(q));
      num_ = 0;
      den_ = 1;
      return;
    }
    big_.reset();
    return;
  }
  big_ = std::make_shared<const mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  q.get_num() = static_cast<long>(num_);
  q.get_den() = static_cast<long>(den_);
  return q;
}

std::string Scalar::to_string() const {
  if (prime_ != 0) return std::to_string(num_);
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (prime_ != 0) {
    r.num_ = num_ == 0 ? 0 : prime_ - num_;
  } else if (big_) {
    r.set_big(-*big_);
  } else {
    r.num_ = -num_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InternalError("division by zero");
  Scalar r;
  r.prime_ = prime_;
  if (prime_ != 0) {
    r.num_ = mod_pow(num_, prime_ - 2, prime_);
  } else if (big_) {
    r.set_big(1 / *big_);
  } else {
    r.normalize_small(den_, num_);
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.prime_ = a.prime_;
  if (a.prime_ != 0) {
    std::int64_t s = a.num_ + b.num_;
    r.num_ = s >= a.prime_ ? s - a.prime_ : s;
  } else if (a.big_ || b.big_) {
    r.set_big(a.to_mpq() + b.to_mpq());
  } else if (a.den_ == 1 && b.den_ == 1) {
    r.normalize_small(static_cast<__int128>(a.num_) + b.num_, 1);
  } else {
    r.normalize_small(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                      static_cast<__int128>(a.den_) * b.den_);
  }
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.prime_ = a.prime_;
  if (a.prime_ != 0) {
    r.num_ = static_cast<std::int64_t>(static_cast<__int128>(a.num_) * b.num_ % a.prime_);
  } else if (a.big_ || b.big_) {
    r.set_big(a.to_mpq() * b.to_mpq());
  } else if (a.num_ == 0 || b.num_ == 0) {
    r.num_ = 0;
  } else {
    r.normalize_small(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.big_ || b.big_) return a.to_mpq() == b.to_mpq();
  return a.num_ == b.num_ && a.den_ == b.den_;
}

}  // namespace tautcoh
