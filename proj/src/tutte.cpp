#include "tautcoh/tutte.hpp"

#include <algorithm>
#include <map>

#include "tautcoh/errors.hpp"

namespace tautcoh {
namespace {

using MemoKey = std::pair<Subset, std::vector<Subset>>;

// Largest element that is neither a loop nor a coloop, or -1.
int pivot_element(const Matroid& M) {
  const Subset free = M.ground() & ~M.loops() & ~M.coloops();
  if (free == 0) return -1;
  return 31 - std::countl_zero(free);
}

int largest_element(const Matroid& M) { return M.ground() == 0 ? -1 : 31 - std::countl_zero(M.ground()); }

// Each query owns its memo table; nothing is shared between calls.
class TutteRecursion {
 public:
  BiPolynomial run(const Matroid& M) {
    MemoKey key{M.ground(), M.bases()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BiPolynomial result;
    const int e = pivot_element(M);
    if (e < 0) {
      result = BiPolynomial::monomial(static_cast<std::size_t>(popcount(M.coloops())),
                                      static_cast<std::size_t>(popcount(M.loops())));
    } else {
      result = run(M.deletion(static_cast<std::size_t>(e))) + run(M.contraction(static_cast<std::size_t>(e)));
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  std::map<MemoKey, BiPolynomial> memo_;
};

BiPolynomial tutte_corank_nullity(const Matroid& M) {
  const auto ground = elements(M.ground());
  const std::size_t n = ground.size();
  const long r = static_cast<long>(M.rank());
  std::map<std::pair<long, long>, long> counts;  // (corank, nullity) -> #subsets
  for (Subset local = 0; local < (Subset{1} << n); ++local) {
    Subset s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (local & (Subset{1} << i)) s |= Subset{1} << ground[i];
    const long rk = static_cast<long>(M.rank_of(s));
    ++counts[{r - rk, popcount(s) - rk}];
  }
  BiPolynomial out;
  for (const auto& [ab, count] : counts) {
    const auto [a, b] = ab;
    for (long i = 0; i <= a; ++i)
      for (long j = 0; j <= b; ++j) {
        mpz_class c = binomial(a, i) * binomial(b, j) * count;
        if ((a - i + b - j) % 2) c = -c;
        out.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), c);
      }
  }
  return out;
}

template <typename F>
void for_each_subset(const Matroid& M, F&& f) {
  const auto ground = elements(M.ground());
  const std::size_t n = ground.size();
  for (Subset local = 0; local < (Subset{1} << n); ++local) {
    Subset s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (local & (Subset{1} << i)) s |= Subset{1} << ground[i];
    f(s);
  }
}

Polynomial ext_q_recursion(const Matroid& M, std::map<MemoKey, Polynomial>& memo) {
  MemoKey key{M.ground(), M.bases()};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Polynomial result;
  const int e = largest_element(M);
  if (e < 0) {
    result = Polynomial::constant(1);
  } else {
    const Subset bit = Subset{1} << e;
    const auto idx = static_cast<std::size_t>(e);
    if (M.loops() & bit) {
      result = Polynomial::one_plus_u_pow(1) * ext_q_recursion(M.deletion(idx), memo);
    } else if (M.coloops() & bit) {
      result = ext_q_recursion(M.contraction(idx), memo);
    } else {
      result = Polynomial::monomial(1) * ext_q_recursion(M.deletion(idx), memo) +
               ext_q_recursion(M.contraction(idx), memo);
    }
  }
  memo.emplace(std::move(key), result);
  return result;
}

}  // namespace

BiPolynomial tutte(const Matroid& M, TutteRoute route) {
  if (route == TutteRoute::corank_nullity) return tutte_corank_nullity(M);
  TutteRecursion rec;
  return rec.run(M);
}

Polynomial ext_s_gf(const Matroid& M, ExtSRoute route) {
  if (route == ExtSRoute::closed) return Polynomial::one_plus_u_pow(static_cast<std::size_t>(popcount(M.coloops())));
  // g(L) = (u+1) g(L/n) if n is a coloop, g(L/n) otherwise.
  Polynomial acc = Polynomial::constant(1);
  Matroid cur = M;
  for (int e = largest_element(cur); e >= 0; e = largest_element(cur)) {
    const auto idx = static_cast<std::size_t>(e);
    if (cur.coloops() & (Subset{1} << e)) acc = acc * Polynomial::one_plus_u_pow(1);
    cur = cur.contraction(idx);
  }
  return acc;
}

Polynomial ext_q_gf(const Matroid& M, ExtQRoute route) {
  const std::size_t n = M.size();
  switch (route) {
    case ExtQRoute::spanning_enum: {
      std::vector<mpz_class> c(n + 1, 0);
      for_each_subset(M, [&](Subset s) {
        if (M.is_spanning(s)) c[n - static_cast<std::size_t>(popcount(s))] += 1;
      });
      return Polynomial(std::move(c));
    }
    case ExtQRoute::recursion: {
      std::map<MemoKey, Polynomial> memo;
      return ext_q_recursion(M, memo);
    }
    case ExtQRoute::tutte: {
      // u^{n-r} Σ t_ij (1 + 1/u)^j = Σ t_ij C(j,k) u^{n-r-k}.
      const long shift = static_cast<long>(n) - static_cast<long>(M.rank());
      std::vector<mpz_class> c(n + 1, 0);
      // x evaluates to 1, so only the y-exponent matters.
      const BiPolynomial t = tutte(M, TutteRoute::recursion);
      for (const auto& [e, coef] : t.terms()) {
        const long j = static_cast<long>(e.second);
        for (long k = 0; k <= j; ++k) {
          const long deg = shift - k;
          if (deg < 0) throw InternalError("ext_q_gf: negative degree in Tutte substitution");
          c[static_cast<std::size_t>(deg)] += coef * binomial(j, k);
        }
      }
      return Polynomial(std::move(c));
    }
  }
  throw InternalError("unknown ext_q_gf route");
}

std::vector<mpz_class> sym_q_gf(const Matroid& M, std::size_t degree) {
  const long m = static_cast<long>(M.size()) - popcount(M.coloops());
  std::vector<mpz_class> out;
  for (std::size_t p = 0; p <= degree; ++p) {
    const long pp = static_cast<long>(p);
    out.push_back(m == 0 ? mpz_class(p == 0 ? 1 : 0) : binomial(m - 1 + pp, pp));
  }
  return out;
}

std::size_t nbc_count(const Matroid& M, const std::vector<std::size_t>& order) {
  std::vector<Subset> broken;
  for (Subset c : circuits(M)) {
    auto es = elements(c);
    auto least = *std::min_element(es.begin(), es.end(),
                                   [&](std::size_t a, std::size_t b) { return order.at(a) < order.at(b); });
    broken.push_back(c & ~(Subset{1} << least));
  }
  std::size_t count = 0;
  for (Subset b : M.bases())
    if (std::none_of(broken.begin(), broken.end(), [b](Subset bc) { return (b & bc) == bc; })) ++count;
  return count;
}

mpz_class log_canonical_number(const Matroid& M) {
  mpz_class total = 0;
  const long r = static_cast<long>(M.rank());
  for_each_subset(M, [&](Subset s) {
    if (!M.is_spanning(s)) return;
    total += ((popcount(s) - r) % 2 == 0) ? 1 : -1;
  });
  return total;
}

}  // namespace tautcoh
