#include "tautcoh/p1.hpp"

#include <algorithm>

#include "tautcoh/cech.hpp"
#include "tautcoh/errors.hpp"
#include "tautcoh/polynomial.hpp"

namespace tautcoh {

P1Bundle parse_p1_bundle(const std::string& s) {
  if (s == "S" || s == "S'") return P1Bundle::S;
  if (s == "Q" || s == "Q'") return P1Bundle::Q;
  if (s == "LS") return P1Bundle::LS;
  if (s == "LQ") return P1Bundle::LQ;
  throw InputError("unknown P1 bundle '" + s + "' (expected S, Q, LS or LQ)");
}

P1Functor parse_p1_functor(const std::string& s) {
  if (s == "wedge") return P1Functor::wedge;
  if (s == "sym") return P1Functor::sym;
  throw InputError("unknown functor '" + s + "' (expected wedge or sym)");
}

namespace {

// k^E ⊇ V, embedded from k^{E∖n} by inserting a zero at `element`.
Matrix embed(const Matrix& v, std::size_t element, std::size_t n) {
  Matrix out(v.field(), v.rows(), n);
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0, k = 0; j < n; ++j) {
      if (j == element) continue;
      out(i, j) = v(i, k++);
    }
  return out;
}

Matrix unit_row(Field f, std::size_t n, std::size_t e) {
  Matrix out(f, 1, n);
  out(0, e) = Scalar::one(f);
  return out;
}

struct Minors {
  bool loop = false;
  bool coloop = false;
  std::size_t contracted = 0;  // dim L/n
  std::size_t deleted = 0;     // dim L∖n
};

Minors minors_of(const Realization& L, std::size_t element) {
  const Matroid M = matroid_from_realization(L);
  const Subset bit = Subset{1} << element;
  Minors out;
  out.loop = M.loops() & bit;
  out.coloop = M.coloops() & bit;
  out.contracted = minor(L, bit, MinorMode::contract).rank();
  out.deleted = minor(L, bit, MinorMode::remove).rank();
  return out;
}

BundleModel twist_line(Field f, long k) {
  BundleModel o;
  o.field = f;
  o.ground = 2;
  o.weights = {{0, 0}};
  o.a1 = Matrix::identity(f, 1);
  o.a0 = Matrix(f, 0, 1);
  o.shift = {0, k, 0, 0};
  return o;
}

long binom(long n, long k) { return binomial(n, k).get_si(); }

}  // namespace

BundleModel p1_model(const Realization& L, std::size_t element, P1Bundle which) {
  const std::size_t n = L.ground_size();
  if (element >= n) throw InputError("distinguished element out of range");
  const Field f = L.field();
  BundleModel m;
  m.field = f;
  m.ground = 2;
  for (std::size_t e = 0; e < n; ++e) m.weights.push_back(e == element ? std::vector<long>{1, -1} : std::vector<long>{0, 0});
  const Subset bit = Subset{1} << element;
  switch (which) {
    case P1Bundle::S:
      m.a1 = L.basis();
      m.a0 = Matrix(f, 0, n);
      break;
    case P1Bundle::Q:
      m.a1 = Matrix::identity(f, n);
      m.a0 = L.basis();
      break;
    case P1Bundle::LS:
      m.a1 = L.basis();
      m.a0 = row_space(embed(minor(L, bit, MinorMode::contract).basis(), element, n));
      break;
    case P1Bundle::LQ: {
      Matrix top = embed(minor(L, bit, MinorMode::remove).basis(), element, n);
      if (!(matroid_from_realization(L).loops() & bit)) top = subspace_sum(top, unit_row(f, n, element));
      m.a1 = row_space(top);
      m.a0 = L.basis();
      break;
    }
  }
  return m;
}

std::vector<long> splitting_type(const BundleModel& m, long window) {
  // f(k) = h^0(E(k)); g(k) = f(k) - f(k-1) counts summands of degree >= -k.
  std::vector<long> f;
  for (long k = -window - 1; k <= window; ++k)
    f.push_back(static_cast<long>(cohomology(tensor_model(m, twist_line(m.field, k))).h0()));
  std::vector<long> g(f.size(), 0);
  for (std::size_t i = 1; i < f.size(); ++i) g[i] = f[i] - f[i - 1];
  std::vector<long> degrees;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const long k = -window - 1 + static_cast<long>(i);
    const long prev = i >= 2 ? g[i - 1] : 0;
    for (long c = 0; c < g[i] - prev; ++c) degrees.push_back(-k);
  }
  std::sort(degrees.begin(), degrees.end());
  if (degrees.size() != m.rank())
    throw InternalError("splitting type window too small: found " + std::to_string(degrees.size()) +
                        " summands for rank " + std::to_string(m.rank()));
  return degrees;
}

std::vector<long> splitting_type(const Realization& L, std::size_t element, P1Bundle which) {
  return splitting_type(p1_model(L, element, which), 3);
}

P1Dims p1_cohomology(const Realization& L, std::size_t element, P1Functor functor, std::size_t p, P1Bundle which) {
  const BundleModel base = p1_model(L, element, which);
  const auto kind = functor == P1Functor::wedge ? PowerKind::wedge : PowerKind::sym;
  const auto h = cohomology(power_model(base, p, kind)).h;
  return {h[0], h[1]};
}

P1Dims p1_predicted(const Realization& L, std::size_t element, P1Functor functor, std::size_t p, P1Bundle which) {
  if (which != P1Bundle::S && which != P1Bundle::Q) throw InputError("predictions cover S' and Q' only");
  const Minors mi = minors_of(L, element);
  const long n = static_cast<long>(L.ground_size());
  const long d = static_cast<long>(mi.contracted);
  const long pp = static_cast<long>(p);
  const bool neither = !mi.loop && !mi.coloop;
  if (functor == P1Functor::wedge) {
    if (which == P1Bundle::S) return {static_cast<std::size_t>(binom(mi.coloop ? d + 1 : d, pp)), 0};
    long h0 = 0;
    if (mi.loop)
      h0 = binom(n - d, pp);
    else if (mi.coloop)
      h0 = binom(n - d - 1, pp);
    else
      h0 = binom(n - 1 - d, pp) + (pp >= 1 ? binom(n - 1 - static_cast<long>(mi.deleted), pp - 1) : 0);
    return {static_cast<std::size_t>(h0), 0};
  }
  // Sym^p of a space of dimension m has dimension C(m + p - 1, p).
  auto sym_dim = [](long m, long q) { return q == 0 ? 1 : (m == 0 ? 0 : binom(m + q - 1, q)); };
  if (which == P1Bundle::S) {
    const long h0 = sym_dim(mi.coloop ? d + 1 : d, pp);
    long h1 = 0;
    if (neither)
      for (long i = 0; i + 2 <= pp; ++i) h1 += (pp - 1 - i) * sym_dim(d, i);
    return {static_cast<std::size_t>(h0), static_cast<std::size_t>(h1)};
  }
  const long quotient = n - 1 - d;
  return {static_cast<std::size_t>(sym_dim(mi.coloop ? quotient : quotient + 1, pp)), 0};
}

}  // namespace tautcoh
