#include "tautcoh/corpus.hpp"

#include <fstream>
#include <random>
#include <set>

#include "tautcoh/errors.hpp"

namespace tautcoh {

namespace {

Matrix to_matrix(const IntRows& rows, std::size_t ground, Field f) {
  Matrix m(f, rows.size(), ground);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < ground; ++k) m(i, k) = Scalar(f, rows[i][k]);
  return m;
}

std::vector<Subset> bases_over(const IntRows& rows, std::size_t ground, Field f) {
  return matroid_from_realization(Realization(to_matrix(rows, ground, f))).bases();
}

// Integer realizations of U(r, n) for n <= 4 that survive reduction mod 3.
IntRows uniform_rows(std::size_t r, std::size_t n) {
  IntRows rows;
  if (r == 0) return rows;
  if (r == n) {
    for (std::size_t i = 0; i < n; ++i) {
      rows.emplace_back(n, 0);
      rows.back()[i] = 1;
    }
    return rows;
  }
  if (r == 1) return {std::vector<long>(n, 1)};
  if (r + 1 == n) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      rows.emplace_back(n, 0);
      rows.back()[i] = 1;
      rows.back()[n - 1] = -1;
    }
    return rows;
  }
  // Vandermonde on 0, 1, ..., n-1 with a point at infinity.
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> row(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      long v = 1;
      for (std::size_t e = 0; e < i; ++e) v *= static_cast<long>(k);
      row[k] = v;
    }
    row[n - 1] = i + 1 == r ? 1 : 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Signed vertex-edge incidence; its row space is the cut space.
IntRows incidence_rows(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  IntRows rows(vertices, std::vector<long>(edges.size(), 0));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    rows[edges[k].first][k] = 1;
    rows[edges[k].second][k] = -1;
  }
  return rows;
}

IntRows with_loop(IntRows rows) {
  for (auto& r : rows) r.push_back(0);
  return rows;
}

IntRows with_coloop(IntRows rows, std::size_t ground) {
  for (auto& r : rows) r.push_back(0);
  std::vector<long> extra(ground + 1, 0);
  extra[ground] = 1;
  rows.push_back(std::move(extra));
  return rows;
}

CorpusEntry entry(std::string name, std::string tag, Field f, std::size_t ground, IntRows rows,
                  std::optional<std::uint64_t> seed = {}) {
  CorpusEntry e{std::move(name), std::move(tag), f, ground, std::move(rows), seed, {}};
  e.bases = bases_over(e.generators, ground, f);
  return e;
}

std::string uname(std::size_t r, std::size_t n) { return "U" + std::to_string(r) + "," + std::to_string(n); }

CorpusEntry random_rank2(std::uint64_t seed, Field f, std::size_t n) {
  std::mt19937_64 rng(seed);
  const long lo = f.is_rational() ? -3 : 0;
  const long span = f.is_rational() ? 7 : static_cast<long>(f.prime);
  for (;;) {
    IntRows rows(2, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& x : r) x = lo + static_cast<long>(rng() % static_cast<std::uint64_t>(span));
    if (Realization(to_matrix(rows, n, f)).rank() == 2)
      return entry("random-" + f.name() + "-" + std::to_string(seed), "random", f, n, std::move(rows), seed);
  }
}

}  // namespace

Corpus make_corpus(const CorpusSpec& spec) {
  if (spec.max_uniform > 4) throw Refusal("the default corpus is capped at n <= 4");
  const Field q = Field::rationals();
  Corpus c;
  c.seed = spec.seed;
  for (std::size_t n = 1; n <= spec.max_uniform; ++n)
    for (std::size_t r = 0; r <= n; ++r) {
      c.entries.push_back(entry(uname(r, n), "uniform", q, n, uniform_rows(r, n)));
    }
  for (std::size_t n = 1; n <= 4; ++n) c.entries.push_back(entry("B" + std::to_string(n), "boolean", q, n, uniform_rows(n, n)));
  c.entries.push_back(entry("K3", "graphic", q, 3, incidence_rows(3, {{0, 1}, {1, 2}, {0, 2}})));
  c.entries.push_back(entry("P3", "graphic", q, 2, incidence_rows(3, {{0, 1}, {1, 2}})));
  c.entries.push_back(entry("P4", "graphic", q, 3, incidence_rows(4, {{0, 1}, {1, 2}, {2, 3}})));
  for (auto [r, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 3}, {1, 3}, {2, 4}}) {
    c.entries.push_back(entry(uname(r, n) + "+loop", "loop", q, n + 1, with_loop(uniform_rows(r, n))));
    c.entries.push_back(entry(uname(r, n) + "+coloop", "coloop", q, n + 1, with_coloop(uniform_rows(r, n), n)));
  }
  for (std::size_t k = 0; k < spec.random_count; ++k) {
    c.entries.push_back(random_rank2(spec.seed + k, q, 4));
    c.entries.push_back(random_rank2(spec.seed + 100 + k, Field::fp(3), 4));
  }
  return c;
}

std::optional<Realization> realize(const CorpusEntry& e, Field field) {
  if (!e.native.is_rational() && e.native != field) return std::nullopt;
  Realization L(to_matrix(e.generators, e.ground, field));
  if (field != e.native && matroid_from_realization(L).bases() != e.bases) return std::nullopt;
  return L;
}

void validate_corpus(const Corpus& c) {
  for (const auto& e : c.entries) {
    for (const auto& r : e.generators)
      if (r.size() != e.ground) throw InputError(e.name + ": ragged generators");
    if (bases_over(e.generators, e.ground, e.native) != e.bases)
      throw InputError(e.name + ": stored matroid does not match its realization");
  }
}

Json corpus_to_json(const Corpus& c) {
  Json j;
  j["seed"] = c.seed;
  Json list = Json::array();
  for (const auto& e : c.entries) {
    Json x = field_to_json(e.native);
    x["name"] = e.name;
    x["tag"] = e.tag;
    x["ground"] = e.ground;
    x["matrix"] = e.generators;
    if (e.seed) x["seed"] = *e.seed;
    x["bases"] = e.bases;
    list.push_back(std::move(x));
  }
  j["entries"] = std::move(list);
  return j;
}

Corpus corpus_from_json(const Json& j) {
  try {
    Corpus c;
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& x : j.at("entries")) {
      CorpusEntry e;
      e.name = x.at("name").get<std::string>();
      e.tag = x.at("tag").get<std::string>();
      e.native = realization_from_json(x).field();
      e.ground = x.at("ground").get<std::size_t>();
      e.generators = x.at("matrix").get<IntRows>();
      if (x.contains("seed")) e.seed = x.at("seed").get<std::uint64_t>();
      e.bases = x.at("bases").get<std::vector<Subset>>();
      c.entries.push_back(std::move(e));
    }
    validate_corpus(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed corpus JSON: ") + e.what());
  }
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return corpus_from_json(j);
}

std::vector<CorpusEntry> gf_extension(std::uint64_t seed) {
  const Field q = Field::rationals();
  std::vector<CorpusEntry> out;
  auto vandermonde = [](std::size_t r, std::size_t n) {
    IntRows rows(r, std::vector<long>(n));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        long v = 1;
        for (std::size_t e = 0; e < i; ++e) v *= static_cast<long>(k + 1);
        rows[i][k] = v;
      }
    return rows;
  };
  for (std::size_t n = 5; n <= 8; ++n)
    for (std::size_t r : std::set<std::size_t>{2, 3, n - 2}) out.push_back(entry(uname(r, n), "uniform", q, n, vandermonde(r, n)));
  out.push_back(entry("K4", "graphic", q, 6, incidence_rows(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
  for (std::size_t n = 5; n <= 8; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k = 0; k < n; ++k) edges.emplace_back(k, (k + 1) % n);
    out.push_back(entry("C" + std::to_string(n), "graphic", q, n, incidence_rows(n, edges)));
  }
  out.push_back(entry("Fano", "projective", Field::fp(2), 7,
                      {{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}}));
  out.push_back(entry("U2,6+loop+coloop", "coloop", q, 8, with_coloop(with_loop(vandermonde(2, 6)), 7)));
  std::mt19937_64 rng(seed);
  for (std::size_t n : {std::size_t{7}, std::size_t{8}}) {
    IntRows rows(3, std::vector<long>(n));
    for (auto& r : rows)
      for (auto& x : r) x = static_cast<long>(rng() % 5) - 2;
    out.push_back(entry("random3-" + std::to_string(n), "random", q, n, std::move(rows), seed));
  }
  return out;
}

}  // namespace tautcoh
