#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautcoh/json_io.hpp"

namespace tautcoh {

using IntRows = std::vector<std::vector<long>>;

struct CorpusEntry {
  std::string name;
  std::string tag;  // uniform, graphic, boolean, loop, coloop, random
  Field native;     // field the generators were drawn over
  std::size_t ground = 0;
  IntRows generators;
  std::optional<std::uint64_t> seed;
  std::vector<Subset> bases;  // matroid over the native field, for re-validation
};

struct Corpus {
  std::uint64_t seed = 0;
  std::vector<CorpusEntry> entries;
};

struct CorpusSpec {
  std::uint64_t seed = 20240611;
  std::size_t max_uniform = 4;  // U(r, n) for 1 <= n <= max_uniform
  std::size_t random_count = 5;
};

/// Deterministic given the spec.
Corpus make_corpus(const CorpusSpec& spec = {});

/// The realization over `field`, or nothing when the entry cannot be moved
/// there: a prime-field entry asked for another field, or an integer entry
/// whose matroid changes after reduction mod p.
std::optional<Realization> realize(const CorpusEntry& e, Field field);

/// Recomputes every matroid; throws InputError on a mismatch.
void validate_corpus(const Corpus& c);

Json corpus_to_json(const Corpus& c);
Corpus corpus_from_json(const Json& j);
Corpus load_corpus(const std::string& path);

/// Extra matroids for the generating-function identities, up to |E| = 8.
std::vector<CorpusEntry> gf_extension(std::uint64_t seed);

}  // namespace tautcoh
