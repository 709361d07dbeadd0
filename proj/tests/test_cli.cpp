#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "../src/suite_internal.hpp"
#include "helpers.hpp"
#include "tautcoh/corpus.hpp"
#include "tautcoh/json_io.hpp"
#include "tautcoh/suites.hpp"

using namespace tautcoh;
using namespace tautcoh::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tautcoh-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TAUTCOH_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Corpus, DeterministicAndLargeEnough) {
  const auto a = make_corpus();
  const auto b = make_corpus();
  EXPECT_EQ(corpus_to_json(a).dump(), corpus_to_json(b).dump());
  EXPECT_GE(a.entries.size(), 20u);
  std::set<std::string> tags, names;
  for (const auto& e : a.entries) {
    tags.insert(e.tag);
    EXPECT_TRUE(names.insert(e.name).second) << "duplicate name " << e.name;
  }
  for (const char* t : {"uniform", "graphic", "boolean", "loop", "coloop", "random"}) EXPECT_TRUE(tags.count(t)) << t;
  EXPECT_NO_THROW(validate_corpus(a));

  CorpusSpec other;
  other.seed = 99;
  EXPECT_NE(corpus_to_json(make_corpus(other)).dump(), corpus_to_json(a).dump());
  other.max_uniform = 5;
  EXPECT_THROW(make_corpus(other), Refusal);
}

TEST(Corpus, JsonRoundTripAndTamperDetection) {
  const auto c = make_corpus();
  const auto j = corpus_to_json(c);
  EXPECT_EQ(corpus_to_json(corpus_from_json(j)).dump(), j.dump());

  Json bad = j;
  bad["entries"][3]["bases"].erase(0);
  EXPECT_THROW(validate_corpus(corpus_from_json(bad)), InputError);
  Json ragged = j;
  ragged["entries"][0]["matrix"][0].push_back(1);
  EXPECT_THROW(validate_corpus(corpus_from_json(ragged)), InputError);

  // Every entry realizes its own matroid over its native field.
  for (const auto& e : c.entries) EXPECT_TRUE(realize(e, e.native).has_value()) << e.name;
}

TEST(RealizationJson, RoundTripAndErrors) {
  const auto L = realization_from_json(Json::parse(R"({"field":"Q","matrix":[["1","-2/3","0"],["0","1","5/7"]]})"));
  EXPECT_EQ(L.basis()(0, 2), Scalar::parse(kQ, "10/21"));
  EXPECT_EQ(realization_from_json(realization_to_json(L)), L);
  const auto F = real({{1, 2, 0}, {0, 1, 1}}, Field::fp(3));
  EXPECT_EQ(realization_from_json(realization_to_json(F)), F);

  const Json ints = Json::parse(R"({"field":"Fp","p":5,"matrix":[[1,2,3],[0,1,4]]})");
  EXPECT_EQ(realization_from_json(ints).field(), Field::fp(5));
  EXPECT_EQ(realization_from_json(Json::parse(R"({"matrix":[[1,1]]})")).field(), kQ);
  for (const char* text : {R"({"field":"Q","matrix":[[1,2],[3]]})", R"({"field":"Q","matrix":[["1/0"]]})",
                           R"({"field":"R","matrix":[[1]]})", R"({"field":"Fp","matrix":[[1]]})",
                           R"({"field":"Fp","p":4,"matrix":[[1]]})", R"({"field":"Fp","p":3,"matrix":[["1/2x"]]})"})
    EXPECT_THROW(realization_from_json(Json::parse(text)), InputError) << text;
}

TEST(DimCache, HitsAfterFirstComputation) {
  const auto dir = scratch("cache");
  const auto L = real({{1, 0, 1}, {0, 1, 1}});
  const auto expr = BundleExpr::parse("sym(2,Q)");
  DimCache cache(dir.string());
  const auto first = cache.cohomology(expr, L, {});
  EXPECT_EQ(cache.hits(), 0u);
  EXPECT_EQ(cache.cohomology(expr, L, {}), first);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(first, cohomology(expr, L).h);

  // A corrupted entry is recomputed, not trusted.
  for (const auto& f : fs::directory_iterator(dir)) write_text(f.path(), "{not json");
  DimCache again(dir.string());
  EXPECT_EQ(again.cohomology(expr, L, {}), first);
  EXPECT_EQ(again.hits(), 0u);

  // Different fields do not share entries.
  DimCache third(dir.string());
  third.cohomology(expr, real({{1, 0, 1}, {0, 1, 1}}, Field::fp(3)), {});
  EXPECT_EQ(third.hits(), 0u);
}

TEST(Suites, FailingCaseWritesRepro) {
  const auto dir = scratch("repro");
  const Corpus corpus = make_corpus();
  SuiteOptions opts;
  opts.repro_dir = dir.string();
  VerificationReport report;
  report.suite = "probe";
  detail::SuiteContext ctx{corpus, opts, DimCache(), report};
  detail::run_case(ctx, "U2,3 Q", "U2,3", [](CaseResult& c) {
    c.pass = false;
    c.detail = "forced";
    c.counterexample = detail::counterexample(real({{1, 0, 1}, {0, 1, 1}}), "Q", Json{{"mu", {1, 0, 0}}});
  });
  detail::run_case(ctx, "ok", "U2,3", [](CaseResult&) {});
  EXPECT_EQ(report.failures(), 1u);
  std::size_t files = 0;
  for (const auto& f : fs::directory_iterator(dir)) {
    ++files;
    Json j;
    std::ifstream(f.path()) >> j;
    EXPECT_EQ(j.at("case"), "U2,3 Q");
    EXPECT_EQ(j.at("counterexample").at("expression"), "Q");
    EXPECT_NO_THROW(realization_from_json(j.at("counterexample").at("realization")));
  }
  EXPECT_EQ(files, 1u);
}

TEST(Suites, ReportsAreByteStableWithoutTimings) {
  const Corpus corpus = make_corpus();
  SuiteOptions opts;
  opts.repro_dir = scratch("stable").string();
  const auto a = run_suite("gf-identities", corpus, opts);
  const auto b = run_suite("gf-identities", corpus, opts);
  EXPECT_TRUE(a.all_pass());
  EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
  const auto j = a.to_json(true);
  EXPECT_EQ(j.at("engine_version"), kEngineVersion);
  EXPECT_THROW(run_suite("thm99", corpus, opts), InputError);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  const auto good = dir / "u23.json";
  write_text(good, R"({"field":"Q","matrix":[[1,0,1],[0,1,1]]})");
  write_text(dir / "broken.json", R"({"field":"Q","matrix":[[1,0,1],[0,1)");
  const std::string g = good.string();
  EXPECT_EQ(run_cli("gf --input " + g), 0);
  EXPECT_EQ(run_cli("cohomology --input " + g + " --expr 'wedge(2,Q)' --field Q"), 0);
  EXPECT_EQ(run_cli("wonderful --input " + g + " --check log-canonical"), 0);
  EXPECT_EQ(run_cli("p1 --input " + g + " --functor sym --p 2 --which S"), 0);
  EXPECT_EQ(run_cli("fan --n 3"), 0);
  EXPECT_EQ(run_cli("verify gf-identities --repro-dir " + (dir / "repro").string()), 0);
  EXPECT_EQ(run_cli("corpus make --json-out " + (dir / "corpus.json").string()), 0);
  EXPECT_NO_THROW(load_corpus((dir / "corpus.json").string()));

  EXPECT_EQ(run_cli("gf --input " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("gf --input " + (dir / "broken.json").string()), 2);
  EXPECT_EQ(run_cli("cohomology --input " + g + " --expr 'wedge(2,'"), 2);
  EXPECT_EQ(run_cli("verify nosuchsuite"), 2);
  EXPECT_EQ(run_cli("--field F7 gf --input " + g), 2);
  EXPECT_EQ(run_cli("wonderful --input " + g + " --check immaculate"), 2);
}
