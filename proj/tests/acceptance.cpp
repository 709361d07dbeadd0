// Runs the verification suites behind the twelve acceptance criteria and
// prints one verdict line per criterion. Exit status ignores criterion 12.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include "tautcoh/corpus.hpp"
#include "tautcoh/json_io.hpp"
#include "tautcoh/suites.hpp"
#include "tautcoh/wonderful.hpp"

using namespace tautcoh;
namespace fs = std::filesystem;

namespace {

struct Run {
  VerificationReport report;
  double seconds = 0;
};

const fs::path kOut = "acceptance-reports";

Run run(const std::string& suite, const Corpus& corpus, Field field) {
  SuiteOptions opts;
  opts.field = field;
  opts.repro_dir = (kOut / "repro").string();
  const auto t0 = std::chrono::steady_clock::now();
  Run r{run_suite(suite, corpus, opts), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_json(r.report.to_json(), (kOut / (suite + "-" + field.name() + ".json")).string());
  return r;
}

bool suffix(const std::string& s, const std::string& end) {
  return s.size() >= end.size() && s.compare(s.size() - end.size(), end.size(), end) == 0;
}

// Failures among cases whose id ends with `end` (all cases when empty).
std::size_t failures(const VerificationReport& r, const std::string& end = "") {
  std::size_t n = 0;
  for (const auto& c : r.cases)
    if ((end.empty() || suffix(c.id, end)) && !c.pass && !c.skipped && !c.report_only) ++n;
  return n;
}

const CaseResult* find(const VerificationReport& r, const std::string& id) {
  for (const auto& c : r.cases)
    if (c.id == id) return &c;
  return nullptr;
}

int failed_required = 0;

void line(int id, bool pass, const std::string& what, const std::string& detail, bool report_only = false) {
  const char* verdict = report_only ? (pass ? "REPORT" : "REPORT*") : (pass ? "PASS" : "FAIL");
  std::printf("criterion %2d: %-7s %s (%s)\n", id, verdict, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass && !report_only) ++failed_required;
}

std::string summary(const Run& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, %zu failures, %zu skipped, %.1f s", r.report.cases.size(),
                r.report.failures(), r.report.skipped(), r.seconds);
  return buf;
}

}  // namespace

int main() {
  fs::create_directories(kOut);
  const Corpus corpus = make_corpus();
  std::map<std::string, std::size_t> ground;
  for (const auto& e : corpus.entries) ground[e.name] = e.ground;
  const Field Q = Field::rationals();

  // 1, 2: exterior powers of S and Q
  const Run thm12 = run("thm12", corpus, Q);
  double worst3 = 0, worst4 = 0;
  for (const auto& c : thm12.report.cases) {
    if (c.skipped) continue;
    const std::size_t n = ground[c.entry];
    // A case covers every p <= |E|, so this bounds the time per bundle.
    if (n == 3) worst3 = std::max(worst3, c.seconds);
    if (n == 4) worst4 = std::max(worst4, c.seconds);
  }
  char timing[96];
  std::snprintf(timing, sizeof timing, "slowest |E|=3 case %.3f s, |E|=4 case %.2f s", worst3, worst4);
  const bool fast = worst3 < 1.0 && worst4 < 300.0;
  line(1, failures(thm12.report, "/extS") == 0 && fast, "exterior powers of S",
       std::to_string(failures(thm12.report, "/extS")) + " failures, " + timing);

  bool u24 = false;
  if (const auto* c = find(thm12.report, "U2,4/extQ")) {
    const auto& dims = c->data.at("dims");
    u24 = dims.size() == 5 && dims[0][0] == 1 && dims[1][0] == 4 && dims[2][0] == 6 && dims[3][0] == 0;
  }
  line(2, failures(thm12.report, "/extQ") == 0 && u24, "exterior powers of Q",
       std::to_string(failures(thm12.report, "/extQ")) + " failures, U2,4 gives 6u^2+4u+1: " + (u24 ? "yes" : "no"));

  // 3: symmetric powers of Q
  const Run thm13 = run("thm13", corpus, Q);
  bool u12 = false;
  if (const auto* c = find(thm13.report, "U1,2/symQ")) {
    const auto& h0 = c->data.at("h0");
    u12 = h0.size() >= 3 && h0[0] == 1 && h0[1] == 2 && h0[2] == 3;
  }
  line(3, thm13.report.all_pass() && u12, "symmetric powers of Q",
       summary(thm13) + ", U1,2 gives 1,2,3: " + (u12 ? "yes" : "no"));

  // 4: the same dimension tables over F2 and F3
  {
    std::size_t compared = 0, mismatched = 0, fails = 0;
    for (Field f : {Field::fp(2), Field::fp(3)})
      for (const auto* base : {&thm12, &thm13}) {
        const Run other = run(base->report.suite, corpus, f);
        fails += other.report.failures();
        for (const auto& c : other.report.cases) {
          const auto* q = find(base->report, c.id);
          if (c.skipped || !q || q->skipped) continue;
          ++compared;
          if (c.data.at("dims") != q->data.at("dims")) ++mismatched;
        }
      }
    line(4, fails == 0 && mismatched == 0 && compared > 0, "characteristic independence over F2 and F3",
         std::to_string(compared) + " tables compared, " + std::to_string(mismatched) + " differ, " +
             std::to_string(fails) + " failures");
  }

  // 5: pushforward recursion
  {
    const Run a = run("thm15", corpus, Q);
    const Run b = run("thm16", corpus, Q);
    line(5, a.report.all_pass() && b.report.all_pass(), "pushforward recursion",
         "exterior: " + summary(a) + "; symmetric: " + summary(b));
  }

  // 6: one nonconstant component
  {
    const Run r = run("prop-one-component", corpus, Q);
    line(6, r.report.all_pass() && r.seconds < 10.0, "one nonconstant component", summary(r));
  }

  // 7: rank-one model on P^1
  {
    const Run r = run("p1", corpus, Q);
    line(7, r.report.all_pass(), "P^1 case tables and splitting types", summary(r));
  }

  // 8: log canonical sections of the wonderful variety
  {
    const Run r = run("cor14", corpus, Q);
    std::size_t k3 = 0;
    for (const auto& e : corpus.entries)
      if (e.name == "K3") k3 = log_canonical_cohomology(*realize(e, Q)).h[0];
    line(8, r.report.all_pass() && k3 == 2, "log canonical cohomology",
         summary(r) + ", K3 gives " + std::to_string(k3));
  }

  // 9, 10: immaculate line bundles and the ideal sheaf
  {
    const Run r = run("cor51", corpus, Q);
    line(9, r.report.all_pass(), "immaculate line bundles", summary(r));
  }
  {
    const Run r = run("cor53", corpus, Q);
    line(10, r.report.all_pass(), "ideal sheaf cohomology", summary(r));
  }

  // 11: generating-function identities up to |E| = 8
  {
    const Run r = run("gf-identities", corpus, Q);
    line(11, r.report.all_pass() && r.seconds < 10.0, "generating-function identities", summary(r));
  }

  // 12: sign of the Euler characteristic, reported only
  {
    const Run r = run("speyer", corpus, Q);
    std::size_t negative = 0, measured = 0;
    for (const auto& c : r.report.cases) {
      if (c.skipped) continue;
      ++measured;
      if (!c.pass) ++negative;
    }
    line(12, negative == 0, "signed Euler characteristic of O_W(-K-D)",
         std::to_string(measured) + " entries, " + std::to_string(negative) + " negative", true);
  }

  std::printf("%s\n", failed_required == 0 ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return failed_required == 0 ? 0 : 1;
}
