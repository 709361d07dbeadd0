#include "tautcoh/suites.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "suite_internal.hpp"

namespace tautcoh {

namespace fs = std::filesystem;

namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

}  // namespace

DimCache::DimCache(std::optional<std::string> dir) : dir_(std::move(dir)) {
  if (dir_) fs::create_directories(*dir_);
}

std::vector<std::size_t> DimCache::cohomology(const BundleExpr& expr, const Realization& L,
                                              const CohomologyOptions& opts) {
  if (!dir_) return tautcoh::cohomology(expr, L, opts).h;
  const std::string key = L.field().name() + "|" + L.basis().to_string() + "|" + expr.to_string();
  const fs::path file = fs::path(*dir_) / (fnv_hex(key) + ".json");
  if (std::ifstream in(file); in) {
    try {
      Json j;
      in >> j;
      if (j.at("key") == key) {
        ++hits_;
        return j.at("h").get<std::vector<std::size_t>>();
      }
    } catch (const nlohmann::json::exception&) {
      // Unreadable entries are recomputed and overwritten.
    }
  }
  auto h = tautcoh::cohomology(expr, L, opts).h;
  std::ofstream(file) << Json{{"key", key}, {"h", h}}.dump() << "\n";
  return h;
}

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += !c.pass && !c.skipped && !c.report_only;
  return n;
}

std::size_t VerificationReport::skipped() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.skipped;
  return n;
}

Json VerificationReport::to_json(bool timings) const {
  Json j;
  j["suite"] = suite;
  j["field"] = field.name();
  j["engine_version"] = kEngineVersion;
  j["cases_total"] = cases.size();
  j["failures"] = failures();
  j["skipped"] = skipped();
  Json list = Json::array();
  double total = 0;
  for (const auto& c : cases) {
    Json x;
    x["id"] = c.id;
    x["entry"] = c.entry;
    x["verdict"] = c.skipped ? "skipped" : (c.pass ? "pass" : (c.report_only ? "finding" : "fail"));
    if (c.report_only) x["report_only"] = true;
    if (!c.detail.empty()) x["detail"] = c.detail;
    if (!c.data.empty()) x["data"] = c.data;
    if (!c.counterexample.is_null()) x["counterexample"] = c.counterexample;
    if (timings) x["seconds"] = c.seconds;
    total += c.seconds;
    list.push_back(std::move(x));
  }
  j["cases"] = std::move(list);
  if (timings) j["seconds"] = total;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm12", "thm13", "thm15", "thm16", "prop-one-component", "p1",
                                              "cor14", "cor51", "cor53", "speyer", "gf-identities"};
  return names;
}

namespace detail {

void run_case(SuiteContext& ctx, const std::string& id, const std::string& entry,
              const std::function<void(CaseResult&)>& body) {
  CaseResult c;
  c.id = id;
  c.entry = entry;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const Refusal& e) {
    throw Refusal(ctx.report.suite + " " + id + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(ctx.report.suite + " " + id + ": " + e.what());
  } catch (const InternalError& e) {
    throw InternalError(ctx.report.suite + " " + id + ": " + e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.pass && !c.skipped && !c.report_only) {
    fs::create_directories(ctx.opts.repro_dir);
    Json repro{{"suite", ctx.report.suite}, {"field", ctx.report.field.name()}, {"case", c.id},
               {"detail", c.detail},        {"data", c.data},                   {"counterexample", c.counterexample}};
    write_json(repro, (fs::path(ctx.opts.repro_dir) / (sanitize(ctx.report.suite + "-" + c.id) + ".json")).string());
  }
  ctx.report.cases.push_back(std::move(c));
}

void add_skip(SuiteContext& ctx, const std::string& id, const std::string& entry, const std::string& why) {
  CaseResult c;
  c.id = id;
  c.entry = entry;
  c.skipped = true;
  c.detail = why;
  ctx.report.cases.push_back(std::move(c));
}

Json failing_weight(const BundleExpr& expr, const Realization& L, const CohomologyOptions& opts) {
  CohomologyOptions o = opts;
  o.per_weight = true;
  for (const auto& w : tautcoh::cohomology(expr, L, o).per_weight)
    for (std::size_t i = 1; i < w.h.size(); ++i)
      if (w.h[i]) return Json{{"mu", w.mu}, {"h", w.h}};
  return nullptr;
}

Json counterexample(const Realization& L, const std::string& expr, const Json& weight) {
  Json j{{"realization", realization_to_json(L)}, {"expression", expr}};
  if (!weight.is_null()) j["weight"] = weight;
  return j;
}

}  // namespace detail

VerificationReport run_suite(const std::string& name, const Corpus& corpus, const SuiteOptions& opts) {
  using Fn = void (*)(detail::SuiteContext&);
  static const std::map<std::string, Fn> table{
      {"thm12", detail::suite_thm12},   {"thm13", detail::suite_thm13},
      {"thm15", detail::suite_thm15},   {"thm16", detail::suite_thm16},
      {"prop-one-component", detail::suite_one_component},
      {"p1", detail::suite_p1},         {"cor14", detail::suite_cor14},
      {"cor51", detail::suite_cor51},   {"cor53", detail::suite_cor53},
      {"speyer", detail::suite_speyer}, {"gf-identities", detail::suite_gf}};
  const auto it = table.find(name);
  if (it == table.end()) throw InputError("unknown suite '" + name + "'");
  VerificationReport report;
  report.suite = name;
  report.field = opts.field;
  detail::SuiteContext ctx{corpus, opts, DimCache(opts.cache_dir), report};
  it->second(ctx);
  return report;
}

}  // namespace tautcoh
