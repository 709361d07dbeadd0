// tautcoh: command-line front end.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tautcoh/corpus.hpp"
#include "tautcoh/errors.hpp"
#include "tautcoh/p1.hpp"
#include "tautcoh/suites.hpp"
#include "tautcoh/tutte.hpp"
#include "tautcoh/wonderful.hpp"

using namespace tautcoh;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;
constexpr int kInternal = 3;

struct Globals {
  std::string field = "Q";
  int jobs = 0;
  std::string cache;
  std::string json_out = "-";
};

Realization load_in_field(const std::string& path, const Globals& g, bool field_given) {
  Realization L = load_realization(path);
  if (!field_given) return L;
  const Field f = parse_field(g.field);
  if (f == L.field()) return L;
  if (!L.field().is_rational()) throw InputError("cannot move a prime-field realization to " + f.name());
  const Realization moved = change_field(L, f);
  if (matroid_from_realization(moved).bases() != matroid_from_realization(L).bases())
    throw InputError("the matroid changes over " + f.name());
  return moved;
}

std::size_t element_arg(long one_based, const Realization& L) {
  if (one_based < 1 || static_cast<std::size_t>(one_based) > L.ground_size())
    throw InputError("element must be between 1 and " + std::to_string(L.ground_size()));
  return static_cast<std::size_t>(one_based - 1);
}

// "1|2,3" with 1-based labels.
OrderedSetPartition parse_partition(const std::string& text, std::size_t n) {
  std::vector<Subset> blocks;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, '|')) {
    Subset s = 0;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      std::size_t e = 0;
      try {
        e = std::stoul(item);
      } catch (const std::exception&) {
        throw InputError("bad partition element '" + item + "'");
      }
      if (e < 1 || e > n) throw InputError("partition element out of range");
      s |= Subset{1} << (e - 1);
    }
    blocks.push_back(s);
  }
  return OrderedSetPartition(full_set(n), blocks);
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "'");
    }
  }
  return out;
}

Json poly_json(const Polynomial& p) {
  Json c = Json::array();
  for (const auto& x : p.coefficients()) c.push_back(x.get_str());
  return {{"text", p.to_string()}, {"coefficients", c}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of tautological bundles of matroids"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* field_opt = app.add_option("--field", g.field, "Q, F2, F3 or F5")->check(CLI::IsMember({"Q", "F2", "F3", "F5"}));
  app.add_option("--jobs", g.jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--cache", g.cache, "directory for cached dimension vectors");
  app.add_option("--json-out", g.json_out, "output path, - for stdout");

  std::string input, expr, second, engine = "cellular", sigma, mu, base = "S", which = "S", functor = "wedge";
  std::string check = "log-canonical", corpus_path = "default", suite, repro = "tautcoh-repro";
  long element = 0, p = 0, degree = 4, blocks = -1, n_fan = 3;
  bool per_weight = false, serial = false;
  std::uint64_t seed = CorpusSpec{}.seed;

  auto* gf = app.add_subcommand("gf", "Tutte polynomial and generating functions");
  gf->add_option("--input", input, "realization JSON")->required();
  gf->add_option("--degree", degree, "highest symmetric power");

  auto* coh = app.add_subcommand("cohomology", "sheaf cohomology of a functor expression");
  coh->add_option("--input", input, "realization JSON")->required();
  coh->add_option("--expr", expr, "e.g. wedge(2,Q)")->required();
  coh->add_option("--second", second, "realization for S' and Q'");
  coh->add_option("--engine", engine)->check(CLI::IsMember({"cellular", "cech"}));
  coh->add_flag("--per-weight", per_weight);
  coh->add_flag("--serial", serial, "single-threaded reference path");

  auto* fan = app.add_subcommand("fan", "cones of the permutohedral fan, charts and trivializations");
  fan->add_option("--n", n_fan, "ground set size");
  fan->add_option("--blocks", blocks, "only cones with this many blocks");
  fan->add_option("--input", input, "realization JSON, for chart data");
  fan->add_option("--sigma", sigma, "ordered set partition, e.g. 1|2,3");
  fan->add_option("--mu", mu, "weight, e.g. 1,0,0");
  fan->add_option("--base", base)->check(CLI::IsMember({"S", "Q", "O"}));

  auto* fib = app.add_subcommand("fiber-check", "nonconstant components over every cone of X_{E-n}");
  fib->add_option("--input", input, "realization JSON")->required();
  fib->add_option("--n", element, "distinguished element (1-based, default last)");

  auto* p1 = app.add_subcommand("p1", "bundles on P^1 and the case tables");
  p1->add_option("--input", input, "realization JSON")->required();
  p1->add_option("--n", element, "distinguished element (1-based, default last)");
  p1->add_option("--functor", functor)->check(CLI::IsMember({"wedge", "sym"}));
  p1->add_option("--p", p)->check(CLI::NonNegativeNumber);
  p1->add_option("--which", which)->check(CLI::IsMember({"S", "Q", "S'", "Q'", "LS", "LQ"}));

  auto* won = app.add_subcommand("wonderful", "cohomology on the wonderful variety");
  won->add_option("--input", input, "realization JSON")->required();
  won->add_option("--check", check)
      ->transform(CLI::Transformer({{"logcanonical", "log-canonical"}, {"ideal", "ideal-sheaf"}}))
      ->check(CLI::IsMember({"log-canonical", "immaculate", "ideal-sheaf", "speyer"}));
  won->add_option("--flag,--smaller", second, "hyperplane L' of L, for immaculate");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--corpus", corpus_path, "default or a corpus JSON");
  ver->add_option("--input", input, "single realization instead of a corpus");
  ver->add_option("--repro-dir", repro, "where failing cases are written");

  auto* cor = app.add_subcommand("corpus", "corpus tools");
  auto* make = cor->add_subcommand("make", "write the default corpus");
  make->add_option("--seed", seed);
  cor->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    const bool field_given = field_opt->count() > 0;
    const Field field = parse_field(g.field);
    CohomologyOptions copts;
    copts.jobs = g.jobs;
    copts.per_weight = per_weight;
    copts.engine = engine == "cech" ? Engine::cech : Engine::cellular;
    Json out;
    int status = kPass;

    if (*gf) {
      const Realization L = load_in_field(input, g, field_given);
      const Matroid M = matroid_from_realization(L);
      std::vector<std::string> sym;
      for (const auto& x : sym_q_gf(M, static_cast<std::size_t>(degree))) sym.push_back(x.get_str());
      std::vector<std::size_t> order(L.ground_size());
      for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
      out = {{"ground", L.ground_size()},
             {"rank", L.rank()},
             {"tutte", tutte(M, TutteRoute::recursion).to_string()},
             {"ext_s", poly_json(ext_s_gf(M, ExtSRoute::closed))},
             {"ext_q", poly_json(ext_q_gf(M, ExtQRoute::spanning_enum))},
             {"sym_q", sym},
             {"nbc", nbc_count(M, order)},
             {"log_canonical_number", log_canonical_number(M).get_str()}};
    } else if (*coh) {
      std::vector<Realization> slots{load_in_field(input, g, field_given)};
      if (!second.empty()) slots.push_back(load_in_field(second, g, field_given));
      const BundleExpr e = BundleExpr::parse(expr);
      const BundleModel m = build_model(e, slots);
      const auto rep = serial ? cohomology_serial(m, copts) : cohomology(m, copts);
      out = report_to_json(rep);
      out["expression"] = e.to_string();
      out["field"] = slots[0].field().name();
      out["rank"] = m.rank();
    } else if (*fan) {
      if (!input.empty() && !sigma.empty()) {
        const Realization L = load_in_field(input, g, field_given);
        const auto F = parse_partition(sigma, L.ground_size());
        const BaseBundle b = base == "S" ? BaseBundle::S : base == "Q" ? BaseBundle::Q : BaseBundle::O;
        out["cone"] = F.to_string();
        if (!mu.empty()) {
          const auto ws = chart_weight_space(L, b, F, parse_longs(mu));
          out["support"] = subset_string(ws.support);
          out["dim"] = ws.space.dim();
        }
        if (F.is_maximal()) {
          Json gens = Json::array();
          for (const auto& gen : chart_trivialization(L, b, F).generators) {
            std::vector<std::string> v;
            for (const auto& x : gen.vector) v.push_back(x.to_string());
            gens.push_back({{"weight", gen.weight}, {"vector", v}});
          }
          out["trivialization"] = gens;
        }
      } else {
        std::optional<std::size_t> k;
        if (blocks >= 0) k = static_cast<std::size_t>(blocks);
        if (n_fan < 1) throw InputError("--n must be positive");
        Json cones = Json::array();
        for (const auto& F : enumerate_partitions(full_set(static_cast<std::size_t>(n_fan)), k))
          cones.push_back(F.to_string());
        out = {{"n", n_fan}, {"count", cones.size()}, {"cones", cones}};
      }
    } else if (*fib) {
      const Realization L = load_in_field(input, g, field_given);
      if (L.ground_size() < 2) throw InputError("need at least two elements");
      const std::size_t n = element ? element_arg(element, L) : L.ground_size() - 1;
      const Matroid M = matroid_from_realization(L);
      const Subset bit = Subset{1} << n;
      const std::string branch = (M.loops() & bit) ? "loop" : (M.coloops() & bit) ? "coloop" : "neither";
      const std::size_t want = branch == "neither" ? 1 : 0;
      Json cones = Json::array();
      bool ok = true;
      for (const auto& F : enumerate_partitions(M.ground() & ~bit)) {
        const auto comps = nonconstant_components(L, F, n);
        ok = ok && comps.size() == want;
        cones.push_back({{"cone", F.to_string()}, {"components", comps}});
      }
      out = {{"element", n + 1}, {"branch", branch}, {"pass", ok}, {"cones", cones}};
      status = ok ? kPass : kFail;
    } else if (*p1) {
      const Realization L = load_in_field(input, g, field_given);
      const std::size_t n = element ? element_arg(element, L) : L.ground_size() - 1;
      const P1Bundle b = parse_p1_bundle(which);
      out = {{"element", n + 1}, {"which", which}, {"splitting_type", splitting_type(L, n, b)}};
      if (b == P1Bundle::S || b == P1Bundle::Q) {
        const P1Functor fn = parse_p1_functor(functor);
        const auto got = p1_cohomology(L, n, fn, static_cast<std::size_t>(p), b);
        const auto want = p1_predicted(L, n, fn, static_cast<std::size_t>(p), b);
        out["functor"] = functor;
        out["p"] = p;
        out["computed"] = {got.h0, got.h1};
        out["predicted"] = {want.h0, want.h1};
        out["pass"] = got == want;
        status = got == want ? kPass : kFail;
      }
    } else if (*won) {
      const Realization L = load_in_field(input, g, field_given);
      if (check == "log-canonical") {
        const auto w = log_canonical_cohomology(L);
        const auto lcn = log_canonical_number(matroid_from_realization(L));
        const bool ok = w.exact_below_top && w.complex.d2_zero && lcn == static_cast<unsigned long>(w.h[0]);
        out = {{"dims", w.complex.dims}, {"homology", w.complex.homology}, {"h_W", w.h},
               {"log_canonical_number", lcn.get_str()}, {"pass", ok}};
        status = ok ? kPass : kFail;
      } else if (check == "immaculate") {
        if (second.empty()) throw InputError("--flag is required for the immaculate check");
        const auto r = immaculate_check(L, load_in_field(second, g, field_given));
        out = {{"loops_smaller", r.loops_small}, {"h_W", r.restricted.h}, {"immaculate", r.immaculate},
               {"predicted_h0", r.predicted_h0}, {"pass", r.pass}};
        status = r.pass ? kPass : kFail;
      } else if (check == "ideal-sheaf") {
        const auto r = ideal_sheaf_check(L);
        out = {{"O_W", r.structure.h}, {"detQ_W", r.twisted.h}, {"h0_detQ", r.sections_detq},
               {"surjective", r.surjective}, {"pass", r.pass}};
        status = r.pass ? kPass : kFail;
      } else {
        const auto r = speyer_chi(L);
        out = {{"chi", r.chi}, {"signed", r.signed_value}, {"nonnegative", r.nonnegative}, {"terms", r.term_chis}};
      }
    } else if (*ver) {
      Corpus c;
      if (!input.empty()) {
        const Realization L = load_realization(input);
        CorpusEntry e;
        e.name = "input";
        e.tag = "input";
        e.native = L.field();
        e.ground = L.ground_size();
        for (std::size_t i = 0; i < L.rank(); ++i) {
          // Clearing denominators row by row keeps the row space.
          mpz_class scale = 1;
          for (const auto& x : L.basis().row(i)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.to_mpq().get_den_mpz_t());
          std::vector<long> row;
          for (const auto& x : L.basis().row(i)) {
            const mpq_class q = x.to_mpq() * scale;
            if (!q.get_num().fits_slong_p()) throw InputError("realization entries too large");
            row.push_back(q.get_num().get_si());
          }
          e.generators.push_back(std::move(row));
        }
        e.bases = matroid_from_realization(L).bases();
        c.entries.push_back(std::move(e));
      } else {
        c = corpus_path == "default" ? make_corpus() : load_corpus(corpus_path);
      }
      SuiteOptions so;
      so.field = field;
      so.cohomology = copts;
      so.repro_dir = repro;
      if (!g.cache.empty()) so.cache_dir = g.cache;
      const auto rep = run_suite(suite, c, so);
      out = rep.to_json();
      status = rep.all_pass() ? kPass : kFail;
      std::cerr << suite << ": " << rep.cases.size() << " cases, " << rep.failures() << " failures, " << rep.skipped()
                << " skipped\n";
    } else if (*make) {
      CorpusSpec spec;
      spec.seed = seed;
      out = corpus_to_json(make_corpus(spec));
    }
    write_json(out, g.json_out);
    return status;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
