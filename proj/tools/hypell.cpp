// Command line front end: single-instance inspection subcommands plus the
// config-driven experiment runner. Single-shot commands print JSON (or a
// bare TSV solution table); experiment emits the record table.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypell/arith.hpp"
#include "hypell/conic.hpp"
#include "hypell/errors.hpp"
#include "hypell/expcurve.hpp"
#include "hypell/experiment.hpp"
#include "hypell/hyperbola2.hpp"
#include "hypell/hyperbola3.hpp"
#include "hypell/ints.hpp"
#include "hypell/pell.hpp"
#include "hypell/productset.hpp"
#include "hypell/solution_set.hpp"

namespace {

using json = nlohmann::json;
using namespace hypell;

constexpr std::size_t LIST_CAP = 10000;

struct GlobalOpts {
  u64 seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string out;
  std::string format;  // "" = per-command default
};

std::string fmt_or(const GlobalOpts& g, const char* dflt) {
  return g.format.empty() ? dflt : g.format;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + out_path + "'");
  f << text;
}

json pairs_json(const PairSet& s) {
  json a = json::array();
  const auto& items = s.items();
  for (std::size_t i = 0; i < items.size() && i < LIST_CAP; ++i)
    a.push_back({items[i][0], items[i][1]});
  return a;
}

json triples_json(const TripleSet& s) {
  json a = json::array();
  const auto& items = s.items();
  for (std::size_t i = 0; i < items.size() && i < LIST_CAP; ++i)
    a.push_back({items[i][0], items[i][1], items[i][2]});
  return a;
}

std::string pairs_tsv(const PairSet& s, const char* h1, const char* h2) {
  std::ostringstream os;
  os << h1 << '\t' << h2 << '\n';
  const auto items = s.items();
  for (const auto& t : items) os << t[0] << '\t' << t[1] << '\n';
  return os.str();
}

std::string triples_tsv(const TripleSet& s) {
  std::ostringstream os;
  os << "x\ty\tz\n";
  const auto items = s.items();
  for (const auto& t : items) os << t[0] << '\t' << t[1] << '\t' << t[2] << '\n';
  return os.str();
}

std::string rational_str(const arith::Rational& r) {
  return to_string_i128(r.num) + "/" + to_string_i128(r.den);
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

void require_format(const std::string& got, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (got == a) return;
  std::string msg = "unsupported --format '" + got + "' here; expected one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw ConfigError(msg);
}

// --- subcommands -------------------------------------------------------------

void cmd_count2(const GlobalOpts& g, i64 p, i64 lambda, i64 K, i64 L, i64 M,
                const std::string& method, bool residual) {
  const auto inst = hyperbola2::make_instance_2(p, lambda, K, L, M);
  PairSet sols;
  i64 count = 0, z_width = -1;
  if (method == "brute") {
    auto r = hyperbola2::count_brute_2(inst);
    count = r.count;
    sols = std::move(r.solutions);
  } else {
    auto f = hyperbola2::enumerate_fast_2(inst);
    count = f.count;
    z_width = f.z_width;
    sols = std::move(f.solutions);
    if (method == "both") {
      auto b = hyperbola2::count_brute_2(inst);
      if (!(b.solutions == sols)) throw Error("count2: fast and brute solution sets differ");
    }
  }
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(pairs_tsv(sols, "x", "y"), g.out);
    return;
  }
  json j{{"p", p},         {"lambda", lambda}, {"K", K},       {"L", L},
         {"M", M},         {"method", method}, {"count", count}};
  if (z_width >= 0) j["z_width"] = z_width;
  j["solutions"] = pairs_json(sols);
  if (sols.size() > LIST_CAP) j["solutions_truncated"] = true;
  if (residual) {
    const auto kr = hyperbola2::kloosterman_residual(inst);
    j["main_term"] = rational_str(kr.main);
    j["residual"] = rational_str(kr.residual);
  }
  write_output(render_json(j), g.out);
}

void cmd_count3(const GlobalOpts& g, i64 p, i64 lambda, i64 L, i64 M, const std::string& method) {
  const auto inst = hyperbola3::make_instance_3(p, lambda, L, M);
  const auto ctx = hyperbola3::try_fast_context(inst);
  const bool applicable = hyperbola3::product_form_applicable(p, M) && ctx.has_value();

  TripleSet sols;
  i64 count = 0;
  std::string used;
  if (method == "brute") {
    auto r = hyperbola3::count_brute_3(inst);
    count = r.count;
    sols = std::move(r.solutions);
    used = "brute";
  } else if (method == "fast") {
    if (!applicable) throw FastPathError("count3: product form not applicable here");
    sols = hyperbola3::solve_product_form(*ctx);
    count = static_cast<i64>(sols.size());
    used = "fast";
  } else if (method == "auto") {
    if (applicable) {
      sols = hyperbola3::solve_product_form(*ctx);
      used = "fast";
    } else {
      auto r = hyperbola3::count_brute_3(inst);
      sols = std::move(r.solutions);
      used = "brute";
    }
    count = static_cast<i64>(sols.size());
  } else {  // both
    auto r = hyperbola3::count_brute_3(inst);
    count = r.count;
    sols = std::move(r.solutions);
    used = "brute";
    if (applicable) {
      const TripleSet fast = hyperbola3::solve_product_form(*ctx);
      if (!(fast == sols)) throw Error("count3: fast and brute solution sets differ");
      used = "both";
    }
  }

  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(triples_tsv(sols), g.out);
    return;
  }
  json j{{"p", p},          {"lambda", lambda},        {"L", L},
         {"M", M},          {"method", used},          {"count", count},
         {"fast_applicable", applicable}};
  if (ctx) {
    j["u"] = ctx->u;
    j["v"] = ctx->v;
    j["c"] = to_string_i128(ctx->c);
  }
  j["solutions"] = triples_json(sols);
  if (sols.size() > LIST_CAP) j["solutions_truncated"] = true;
  write_output(render_json(j), g.out);
}

void cmd_expcurve(const GlobalOpts& g, i64 p, i64 gg, i64 a, i64 K, i64 L, i64 M) {
  const auto inst = expcurve::make_expcurve(p, gg, a, K, L, M);
  const auto res = expcurve::count_expcurve(inst);
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(pairs_tsv(res.solutions, "x", "y"), g.out);
    return;
  }
  json j{{"p", p},  {"g", gg},          {"t", inst.t}, {"a", inst.a},
         {"K", K},  {"L", L},           {"M", inst.M}, {"count", res.count},
         {"solutions", pairs_json(res.solutions)}};
  if (res.count <= 3000) {
    const auto st = expcurve::pigeonhole_pair_stat(inst);
    j["pair_stat"] = {{"lambda_star", st.lambda_star}, {"pair_count", st.pair_count}};
  }
  write_output(render_json(j), g.out);
}

productset::IntervalFp parse_interval(i64 p, const std::string& spec, const char* name) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError(std::string(name) + ": expected start:length, got '" + spec + "'");
  try {
    const i64 start = std::stoll(spec.substr(0, colon));
    const i64 len = std::stoll(spec.substr(colon + 1));
    return productset::make_interval_fp(p, start, len);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string(name) + ": expected integers in start:length");
  } catch (const std::out_of_range&) {
    throw ConfigError(std::string(name) + ": value out of range");
  }
}

void cmd_productset(const GlobalOpts& g, i64 p, const std::string& s1, const std::string& s2,
                    const std::string& s3, bool with_characters, bool with_values) {
  const auto i1 = parse_interval(p, s1, "--i1");
  const auto i2 = parse_interval(p, s2, "--i2");
  const auto i3 = parse_interval(p, s3, "--i3");
  const auto rep = productset::product_lower_bound_report(i1, i2, i3);

  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    const auto ps = productset::product_set_3(i1, i2, i3, productset::DEFAULT_BUDGET, true);
    std::ostringstream os;
    os << "value\n";
    for (i64 v : *ps.values) os << v << '\n';
    write_output(os.str(), g.out);
    return;
  }
  json j{{"p", p},
         {"i1", {{"start", i1.start}, {"length", i1.length}}},
         {"i2", {{"start", i2.start}, {"length", i2.length}}},
         {"i3", {{"start", i3.start}, {"length", i3.length}}},
         {"cardinality", rep.cardinality},
         {"W", rep.W},
         {"lower_bound", rational_str(rep.ratio)}};
  if (with_characters) {
    const auto tbl = productset::make_character_table(p);
    j["W_characters"] = productset::count_W_characters(i1, i2, i3, tbl);
    j["generator"] = tbl.generator;
  }
  if (with_values) {
    const auto ps = productset::product_set_3(i1, i2, i3, productset::DEFAULT_BUDGET, true);
    json vals = json::array();
    for (std::size_t i = 0; i < ps.values->size() && i < LIST_CAP; ++i)
      vals.push_back((*ps.values)[i]);
    j["values"] = std::move(vals);
    if (ps.values->size() > LIST_CAP) j["values_truncated"] = true;
  }
  write_output(render_json(j), g.out);
}

void cmd_pell_fund(const GlobalOpts& g, i64 A) {
  const auto f = pell::fundamental_solution(A);
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    std::ostringstream os;
    os << "A\tx0\ty0\n" << A << '\t' << f.x0.str() << '\t' << f.y0.str() << '\n';
    write_output(os.str(), g.out);
    return;
  }
  json j{{"A", A}, {"x0", f.x0.str()}, {"y0", f.y0.str()},
         {"digits_x0", f.x0.str().size()}};
  write_output(render_json(j), g.out);
}

void cmd_pell_orbit(const GlobalOpts& g, i64 A, i64 bound) {
  const PairSet orbit = pell::pell_orbit(A, bound);
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(pairs_tsv(orbit, "x", "y"), g.out);
    return;
  }
  json j{{"A", A}, {"bound", bound}, {"count", orbit.size()}, {"solutions", pairs_json(orbit)}};
  write_output(render_json(j), g.out);
}

void cmd_pell_solve(const GlobalOpts& g, i64 A, i64 E, i64 bound, bool all_signs) {
  const PairSet sols = pell::solve_pell_like({A, E, bound}, all_signs);
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(pairs_tsv(sols, "x", "y"), g.out);
    return;
  }
  json j{{"A", A},     {"E", E},
         {"bound", bound}, {"all_signs", all_signs},
         {"count", sols.size()}, {"solutions", pairs_json(sols)}};
  write_output(render_json(j), g.out);
}

void cmd_conic(const GlobalOpts& g, const std::vector<i64>& coeffs, i64 box, bool positive_only,
               const std::string& method) {
  const auto inst =
      conic::make_conic(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5], box);
  PairSet sols;
  if (method == "brute") {
    sols = conic::solve_conic_brute(inst);
  } else {
    sols = conic::solve_conic_in_box(inst, positive_only);
    if (method == "both") {
      PairSet brute = conic::solve_conic_brute(inst);
      if (positive_only) {
        PairSet filtered;
        const auto items = brute.items();
        for (const auto& t : items)
          if (t[0] != 0 && t[1] != 0) filtered.insert(t);
        brute = std::move(filtered);
      }
      if (!(brute == sols)) throw Error("conic: pell-route and brute solution sets differ");
    }
  }
  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    write_output(pairs_tsv(sols, "x", "y"), g.out);
    return;
  }
  json j{{"coeffs", coeffs},
         {"box", box},
         {"delta", to_string_i128(inst.delta)},
         {"method", method},
         {"positive_only", positive_only},
         {"count", sols.size()},
         {"solutions", pairs_json(sols)}};
  if (sols.size() > LIST_CAP) j["solutions_truncated"] = true;
  write_output(render_json(j), g.out);
}

void cmd_lemma_scan(const GlobalOpts& g, i64 n_max) {
  experiment::ExperimentConfig cfg;
  cfg.kind = "lemma-scan";
  cfg.trials = 1;
  cfg.n_max = n_max;
  const auto res = experiment::run_experiment(cfg, 1);
  const auto& r = res.records.at(0);
  if (r.method == "error") throw Error("lemma-scan failed: " + r.error);

  const std::string fmt = fmt_or(g, "json");
  require_format(fmt, {"json", "tsv"});
  if (fmt == "tsv") {
    std::ostringstream os;
    experiment::emit(res.records, "tsv", os);
    write_output(os.str(), g.out);
    return;
  }
  json j{{"n_max", n_max},
         {"violations", r.count},
         {"max_divisors_in_window", r.aux1},
         {"n_scanned", r.aux2}};
  write_output(render_json(j), g.out);
}

void cmd_experiment(const GlobalOpts& g, const std::string& config_path, bool threads_set) {
  experiment::ExperimentConfig cfg = experiment::load_config(config_path);
  if (g.seed_set) cfg.seed = g.seed;
  if (!g.out.empty()) cfg.out = g.out;
  if (!g.format.empty()) cfg.format = g.format;
  require_format(cfg.format, {"tsv", "jsonl"});
  const int threads = threads_set ? g.threads : 1;

  const auto res = experiment::run_experiment(cfg, threads);
  std::ostringstream table;
  experiment::emit(res.records, cfg.format, table);

  if (cfg.out.empty()) {
    std::cout << table.str();
    std::cerr << experiment::summary_text(res.summary);
  } else {
    write_output(table.str(), cfg.out);
    std::cout << experiment::summary_text(res.summary);
  }
  if (res.summary.errored > 0) throw Error(std::to_string(res.summary.errored) + " trial(s) errored");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular hyperbola point counting and diophantine toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed (experiment override)");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads for experiment")
                          ->check(CLI::Range(1, 64));
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format (json|tsv, experiment: tsv|jsonl)");

  // count2
  i64 c2_p = 0, c2_lambda = 0, c2_K = 0, c2_L = 0, c2_M = 0;
  std::string c2_method = "both";
  bool c2_residual = false;
  auto* c2 = app.add_subcommand("count2", "points on x y = lambda (mod p) in a box");
  c2->add_option("--p", c2_p, "odd prime modulus")->required();
  c2->add_option("--lambda", c2_lambda, "right-hand side, nonzero mod p")->required();
  c2->add_option("--K", c2_K, "x ranges over [K+1, K+M]");
  c2->add_option("--L", c2_L, "y ranges over [L+1, L+M]");
  c2->add_option("--M", c2_M, "box side")->required();
  c2->add_option("--method", c2_method)->check(CLI::IsMember({"brute", "fast", "both"}));
  c2->add_flag("--residual", c2_residual, "include count - M^2/p as an exact rational");

  // count3
  i64 c3_p = 0, c3_lambda = 0, c3_L = 0, c3_M = 0;
  std::string c3_method = "auto";
  auto* c3 = app.add_subcommand("count3", "points on x y z = lambda (mod p) in a shifted cube");
  c3->add_option("--p", c3_p, "odd prime modulus")->required();
  c3->add_option("--lambda", c3_lambda, "right-hand side, nonzero mod p")->required();
  c3->add_option("--L", c3_L, "coordinates range over [L+1, L+M]");
  c3->add_option("--M", c3_M, "cube side")->required();
  c3->add_option("--method", c3_method)->check(CLI::IsMember({"brute", "fast", "auto", "both"}));

  // expcurve
  i64 ec_p = 0, ec_g = 0, ec_a = 1, ec_K = 0, ec_L = 0, ec_M = 0;
  auto* ec = app.add_subcommand("expcurve", "points on y = a g^x (mod p) in a box");
  ec->add_option("--p", ec_p, "odd prime modulus")->required();
  ec->add_option("--g", ec_g, "base")->required();
  ec->add_option("--a", ec_a, "coefficient, nonzero mod p");
  ec->add_option("--K", ec_K, "x ranges over [K+1, K+M]");
  ec->add_option("--L", ec_L, "y ranges over [L+1, L+M]");
  ec->add_option("--M", ec_M, "box side, at most the order of g")->required();

  // productset
  i64 ps_p = 0;
  std::string ps_i1, ps_i2, ps_i3;
  bool ps_chars = false, ps_values = false;
  auto* ps = app.add_subcommand("productset", "product set and energy of three intervals in F_p*");
  ps->add_option("--p", ps_p, "odd prime modulus")->required();
  ps->add_option("--i1", ps_i1, "first interval as start:length")->required();
  ps->add_option("--i2", ps_i2, "second interval as start:length")->required();
  ps->add_option("--i3", ps_i3, "third interval as start:length")->required();
  ps->add_flag("--with-characters", ps_chars, "also evaluate W via multiplicative characters");
  ps->add_flag("--with-values", ps_values, "list the product set elements");

  // pell
  auto* pl = app.add_subcommand("pell", "x^2 - A y^2 = 1 and x^2 - A y^2 = E solvers");
  pl->require_subcommand(1);
  i64 pf_A = 0;
  auto* pf = pl->add_subcommand("fund", "fundamental solution of x^2 - A y^2 = 1");
  pf->add_option("--A", pf_A, "positive nonsquare")->required();
  i64 po_A = 0, po_bound = 0;
  auto* po = pl->add_subcommand("orbit", "all positive solutions with x <= bound");
  po->add_option("--A", po_A, "positive nonsquare")->required();
  po->add_option("--bound", po_bound, "x cap")->required();
  i64 psv_A = 0, psv_E = 0, psv_bound = 0;
  bool psv_signs = false;
  auto* psv = pl->add_subcommand("solve", "x^2 - A y^2 = E with 1 <= x, y <= bound");
  psv->add_option("--A", psv_A, "nonsquare, may be negative")->required();
  psv->add_option("--E", psv_E, "nonzero right-hand side")->required();
  psv->add_option("--bound", psv_bound, "coordinate cap")->required();
  psv->add_flag("--all-signs", psv_signs, "include the four sign reflections");

  // conic
  std::vector<i64> cn_coeffs;
  i64 cn_box = 0;
  bool cn_pos = false;
  std::string cn_method = "pell";
  auto* cn = app.add_subcommand("conic", "integer points on a general conic in a box");
  cn->add_option("--coeffs", cn_coeffs, "A,B,C,D,E,F for Ax^2+Bxy+Cy^2+Dx+Ey+F=0")
      ->required()
      ->delimiter(',')
      ->expected(6);
  cn->add_option("--box", cn_box, "bound on |x| and |y|")->required();
  cn->add_flag("--positive-only", cn_pos, "drop solutions with x = 0 or y = 0");
  cn->add_option("--method", cn_method)->check(CLI::IsMember({"pell", "brute", "both"}));

  // lemma-scan
  i64 ls_n_max = 1000000;
  auto* ls = app.add_subcommand("lemma-scan",
                                "exhaustive divisor-window check: at most two divisors of n in "
                                "[m, m+n^(1/6)] for m >= sqrt(n)");
  ls->add_option("--n-max", ls_n_max, "scan all n up to this bound")->check(CLI::Range(2, 10000000));

  // experiment
  std::string ex_config;
  auto* ex = app.add_subcommand("experiment", "run a config-driven trial sweep");
  ex->add_option("--config", ex_config, "flat key=value config file")->required();

  for (CLI::App* sub : {c2, c3, ec, ps, pl, pf, po, psv, cn, ls, ex}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c2->parsed())
      cmd_count2(g, c2_p, c2_lambda, c2_K, c2_L, c2_M, c2_method, c2_residual);
    else if (c3->parsed())
      cmd_count3(g, c3_p, c3_lambda, c3_L, c3_M, c3_method);
    else if (ec->parsed())
      cmd_expcurve(g, ec_p, ec_g, ec_a, ec_K, ec_L, ec_M);
    else if (ps->parsed())
      cmd_productset(g, ps_p, ps_i1, ps_i2, ps_i3, ps_chars, ps_values);
    else if (pl->parsed()) {
      if (pf->parsed())
        cmd_pell_fund(g, pf_A);
      else if (po->parsed())
        cmd_pell_orbit(g, po_A, po_bound);
      else
        cmd_pell_solve(g, psv_A, psv_E, psv_bound, psv_signs);
    } else if (cn->parsed())
      cmd_conic(g, cn_coeffs, cn_box, cn_pos, cn_method);
    else if (ls->parsed())
      cmd_lemma_scan(g, ls_n_max);
    else if (ex->parsed()) {
      g.seed_set = seed_opt->count() > 0;
      cmd_experiment(g, ex_config, threads_opt->count() > 0);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
