// Copyright 2026 The Submemo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "bench/runner.hpp"
#include "json.hpp"
#include "submemo/bounds.hpp"
#include "submemo/constrained.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace {

using nlohmann::json;

struct Options {
  std::vector<std::string> functions;
  std::string g;
  std::string algorithm;
  std::string mode = "pm";
  std::uint64_t seed = 0;
  std::optional<Element> k;
  std::vector<double> budget_fracs;
  double epsilon = 0.1;
  Element machines = 2;
  int iterations = 0;
  std::optional<double> bound;
  std::string variant = "mod-mod";
  int repetitions = 1;
  std::string out;
  std::string report = "json";
  bool timing_strict = false;
  int probes = 200;
};

CostModel parse_mode(const std::string& m) {
  if (m == "pm") return CostModel::kPrecomputed;
  if (m == "vo") return CostModel::kValueOracle;
  throw InputError("--mode must be pm or vo");
}

json counters_json(const EvalCounters& c) {
  return {{"oracle_evals", c.oracle_evals},
          {"gain_evals", c.gain_evals},
          {"memo_updates", c.memo_updates},
          {"memo_rebuilds", c.memo_rebuilds}};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

json modular_json(const ModularFunction& m) {
  return {{"offset", m.offset}, {"weights", to_vector(m.weights)}};
}

const std::string& single_function(const Options& o) {
  if (o.functions.size() != 1) {
    throw InputError("exactly one --function is required");
  }
  return o.functions.front();
}

Element resolve_k(const Options& o, Element n) {
  if (o.k) {
    if (*o.k < 0 || *o.k > n) throw InputError("--k must lie in [0, n]");
    return *o.k;
  }
  if (!o.budget_fracs.empty()) {
    return detail::budget_to_k(o.budget_fracs.front(), n);
  }
  throw InputError("one of --k or --budget-frac is required");
}

double require_bound(const Options& o) {
  if (!o.bound) throw InputError("--bound is required");
  return *o.bound;
}

// Emits the result document on stdout and, with --out, as a report file.
void emit(const Options& o, const json& doc, std::ostream& out) {
  if (o.report != "json" && o.report != "csv") {
    throw InputError("--report must be json or csv");
  }
  out << doc.dump(2) << '\n';
  if (o.out.empty()) return;
  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  if (o.report == "json") {
    std::ofstream f(dir / "report.json");
    if (!f) throw InputError("cannot write into " + o.out);
    f << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(dir / "report.csv");
  if (!f) throw InputError("cannot write into " + o.out);
  f << "key,value\n";
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) {
        if (v.is_primitive()) f << key << '.' << sub << ',' << v.dump() << '\n';
      }
    } else if (value.is_primitive()) {
      f << key << ',' << value.dump() << '\n';
    } else {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ' ';
        joined += v.dump();
      }
      f << key << ',' << joined << '\n';
    }
  }
}

int cmd_maximize(const Options& o, std::ostream& out) {
  const FunctionSpec spec = parse_function_arg(single_function(o));
  auto f = detail::instantiate(spec, parse_mode(o.mode));
  detail::RunSettings s;
  const std::string alg = o.algorithm.empty() ? "lazy-greedy" : o.algorithm;
  if (detail::takes_budget(alg)) s.k = resolve_k(o, f->ground_size());
  s.epsilon = o.epsilon;
  s.machines = o.machines;
  s.seed = o.seed;
  const MaximizationResult r = detail::run_maximizer(alg, *f, s);
  emit(o,
       {{"command", "maximize"},
        {"algorithm", alg},
        {"mode", o.mode},
        {"selected", r.selected.sorted()},
        {"value", r.value},
        {"counters", counters_json(r.counters)}},
       out);
  return 0;
}

int cmd_minimize(const Options& o, std::ostream& out) {
  const FunctionSpec spec = parse_function_arg(single_function(o));
  auto f = detail::instantiate(spec, parse_mode(o.mode));
  const std::string alg = o.algorithm.empty() ? "min-norm" : o.algorithm;
  MinimizationResult r;
  if (alg == "min-norm") {
    MinNormOptions opts;
    opts.max_iterations = o.iterations;
    r = min_norm_point(*f, opts);
  } else if (alg == "lovasz") {
    LovaszOptions opts;
    if (o.iterations > 0) opts.iterations = o.iterations;
    r = lovasz_subgradient_min(*f, opts);
  } else if (alg == "mmin") {
    const Element k = o.k.value_or(0);
    r = mmin_constrained(*f, AtLeastK{k}, o.iterations > 0 ? o.iterations : 50);
  } else {
    throw InputError("unknown minimization algorithm '" + alg + "'");
  }
  emit(o,
       {{"command", "minimize"},
        {"algorithm", alg},
        {"mode", o.mode},
        {"minimizer_min", r.minimizer_min.sorted()},
        {"minimizer_max", r.minimizer_max.sorted()},
        {"value", r.value},
        {"iterations", r.iterations},
        {"counters", counters_json(r.counters)}},
       out);
  return 0;
}

json iterative_json(const std::string& command, const Options& o,
                    const IterativeResult& r) {
  return {{"command", command},
          {"mode", o.mode},
          {"set", r.set.sorted()},
          {"objective", r.objective},
          {"trace", r.trace},
          {"iterations", r.iterations},
          {"hit_iteration_cap", r.hit_iteration_cap},
          {"counters", counters_json(r.counters)}};
}

std::pair<std::unique_ptr<SetFunction>, std::unique_ptr<SetFunction>> pair_of(
    const Options& o) {
  if (o.g.empty()) throw InputError("--g is required");
  const CostModel mode = parse_mode(o.mode);
  return {detail::instantiate(parse_function_arg(single_function(o)), mode),
          detail::instantiate(parse_function_arg(o.g), mode)};
}

int max_iterations(const Options& o) {
  return o.iterations > 0 ? o.iterations : 50;
}

int cmd_scsc(const Options& o, std::ostream& out) {
  auto [f, g] = pair_of(o);
  emit(o,
       iterative_json("scsc", o,
                      scsc_solve(*f, *g, require_bound(o), max_iterations(o))),
       out);
  return 0;
}

int cmd_scsk(const Options& o, std::ostream& out) {
  auto [f, g] = pair_of(o);
  emit(o,
       iterative_json("scsk", o,
                      scsk_solve(*f, *g, require_bound(o), max_iterations(o))),
       out);
  return 0;
}

int cmd_ds_min(const Options& o, std::ostream& out) {
  DsVariant v;
  if (o.variant == "sub-sup") {
    v = DsVariant::kSubSup;
  } else if (o.variant == "sup-sub") {
    v = DsVariant::kSupSub;
  } else if (o.variant == "mod-mod") {
    v = DsVariant::kModMod;
  } else {
    throw InputError("--variant must be sub-sup, sup-sub or mod-mod");
  }
  auto [f, g] = pair_of(o);
  json doc = iterative_json(
      "ds-min", o, ds_minimize(*f, *g, v, o.seed, max_iterations(o)));
  doc["variant"] = o.variant;
  emit(o, doc, out);
  return 0;
}

int cmd_gradients(const Options& o, std::ostream& out) {
  const FunctionSpec spec = parse_function_arg(single_function(o));
  auto f = detail::instantiate(spec, parse_mode(o.mode));
  const Subset x = detail::random_half(f->ground_size(), o.seed);
  json doc = {{"command", "gradients"},
              {"mode", o.mode},
              {"seed", o.seed},
              {"set", x.sorted()}};
  auto record = [&](const char* key, auto&& compute) {
    f->reset_counters();
    const ModularFunction m = compute();
    json entry = modular_json(m);
    entry["counters"] = counters_json(f->counters());
    doc[key] = std::move(entry);
  };
  record("subgradient", [&] { return subgradient_at(*f, x); });
  record("supergradient_grow", [&] { return supergradient_grow(*f, x); });
  record("supergradient_shrink", [&] { return supergradient_shrink(*f, x); });
  emit(o, doc, out);
  return 0;
}

std::string display_name(const std::string& arg) {
  std::string name = arg;
  if (arg.rfind("synthetic:", 0) == 0) {
    name = arg.substr(10);
    std::replace(name.begin(), name.end(), ',', ';');
  } else {
    name = std::filesystem::path(arg).stem().string();
  }
  return name;
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.functions.empty()) throw InputError("--function is required");
  ExperimentConfig cfg;
  for (const auto& arg : o.functions) {
    std::string name = display_name(arg);
    for (const auto& [existing, spec] : cfg.functions) {
      if (existing == name) name += "#" + std::to_string(cfg.functions.size());
    }
    cfg.functions.emplace_back(name, parse_function_arg(arg));
  }
  if (!o.algorithm.empty()) cfg.algorithm = o.algorithm;
  if (o.mode == "both") {
    cfg.modes = {CostModel::kPrecomputed, CostModel::kValueOracle};
  } else {
    cfg.modes = {parse_mode(o.mode)};
  }
  if (!o.budget_fracs.empty()) cfg.budgets = o.budget_fracs;
  cfg.repetitions = o.repetitions;
  cfg.seed = o.seed;
  cfg.epsilon = o.epsilon;
  cfg.machines = o.machines;
  cfg.out = o.out;
  cfg.timing_strict = o.timing_strict;
  const auto records = run_experiment(cfg);

  if (o.report == "csv") {
    out << "function,algorithm,mode,budget,wall_min,wall_mean,oracle_evals,"
           "gain_evals,memo_updates,memo_rebuilds,value,error\n";
    char buf[64];
    for (const auto& r : records) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g", r.wall_min, r.wall_mean);
      out << r.function << ',' << r.algorithm << ',' << r.mode << ','
          << r.budget << ',' << buf << ',' << r.counters.oracle_evals << ','
          << r.counters.gain_evals << ',' << r.counters.memo_updates << ','
          << r.counters.memo_rebuilds << ',' << r.value << ',' << r.error
          << '\n';
    }
  } else if (o.report == "json") {
    json cells = json::array();
    for (const auto& r : records) {
      json c = {{"function", r.function}, {"algorithm", r.algorithm},
                {"mode", r.mode},         {"budget", r.budget},
                {"wall_min", r.wall_min}, {"wall_mean", r.wall_mean},
                {"value", r.value},
                {"counters", counters_json(r.counters)}};
      if (!r.error.empty()) c["error"] = r.error;
      cells.push_back(std::move(c));
    }
    out << json{{"command", "bench"}, {"cells", std::move(cells)}}.dump(2)
        << '\n';
  } else {
    throw InputError("--report must be json or csv");
  }
  return 0;
}

// ---------------------------------------------------------------- validate

struct Check {
  std::string name;
  std::string status;  // "pass", "fail" or "n/a"
  std::string detail;
};

bool claims_submodular(const FunctionSpec& spec) {
  const std::string cls = spec_class(spec);
  return cls.rfind("dispersion", 0) != 0;
}

Subset random_subset(Element n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Subset s(n);
  for (Element j = 0; j < n; ++j) {
    if (coin(rng)) s.insert(j);
  }
  return s;
}

double tolerance_for(const FunctionSpec& spec) {
  return spec_class(spec) == "log-det" ? 1e-7 : 1e-9;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const FunctionSpec spec = parse_function_arg(single_function(o));
  if (o.probes < 1) throw InputError("--probes must be >= 1");
  auto f = detail::instantiate(spec, parse_mode(o.mode));
  const Element n = f->ground_size();
  const double tol = tolerance_for(spec);
  std::mt19937_64 rng(o.seed);
  std::vector<Check> checks;

  if (n == 0) {
    out << "empty ground set, nothing to validate\n";
    return 0;
  }
  std::uniform_int_distribution<Element> pick(0, n - 1);

  {
    double worst = 0.0;
    for (int p = 0; p < o.probes; ++p) {
      const Subset x = random_subset(n, 0.3, rng);
      f->set_memo(x);
      const Element j = pick(rng);
      const double base = f->evaluate(x);
      double gain, diff;
      if (x.contains(j)) {
        gain = f->gain_remove(j);
        Subset y = x;
        y.erase(j);
        diff = base - f->evaluate(y);
      } else {
        gain = f->gain_add(j);
        Subset y = x;
        y.insert(j);
        diff = f->evaluate(y) - base;
      }
      const double scale = std::max({1.0, std::abs(gain), std::abs(diff)});
      worst = std::max(worst, std::abs(gain - diff) / scale);
    }
    checks.push_back({"oracle equivalence", worst <= tol ? "pass" : "fail",
                      "max rel. deviation " + format_double(worst)});
  }

  {
    double worst = 0.0;
    f->set_memo({});
    std::uniform_int_distribution<int> op(0, 9);
    for (int p = 0; p < o.probes; ++p) {
      const int choice = op(rng);
      if (choice == 0) {
        f->set_memo(random_subset(n, 0.3, rng));
      } else {
        const Element j = pick(rng);
        if (f->memo().contains(j)) {
          f->downdate(j);
        } else {
          f->update(j);
        }
      }
      worst = std::max(worst, f->verify_statistic().max_deviation);
    }
    checks.push_back({"statistic consistency", worst <= tol ? "pass" : "fail",
                      "max deviation " + format_double(worst)});
  }

  int violations = 0;
  int decreases = 0;
  for (int p = 0; p < o.probes; ++p) {
    Subset small = random_subset(n, 0.25, rng);
    Subset large = small;
    for (Element j = 0; j < n; ++j) {
      if (!large.contains(j) && std::bernoulli_distribution(0.3)(rng)) {
        large.insert(j);
      }
    }
    const Element j = pick(rng);
    if (large.contains(j)) continue;
    f->set_memo(small);
    const double gs = f->gain_add(j);
    f->set_memo(large);
    const double gl = f->gain_add(j);
    const double slack = tol * std::max({1.0, std::abs(gs), std::abs(gl)});
    if (gs < gl - slack) ++violations;
    if (gs < -slack || gl < -slack) ++decreases;
  }
  const bool submodular_claimed = claims_submodular(spec);
  checks.push_back(
      {"submodularity audit",
       submodular_claimed ? (violations == 0 ? "pass" : "fail") : "n/a",
       std::to_string(violations) + " violations" +
           (submodular_claimed ? "" : " (class is not submodular)")});
  checks.push_back({"monotonicity audit", decreases == 0 ? "pass" : "n/a",
                    decreases == 0 ? "no negative gains seen"
                                   : std::to_string(decreases) +
                                         " negative gains (non-monotone)"});

  bool ok = true;
  out << "check                   status  detail\n";
  for (const auto& c : checks) {
    char line[96];
    std::snprintf(line, sizeof line, "%-23s %-7s ", c.name.c_str(),
                  c.status.c_str());
    out << line << c.detail << '\n';
    if (c.status == "fail") ok = false;
  }
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Submodular optimization with memoized statistics", "submemo"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_function = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--function", o.functions,
                                "Spec file or synthetic:<kind>,n=..,seed=..")
                    ->required();
    if (!many) opt->expected(1);
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "pm or vo")
        ->check(CLI::IsMember({"pm", "vo"}));
  };
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Directory for report files");
    sub->add_option("--report", o.report, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* maximize = app.add_subcommand("maximize", "Run a maximizer");
  add_function(maximize, false);
  maximize->add_option("--algorithm", o.algorithm, "Algorithm name");
  add_mode(maximize);
  maximize->add_option("--seed", o.seed);
  maximize->add_option("--k", o.k, "Cardinality budget");
  maximize->add_option("--budget-frac", o.budget_fracs, "Budget as fraction")
      ->expected(1);
  maximize->add_option("--epsilon", o.epsilon);
  maximize->add_option("--machines", o.machines);
  add_report(maximize);

  auto* minimize = app.add_subcommand("minimize", "Run a minimizer");
  add_function(minimize, false);
  minimize->add_option("--algorithm", o.algorithm, "min-norm, lovasz or mmin");
  add_mode(minimize);
  minimize->add_option("--seed", o.seed);
  minimize->add_option("--k", o.k, "Lower size bound for mmin");
  minimize->add_option("--iterations", o.iterations);
  add_report(minimize);

  for (const char* name : {"scsc", "scsk", "ds-min"}) {
    auto* sub = app.add_subcommand(
        name, std::string(name) == "ds-min" ? "Minimize f - g"
              : std::string(name) == "scsc"
                  ? "Minimize f subject to g >= bound"
                  : "Maximize g subject to f <= bound");
    add_function(sub, false);
    sub->add_option("--g", o.g, "Second function")->required();
    add_mode(sub);
    sub->add_option("--seed", o.seed);
    sub->add_option("--iterations", o.iterations);
    if (std::string(name) == "ds-min") {
      sub->add_option("--variant", o.variant, "sub-sup, sup-sub or mod-mod");
    } else {
      sub->add_option("--bound", o.bound)->required();
    }
    add_report(sub);
  }

  auto* gradients =
      app.add_subcommand("gradients", "Sub- and supergradients at a random set");
  add_function(gradients, false);
  add_mode(gradients);
  gradients->add_option("--seed", o.seed);
  add_report(gradients);

  auto* bench = app.add_subcommand("bench", "Timing experiment");
  add_function(bench, true);
  bench->add_option("--algorithm", o.algorithm);
  bench->add_option("--mode", o.mode, "pm, vo or both")
      ->check(CLI::IsMember({"pm", "vo", "both"}));
  bench->add_option("--seed", o.seed);
  bench->add_option("--budget-frac", o.budget_fracs);
  bench->add_option("--epsilon", o.epsilon);
  bench->add_option("--machines", o.machines);
  bench->add_option("--repetitions", o.repetitions);
  bench->add_flag("--timing-strict", o.timing_strict);
  add_report(bench);

  auto* validate = app.add_subcommand("validate", "Audit a function");
  add_function(validate, false);
  add_mode(validate);
  validate->add_option("--seed", o.seed);
  validate->add_option("--probes", o.probes);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (maximize->parsed()) return cmd_maximize(o, out);
    if (minimize->parsed()) return cmd_minimize(o, out);
    if (app.got_subcommand("scsc")) return cmd_scsc(o, out);
    if (app.got_subcommand("scsk")) return cmd_scsk(o, out);
    if (app.got_subcommand("ds-min")) return cmd_ds_min(o, out);
    if (gradients->parsed()) return cmd_gradients(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace submemo
