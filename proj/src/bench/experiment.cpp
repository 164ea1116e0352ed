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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "bench/runner.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "submemo/bounds.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace detail {

std::unique_ptr<SetFunction> instantiate(const FunctionSpec& spec,
                                         CostModel mode) {
  auto f = make_function(spec);
  if (mode == CostModel::kValueOracle) f = wrap_value_oracle(std::move(f));
  return f;
}

const std::vector<std::string>& maximize_algorithms() {
  static const std::vector<std::string> names = {
      "naive-greedy",       "lazy-greedy",       "stochastic-greedy",
      "sieve-streaming",    "distributed-greedy", "randomized-greedy",
      "minorize-maximize",  "local-search",      "bidirectional-greedy"};
  return names;
}

bool takes_budget(const std::string& algorithm) {
  return algorithm != "local-search" && algorithm != "bidirectional-greedy" &&
         algorithm != "min-norm" && algorithm != "lovasz-min";
}

MaximizationResult run_maximizer(const std::string& algorithm, SetFunction& f,
                                 const RunSettings& s) {
  const Element n = f.ground_size();
  if (algorithm == "naive-greedy") {
    return greedy_naive(f, Constraint::cardinality(s.k));
  }
  if (algorithm == "lazy-greedy") {
    return greedy_lazy(f, Constraint::cardinality(s.k));
  }
  if (algorithm == "stochastic-greedy") {
    return greedy_stochastic(f, s.k, s.epsilon, s.seed);
  }
  if (algorithm == "sieve-streaming") {
    std::vector<Element> stream(static_cast<std::size_t>(n));
    std::iota(stream.begin(), stream.end(), 0);
    return sieve_streaming(f, stream, s.k, s.epsilon);
  }
  if (algorithm == "distributed-greedy") {
    return distributed_greedy(f, s.k, s.machines, s.seed);
  }
  if (algorithm == "randomized-greedy") {
    return randomized_greedy(f, s.k, s.seed);
  }
  if (algorithm == "minorize-maximize") {
    return minorize_maximize(f, Constraint::cardinality(s.k),
                             OrderRule::kGreedyOrder, s.seed);
  }
  if (algorithm == "local-search") return local_search_usm(f);
  if (algorithm == "bidirectional-greedy") {
    std::vector<Element> pi(static_cast<std::size_t>(n));
    std::iota(pi.begin(), pi.end(), 0);
    return bidirectional_greedy(f, pi);
  }
  throw InputError("unknown maximization algorithm '" + algorithm + "'");
}

Subset random_half(Element n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  Subset x(n);
  for (Element j = 0; j < n; ++j) {
    if (coin(rng)) x.insert(j);
  }
  return x;
}

Element budget_to_k(double fraction, Element n) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InputError("budget fractions must lie in (0, 1]");
  }
  const auto k = static_cast<Element>(std::ceil(fraction * n - 1e-9));
  return std::clamp<Element>(k, 1, n);
}

}  // namespace detail

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Cell {
  std::size_t function;
  std::string budget;
  double fraction = 0.0;
  CostModel mode;
};

std::string budget_label(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", fraction * 100.0);
  return buf;
}

const std::vector<std::string> kGradientKinds = {
    "subgradient", "supergradient-grow", "supergradient-shrink"};

TimingRecord run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  const auto& [name, spec] = cfg.functions[cell.function];
  TimingRecord rec;
  rec.function = name;
  rec.algorithm = cfg.algorithm;
  rec.mode = mode_name(cell.mode);
  rec.budget = cell.budget;
  try {
    double total = 0.0;
    rec.wall_min = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      auto f = detail::instantiate(spec, cell.mode);
      const Element n = f->ground_size();
      f->reset_counters();
      const auto start = Clock::now();
      if (cfg.algorithm == "gradients") {
        const Subset x = detail::random_half(n, cfg.seed);
        ModularFunction m;
        if (cell.budget == "subgradient") {
          m = subgradient_at(*f, x);
        } else if (cell.budget == "supergradient-grow") {
          m = supergradient_grow(*f, x);
        } else {
          m = supergradient_shrink(*f, x);
        }
        rec.weights = m.weights;
        rec.value = m(x);
        rec.selected = x.sorted();
      } else if (cfg.algorithm == "min-norm" || cfg.algorithm == "lovasz-min") {
        MinimizationResult r = cfg.algorithm == "min-norm"
                                   ? min_norm_point(*f)
                                   : lovasz_subgradient_min(*f);
        rec.value = r.value;
        rec.selected = r.minimizer_min.sorted();
      } else {
        detail::RunSettings s;
        s.k = detail::budget_to_k(cell.fraction > 0 ? cell.fraction : 1.0, n);
        s.epsilon = cfg.epsilon;
        s.machines = cfg.machines;
        s.seed = cfg.seed;
        MaximizationResult r = detail::run_maximizer(cfg.algorithm, *f, s);
        rec.value = r.value;
        rec.selected = r.selected.sorted();
        rec.counters = r.counters;
      }
      const double secs =
          std::chrono::duration<double>(Clock::now() - start).count();
      total += secs;
      rec.wall_min = std::min(rec.wall_min, secs);
      // Algorithms working on clones report their own totals; for the
      // others the instance's counters are the whole story.
      if (cfg.algorithm == "gradients" || cfg.algorithm == "min-norm" ||
          cfg.algorithm == "lovasz-min") {
        rec.counters = f->counters();
      }
    }
    rec.wall_mean = total / cfg.repetitions;
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.wall_min = rec.wall_mean = 0.0;
  }
  return rec;
}

json counters_json(const EvalCounters& c) {
  return {{"oracle_evals", c.oracle_evals},
          {"gain_evals", c.gain_evals},
          {"memo_updates", c.memo_updates},
          {"memo_rebuilds", c.memo_rebuilds}};
}

void write_reports(const ExperimentConfig& cfg,
                   const std::vector<std::string>& budgets,
                   const std::vector<TimingRecord>& records) {
  std::filesystem::create_directories(cfg.out);
  auto find = [&](const std::string& fn, const std::string& budget,
                  const std::string& mode) -> const TimingRecord* {
    for (const auto& r : records) {
      if (r.function == fn && r.budget == budget && r.mode == mode) return &r;
    }
    return nullptr;
  };

  std::ofstream csv(cfg.out / "report.csv");
  if (!csv) throw InputError("cannot write report.csv in " + cfg.out.string());
  csv << "function";
  for (const auto& b : budgets) {
    for (CostModel m : cfg.modes) csv << ',' << b << ' ' << mode_name(m);
  }
  csv << '\n';
  char buf[32];
  for (const auto& [name, spec] : cfg.functions) {
    csv << name;
    for (const auto& b : budgets) {
      for (CostModel m : cfg.modes) {
        const TimingRecord* r = find(name, b, mode_name(m));
        csv << ',';
        if (r && r->error.empty()) {
          std::snprintf(buf, sizeof buf, "%.6g", r->wall_min);
          csv << buf;
        } else {
          csv << "error";
        }
      }
    }
    csv << '\n';
  }

  json cells = json::array();
  for (const auto& r : records) {
    json c = {{"function", r.function}, {"algorithm", r.algorithm},
              {"mode", r.mode},         {"budget", r.budget},
              {"wall_min", r.wall_min}, {"wall_mean", r.wall_mean},
              {"counters", counters_json(r.counters)},
              {"value", r.value},       {"selected", r.selected}};
    if (r.weights.size() > 0) {
      c["weights"] = std::vector<double>(r.weights.data(),
                                         r.weights.data() + r.weights.size());
    }
    if (!r.error.empty()) c["error"] = r.error;
    cells.push_back(std::move(c));
  }
  json speedups = json::array();
  for (const auto& [name, spec] : cfg.functions) {
    for (const auto& b : budgets) {
      const TimingRecord* pm = find(name, b, "PM");
      const TimingRecord* vo = find(name, b, "VO");
      if (!pm || !vo || !pm->error.empty() || !vo->error.empty()) continue;
      speedups.push_back(
          {{"function", name},
           {"budget", b},
           {"vo_over_pm", pm->wall_min > 0 ? vo->wall_min / pm->wall_min : 0.0}});
    }
  }
  json report = {{"algorithm", cfg.algorithm},
                 {"repetitions", cfg.repetitions},
                 {"seed", cfg.seed},
                 {"cells", std::move(cells)},
                 {"speedups", std::move(speedups)}};
  std::ofstream js(cfg.out / "report.json");
  if (!js) throw InputError("cannot write report.json in " + cfg.out.string());
  js << report.dump(2) << '\n';
}

}  // namespace

std::string mode_name(CostModel m) {
  return m == CostModel::kPrecomputed ? "PM" : "VO";
}

std::vector<TimingRecord> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.repetitions < 1) throw InputError("repetitions must be >= 1");
  if (cfg.functions.empty()) throw InputError("no functions to benchmark");
  if (cfg.modes.empty()) throw InputError("no modes to benchmark");
  const bool gradients = cfg.algorithm == "gradients";
  if (!gradients && cfg.algorithm != "min-norm" &&
      cfg.algorithm != "lovasz-min") {
    const auto& names = detail::maximize_algorithms();
    if (std::find(names.begin(), names.end(), cfg.algorithm) == names.end()) {
      throw InputError("unknown algorithm '" + cfg.algorithm + "'");
    }
  }

  std::vector<std::string> budgets;
  std::vector<double> fractions;
  if (gradients) {
    budgets = kGradientKinds;
    fractions.assign(budgets.size(), 0.0);
  } else if (!detail::takes_budget(cfg.algorithm)) {
    budgets = {"all"};
    fractions = {0.0};
  } else {
    for (double b : cfg.budgets) {
      detail::budget_to_k(b, 1);  // validates the fraction
      budgets.push_back(budget_label(b));
      fractions.push_back(b);
    }
  }

  std::vector<Cell> cells;
  for (std::size_t fi = 0; fi < cfg.functions.size(); ++fi) {
    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
      for (CostModel m : cfg.modes) {
        cells.push_back({fi, budgets[bi], fractions[bi], m});
      }
    }
  }
  std::vector<TimingRecord> records(cells.size());
  const unsigned workers = cfg.timing_strict ? 1u : detail::worker_count();
  detail::parallel_for(cells.size(), workers, [&](std::size_t i) {
    records[i] = run_cell(cfg, cells[i]);
  });
  if (!cfg.out.empty()) write_reports(cfg, budgets, records);
  return records;
}

}  // namespace submemo
