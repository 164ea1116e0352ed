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

// Acceptance suite. Prints one [PASS] or [FAIL] line per criterion and
// exits non-zero when any criterion fails.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "submemo/bench.hpp"
#include "submemo/bounds.hpp"
#include "submemo/constrained.hpp"
#include "submemo/maximize.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace {

using Clock = std::chrono::steady_clock;
using testing::mask_subset;
using testing::random_subset;
using testing::rel_err;
using testing::small_instance;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double gain_tol(const std::string& kind) {
  return kind == "logdet" ? 1e-7 : 1e-9;
}

bool le_tol(double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::abs(b)); }

const double kOneMinusInvE = 1.0 - std::exp(-1.0);

// ------------------------------------------------------------------ AC1

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::int64_t probes = 0;
  double worst = 0.0;
  std::string worst_kind;
  Outcome out;
  for (const auto& kind : testing::all_kinds()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Element n = 8 + static_cast<Element>(seed % 33);
      auto f = small_instance(kind, n, seed);
      std::mt19937_64 rng(seed * 7919 + 1);
      std::uniform_int_distribution<Element> pick(0, n - 1);
      for (int p = 0; p < 50; ++p) {
        const Subset x = random_subset(n, 0.3, rng);
        const Element j = pick(rng);
        f->set_memo(x);
        double got, want;
        if (x.contains(j)) {
          Subset rest = x;
          rest.erase(j);
          got = f->gain_remove(j);
          want = f->evaluate(x) - f->evaluate(rest);
        } else {
          Subset grown = x;
          grown.insert(j);
          got = f->gain_add(j);
          want = f->evaluate(grown) - f->evaluate(x);
        }
        const double e = rel_err(got, want);
        if (e > gain_tol(kind)) out.pass = false;
        if (e > worst) {
          worst = e;
          worst_kind = kind;
        }
        ++probes;
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs > 120.0) out.pass = false;
  out.detail = std::to_string(testing::all_kinds().size()) + " classes, " +
               std::to_string(probes) + " probes, max rel. error " +
               fmt("%.2e", worst) + (worst_kind.empty() ? "" : " (" + worst_kind + ")") +
               ", " + fmt("%.1f s", secs);
  return out;
}

// ------------------------------------------------------------------ AC2

Outcome statistic_consistency() {
  Outcome out;
  double worst = 0.0;
  std::int64_t ops = 0;
  for (const auto& kind : testing::all_kinds()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Element n = 10 + static_cast<Element>(seed % 21);
      auto f = small_instance(kind, n, seed + 500);
      std::mt19937_64 rng(seed + 17);
      std::uniform_int_distribution<Element> pick(0, n - 1);
      std::uniform_int_distribution<int> op(0, 9);
      f->set_memo({});
      for (int step = 0; step < 100; ++step) {
        const int o = op(rng);
        const Element j = pick(rng);
        if (o == 0) {
          f->set_memo(random_subset(n, 0.4, rng));
        } else if (f->memo().contains(j)) {
          f->downdate(j);
        } else {
          f->update(j);
        }
        const double dev = f->verify_statistic().max_deviation;
        worst = std::max(worst, dev);
        if (dev > gain_tol(kind)) out.pass = false;
        ++ops;
      }
    }
  }
  out.detail = std::to_string(ops) + " operations, max deviation " +
               fmt("%.2e", worst);
  return out;
}

// ------------------------------------------------------------------ AC3

Outcome bound_suites() {
  Outcome out;
  int instances = 0;
  std::string first_failure;
  for (const auto& kind : testing::all_kinds()) {
    if (!testing::is_submodular_kind(kind)) continue;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Element n = 9 + static_cast<Element>(seed);
      auto f = small_instance(kind, n, seed + 70);
      const auto values = testing::all_values(*f);
      std::mt19937_64 rng(seed);
      for (int rep = 0; rep < 3; ++rep) {
        const Subset at = random_subset(n, 0.5, rng);
        const ModularFunction lo = subgradient_at(*f, at);
        const ModularFunction up1 = supergradient_grow(*f, at);
        const ModularFunction up2 = supergradient_shrink(*f, at);
        const double fa = f->evaluate(at);
        bool ok = std::abs(lo(at) - fa) <= 1e-9 * std::max(1.0, std::abs(fa)) &&
                  std::abs(up1(at) - fa) <= 1e-9 * std::max(1.0, std::abs(fa)) &&
                  std::abs(up2(at) - fa) <= 1e-9 * std::max(1.0, std::abs(fa));
        for (std::uint64_t m = 0; ok && m < values.size(); ++m) {
          const Subset y = mask_subset(n, m);
          ok = le_tol(lo(y), values[m]) && le_tol(values[m], up1(y)) &&
               le_tol(values[m], up2(y));
        }
        if (!ok && first_failure.empty()) first_failure = kind + " bounds";
        out.pass = out.pass && ok;
      }
      for (std::uint64_t m = 0; m < values.size(); ++m) {
        Eigen::VectorXd ind = Eigen::VectorXd::Zero(n);
        for (Element j = 0; j < n; ++j) {
          if (m >> j & 1u) ind[j] = 1.0;
        }
        if (rel_err(lovasz_value(*f, ind), values[m]) > 1e-9) {
          out.pass = false;
          if (first_failure.empty()) first_failure = kind + " lovasz";
        }
      }
      ++instances;
    }
  }
  out.detail = std::to_string(instances) +
               " instances, exhaustive over all subsets" +
               (first_failure.empty() ? "" : ", first failure " + first_failure);
  return out;
}

// ------------------------------------------------------------------ AC4

Outcome greedy_guarantees() {
  Outcome out;
  double worst = 1e9;
  int mismatches = 0;
  const auto& kinds = testing::monotone_kinds();
  for (int i = 0; i < 100; ++i) {
    const auto& kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    const Element n = 10 + i % 6;
    const Element k = 1 + i % 5;
    auto f = small_instance(kind, n, 300 + static_cast<std::uint64_t>(i));
    const auto c = Constraint::cardinality(k);
    const double opt = brute_force_max(*f, c).value;
    const auto naive = greedy_naive(*f, c);
    const auto lazy = greedy_lazy(*f, c);
    const double bound = kOneMinusInvE * opt - 1e-9;
    if (naive.value < bound || lazy.value < bound) out.pass = false;
    if (naive.selected.sorted() != lazy.selected.sorted()) {
      out.pass = false;
      ++mismatches;
    }
    if (opt > 0) worst = std::min(worst, std::min(naive.value, lazy.value) / opt);
  }
  out.detail = "100 instances, worst ratio " + fmt("%.4f", worst) +
               " (bound " + fmt("%.4f", kOneMinusInvE) + "), " +
               std::to_string(mismatches) + " lazy/naive mismatches";
  return out;
}

// ------------------------------------------------------------------ AC5

Outcome stochastic_greedy() {
  Outcome out;
  double worst = 1e9;
  const auto& kinds = testing::monotone_kinds();
  for (int i = 0; i < 20; ++i) {
    const auto& kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    auto f = small_instance(kind, 12, 900 + static_cast<std::uint64_t>(i));
    const double opt = brute_force_max(*f, Constraint::cardinality(3)).value;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      sum += greedy_stochastic(*f, 3, 0.1, seed).value;
    }
    const double mean = sum / 50.0;
    if (mean < (kOneMinusInvE - 0.1) * opt - 1e-9) out.pass = false;
    if (opt > 0) worst = std::min(worst, mean / opt);
  }
  out.detail = "20 instances x 50 seeds, worst mean ratio " +
               fmt("%.4f", worst) + " (bound " +
               fmt("%.4f", kOneMinusInvE - 0.1) + ")";
  return out;
}

// ------------------------------------------------------------------ AC6

// Non-negative, non-monotone instances.
std::unique_ptr<SetFunction> nonmonotone_instance(int i) {
  const auto seed = 1200 + static_cast<std::uint64_t>(i);
  const Element n = 8 + i % 5;
  if (i % 2 == 0) {
    return make_function(
        gen_synthetic("graphcut", n, seed, {{"lambda", 1.0 + 0.25 * (i % 4)}}));
  }
  std::vector<MixtureComponent> parts;
  parts.push_back({0.5, make_function(gen_synthetic("faclocation", n, seed))});
  parts.push_back(
      {1.0, make_function(gen_synthetic("graphcut", n, seed + 1, {{"lambda", 1.0}}))});
  return make_mixture(std::move(parts));
}

Outcome nonmonotone_suite() {
  Outcome out;
  double worst_bi = 1e9, worst_rand = 1e9, worst_ls = 1e9;
  for (int i = 0; i < 100; ++i) {
    auto f = nonmonotone_instance(i);
    const Element n = f->ground_size();
    const double opt = brute_force_max(*f, Constraint::cardinality(n)).value;
    Permutation ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    const double bi = bidirectional_greedy(*f, ids).value;
    const double ls = local_search_usm(*f).value;
    if (bi < opt / 3.0 - 1e-9 || ls < opt / 3.0 - 1e-9) out.pass = false;
    worst_bi = std::min(worst_bi, bi / opt);
    worst_ls = std::min(worst_ls, ls / opt);
    if (i < 20) {
      const Element k = 4;
      const double opt_k = brute_force_max(*f, Constraint::cardinality(k)).value;
      double sum = 0.0;
      for (std::uint64_t s = 0; s < 200; ++s) {
        sum += randomized_greedy(*f, k, s).value;
      }
      const double mean = sum / 200.0;
      if (mean < 0.30 * opt_k - 1e-9) out.pass = false;
      worst_rand = std::min(worst_rand, mean / opt_k);
    }
  }
  out.detail = "worst ratios: bidirectional " + fmt("%.3f", worst_bi) +
               ", local search " + fmt("%.3f", worst_ls) +
               ", randomized mean (k=4, 200 seeds) " + fmt("%.3f", worst_rand);
  return out;
}

// ------------------------------------------------------------------ AC7

Outcome sieve_streaming_check() {
  Outcome out;
  double worst = 1e9;
  const auto& kinds = testing::monotone_kinds();
  for (int i = 0; i < 20; ++i) {
    const auto& kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    auto f = small_instance(kind, 12, 1500 + static_cast<std::uint64_t>(i));
    const double opt = brute_force_max(*f, Constraint::cardinality(3)).value;
    Permutation order(12);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(static_cast<std::uint64_t>(i));
    for (int rep = 0; rep < 6; ++rep) {
      if (rep == 1) std::reverse(order.begin(), order.end());
      if (rep > 1) std::shuffle(order.begin(), order.end(), rng);
      const double v = sieve_streaming(*f, order, 3, 0.1).value;
      if (v < (0.5 - 0.1) * opt - 1e-9) out.pass = false;
      worst = std::min(worst, v / opt);
    }
  }
  out.detail = "20 instances x 6 stream orders, worst ratio " +
               fmt("%.4f", worst) + " (bound 0.4)";
  return out;
}

// ------------------------------------------------------------------ AC8

std::unique_ptr<SetFunction> shifted(const std::string& kind, Element n,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed + 99);
  std::uniform_real_distribution<double> u(-1.5, 0.3);
  Eigen::VectorXd w(n);
  for (auto& v : w) v = u(rng);
  std::vector<MixtureComponent> parts;
  parts.push_back({1.0, small_instance(kind, n, seed)});
  parts.push_back({1.0, make_modular(w)});
  return make_mixture(std::move(parts));
}

Outcome min_norm_check() {
  Outcome out;
  double worst_value = 0.0, worst_sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    const char* kind = i % 2 == 0 ? "graphcut" : "mixture";
    const Element n = 8 + i % 7;
    auto f = shifted(kind, n, 2000 + static_cast<std::uint64_t>(i));
    const auto r = min_norm_point(*f);
    const double bf = brute_force_min(*f).value;
    const double fv = f->evaluate(Subset::full(n));
    worst_value = std::max(worst_value, std::abs(r.value - bf));
    worst_sum = std::max(worst_sum, std::abs(r.point.sum() - fv));
    if (std::abs(r.value - bf) > 1e-6 || std::abs(r.point.sum() - fv) > 1e-8) {
      out.pass = false;
    }
  }
  out.detail = "100 instances, max |value - brute force| " +
               fmt("%.2e", worst_value) + ", max |x(V) - f(V)| " +
               fmt("%.2e", worst_sum);
  return out;
}

// ------------------------------------------------------------------ AC9

bool monotone(const std::vector<double>& t, bool decreasing) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double slack = 1e-12 * std::max(1.0, std::abs(t[i - 1]));
    if (decreasing ? t[i] > t[i - 1] + slack : t[i] < t[i - 1] - slack) {
      return false;
    }
  }
  return true;
}

Outcome iterative_procedures() {
  Outcome out;
  int bad_mmin = 0, bad_scsc = 0, bad_scsk = 0, bad_ds = 0, infeasible = 0;
  for (int i = 0; i < 100; ++i) {
    const auto seed = 3000 + static_cast<std::uint64_t>(i);
    const Element n = 10 + i % 5;
    {
      auto f = small_instance("clusteredsetcover", n, seed);
      const auto r = mmin_constrained(*f, AtLeastK{2 + i % 3});
      if (!monotone(r.objective, true)) ++bad_mmin;
    }
    {
      auto f = small_instance("faclocation", n, seed);
      auto g = small_instance("setcover", n, seed + 1);
      const double c = 0.6 * g->evaluate(Subset::full(n));
      if (!monotone(scsc_solve(*f, *g, c).trace, true)) ++bad_scsc;
    }
    {
      auto f = small_instance("feature", n, seed);
      auto g = small_instance("faclocation", n, seed + 2);
      const double b = 0.4 * f->evaluate(Subset::full(n));
      const auto r = scsk_solve(*f, *g, b);
      if (!monotone(r.trace, false)) ++bad_scsk;
      // Every iterate: rerun with each iteration cap.
      for (int cap = 1; cap <= std::max(1, r.iterations); ++cap) {
        const auto ri = scsk_solve(*f, *g, b, cap);
        if (!le_tol(f->evaluate(ri.set), b)) ++infeasible;
      }
    }
    {
      auto f = small_instance("setcover", n, seed);
      auto g = small_instance("faclocation", n, seed + 3);
      const auto variant = static_cast<DsVariant>(i % 3);
      if (!monotone(ds_minimize(*f, *g, variant, seed).trace, true)) ++bad_ds;
    }
  }
  out.pass = bad_mmin + bad_scsc + bad_scsk + bad_ds + infeasible == 0;
  out.detail = "100 instances each; non-monotone traces: MMin " +
               std::to_string(bad_mmin) + ", SCSC " + std::to_string(bad_scsc) +
               ", SCSK " + std::to_string(bad_scsk) + ", DS " +
               std::to_string(bad_ds) + "; infeasible SCSK iterates " +
               std::to_string(infeasible);
  return out;
}

// ------------------------------------------------------------------ AC10

std::string counters_text(const EvalCounters& c) {
  std::ostringstream s;
  s << "{oracle " << c.oracle_evals << ", gain " << c.gain_evals << ", update "
    << c.memo_updates << ", rebuild " << c.memo_rebuilds << "}";
  return s.str();
}

Outcome counter_reproduction() {
  const Element n = 1000;
  const FunctionSpec spec = gen_synthetic("faclocation", n, 11);
  std::mt19937_64 rng(5);
  const Subset x = random_subset(n, 0.5, rng);

  auto pm = make_function(spec);
  pm->reset_counters();
  supergradient_grow(*pm, x);
  const EvalCounters sup_pm = pm->counters();

  auto vo = wrap_value_oracle(make_function(spec));
  vo->reset_counters();
  supergradient_grow(*vo, x);
  const EvalCounters sup_vo = vo->counters();

  pm->reset_counters();
  subgradient_at(*pm, x);
  const EvalCounters sub_pm = pm->counters();

  Outcome out;
  out.pass = sup_pm.memo_rebuilds == 1 && sup_pm.gain_evals == n &&
             sup_pm.oracle_evals == 0 && sup_vo.oracle_evals == n + 1 &&
             sub_pm.gain_evals == n && sub_pm.memo_updates == n &&
             sub_pm.oracle_evals == 0;
  out.detail = "supergradient PM " + counters_text(sup_pm) + ", VO " +
               counters_text(sup_vo) + "; subgradient PM " +
               counters_text(sub_pm);
  return out;
}

// ------------------------------------------------------------------ AC11

double best_time(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

Outcome speedups() {
  const auto t0 = Clock::now();
  const Element n = 2000;
  const FunctionSpec spec = gen_synthetic("faclocation", n, 7);
  std::mt19937_64 rng(1);
  const Subset y = random_subset(n, 0.5, rng);
  const auto c = Constraint::cardinality(n / 20);

  auto pm = make_function(spec);
  auto vo = wrap_value_oracle(make_function(spec));
  const double sub_pm = best_time(5, [&] { subgradient_at(*pm, y); });
  const double sub_vo = best_time(2, [&] { subgradient_at(*vo, y); });
  const double lazy_pm = best_time(5, [&] { greedy_lazy(*pm, c); });
  const double lazy_vo = best_time(2, [&] { greedy_lazy(*vo, c); });
  const double total = seconds_since(t0);

  Outcome out;
  const double sub_ratio = sub_vo / sub_pm;
  const double lazy_ratio = lazy_vo / lazy_pm;
  out.pass = sub_ratio >= 50.0 && lazy_ratio >= 20.0 && total <= 600.0;
  out.detail = "subgradient VO/PM " + fmt("%.1f", sub_ratio) + "x (" +
               fmt("%.4f", sub_vo) + " s / " + fmt("%.4f", sub_pm) +
               " s, need 50x); lazy greedy 5% VO/PM " +
               fmt("%.1f", lazy_ratio) + "x (" + fmt("%.4f", lazy_vo) +
               " s / " + fmt("%.4f", lazy_pm) + " s, need 20x); " +
               fmt("%.1f s", total);
  return out;
}

// ------------------------------------------------------------------ AC12

long peak_rss_kb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

Outcome scale_smoke() {
  const Element n = 200000;
  const std::int32_t features = 256;
  const auto t0 = Clock::now();
  const FunctionSpec spec =
      gen_synthetic("feature", n, 3, {{"features", features}, {"nnz", 8}});
  auto f = make_function(spec);
  f->set_memo({});
  const long before = peak_rss_kb();
  const auto r = greedy_lazy(*f, Constraint::cardinality(1000));
  const long grown_kb = peak_rss_kb() - before;
  const std::size_t stat = f->statistic().size();
  const double linear = static_cast<double>(n + features);
  // Statistic entries and the transient heap, priority queue and trace
  // together stay within a small constant times (n + |F|) doubles.
  const bool stat_ok = static_cast<double>(stat) <= 4.0 * linear;
  const bool mem_ok =
      static_cast<double>(grown_kb) * 1024.0 <= 64.0 * linear + 16.0 * (1 << 20);
  Outcome out;
  out.pass = r.counters.oracle_evals == 0 && r.selected.size() == 1000 &&
             stat_ok && mem_ok;
  out.detail = "n=200000, |F|=256, k=1000: oracle_evals " +
               std::to_string(r.counters.oracle_evals) + ", statistic " +
               std::to_string(stat) + " entries, peak RSS growth " +
               std::to_string(grown_kb) + " KiB, " +
               fmt("%.1f s", seconds_since(t0));
  return out;
}

}  // namespace
}  // namespace submemo

int main() {
  using submemo::Outcome;
  struct Criterion {
    const char* id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "oracle equivalence", submemo::oracle_equivalence},
      {"AC2", "statistic consistency", submemo::statistic_consistency},
      {"AC3", "bound suites", submemo::bound_suites},
      {"AC4", "greedy guarantees", submemo::greedy_guarantees},
      {"AC5", "stochastic greedy", submemo::stochastic_greedy},
      {"AC6", "non-monotone suite", submemo::nonmonotone_suite},
      {"AC7", "sieve streaming", submemo::sieve_streaming_check},
      {"AC8", "minimum-norm point", submemo::min_norm_check},
      {"AC9", "iterative procedures", submemo::iterative_procedures},
      {"AC10", "exact counters", submemo::counter_reproduction},
      {"AC11", "speedups", submemo::speedups},
      {"AC12", "scale smoke test", submemo::scale_smoke},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
