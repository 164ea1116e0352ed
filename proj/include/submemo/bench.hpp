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

// Data loading, synthetic instances, exhaustive oracles and the
// experiment runner behind the `submemo` command line tool.

#ifndef SUBMEMO_BENCH_HPP_
#define SUBMEMO_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "submemo/core.hpp"
#include "submemo/functions.hpp"
#include "submemo/maximize.hpp"

namespace submemo {

// ------------------------------------------------------------------ files

// CSV with a header line "n=<count>" followed by n rows of n numbers.
Eigen::MatrixXd load_dense_matrix(const std::filesystem::path& path);
// Writes with 17 significant digits, so loading returns identical bits.
void write_dense_matrix(const std::filesystem::path& path,
                        const Eigen::MatrixXd& m);

// JSON set system {"n", "universe", "weights", "sets", optional "clusters",
// optional "probs"}. "probs" is |universe| rows of n probabilities and
// selects the probabilistic class; "clusters" selects the clustered class.
FunctionSpec load_set_system(const std::filesystem::path& path);
void write_set_system(const std::filesystem::path& path,
                      const FunctionSpec& spec);

// JSON function description, see README for the schema. Relative matrix
// and set-system paths resolve against the file's directory.
FunctionSpec load_function_spec(const std::filesystem::path& path);

// "synthetic:<kind>,n=<n>,seed=<s>[,<param>=<v>...]" or a spec file path.
FunctionSpec parse_function_arg(const std::string& arg);

// Class name of the top-level spec, e.g. "facility-location".
std::string spec_class(const FunctionSpec& spec);
Element spec_ground_size(const FunctionSpec& spec);

// -------------------------------------------------------------- synthetic

using Params = std::map<std::string, double>;

// Seeded instance of a zoo class. Kinds: faclocation, satcoverage,
// graphcut, feature, setcover, clusteredsetcover, probsetcover,
// clusteredconcave, logdet, dispersion-min, dispersion-sum,
// dispersion-minsum, modular, deep, mixture.
FunctionSpec gen_synthetic(const std::string& kind, Element n,
                           std::uint64_t seed, const Params& params = {});
const std::vector<std::string>& synthetic_kinds();

// ------------------------------------------------------------ brute force

inline constexpr Element kBruteForceCap = 20;

struct BruteForceResult {
  Subset set;
  double value = 0.0;
};

// Exhaustive optimum over all 2^n sets (n <= 20). Ties go to the
// lexicographically smallest sorted member list.
BruteForceResult brute_force_max(SetFunction& f, const Constraint& c);
BruteForceResult brute_force_min(SetFunction& f);

// ------------------------------------------------------------ experiments

struct ExperimentConfig {
  std::vector<std::pair<std::string, FunctionSpec>> functions;
  // A maximization algorithm name, "gradients" or "min-norm".
  std::string algorithm = "lazy-greedy";
  std::vector<CostModel> modes = {CostModel::kPrecomputed,
                                  CostModel::kValueOracle};
  std::vector<double> budgets = {0.05, 0.15, 0.30};  // fractions of n
  int repetitions = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  Element machines = 2;
  std::filesystem::path out;  // report.csv and report.json; empty skips
  bool timing_strict = false;
};

struct TimingRecord {
  std::string function;
  std::string algorithm;
  std::string mode;    // "PM" or "VO"
  std::string budget;  // "5%", or the gradient kind
  double wall_min = 0.0;
  double wall_mean = 0.0;
  EvalCounters counters;  // of the last repetition
  double value = 0.0;
  std::vector<Element> selected;
  Eigen::VectorXd weights;  // gradient cells only
  std::string error;        // non-empty when the cell failed
};

std::vector<TimingRecord> run_experiment(const ExperimentConfig& cfg);

std::string mode_name(CostModel m);

// Entry point of the `submemo` tool. Exit codes: 0 success, 1 failed
// validation, 2 input error, 3 solver non-convergence.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace submemo

#endif  // SUBMEMO_BENCH_HPP_
