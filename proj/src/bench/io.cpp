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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "submemo/bench.hpp"

namespace submemo {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view cell, const std::string& where) {
  cell = trim(cell);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw InputError(where + ": non-numeric cell '" + std::string(cell) + "'");
  }
  if (!std::isfinite(v)) throw InputError(where + ": non-finite value");
  return v;
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

template <typename T>
T get_as(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(where + ": bad \"" + key + "\": " + e.what());
  }
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows,
                               const std::string& where) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c) {
      throw InputError(where + ": ragged rows");
    }
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  if (!m.allFinite()) throw InputError(where + ": non-finite value");
  return m;
}

Eigen::MatrixXd matrix_field(const json& j, const char* key,
                             const fs::path& base, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  const json& v = j.at(key);
  if (v.is_string()) return load_dense_matrix(base / v.get<std::string>());
  return rows_to_matrix(get_as<std::vector<std::vector<double>>>(j, key, where),
                        where);
}

SparseMatrix sparse_field(const json& j, const char* key, const fs::path& base,
                          const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  const json& v = j.at(key);
  if (v.is_object()) {
    const auto rows = get_as<Eigen::Index>(v, "rows", where);
    const auto cols = get_as<Eigen::Index>(v, "cols", where);
    const auto trips =
        get_as<std::vector<std::tuple<Eigen::Index, Eigen::Index, double>>>(
            v, "triplets", where);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(trips.size());
    for (const auto& [r, c, x] : trips) {
      if (r < 0 || r >= rows || c < 0 || c >= cols) {
        throw InputError(where + ": triplet index out of range");
      }
      t.emplace_back(r, c, x);
    }
    SparseMatrix m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }
  return matrix_field(j, key, base, where).sparseView();
}

std::vector<std::vector<std::int32_t>> id_lists(const json& j, const char* key,
                                                const std::string& where) {
  return get_as<std::vector<std::vector<std::int32_t>>>(j, key, where);
}

FunctionSpec set_system_from_json(const json& j, const std::string& where) {
  SetCoverData cover;
  cover.n = get_as<Element>(j, "n", where);
  cover.universe = get_as<std::int32_t>(j, "universe", where);
  cover.weights = to_vector(get_as<std::vector<double>>(j, "weights", where));
  cover.sets = id_lists(j, "sets", where);
  FunctionSpec spec;
  if (j.contains("probs")) {
    ProbabilisticSetCoverData p;
    p.probabilities = rows_to_matrix(
        get_as<std::vector<std::vector<double>>>(j, "probs", where), where);
    p.weights = cover.weights;
    if (p.probabilities.rows() != cover.universe ||
        p.probabilities.cols() != cover.n) {
      throw InputError(where + ": probs must be universe x n");
    }
    spec = make_spec(std::move(p));
  } else if (j.contains("clusters")) {
    ClusteredSetCoverData c;
    c.cover = std::move(cover);
    c.clusters = id_lists(j, "clusters", where);
    spec = make_spec(std::move(c));
  } else {
    spec = make_spec(std::move(cover));
  }
  make_function(spec);  // validates
  return spec;
}

Concave concave_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return Concave::sqrt();
  return parse_concave(get_as<std::string>(j, key, where));
}

FunctionSpec spec_from_json(const json& j, const fs::path& base,
                            const std::string& where) {
  const auto cls = get_as<std::string>(j, "class", where);
  if (cls == "facility-location") {
    return make_spec(
        FacilityLocationData{matrix_field(j, "similarity", base, where)});
  }
  if (cls == "saturated-coverage") {
    Eigen::MatrixXd s = matrix_field(j, "similarity", base, where);
    if (j.contains("saturation")) {
      return make_spec(SaturatedCoverageData{
          std::move(s),
          to_vector(get_as<std::vector<double>>(j, "saturation", where))});
    }
    const double fraction =
        j.contains("fraction") ? get_as<double>(j, "fraction", where) : 0.25;
    return make_spec(SaturatedCoverageData::with_fraction(std::move(s), fraction));
  }
  if (cls == "graph-cut") {
    GraphCutData d{matrix_field(j, "similarity", base, where), 1.0};
    if (j.contains("lambda")) d.lambda = get_as<double>(j, "lambda", where);
    return make_spec(std::move(d));
  }
  if (cls == "feature-based") {
    return make_spec(FeatureBasedData{sparse_field(j, "features", base, where),
                                      concave_field(j, "concave", where)});
  }
  if (cls == "set-cover" || cls == "clustered-set-cover" ||
      cls == "probabilistic-set-cover") {
    if (!j.contains("set_system")) {
      throw InputError(where + ": missing \"set_system\"");
    }
    const json& s = j.at("set_system");
    FunctionSpec spec = s.is_string()
                            ? load_set_system(base / s.get<std::string>())
                            : set_system_from_json(s, where);
    if (spec_class(spec) != cls) {
      throw InputError(where + ": set system describes " + spec_class(spec));
    }
    return spec;
  }
  if (cls == "clustered-concave") {
    ClusteredConcaveData d;
    d.n = get_as<Element>(j, "n", where);
    d.clusters = id_lists(j, "clusters", where);
    for (const auto& w :
         get_as<std::vector<std::vector<double>>>(j, "weights", where)) {
      d.cluster_weights.push_back(to_vector(w));
    }
    d.concave = concave_field(j, "concave", where);
    return make_spec(std::move(d));
  }
  if (cls == "log-det") {
    LogDetData d{matrix_field(j, "kernel", base, where), std::nullopt};
    if (j.contains("ridge")) d.ridge = get_as<double>(j, "ridge", where);
    return make_spec(std::move(d));
  }
  if (cls.rfind("dispersion-", 0) == 0) {
    DispersionData d{matrix_field(j, "distance", base, where),
                     DispersionKind::kMin};
    if (cls == "dispersion-min") {
      d.kind = DispersionKind::kMin;
    } else if (cls == "dispersion-sum") {
      d.kind = DispersionKind::kSum;
    } else if (cls == "dispersion-min-sum") {
      d.kind = DispersionKind::kMinSum;
    } else {
      throw InputError(where + ": unknown class " + cls);
    }
    return make_spec(std::move(d));
  }
  if (cls == "modular") {
    return make_spec(
        ModularData{to_vector(get_as<std::vector<double>>(j, "weights", where))});
  }
  if (cls == "deep-submodular") {
    DeepSubmodularData d;
    d.features = sparse_field(j, "features", base, where);
    d.mixing = matrix_field(j, "mixing", base, where);
    d.top_weights =
        to_vector(get_as<std::vector<double>>(j, "top_weights", where));
    d.inner = concave_field(j, "inner", where);
    d.outer = concave_field(j, "outer", where);
    return make_spec(std::move(d));
  }
  if (cls == "mixture") {
    MixtureSpec m;
    if (!j.contains("components") || !j.at("components").is_array()) {
      throw InputError(where + ": mixture needs a components array");
    }
    for (const json& c : j.at("components")) {
      const double w = c.contains("weight") ? get_as<double>(c, "weight", where)
                                            : 1.0;
      if (!c.contains("function")) {
        throw InputError(where + ": mixture component without function");
      }
      m.components.emplace_back(w, spec_from_json(c.at("function"), base, where));
    }
    return make_spec(std::move(m));
  }
  if (cls == "synthetic") {
    Params params;
    if (j.contains("params")) params = get_as<Params>(j, "params", where);
    return gen_synthetic(get_as<std::string>(j, "kind", where),
                         get_as<Element>(j, "n", where),
                         j.contains("seed") ? get_as<std::uint64_t>(j, "seed", where)
                                            : 0,
                         params);
  }
  throw InputError(where + ": unknown class '" + cls + "'");
}

}  // namespace

Eigen::MatrixXd load_dense_matrix(const fs::path& path) {
  const std::string where = path.string();
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw InputError(where + ": empty file");
  const std::string_view head = trim(line);
  if (head.rfind("n=", 0) != 0) {
    throw InputError(where + ": header must be n=<count>");
  }
  const double nd = parse_number(head.substr(2), where);
  if (nd < 1 || nd != std::floor(nd)) {
    throw InputError(where + ": bad count in header");
  }
  const auto n = static_cast<Eigen::Index>(nd);
  Eigen::MatrixXd m(n, n);
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (row >= n) throw InputError(where + ": more than n rows");
    std::string_view rest = line;
    Eigen::Index col = 0;
    while (true) {
      const std::size_t comma = rest.find(',');
      if (col >= n) throw InputError(where + ": ragged row " + std::to_string(row));
      m(row, col++) = parse_number(rest.substr(0, comma), where);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (col != n) throw InputError(where + ": ragged row " + std::to_string(row));
    ++row;
  }
  if (row != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  return m;
}

void write_dense_matrix(const fs::path& path, const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("dense matrix must be square");
  std::string out = "n=" + std::to_string(m.rows()) + "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  write_file(path, out);
}

FunctionSpec load_set_system(const fs::path& path) {
  const std::string where = path.string();
  return set_system_from_json(parse_json(read_file(path), where), where);
}

void write_set_system(const fs::path& path, const FunctionSpec& spec) {
  json j;
  auto put_cover = [&](const SetCoverData& c) {
    j["n"] = c.n;
    j["universe"] = c.universe;
    j["weights"] = std::vector<double>(c.weights.data(),
                                       c.weights.data() + c.weights.size());
    j["sets"] = c.sets;
  };
  if (const auto* c = std::get_if<std::shared_ptr<const SetCoverData>>(&spec)) {
    put_cover(**c);
  } else if (const auto* cc =
                 std::get_if<std::shared_ptr<const ClusteredSetCoverData>>(&spec)) {
    put_cover((*cc)->cover);
    j["clusters"] = (*cc)->clusters;
  } else if (const auto* p = std::get_if<
                 std::shared_ptr<const ProbabilisticSetCoverData>>(&spec)) {
    const auto& d = **p;
    const auto u = static_cast<std::int32_t>(d.probabilities.rows());
    j["n"] = d.probabilities.cols();
    j["universe"] = u;
    j["weights"] = std::vector<double>(d.weights.data(),
                                       d.weights.data() + d.weights.size());
    j["sets"] = std::vector<std::vector<std::int32_t>>(
        static_cast<std::size_t>(d.probabilities.cols()));
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(u));
    for (Eigen::Index r = 0; r < d.probabilities.rows(); ++r) {
      for (Eigen::Index c = 0; c < d.probabilities.cols(); ++c) {
        rows[r].push_back(d.probabilities(r, c));
      }
    }
    j["probs"] = rows;
  } else {
    throw InputError("write_set_system: not a set-system class");
  }
  write_file(path, j.dump(1) + "\n");
}

FunctionSpec load_function_spec(const fs::path& path) {
  const std::string where = path.string();
  return spec_from_json(parse_json(read_file(path), where),
                        path.parent_path(), where);
}

FunctionSpec parse_function_arg(const std::string& arg) {
  const std::string prefix = "synthetic:";
  if (arg.rfind(prefix, 0) != 0) return load_function_spec(arg);
  std::string_view rest = std::string_view(arg).substr(prefix.size());
  std::string kind;
  Params params;
  bool first = true;
  while (!rest.empty() || first) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (first) {
      kind = std::string(item);
      first = false;
    } else {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw InputError("synthetic spec: expected key=value, got '" +
                         std::string(item) + "'");
      }
      params[std::string(trim(item.substr(0, eq)))] =
          parse_number(item.substr(eq + 1), "synthetic spec");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (!params.count("n")) throw InputError("synthetic spec: missing n");
  const double n = params["n"];
  const double seed = params.count("seed") ? params["seed"] : 0.0;
  params.erase("n");
  params.erase("seed");
  if (n < 1 || n != std::floor(n) || seed < 0 || seed != std::floor(seed)) {
    throw InputError("synthetic spec: n and seed must be whole numbers");
  }
  return gen_synthetic(kind, static_cast<Element>(n),
                       static_cast<std::uint64_t>(seed), params);
}

std::string spec_class(const FunctionSpec& spec) {
  struct Visitor {
    std::string operator()(const std::shared_ptr<const FacilityLocationData>&) const {
      return "facility-location";
    }
    std::string operator()(const std::shared_ptr<const SaturatedCoverageData>&) const {
      return "saturated-coverage";
    }
    std::string operator()(const std::shared_ptr<const GraphCutData>&) const {
      return "graph-cut";
    }
    std::string operator()(const std::shared_ptr<const FeatureBasedData>&) const {
      return "feature-based";
    }
    std::string operator()(const std::shared_ptr<const SetCoverData>&) const {
      return "set-cover";
    }
    std::string operator()(const std::shared_ptr<const ClusteredSetCoverData>&) const {
      return "clustered-set-cover";
    }
    std::string operator()(
        const std::shared_ptr<const ProbabilisticSetCoverData>&) const {
      return "probabilistic-set-cover";
    }
    std::string operator()(const std::shared_ptr<const ClusteredConcaveData>&) const {
      return "clustered-concave";
    }
    std::string operator()(const std::shared_ptr<const LogDetData>&) const {
      return "log-det";
    }
    std::string operator()(const std::shared_ptr<const DispersionData>& d) const {
      switch (d->kind) {
        case DispersionKind::kMin:
          return "dispersion-min";
        case DispersionKind::kSum:
          return "dispersion-sum";
        case DispersionKind::kMinSum:
          return "dispersion-min-sum";
      }
      return "dispersion";
    }
    std::string operator()(const std::shared_ptr<const ModularData>&) const {
      return "modular";
    }
    std::string operator()(const std::shared_ptr<const DeepSubmodularData>&) const {
      return "deep-submodular";
    }
    std::string operator()(const std::shared_ptr<const MixtureSpec>&) const {
      return "mixture";
    }
  };
  return std::visit(Visitor{}, spec);
}

Element spec_ground_size(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& d) -> Element {
        using T = std::decay_t<decltype(*d)>;
        if constexpr (std::is_same_v<T, FacilityLocationData> ||
                      std::is_same_v<T, SaturatedCoverageData> ||
                      std::is_same_v<T, GraphCutData>) {
          return static_cast<Element>(d->similarity.cols());
        } else if constexpr (std::is_same_v<T, FeatureBasedData> ||
                             std::is_same_v<T, DeepSubmodularData>) {
          return static_cast<Element>(d->features.cols());
        } else if constexpr (std::is_same_v<T, SetCoverData> ||
                             std::is_same_v<T, ClusteredConcaveData>) {
          return d->n;
        } else if constexpr (std::is_same_v<T, ClusteredSetCoverData>) {
          return d->cover.n;
        } else if constexpr (std::is_same_v<T, ProbabilisticSetCoverData>) {
          return static_cast<Element>(d->probabilities.cols());
        } else if constexpr (std::is_same_v<T, LogDetData>) {
          return static_cast<Element>(d->kernel.cols());
        } else if constexpr (std::is_same_v<T, DispersionData>) {
          return static_cast<Element>(d->distance.cols());
        } else if constexpr (std::is_same_v<T, ModularData>) {
          return static_cast<Element>(d->weights.size());
        } else {
          if (d->components.empty()) return 0;
          return spec_ground_size(d->components.front().second);
        }
      },
      spec);
}

}  // namespace submemo
