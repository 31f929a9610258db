// Copyright 2026 The amgae Authors.
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

#include "amgae/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "amgae/classify.h"
#include "amgae/metrics.h"

namespace amgae {
namespace {

namespace fs = std::filesystem;

// Yields (line number, content) for non-blank, non-comment lines; the first
// line is reported separately when it is a '#' header.
class LineReader {
 public:
  explicit LineReader(const fs::path& path) : path_(path.string()), in_(path) {
    if (!in_) throw std::invalid_argument("cannot open " + path_);
  }

  bool Next(std::string_view* out) {
    while (std::getline(in_, buf_)) {
      ++line_;
      if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
      std::string_view v = Trim(buf_);
      if (v.empty()) continue;
      if (v.front() == '#') {
        if (line_ == 1) header_ = std::string(v.substr(1));
        continue;
      }
      *out = v;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& msg) const { throw ParseError(path_, line_, msg); }
  const std::string& header() const { return header_; }
  const std::string& path() const { return path_; }

  static std::string_view Trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::string buf_;
  std::string header_;
  std::size_t line_ = 0;
};

template <typename T>
bool ParseNumber(std::string_view s, T* out) {
  s = LineReader::Trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Splits "a<ws>b" into its two fields; the second may be empty.
bool SplitTwo(std::string_view line, std::string_view* a, std::string_view* b) {
  const std::size_t sep = line.find_first_of(" \t");
  if (sep == std::string_view::npos) {
    *a = line;
    *b = {};
    return true;
  }
  *a = line.substr(0, sep);
  *b = LineReader::Trim(line.substr(sep + 1));
  return true;
}

std::vector<std::string_view> SplitComma(std::string_view s) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Reads "key=value" integers out of a header line.
std::optional<long long> HeaderValue(const std::string& header, const std::string& key) {
  std::istringstream in(header);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || token.substr(0, eq) != key) continue;
    long long v = 0;
    if (ParseNumber(std::string_view(token).substr(eq + 1), &v)) return v;
  }
  return std::nullopt;
}

Index ReadNode(LineReader& r, std::string_view field) {
  long long id = 0;
  if (!ParseNumber(field, &id) || id < 0) r.Fail(fmt::format("bad node id '{}'", field));
  return static_cast<Index>(id);
}

struct AttributeRow {
  Index node;
  std::vector<std::pair<Index, double>> entries;  // sparse
  std::vector<double> dense;
};

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

DatasetFiles DatasetFiles::InDirectory(const fs::path& dir) {
  return {dir / "edges.tsv", dir / "attributes.txt", dir / "labels.tsv"};
}

DatasetBundle LoadDataset(const DatasetFiles& files, const std::string& name,
                          AttributeFormat format, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;

  // Attributes first: their header fixes N and D when present.
  LineReader ar(files.attributes);
  std::vector<AttributeRow> rows;
  std::string_view line;
  Index max_node = -1;
  Index max_dim = -1;
  std::optional<Index> dense_width;
  while (ar.Next(&line)) {
    std::string_view id_field, payload;
    SplitTwo(line, &id_field, &payload);
    AttributeRow row;
    row.node = ReadNode(ar, id_field);
    if (format == AttributeFormat::kAuto) {
      format = payload.find(':') != std::string_view::npos || payload.empty()
                   ? AttributeFormat::kSparse
                   : AttributeFormat::kDense;
    }
    for (std::string_view item : SplitComma(payload)) {
      if (format == AttributeFormat::kSparse) {
        const auto colon = item.find(':');
        long long dim = 0;
        double value = 0.0;
        if (colon == std::string_view::npos || !ParseNumber(item.substr(0, colon), &dim) ||
            dim < 0 || !ParseNumber(item.substr(colon + 1), &value) || !std::isfinite(value)) {
          ar.Fail(fmt::format("bad sparse entry '{}', expected dim:value", item));
        }
        row.entries.emplace_back(static_cast<Index>(dim), value);
        max_dim = std::max(max_dim, static_cast<Index>(dim));
      } else {
        double value = 0.0;
        if (!ParseNumber(item, &value) || !std::isfinite(value)) {
          ar.Fail(fmt::format("bad dense value '{}'", item));
        }
        row.dense.push_back(value);
      }
    }
    if (format == AttributeFormat::kDense) {
      const auto width = static_cast<Index>(row.dense.size());
      if (dense_width && *dense_width != width) {
        ar.Fail(fmt::format("dense row has {} values, earlier rows have {}", width, *dense_width));
      }
      dense_width = width;
      max_dim = std::max(max_dim, width - 1);
    }
    max_node = std::max(max_node, row.node);
    rows.push_back(std::move(row));
  }
  const auto header_nodes = HeaderValue(ar.header(), "num_nodes");
  const auto header_dims = HeaderValue(ar.header(), "num_dims");

  LineReader er(files.edges);
  std::vector<Edge> edges;
  while (er.Next(&line)) {
    std::string_view a, b;
    SplitTwo(line, &a, &b);
    if (b.empty() || b.find_first_of(" \t") != std::string_view::npos) {
      er.Fail("expected two node ids");
    }
    edges.emplace_back(ReadNode(er, a), ReadNode(er, b));
    max_node = std::max({max_node, edges.back().first, edges.back().second});
  }
  rep.edge_lines = edges.size();

  LineReader lr(files.labels);
  std::vector<std::pair<Index, int>> label_lines;
  int max_label = -1;
  while (lr.Next(&line)) {
    std::string_view a, b;
    SplitTwo(line, &a, &b);
    long long c = 0;
    const Index node = ReadNode(lr, a);
    if (!ParseNumber(b, &c)) lr.Fail(fmt::format("bad class '{}'", b));
    if (c < 0) lr.Fail(fmt::format("class {} out of range", c));
    label_lines.emplace_back(node, static_cast<int>(c));
    max_label = std::max(max_label, static_cast<int>(c));
    max_node = std::max(max_node, node);
  }
  const auto header_classes = HeaderValue(lr.header(), "num_classes");

  const Index n = header_nodes ? static_cast<Index>(*header_nodes) : max_node + 1;
  const Index d = header_dims ? static_cast<Index>(*header_dims) : max_dim + 1;
  if (max_node >= n) {
    throw std::invalid_argument(
        fmt::format("{}: node id {} out of range for num_nodes={}", name, max_node, n));
  }
  if (max_dim >= d) {
    throw std::invalid_argument(
        fmt::format("{}: dimension {} out of range for num_dims={}", name, max_dim, d));
  }
  if (d <= 0) throw std::invalid_argument(name + ": no attribute dimensions");

  DatasetBundle b;
  b.name = name;
  SparseGraph::BuildStats stats;
  b.graph = SparseGraph::FromEdges(n, edges, &stats);
  rep.self_loops_dropped = stats.self_loops_dropped;
  rep.duplicates_dropped = stats.duplicates_dropped;
  if (stats.self_loops_dropped > 0) {
    rep.warnings.push_back(fmt::format("dropped {} self-loops", stats.self_loops_dropped));
  }
  if (stats.duplicates_dropped > 0) {
    rep.warnings.push_back(fmt::format("dropped {} duplicate edges", stats.duplicates_dropped));
  }

  b.x = Matrix::Zero(n, d);
  std::vector<bool> seen_row(static_cast<std::size_t>(n), false);
  for (const AttributeRow& row : rows) {
    if (seen_row[static_cast<std::size_t>(row.node)]) {
      throw std::invalid_argument(fmt::format("{}: node {} has two attribute rows", name, row.node));
    }
    seen_row[static_cast<std::size_t>(row.node)] = true;
    if (format == AttributeFormat::kDense) {
      if (static_cast<Index>(row.dense.size()) != d) {
        throw std::invalid_argument(
            fmt::format("{}: dense row of node {} has {} values, expected {}", name, row.node,
                        row.dense.size(), d));
      }
      for (Index j = 0; j < d; ++j) b.x(row.node, j) = row.dense[static_cast<std::size_t>(j)];
    } else {
      for (const auto& [dim, value] : row.entries) b.x(row.node, dim) = value;
    }
  }

  b.n_classes = header_classes ? static_cast<int>(*header_classes) : max_label + 1;
  b.labels.assign(static_cast<std::size_t>(n), -1);
  for (const auto& [node, c] : label_lines) {
    if (c >= b.n_classes) {
      throw std::invalid_argument(
          fmt::format("{}: class {} of node {} out of range for num_classes={}", name, c, node,
                      b.n_classes));
    }
    if (b.labels[static_cast<std::size_t>(node)] != -1) {
      throw std::invalid_argument(fmt::format("{}: node {} labelled twice", name, node));
    }
    b.labels[static_cast<std::size_t>(node)] = c;
  }
  for (Index i = 0; i < n; ++i) {
    if (b.labels[static_cast<std::size_t>(i)] < 0) {
      throw std::invalid_argument(fmt::format("{}: node {} has no label", name, i));
    }
  }
  return b;
}

DatasetBundle LoadDataset(const fs::path& dir, AttributeFormat format, LoadReport* report) {
  fs::path clean = dir;
  if (!clean.has_filename()) clean = clean.parent_path();
  return LoadDataset(DatasetFiles::InDirectory(dir), clean.filename().string(), format, report);
}

void WriteDataset(const DatasetBundle& bundle, const fs::path& dir) {
  fs::create_directories(dir);
  const DatasetFiles files = DatasetFiles::InDirectory(dir);
  {
    std::ofstream out(files.edges);
    for (const auto& [i, j] : bundle.graph.edges()) out << i << '\t' << j << '\n';
    if (!out) throw std::runtime_error("cannot write " + files.edges.string());
  }
  {
    std::ofstream out(files.attributes);
    const bool sparse = IsCategorical(bundle.x);
    out << fmt::format("# num_nodes={} num_dims={}\n", bundle.n_nodes(), bundle.n_dims());
    for (Index i = 0; i < bundle.x.rows(); ++i) {
      out << i << '\t';
      bool first = true;
      for (Index j = 0; j < bundle.x.cols(); ++j) {
        const double v = bundle.x(i, j);
        if (sparse && v == 0.0) continue;
        if (!first) out << ',';
        first = false;
        out << (sparse ? fmt::format("{}:{}", j, v) : fmt::format("{:.17g}", v));
      }
      out << '\n';
    }
    if (!out) throw std::runtime_error("cannot write " + files.attributes.string());
  }
  {
    std::ofstream out(files.labels);
    out << fmt::format("# num_classes={}\n", bundle.n_classes);
    for (std::size_t i = 0; i < bundle.labels.size(); ++i) out << i << '\t' << bundle.labels[i] << '\n';
    if (!out) throw std::runtime_error("cannot write " + files.labels.string());
  }
}

std::optional<BenchmarkStats> KnownBenchmark(const std::string& name) {
  static const BenchmarkStats kKnown[] = {
      {"cora", 2708, 1433, 7, 10556},
      {"citeseer", 3327, 3703, 6, 9228},
  };
  const std::string key = Lower(name);
  for (const auto& s : kKnown) {
    if (s.name == key) return s;
  }
  return std::nullopt;
}

void CheckBenchmark(const DatasetBundle& bundle, LoadReport* report) {
  const auto stats = KnownBenchmark(bundle.name);
  if (!stats) return;
  if (bundle.n_nodes() != stats->nodes || bundle.n_dims() != stats->dims ||
      bundle.n_classes != stats->classes) {
    throw std::invalid_argument(fmt::format(
        "{}: expected {} nodes, {} dims, {} classes; got {}, {}, {}", bundle.name, stats->nodes,
        stats->dims, stats->classes, bundle.n_nodes(), bundle.n_dims(), bundle.n_classes));
  }
  if (report && 2 * bundle.graph.n_edges() != stats->directed_edges) {
    report->warnings.push_back(fmt::format("{}: {} directed edges after cleaning, {} published",
                                           bundle.name, 2 * bundle.graph.n_edges(),
                                           stats->directed_edges));
  }
}

void SplitSpec::Validate() const {
  if (!(observed_fraction > 0.0 && observed_fraction <= 1.0)) {
    throw std::invalid_argument("SplitSpec: observed_fraction must lie in (0, 1]");
  }
  if (folds < 2) throw std::invalid_argument("SplitSpec: folds must be >= 2");
  if (repeats < 1) throw std::invalid_argument("SplitSpec: repeats must be >= 1");
}

DataSplit MakeSplits(const DatasetBundle& bundle, const SplitSpec& spec) {
  spec.Validate();
  const Index n = bundle.n_nodes();
  // The epsilon keeps products like 0.3 * 10 from flooring to 2.
  const auto n_obs = static_cast<Index>(
      std::floor(spec.observed_fraction * static_cast<double>(n) + 1e-9));
  if (n_obs == 0) {
    throw std::invalid_argument(fmt::format(
        "MakeSplits: observed_fraction {} leaves no observed node out of {}",
        spec.observed_fraction, n));
  }
  DataSplit split;
  split.spec = spec;
  std::mt19937_64 rng(spec.seed);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  split.observed.assign(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n_obs; ++i) split.observed[static_cast<std::size_t>(order[i])] = true;
  split.folds = RepeatedStratifiedFolds(bundle.labels, spec.folds, spec.repeats, rng());
  return split;
}

AttributeMatrix MaskedAttributes(const DatasetBundle& bundle, const DataSplit& split) {
  return AttributeMatrix(bundle.x, split.observed);
}

void WriteSplit(const DataSplit& split, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << fmt::format("# amgae-split v1 num_nodes={} observed_fraction={:.17g} folds={} "
                     "repeats={} seed={}\n",
                     split.observed.size(), split.spec.observed_fraction, split.spec.folds,
                     split.folds.size(), split.spec.seed);
  for (std::size_t i = 0; i < split.observed.size(); ++i) {
    out << i << '\t' << (split.observed[i] ? 1 : 0) << '\t';
    for (std::size_t r = 0; r < split.folds.size(); ++r) {
      if (r) out << ',';
      out << split.folds[r][i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

DataSplit ReadSplit(const fs::path& path) {
  LineReader r(path);
  std::string_view line;
  std::vector<std::tuple<Index, bool, std::vector<int>>> rows;
  while (r.Next(&line)) {
    std::string_view id, rest;
    SplitTwo(line, &id, &rest);
    std::string_view flag, folds;
    SplitTwo(rest, &flag, &folds);
    const Index node = ReadNode(r, id);
    if (flag != "0" && flag != "1") r.Fail("observed flag must be 0 or 1");
    std::vector<int> f;
    for (std::string_view item : SplitComma(folds)) {
      int v = 0;
      if (!ParseNumber(item, &v) || v < 0) r.Fail(fmt::format("bad fold id '{}'", item));
      f.push_back(v);
    }
    rows.emplace_back(node, flag == "1", std::move(f));
  }
  const std::string& header = r.header();
  if (header.find("amgae-split v1") == std::string::npos) {
    throw ParseError(r.path(), 1, "missing '# amgae-split v1' header");
  }
  DataSplit split;
  const auto n = HeaderValue(header, "num_nodes");
  const auto folds = HeaderValue(header, "folds");
  const auto repeats = HeaderValue(header, "repeats");
  const auto seed = HeaderValue(header, "seed");
  if (!n || !folds || !repeats || !seed) throw ParseError(r.path(), 1, "incomplete header");
  {
    std::istringstream in(header);
    std::string token;
    while (in >> token) {
      if (token.rfind("observed_fraction=", 0) == 0 &&
          !ParseNumber(std::string_view(token).substr(18), &split.spec.observed_fraction)) {
        throw ParseError(r.path(), 1, "bad observed_fraction");
      }
    }
  }
  split.spec.folds = static_cast<std::size_t>(*folds);
  split.spec.repeats = static_cast<std::size_t>(*repeats);
  split.spec.seed = static_cast<std::uint64_t>(*seed);
  if (rows.size() != static_cast<std::size_t>(*n)) {
    throw std::invalid_argument(fmt::format("{}: header says {} nodes, file has {}",
                                            r.path(), *n, rows.size()));
  }
  split.observed.assign(rows.size(), false);
  split.folds.assign(split.spec.repeats, std::vector<int>(rows.size(), -1));
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [node, obs, f] : rows) {
    if (node >= *n || seen[static_cast<std::size_t>(node)]) {
      throw std::invalid_argument(fmt::format("{}: node {} out of range or repeated", r.path(), node));
    }
    seen[static_cast<std::size_t>(node)] = true;
    if (f.size() != split.spec.repeats) {
      throw std::invalid_argument(fmt::format("{}: node {} has {} fold ids, expected {}",
                                              r.path(), node, f.size(), split.spec.repeats));
    }
    split.observed[static_cast<std::size_t>(node)] = obs;
    for (std::size_t rep = 0; rep < f.size(); ++rep) {
      if (static_cast<std::size_t>(f[rep]) >= split.spec.folds) {
        throw std::invalid_argument(fmt::format("{}: fold id {} >= folds", r.path(), f[rep]));
      }
      split.folds[rep][static_cast<std::size_t>(node)] = f[rep];
    }
  }
  return split;
}

}  // namespace amgae
