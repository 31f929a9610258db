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

// Text dataset formats and the attribute-missing split protocol.
//
// A dataset directory holds three files:
//   edges.tsv       "src<TAB>dst" per line, either orientation, 0-based ids
//   attributes.txt  "node<TAB>dim:value,dim:value,..." (sparse) or
//                   "node<TAB>v0,v1,...,v{D-1}" (dense)
//   labels.tsv      "node<TAB>class"
// Blank lines are ignored and lines starting with '#' are comments, except
// for an optional first-line header "# num_nodes=N num_dims=D" in the
// attribute file and "# num_classes=C" in the label file.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amgae/graph.h"
#include "amgae/parse_error.h"

namespace amgae {

enum class AttributeFormat { kAuto, kSparse, kDense };

struct DatasetFiles {
  std::filesystem::path edges;
  std::filesystem::path attributes;
  std::filesystem::path labels;

  static DatasetFiles InDirectory(const std::filesystem::path& dir);
};

struct DatasetBundle {
  std::string name;
  SparseGraph graph;
  Matrix x;  // full attributes, before any masking
  std::vector<int> labels;
  int n_classes = 0;

  Index n_nodes() const { return graph.n_nodes(); }
  Index n_dims() const { return x.cols(); }
};

struct LoadReport {
  std::size_t edge_lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::vector<std::string> warnings;
};

// Throws ParseError for malformed lines (with file and line number) and
// std::invalid_argument for inconsistent files: ids out of range, a node
// without a label, a dense row of the wrong width. Self-loops and duplicate
// edges are dropped with a warning in `report`.
DatasetBundle LoadDataset(const DatasetFiles& files, const std::string& name,
                          AttributeFormat format = AttributeFormat::kAuto,
                          LoadReport* report = nullptr);
// Files inside `dir`; the name is the directory name.
DatasetBundle LoadDataset(const std::filesystem::path& dir,
                          AttributeFormat format = AttributeFormat::kAuto,
                          LoadReport* report = nullptr);

// Writes the three files into `dir` (created if needed). Attributes are
// written sparse when every value is 0 or 1 and dense otherwise.
void WriteDataset(const DatasetBundle& bundle, const std::filesystem::path& dir);

struct BenchmarkStats {
  std::string name;
  Index nodes;
  Index dims;
  int classes;
  std::size_t directed_edges;  // as usually reported: twice the undirected count
};

// Published sizes of the citation benchmarks, matched case-insensitively.
std::optional<BenchmarkStats> KnownBenchmark(const std::string& name);

// Throws std::invalid_argument when a bundle named like a known benchmark has
// a different node, dimension or class count. An edge-count difference only
// adds a warning to `report`, since published counts disagree on self-loops.
void CheckBenchmark(const DatasetBundle& bundle, LoadReport* report = nullptr);

struct SplitSpec {
  double observed_fraction = 0.4;  // N_o = floor(fraction * N)
  std::size_t folds = 5;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct DataSplit {
  SplitSpec spec;
  NodeMask observed;
  std::vector<std::vector<int>> folds;  // per repeat, fold id per node
};

// Samples the attribute-observed nodes uniformly without replacement and
// draws stratified classification folds. Deterministic given spec.seed.
// Throws std::invalid_argument when the fraction leaves no observed node.
DataSplit MakeSplits(const DatasetBundle& bundle, const SplitSpec& spec);

// The bundle's attributes with the split's observation mask.
AttributeMatrix MaskedAttributes(const DatasetBundle& bundle, const DataSplit& split);

// Split file: a "# amgae-split v1 ..." header, then "node<TAB>0|1<TAB>f0,f1,..."
// per node. Reading reproduces the mask and folds exactly.
void WriteSplit(const DataSplit& split, const std::filesystem::path& path);
DataSplit ReadSplit(const std::filesystem::path& path);

}  // namespace amgae
