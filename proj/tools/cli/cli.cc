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


#include "cli.h"

#include <malloc.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "amgae/config.h"
#include "amgae/dataset.h"
#include "amgae/matrix_io.h"
#include "amgae/pipeline.h"
#include "amgae/synthetic.h"

namespace amgae::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Options shared by every subcommand that reads a dataset and a config.
struct Common {
  std::string data_dir;
  std::string format = "auto";
  std::string config_file;
  std::vector<std::string> sets;   // KEY=VALUE overrides
  std::string split_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iters;
};

struct Settings {
  TrainConfig train;
  SplitSpec split;
  ClassifierConfig classifier;
};

void AddDataOptions(CLI::App* cmd, Common* c) {
  cmd->add_option("--data", c->data_dir, "dataset directory (edges.tsv, attributes.txt, labels.tsv)")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--format", c->format, "attribute format")
      ->check(CLI::IsMember({"auto", "sparse", "dense"}));
}

void AddConfigOptions(CLI::App* cmd, Common* c) {
  cmd->add_option("--config", c->config_file, "key = value config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", c->sets, "override one config key, KEY=VALUE (repeatable)");
}

void AddTrainOptions(CLI::App* cmd, Common* c) {
  AddDataOptions(cmd, c);
  AddConfigOptions(cmd, c);
  cmd->add_option("--split", c->split_file, "split file from `amgae split`")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", c->seed, "training seed (overrides config)");
  cmd->add_option("--max-iters", c->max_iters, "iteration cap (overrides config)");
}

Settings ResolveSettings(const Common& c) {
  KeyValues kv;
  if (!c.config_file.empty()) kv = ReadConfigFile(c.config_file);
  for (const std::string& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--set expects KEY=VALUE, got '" + s + "'");
    }
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  if (c.seed) kv["seed"] = std::to_string(*c.seed);
  if (c.max_iters) kv["max_iters"] = std::to_string(*c.max_iters);
  Settings st;
  ApplyConfig(kv, &st.train, &st.split, &st.classifier);
  st.train.Validate();
  st.split.Validate();
  st.classifier.Validate();
  return st;
}

DatasetBundle Load(const Common& c, std::ostream& log) {
  const AttributeFormat fmt = c.format == "sparse"  ? AttributeFormat::kSparse
                              : c.format == "dense" ? AttributeFormat::kDense
                                                    : AttributeFormat::kAuto;
  LoadReport report;
  DatasetBundle b = LoadDataset(fs::path(c.data_dir), fmt, &report);
  CheckBenchmark(b, &report);
  for (const std::string& w : report.warnings) fmt::print(log, "warning: {}\n", w);
  fmt::print(log, "loaded {}: {} nodes, {} edges, {} dims, {} classes\n", b.name, b.n_nodes(),
             b.graph.n_edges(), b.n_dims(), b.n_classes);
  return b;
}

DataSplit ResolveSplit(const Common& c, const Settings& st, const DatasetBundle& b) {
  if (c.split_file.empty()) return MakeSplits(b, st.split);
  DataSplit s = ReadSplit(c.split_file);
  if (static_cast<Index>(s.observed.size()) != b.n_nodes()) {
    throw std::invalid_argument(fmt::format("split covers {} nodes, dataset has {}",
                                            s.observed.size(), b.n_nodes()));
  }
  return s;
}

void EnsureDir(const fs::path& dir) { fs::create_directories(dir); }

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json ProfileJson(const ProfileReport& p) {
  json rows = json::array();
  for (const ProfileRow& r : p.rows) rows.push_back({{"k", r.k}, {"recall", r.recall}, {"ndcg", r.ndcg}});
  return {{"evaluated_nodes", p.evaluated_nodes}, {"rows", rows}};
}

json ClassificationJson(const ClassificationReport& c) {
  return {{"folds", c.folds},
          {"repeats", c.repeats},
          {"mean_accuracy", c.mean()},
          {"stddev", c.stddev()},
          {"accuracy", c.accuracy}};
}

void WriteEvaluation(const ExperimentResult& r, const std::string& dataset, const fs::path& dir) {
  EnsureDir(dir);
  json doc = {{"dataset", dataset}};
  if (r.profile) {
    std::ofstream tsv = OpenOut(dir / "profile.tsv");
    tsv << "metric\tk\tvalue\n";
    for (const ProfileRow& row : r.profile->rows) {
      tsv << fmt::format("recall\t{}\t{:.6f}\n", row.k, row.recall);
    }
    for (const ProfileRow& row : r.profile->rows) {
      tsv << fmt::format("ndcg\t{}\t{:.6f}\n", row.k, row.ndcg);
    }
    doc["profile"] = ProfileJson(*r.profile);
  }
  if (r.classification) {
    std::ofstream tsv = OpenOut(dir / "classification.tsv");
    tsv << "repeat\tfold\taccuracy\n";
    const auto& c = *r.classification;
    for (std::size_t i = 0; i < c.accuracy.size(); ++i) {
      tsv << fmt::format("{}\t{}\t{:.6f}\n", i / c.folds, i % c.folds, c.accuracy[i]);
    }
    tsv << fmt::format("mean\t-\t{:.6f}\n", c.mean());
    doc["classification"] = ClassificationJson(c);
  }
  std::ofstream out = OpenOut(dir / "metrics.json");
  out << doc.dump(2) << '\n';
}

void PrintEvaluation(const ExperimentResult& r, std::ostream& log) {
  if (r.profile) {
    for (const ProfileRow& row : r.profile->rows) {
      fmt::print(log, "Recall@{} = {:.4f}  NDCG@{} = {:.4f}\n", row.k, row.recall, row.k,
                 row.ndcg);
    }
  }
  if (r.classification) {
    fmt::print(log, "ACC = {:.4f} +- {:.4f} over {} runs\n", r.classification->mean(),
               r.classification->stddev(), r.classification->accuracy.size());
  }
}

// Streams the training log as JSON lines and echoes progress now and then.
TrainCallback LogTo(std::ofstream* jsonl, std::ostream& log, std::size_t every) {
  return [jsonl, &log, every](const TrainLogRecord& rec) {
    if (jsonl) *jsonl << ToJsonLine(rec) << '\n';
    if (every > 0 && rec.iter % every == 0) {
      fmt::print(log, "iter {:>5}  loss {:.6f}  (attr {:.6f}, struct {:.6f})  alpha {:.4f} beta {:.4f}\n",
                 rec.iter, rec.loss_total, rec.loss_attr, rec.loss_struct, rec.alpha, rec.beta);
    }
  };
}

int CmdSplit(const Common& c, const std::string& out, std::ostream& log) {
  const Settings st = ResolveSettings(c);
  const DatasetBundle b = Load(c, log);
  const DataSplit s = MakeSplits(b, st.split);
  if (fs::path(out).has_parent_path()) EnsureDir(fs::path(out).parent_path());
  WriteSplit(s, out);
  const auto n_obs = std::count(s.observed.begin(), s.observed.end(), true);
  fmt::print(log, "wrote {}: {} observed, {} missing, {} x {} folds\n", out, n_obs,
             b.n_nodes() - n_obs, s.spec.repeats, s.spec.folds);
  return 0;
}

int CmdTrain(const Common& c, const std::string& out, std::size_t log_every, bool params_too,
             std::ostream& log) {
  const Settings st = ResolveSettings(c);
  const DatasetBundle b = Load(c, log);
  const DataSplit split = ResolveSplit(c, st, b);
  const fs::path dir = params_too ? fs::path(out) : fs::path(out).parent_path();
  if (!dir.empty()) EnsureDir(dir);

  std::optional<std::ofstream> jsonl;
  if (params_too) jsonl = OpenOut(dir / "train_log.jsonl");
  const TrainResult r = Train(b.graph, MaskedAttributes(b, split), st.train,
                              LogTo(jsonl ? &*jsonl : nullptr, log, log_every));
  fmt::print(log, "trained {} iterations{}\n", r.iterations,
             r.early_stopped ? " (plateau)" : "");
  if (params_too) {
    WriteMatrix(r.xhat, dir / "xhat.tsv");
    WriteParameters(r.params.All(), dir / "params.txt");
    WriteConfigFile(ToKeyValues(st.train, split.spec, st.classifier), dir / "config.cfg");
    if (c.split_file.empty()) WriteSplit(split, dir / "split.tsv");
    fmt::print(log, "wrote xhat.tsv, params.txt, train_log.jsonl, config.cfg to {}\n",
               dir.string());
  } else {
    WriteMatrix(r.xhat, out);
    fmt::print(log, "wrote {}\n", out);
  }
  return 0;
}

int CmdEvaluate(const Common& c, const std::string& xhat_file, const std::string& out,
                const std::vector<std::size_t>& ks, bool classify, std::ostream& log) {
  const Settings st = ResolveSettings(c);
  const DatasetBundle b = Load(c, log);
  const DataSplit split = ResolveSplit(c, st, b);
  ExperimentOptions opts;
  opts.ks = ks;
  opts.classify = classify;
  opts.classifier = st.classifier;
  const ExperimentResult r = EvaluateReconstruction(b, split, ReadMatrix(xhat_file), opts);
  PrintEvaluation(r, log);
  WriteEvaluation(r, b.name, out);
  return 0;
}

int CmdAblate(const Common& c, const std::string& out, const std::vector<std::string>& names,
              const std::vector<std::size_t>& ks, bool classify, std::size_t log_every,
              std::ostream& log) {
  const Settings st = ResolveSettings(c);
  const DatasetBundle b = Load(c, log);
  const DataSplit split = ResolveSplit(c, st, b);
  std::vector<ModelVariant> variants;
  for (const std::string& n : names) {
    const auto v = FindVariant(n);
    if (!v) throw std::invalid_argument("unknown variant '" + n + "'");
    variants.push_back(*v);
  }
  ExperimentOptions opts;
  opts.ks = ks;
  opts.classify = classify;
  opts.classifier = st.classifier;
  opts.on_iter = LogTo(nullptr, log, log_every);

  EnsureDir(out);
  json rows = json::array();
  std::ofstream tsv = OpenOut(fs::path(out) / "ablation.tsv");
  tsv << "variant\titerations\tseconds";
  for (std::size_t k : ks) tsv << "\trecall@" << k << "\tndcg@" << k;
  if (classify) tsv << "\tacc\tacc_std";
  tsv << '\n';
  for (const ModelVariant& v : variants) {
    fmt::print(log, "== {} ==\n", v.name);
    const ExperimentResult r = RunExperiment(b, split, WithVariant(st.train, v), opts);
    PrintEvaluation(r, log);
    tsv << fmt::format("{}\t{}\t{:.2f}", v.name, r.train.iterations, r.train_seconds);
    json row = {{"variant", v.name},
                {"iterations", r.train.iterations},
                {"seconds", r.train_seconds}};
    if (r.profile) {
      for (const ProfileRow& p : r.profile->rows) {
        tsv << fmt::format("\t{:.6f}\t{:.6f}", p.recall, p.ndcg);
      }
      row["profile"] = ProfileJson(*r.profile);
    } else {
      for (std::size_t i = 0; i < ks.size(); ++i) tsv << "\t-\t-";
    }
    if (r.classification) {
      tsv << fmt::format("\t{:.6f}\t{:.6f}", r.classification->mean(),
                         r.classification->stddev());
      row["classification"] = ClassificationJson(*r.classification);
    }
    tsv << '\n';
    tsv.flush();
    rows.push_back(row);
  }
  std::ofstream js = OpenOut(fs::path(out) / "ablation.json");
  js << json{{"dataset", b.name}, {"seed", st.train.seed}, {"variants", rows}}.dump(2) << '\n';
  fmt::print(log, "wrote ablation.tsv and ablation.json to {}\n", out);
  return 0;
}

}  // namespace

void TuneAllocator() {
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
}

int Run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Attribute completion for graphs with attribute-missing nodes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "amgae 0.1.0");

  Common common;
  std::string out;
  std::size_t log_every = 50;
  std::vector<std::size_t> ks = {10, 20, 50};
  bool no_classify = false;

  auto* split = app.add_subcommand("split", "write a reusable observed/missing + fold split");
  AddDataOptions(split, &common);
  AddConfigOptions(split, &common);
  split->add_option("--out", out, "split file to write")->required();
  std::optional<std::uint64_t> split_seed;
  std::optional<double> observed_fraction;
  std::optional<std::size_t> folds, repeats;
  split->add_option("--seed", split_seed, "split seed");
  split->add_option("--observed-fraction", observed_fraction, "fraction of attribute-observed nodes");
  split->add_option("--folds", folds, "classification folds");
  split->add_option("--repeats", repeats, "fold repeats");

  auto* train = app.add_subcommand("train", "train and write parameters, X-hat and the log");
  AddTrainOptions(train, &common);
  train->add_option("--out", out, "output directory")->required();
  train->add_option("--log-every", log_every, "progress line every n iterations (0: quiet)");

  auto* impute = app.add_subcommand("impute", "train and write X-hat only");
  AddTrainOptions(impute, &common);
  impute->add_option("--out", out, "X-hat file to write (TSV)")->required();
  impute->add_option("--log-every", log_every, "progress line every n iterations (0: quiet)");

  auto* evaluate = app.add_subcommand("evaluate", "score a reconstruction");
  AddDataOptions(evaluate, &common);
  AddConfigOptions(evaluate, &common);
  evaluate->add_option("--split", common.split_file, "split file")->check(CLI::ExistingFile);
  std::string xhat_file;
  evaluate->add_option("--xhat", xhat_file, "reconstruction (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", out, "output directory")->required();
  evaluate->add_option("--ks", ks, "cut-offs for Recall@K / NDCG@K")->delimiter(',');
  evaluate->add_flag("--no-classify", no_classify, "skip node classification");

  auto* ablate = app.add_subcommand("ablate", "train every model variant under one seed");
  AddTrainOptions(ablate, &common);
  ablate->add_option("--out", out, "output directory")->required();
  std::vector<std::string> variant_names = {"gae", "dca", "hsr", "ps", "full"};
  ablate->add_option("--variants", variant_names, "subset of gae,dca,hsr,ps,full")
      ->delimiter(',');
  ablate->add_option("--ks", ks, "cut-offs for Recall@K / NDCG@K")->delimiter(',');
  ablate->add_flag("--no-classify", no_classify, "skip node classification");
  ablate->add_option("--log-every", log_every, "progress line every n iterations (0: quiet)");

  auto* synth = app.add_subcommand("synth", "write a planted-partition dataset");
  SyntheticSpec spec;
  synth->add_option("--out", out, "dataset directory")->required();
  synth->add_option("--nodes", spec.nodes);
  synth->add_option("--blocks", spec.blocks);
  synth->add_option("--dims", spec.dims);
  synth->add_option("--p-in", spec.p_in, "edge probability inside a block");
  synth->add_option("--p-out", spec.p_out, "edge probability across blocks");
  synth->add_option("--attr-in", spec.attr_in, "attribute probability inside a block");
  synth->add_option("--attr-noise", spec.attr_noise, "attribute probability elsewhere");
  synth->add_option("--attr-decay", spec.attr_decay, "decay of attribute probability by rank");
  synth->add_option("--seed", spec.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, log, err);
  }

  try {
    if (*split) {
      if (split_seed) common.sets.push_back("split.seed=" + std::to_string(*split_seed));
      if (observed_fraction) {
        common.sets.push_back(fmt::format("split.observed_fraction={:.17g}", *observed_fraction));
      }
      if (folds) common.sets.push_back("split.folds=" + std::to_string(*folds));
      if (repeats) common.sets.push_back("split.repeats=" + std::to_string(*repeats));
      return CmdSplit(common, out, log);
    }
    if (*train) return CmdTrain(common, out, log_every, true, log);
    if (*impute) return CmdTrain(common, out, log_every, false, log);
    if (*evaluate) return CmdEvaluate(common, xhat_file, out, ks, !no_classify, log);
    if (*ablate) return CmdAblate(common, out, variant_names, ks, !no_classify, log_every, log);
    if (*synth) {
      DatasetBundle b = MakePlantedPartition(spec);
      b.name = fs::path(out).filename().string();
      WriteDataset(b, out);
      fmt::print(log, "wrote {}: {} nodes, {} edges, {} dims\n", out, b.n_nodes(),
                 b.graph.n_edges(), b.n_dims());
      return 0;
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace amgae::cli
