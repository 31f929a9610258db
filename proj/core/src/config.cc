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

#include "amgae/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace amgae {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseAs(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument(fmt::format("config: bad value '{}' for '{}'", value, key));
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument(fmt::format("config: bad boolean '{}' for '{}'", value, key));
}

std::vector<Index> ParseWidths(const std::string& key, const std::string& value) {
  std::vector<Index> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const std::string item =
        Trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(ParseAs<Index>(key, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string JoinWidths(const std::vector<Index>& w) {
  return fmt::format("{}", fmt::join(w, ","));
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

std::map<std::string, Setter> Setters(TrainConfig* t, SplitSpec* s, ClassifierConfig* c) {
  std::map<std::string, Setter> m;
  const auto size = [](std::size_t* f) {
    return [f](const std::string& k, const std::string& v) { *f = ParseAs<std::size_t>(k, v); };
  };
  const auto real = [](double* f) {
    return [f](const std::string& k, const std::string& v) { *f = ParseAs<double>(k, v); };
  };
  const auto flag = [](bool* f) {
    return [f](const std::string& k, const std::string& v) { *f = ParseBool(k, v); };
  };
  const auto seed = [](std::uint64_t* f) {
    return [f](const std::string& k, const std::string& v) { *f = ParseAs<std::uint64_t>(k, v); };
  };
  const auto widths = [](std::vector<Index>* f) {
    return [f](const std::string& k, const std::string& v) { *f = ParseWidths(k, v); };
  };
  if (t) {
    m["p"] = size(&t->p);
    m["k"] = size(&t->k);
    m["gamma"] = real(&t->gamma);
    m["lambda"] = real(&t->lambda);
    m["h"] = size(&t->h);
    m["lr"] = real(&t->lr);
    m["max_iters"] = size(&t->max_iters);
    m["min_iters"] = size(&t->min_iters);
    m["patience"] = size(&t->patience);
    m["plateau_tol"] = real(&t->plateau_tol);
    m["seed"] = seed(&t->seed);
    m["encoder_hidden"] = widths(&t->encoder_hidden);
    m["latent_dim"] = [t](const std::string& k, const std::string& v) {
      t->latent_dim = ParseAs<Index>(k, v);
    };
    m["decoder_hidden"] = widths(&t->decoder_hidden);
    m["enable_dca"] = flag(&t->enable_dca);
    m["enable_hsr"] = flag(&t->enable_hsr);
    m["pseudo_siamese"] = flag(&t->pseudo_siamese);
    m["refresh_every"] = size(&t->refresh_every);
    m["row_normalize_filters"] = flag(&t->row_normalize_filters);
    m["exclude_diagonal"] = flag(&t->exclude_diagonal);
    m["pair_samples"] = size(&t->pair_samples);
    m["dense_fill_ratio"] = real(&t->dense_fill_ratio);
  }
  if (s) {
    m["split.observed_fraction"] = real(&s->observed_fraction);
    m["split.folds"] = size(&s->folds);
    m["split.repeats"] = size(&s->repeats);
    m["split.seed"] = seed(&s->seed);
  }
  if (c) {
    m["classifier.hidden"] = [c](const std::string& k, const std::string& v) {
      c->hidden = ParseAs<Index>(k, v);
    };
    m["classifier.lr"] = real(&c->lr);
    m["classifier.epochs"] = size(&c->epochs);
    m["classifier.weight_decay"] = real(&c->weight_decay);
    m["classifier.dropout"] = real(&c->dropout);
    m["classifier.folds"] = size(&c->folds);
    m["classifier.repeats"] = size(&c->repeats);
    m["classifier.seed"] = seed(&c->seed);
    m["classifier.parallel"] = flag(&c->parallel);
  }
  return m;
}

}  // namespace

KeyValues ParseKeyValues(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(source, line, "expected key = value");
    const std::string key = Trim(text.substr(0, eq));
    if (key.empty()) throw ParseError(source, line, "empty key");
    if (!kv.emplace(key, Trim(text.substr(eq + 1))).second) {
      throw ParseError(source, line, "key '" + key + "' given twice");
    }
  }
  return kv;
}

KeyValues ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  return ParseKeyValues(in, path.string());
}

void ApplyConfig(const KeyValues& kv, TrainConfig* train, SplitSpec* split,
                 ClassifierConfig* classifier) {
  const auto setters = Setters(train, split, classifier);
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
    it->second(key, value);
  }
}

KeyValues ToKeyValues(const TrainConfig& t, const SplitSpec& s, const ClassifierConfig& c) {
  const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  const auto r = [](double v) { return fmt::format("{:.17g}", v); };
  return {
      {"p", std::to_string(t.p)},
      {"k", std::to_string(t.k)},
      {"gamma", r(t.gamma)},
      {"lambda", r(t.lambda)},
      {"h", std::to_string(t.h)},
      {"lr", r(t.lr)},
      {"max_iters", std::to_string(t.max_iters)},
      {"min_iters", std::to_string(t.min_iters)},
      {"patience", std::to_string(t.patience)},
      {"plateau_tol", r(t.plateau_tol)},
      {"seed", std::to_string(t.seed)},
      {"encoder_hidden", JoinWidths(t.encoder_hidden)},
      {"latent_dim", std::to_string(t.latent_dim)},
      {"decoder_hidden", JoinWidths(t.decoder_hidden)},
      {"enable_dca", b(t.enable_dca)},
      {"enable_hsr", b(t.enable_hsr)},
      {"pseudo_siamese", b(t.pseudo_siamese)},
      {"refresh_every", std::to_string(t.refresh_every)},
      {"row_normalize_filters", b(t.row_normalize_filters)},
      {"exclude_diagonal", b(t.exclude_diagonal)},
      {"pair_samples", std::to_string(t.pair_samples)},
      {"dense_fill_ratio", r(t.dense_fill_ratio)},
      {"split.observed_fraction", r(s.observed_fraction)},
      {"split.folds", std::to_string(s.folds)},
      {"split.repeats", std::to_string(s.repeats)},
      {"split.seed", std::to_string(s.seed)},
      {"classifier.hidden", std::to_string(c.hidden)},
      {"classifier.lr", r(c.lr)},
      {"classifier.epochs", std::to_string(c.epochs)},
      {"classifier.weight_decay", r(c.weight_decay)},
      {"classifier.dropout", r(c.dropout)},
      {"classifier.folds", std::to_string(c.folds)},
      {"classifier.repeats", std::to_string(c.repeats)},
      {"classifier.seed", std::to_string(c.seed)},
      {"classifier.parallel", b(c.parallel)},
  };
}

void WriteConfigFile(const KeyValues& kv, const std::filesystem::path& path) {
  std::ofstream out(path);
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace amgae
