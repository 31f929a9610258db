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

// Flat "key = value" configuration. Training fields use their bare names
// (p, k, gamma, ...); split and classifier fields are prefixed with "split."
// and "classifier.". '#' starts a comment.

#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "amgae/classify.h"
#include "amgae/dataset.h"
#include "amgae/model.h"

namespace amgae {

using KeyValues = std::map<std::string, std::string>;

// Throws ParseError on a line without '=' or a repeated key.
KeyValues ParseKeyValues(std::istream& in, const std::string& source);
KeyValues ReadConfigFile(const std::filesystem::path& path);

// Assigns every key to its field. Null targets reject their keys as unknown.
// Throws std::invalid_argument on an unknown key or an unparsable value.
void ApplyConfig(const KeyValues& kv, TrainConfig* train, SplitSpec* split,
                 ClassifierConfig* classifier);

// The inverse of ApplyConfig for all three sections.
KeyValues ToKeyValues(const TrainConfig& train, const SplitSpec& split,
                      const ClassifierConfig& classifier);
void WriteConfigFile(const KeyValues& kv, const std::filesystem::path& path);

}  // namespace amgae
