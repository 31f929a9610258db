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

#include <sstream>

#include <gtest/gtest.h>

#include "temp_dir.h"

namespace amgae {
namespace {

KeyValues Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseKeyValues(in, "test.cfg");
}

TEST(ParseKeyValuesTest, CommentsBlanksAndSpaces) {
  const KeyValues kv = Parse("# header\n\n  k = 7   # trailing\nlr=0.01\nencoder_hidden = 32, 16\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv.at("k"), "7");
  EXPECT_EQ(kv.at("lr"), "0.01");
  EXPECT_EQ(kv.at("encoder_hidden"), "32, 16");
}

TEST(ParseKeyValuesTest, ErrorsNameTheLine) {
  try {
    Parse("k = 1\n\nnot a pair\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.file(), "test.cfg");
  }
  EXPECT_THROW(Parse("k = 1\nk = 2\n"), ParseError);
  EXPECT_THROW(Parse(" = 2\n"), ParseError);
}

TEST(ApplyConfigTest, SetsEveryGroup) {
  TrainConfig t;
  SplitSpec s;
  ClassifierConfig c;
  ApplyConfig(Parse("k = 7\nenable_hsr = false\nencoder_hidden = 32,16\n"
                    "split.observed_fraction = 0.6\nclassifier.epochs = 50\n"
                    "pseudo_siamese = yes\n"),
              &t, &s, &c);
  EXPECT_EQ(t.k, 7u);
  EXPECT_FALSE(t.enable_hsr);
  EXPECT_TRUE(t.pseudo_siamese);
  EXPECT_EQ(t.encoder_hidden, (std::vector<Index>{32, 16}));
  EXPECT_EQ(s.observed_fraction, 0.6);
  EXPECT_EQ(c.epochs, 50u);
}

TEST(ApplyConfigTest, RejectsUnknownKeysAndBadValues) {
  TrainConfig t;
  SplitSpec s;
  ClassifierConfig c;
  EXPECT_THROW(ApplyConfig(Parse("kk = 3\n"), &t, &s, &c), std::invalid_argument);
  EXPECT_THROW(ApplyConfig(Parse("k = three\n"), &t, &s, &c), std::invalid_argument);
  EXPECT_THROW(ApplyConfig(Parse("k = -1\n"), &t, &s, &c), std::invalid_argument);
  EXPECT_THROW(ApplyConfig(Parse("enable_dca = maybe\n"), &t, &s, &c), std::invalid_argument);
  EXPECT_THROW(ApplyConfig(Parse("split.folds = 2\n"), &t, nullptr, &c), std::invalid_argument);
}

TEST(ConfigFileTest, EveryFieldRoundTrips) {
  TrainConfig t;
  t.k = 9;
  t.gamma = 2.5;
  t.lr = 3e-4;
  t.decoder_hidden = {128, 64};
  t.exclude_diagonal = true;
  t.seed = 123456789012345ull;
  SplitSpec s;
  s.observed_fraction = 0.35;
  s.seed = 4;
  ClassifierConfig c;
  c.dropout = 0.25;
  c.parallel = true;

  testing::TempDir dir;
  WriteConfigFile(ToKeyValues(t, s, c), dir / "run.cfg");
  TrainConfig t2;
  SplitSpec s2;
  ClassifierConfig c2;
  ApplyConfig(ReadConfigFile(dir / "run.cfg"), &t2, &s2, &c2);
  EXPECT_EQ(ToKeyValues(t2, s2, c2), ToKeyValues(t, s, c));
  EXPECT_EQ(t2.lr, 3e-4);
  EXPECT_EQ(t2.seed, 123456789012345ull);
  EXPECT_EQ(s2.observed_fraction, 0.35);
}

// Flags override the file: applying a second map on top wins key by key.
TEST(ConfigFileTest, LaterMapsOverride) {
  TrainConfig t;
  ApplyConfig(Parse("k = 3\np = 4\n"), &t, nullptr, nullptr);
  ApplyConfig(Parse("k = 8\n"), &t, nullptr, nullptr);
  EXPECT_EQ(t.k, 8u);
  EXPECT_EQ(t.p, 4u);
}

TEST(ConfigFileTest, MissingFile) {
  EXPECT_THROW(ReadConfigFile("/nonexistent/run.cfg"), std::invalid_argument);
}

}  // namespace
}  // namespace amgae
