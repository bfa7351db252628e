// Copyright 2026 The termspace Authors. All Rights Reserved.
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

#include "termspace/lexicon.h"

#include <set>

#include "test_util.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

namespace termspace {
namespace {

namespace fs = std::filesystem;
using testing::Fixture;
using testing::FixtureLexicon;
using testing::ReadFile;
using testing::ReadRows;
using testing::TempDir;
using testing::WriteFile;

// Copies the fixture lexicon so a test can mutate one file.
fs::path CopyLexicon(const TempDir &tmp) {
  fs::path dir = tmp.path() / "lexicon";
  fs::copy(Fixture("lexicon"), dir, fs::copy_options::recursive);
  return dir;
}

void Replace(const fs::path &file, const std::string &from, const std::string &to) {
  std::string text = ReadFile(file);
  size_t at = text.find(from);
  REQUIRE(at != std::string::npos);
  text.replace(at, from.size(), to);
  WriteFile(file, text);
}

std::string ErrorMessage(const fs::path &dir, ErrorKind expected) {
  try {
    LoadLexicon(dir);
  } catch (const Error &e) {
    CHECK(e.kind() == expected);
    return e.what();
  }
  FAIL("lexicon loaded without error");
  return "";
}

TEST_CASE("fixture lexicon loads") {
  const Lexicon &lex = FixtureLexicon();
  CHECK(lex.stems().size() == 60);
  CHECK(lex.inflexions().size() == 12);
  CHECK(lex.correlators().size() == 12);
  CHECK(lex.determinants().size() == 10);
  CHECK(lex.IsFunctionWord("of"));
  CHECK(lex.IsStopword("the"));
  CHECK(lex.IsAbbreviation("etc"));
  CHECK_FALSE(lex.IsFunctionWord("text"));

  auto train = lex.FindStems("train");
  REQUIRE(train.size() == 2);
  CHECK(train[0]->pos == PartOfSpeech::kNoun);
  CHECK(train[1]->pos == PartOfSpeech::kVerb);
  CHECK(train[1]->sem_attrs == AttrSet{"ACTION"});

  auto zero = lex.FindInflexions("");
  REQUIRE(zero.size() == 1);
  CHECK(zero[0]->gram_attrs == AttrSet{"sg", "nom", "acc"});
  CHECK(lex.FindInflexions("zz").empty());

  auto ids = lex.LookupDeterminant({"s", {"of"}, "s"});
  CHECK(std::vector<std::string>(ids.begin(), ids.end()) ==
        std::vector<std::string>{"c_aff", "c_comp"});
  CHECK(lex.LookupDeterminant({"s", {"to"}, "s"}).empty());
}

TEST_CASE("documented lookups and matches") {
  const Lexicon &lex = FixtureLexicon();
  auto ids = lex.LookupDeterminant({"", {"of"}, "s"});
  CHECK(std::vector<std::string>(ids.begin(), ids.end()) == std::vector<std::string>{"c_aff"});
  ids = lex.LookupDeterminant({"", {}, ""});
  CHECK(std::vector<std::string>(ids.begin(), ids.end()) == std::vector<std::string>{"c_def"});

  auto m = lex.MatchCorrelator(std::vector<std::string>{"c_def"}, {"QUALITY"}, {"PROCESS"});
  REQUIRE(m);
  CHECK(m->relation_name == "defining");
  CHECK(m->correlator_id == "c_def");
  CHECK(m->head_position == HeadPosition::kSecond);
  CHECK_FALSE(lex.MatchCorrelator(std::vector<std::string>{}, {"QUALITY"}, {"PROCESS"}));
  CHECK_FALSE(lex.MatchCorrelator(std::vector<std::string>{"c_aff"}, {"QUALITY"}, {"QUALITY"}));
}

TEST_CASE("an empty determinant file gives no determinants") {
  TempDir tmp;
  fs::path dir = CopyLexicon(tmp);
  WriteFile(dir / "determinants.tsv", "");
  Lexicon lex = LoadLexicon(dir);
  CHECK(lex.determinants().empty());
  CHECK(lex.stems().size() == 60);
  CHECK(lex.LookupDeterminant({"", {}, ""}).empty());
}

TEST_CASE("loading is deterministic") {
  CHECK(LoadLexicon(Fixture("lexicon")) == FixtureLexicon());
}

TEST_CASE("correlator matching respects head position") {
  const Lexicon &lex = FixtureLexicon();
  std::vector<std::string> ids = {"c_def", "c_pred", "c_obj"};
  // adjective + noun: the noun (second) is the head
  auto m = lex.MatchCorrelator(ids, {"QUALITY"}, {"OBJECT"});
  REQUIRE(m);
  CHECK(m->correlator_id == "c_def");
  CHECK(m->head_position == HeadPosition::kSecond);
  // verb + object noun: the verb (first) is the head
  m = lex.MatchCorrelator(ids, {"ACTION"}, {"OBJECT"});
  REQUIRE(m);
  CHECK(m->correlator_id == "c_obj");
  CHECK(m->relation_name == "object");
  CHECK_FALSE(lex.MatchCorrelator(ids, {"OBJECT"}, {"QUALITY"}));
}

// Independent reading of correlators.tsv: pairs as (first word, second word).
std::map<std::string, std::set<std::pair<std::string, std::string>>> OrientedPairsOracle() {
  std::map<std::string, std::set<std::pair<std::string, std::string>>> out;
  for (const auto &row : ReadRows(Fixture("lexicon/correlators.tsv"))) {
    std::string pairs = row[3];
    size_t start = 0;
    while (start <= pairs.size()) {
      size_t end = pairs.find(';', start);
      if (end == std::string::npos) end = pairs.size();
      std::string pair = pairs.substr(start, end - start);
      size_t colon = pair.find(':');
      std::string head = pair.substr(0, colon), dep = pair.substr(colon + 1);
      if (row[2] == "first") {
        out[row[0]].emplace(head, dep);
      } else {
        out[row[0]].emplace(dep, head);
      }
      start = end + 1;
    }
  }
  return out;
}

TEST_CASE("every determinant resolves a word pair to at most one correlator") {
  const Lexicon &lex = FixtureLexicon();
  auto oracle = OrientedPairsOracle();
  std::set<std::string> attrs;
  for (const auto &[id, pairs] : oracle) {
    for (const auto &[a, b] : pairs) {
      attrs.insert(a);
      attrs.insert(b);
    }
  }
  size_t checked = 0;
  for (const auto &[key, ids] : lex.determinants()) {
    for (const std::string &a : attrs) {
      for (const std::string &b : attrs) {
        std::vector<std::string> expected;
        for (const std::string &id : ids) {
          if (oracle[id].count({a, b})) expected.push_back(id);
        }
        CHECK(expected.size() <= 1);
        std::vector<std::string> got;
        for (const auto &m : lex.MatchCorrelators(ids, {a}, {b})) got.push_back(m.correlator_id);
        CHECK(got == expected);
        ++checked;
      }
    }
  }
  CHECK(checked == lex.determinants().size() * attrs.size() * attrs.size());
}

TEST_CASE("overlapping correlators in one determinant are rejected") {
  TempDir tmp;
  fs::path dir = CopyLexicon(tmp);
  Replace(dir / "determinants.tsv", "-\tof\ts\tc_aff\n", "-\tof\ts\tc_aff,c_loc\n");
  std::string message = ErrorMessage(dir, ErrorKind::kValidation);
  CHECK(message.find("c_aff") != std::string::npos);
  CHECK(message.find("c_loc") != std::string::npos);
  CHECK(message.find("determinants.tsv:3") != std::string::npos);
}

TEST_CASE("overlap is judged on word order, not on head and dependent") {
  TempDir tmp;
  fs::path dir = CopyLexicon(tmp);
  // Same word pair (PROCESS, OBJECT) with the head on the other side.
  Replace(dir / "correlators.tsv", "c_aff\taffiliation\tfirst\tPROCESS:OBJECT\n",
          "c_aff\taffiliation\tfirst\tPROCESS:OBJECT\nc_rev\tpossessor\tsecond\tOBJECT:PROCESS\n"
          "c_flip\tpossessor\tsecond\tPROCESS:OBJECT\n");
  Replace(dir / "determinants.tsv", "-\tof\ts\tc_aff\n", "-\tof\ts\tc_aff,c_rev\n");
  std::string message = ErrorMessage(dir, ErrorKind::kValidation);
  CHECK(message.find("c_rev") != std::string::npos);

  Replace(dir / "determinants.tsv", "c_aff,c_rev", "c_aff,c_flip");
  Lexicon lex = LoadLexicon(dir);
  CHECK(lex.correlators().size() == 14);
}

TEST_CASE("malformed lexicon rows name file and line") {
  TempDir tmp;
  fs::path dir = CopyLexicon(tmp);
  Replace(dir / "stems.tsv", "deep\tadjective\t-\tQUALITY", "deep\tadjective\t-");
  CHECK(ErrorMessage(dir, ErrorKind::kParse).find("stems.tsv:6") != std::string::npos);

  TempDir tmp2;
  dir = CopyLexicon(tmp2);
  Replace(dir / "stems.tsv", "deep\tadjective", "deep\tadjectiv");
  CHECK(ErrorMessage(dir, ErrorKind::kParse).find("stems.tsv:6") != std::string::npos);

  TempDir tmp3;
  dir = CopyLexicon(tmp3);
  Replace(dir / "determinants.tsv", "-\tand\t-\tc_uni", "-\tand\t-\tc_missing");
  CHECK(ErrorMessage(dir, ErrorKind::kValidation).find("c_missing") != std::string::npos);

  TempDir tmp4;
  dir = CopyLexicon(tmp4);
  Replace(dir / "inflexions.tsv", "ly\tadv\n", "ly\tadv\ns\tpl\n");
  CHECK(ErrorMessage(dir, ErrorKind::kParse).find("inflexions.tsv") != std::string::npos);

  TempDir tmp5;
  dir = CopyLexicon(tmp5);
  fs::remove(dir / "stopwords.txt");
  ErrorMessage(dir, ErrorKind::kIo);
}

TEST_CASE("determinant keys print readably") {
  CHECK(ToString(DeterminantKey{"s", {"of"}, ""}) == "(\"s\", [of], \"\")");
  CHECK(ToString(DeterminantKey{"", {}, "'s"}) == "(\"\", [], \"'s\")");
}

}  // namespace
}  // namespace termspace
