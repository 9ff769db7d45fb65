// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "json.hpp"
#include "sentiflow/sentiment/pipeline.h"
#include "sentiflow/sentiment/text.h"

namespace sentiflow::sentiment {
namespace {

const std::string kData = SENTIFLOW_DATA_DIR;

std::vector<nlohmann::json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in) << path;
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

TEST(SplitSentencesTest, Examples) {
  EXPECT_EQ(SplitSentences("Hi. Bye."), (std::vector<std::string>{"Hi.", "Bye."}));
  EXPECT_EQ(SplitSentences("no terminator"), (std::vector<std::string>{"no terminator"}));
  EXPECT_EQ(SplitSentences("A! B? C.").size(), 3u);
  EXPECT_TRUE(SplitSentences("").empty());
  EXPECT_EQ(SplitSentences("3.5 stars"), (std::vector<std::string>{"3.5 stars"}));
}

TEST(SplitSentencesTest, NeverEmptyForNonEmptyText) {
  for (std::string text : {" ", "...", "!", "\t\n"}) {
    EXPECT_FALSE(SplitSentences(text).empty()) << text;
  }
}

TEST(SplitSentencesTest, MatchesGoldenFile) {
  for (const auto& row : ReadJsonLines(kData + "/fixtures/sentences_golden.jsonl")) {
    const std::string text = row["text"];
    EXPECT_EQ(SplitSentences(text), row["sentences"].get<std::vector<std::string>>())
        << text;
  }
}

TEST(NormalizeTest, Tags) {
  EXPECT_EQ(Normalize(":)"), "TAG_POS");
  EXPECT_EQ(Normalize(":-("), "TAG_NEG");
  EXPECT_EQ(Normalize("http://x.co"), "TAG_URL");
  EXPECT_EQ(Normalize("see https://t.co/abc now"), "see TAG_URL now");
  EXPECT_EQ(Normalize("www.example.com"), "TAG_URL");
  EXPECT_EQ(Normalize("@bob_99 hi"), "TAG_MENTION hi");
  EXPECT_EQ(Normalize("@bob: thanks"), "TAG_MENTION : thanks");
  EXPECT_EQ(Normalize("great:)"), "great TAG_POS");
  EXPECT_EQ(Normalize(":)!!"), "TAG_POS !!");
  EXPECT_EQ(Normalize("me @ home"), "me @ home");
}

TEST(NormalizeTest, Abbreviations) {
  EXPECT_EQ(Normalize("u r gr8!"), "you are great!");
  EXPECT_EQ(Normalize("IDK tbh"), "i do not know to be honest");
  EXPECT_EQ(Normalize("dont go"), "don't go");
  EXPECT_EQ(Normalize("unknown words stay"), "unknown words stay");
}

TEST(NormalizeTest, CollapsesWhitespace) {
  EXPECT_EQ(Normalize("  a \t b  "), "a b");
}

TEST(NormalizeTest, IdempotentOnRandomFixtures) {
  const std::vector<std::string> pieces = {
      ":)",  ":(",   ":-)", "<3",    "</3",  ":D",     "xD",    "D:",   "@bob",
      "@",   "@@x",  "u",   "gr8",   "IDK",  "dont",   "http://a.b/c",    "www.q.org",
      "great", "not", "the", "!",    "?!",   ".",      ",",     "TAG_POS", "(:",
      "rock'n'roll", "don't", "x:)", ":)!", "^_^", ":/", "im", "pls!", "@a@b", "3.5"};
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      s += pieces[rng() % pieces.size()];
      // Sometimes glue pieces together.
      if (rng() % 3 != 0) s += rng() % 5 == 0 ? "  " : " ";
    }
    const std::string once = Normalize(s);
    EXPECT_EQ(Normalize(once), once) << "input: " << s;
  }
}

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(Tokenize("a b"), (Tokens{"a", "b"}));
  EXPECT_EQ(Tokenize("TAG_POS!"), (Tokens{"TAG_POS", "!"}));
  EXPECT_EQ(Tokenize("don't stop!!!"), (Tokens{"don't", "stop", "!!!"}));
  EXPECT_EQ(Tokenize("3.14, well-known"), (Tokens{"3.14", ",", "well-known"}));
  EXPECT_TRUE(Tokenize("   ").empty());
}

TEST(TokenizeTest, MatchesGoldenFile) {
  int rows = 0;
  for (const auto& row : ReadJsonLines(kData + "/fixtures/tokenize_golden.jsonl")) {
    const std::string text = row["text"];
    EXPECT_EQ(Tokenize(text), row["tokens"].get<Tokens>()) << text;
    ++rows;
  }
  EXPECT_GE(rows, 50);
}

TEST(SplitContractionsTest, Examples) {
  EXPECT_EQ(SplitContractions({"don't"}), (Tokens{"do", "not"}));
  EXPECT_EQ(SplitContractions({"we'll"}), (Tokens{"we", "will"}));
  EXPECT_EQ(SplitContractions({"o'clock"}), (Tokens{"o'clock"}));
}

TEST(SplitContractionsTest, TableAndRules) {
  EXPECT_EQ(SplitContractions({"Can't"}), (Tokens{"Can", "not"}));
  EXPECT_EQ(SplitContractions({"won't"}), (Tokens{"will", "not"}));
  EXPECT_EQ(SplitContractions({"I'm", "they're", "you've", "she'd"}),
            (Tokens{"I", "am", "they", "are", "you", "have", "she", "would"}));
  EXPECT_EQ(SplitContractions({"don\xE2\x80\x99t"}), (Tokens{"do", "not"}));
  EXPECT_EQ(SplitContractions({"cannot"}), (Tokens{"can", "not"}));
  // Possessives and other apostrophe forms are left alone.
  EXPECT_EQ(SplitContractions({"John's", "rock'n'roll", "'", "y'all"}),
            (Tokens{"John's", "rock'n'roll", "'", "y'all"}));
}

TEST(MergeEntitiesTest, Examples) {
  auto gazetteer = *Gazetteer::Load(kData + "/en/gazetteer.tsv");
  std::vector<std::string> merged;
  EXPECT_EQ(MergeEntities({"Santiago", "de", "Compostela"}, gazetteer, &merged),
            (Tokens{"Santiago_de_Compostela"}));
  EXPECT_EQ(merged, (std::vector<std::string>{"Santiago_de_Compostela"}));
  EXPECT_EQ(MergeEntities({"nothing", "here"}, gazetteer), (Tokens{"nothing", "here"}));
  EXPECT_EQ(MergeEntities({"i", "love", "new", "york", "city"}, gazetteer),
            (Tokens{"i", "love", "new_york_city"}));
}

// Reference: among all segmentations into single tokens and gazetteer
// entries, take the one whose piece lengths are lexicographically largest.
Tokens BruteForceMerge(const Tokens& tokens, const std::vector<Tokens>& entries) {
  std::vector<size_t> best_lengths;
  Tokens best;
  std::function<void(size_t, std::vector<size_t>&, Tokens&)> walk =
      [&](size_t pos, std::vector<size_t>& lengths, Tokens& out) {
        if (pos == tokens.size()) {
          if (lengths > best_lengths) {
            best_lengths = lengths;
            best = out;
          }
          return;
        }
        std::vector<size_t> options = {1};
        for (const Tokens& e : entries) {
          if (e.size() < 2 || pos + e.size() > tokens.size()) continue;
          if (std::equal(e.begin(), e.end(), tokens.begin() + static_cast<long>(pos))) {
            options.push_back(e.size());
          }
        }
        for (size_t len : options) {
          std::string piece = tokens[pos];
          for (size_t k = 1; k < len; ++k) piece += "_" + tokens[pos + k];
          lengths.push_back(len);
          out.push_back(piece);
          walk(pos + len, lengths, out);
          lengths.pop_back();
          out.pop_back();
        }
      };
  std::vector<size_t> lengths;
  Tokens out;
  walk(0, lengths, out);
  return best;
}

TEST(MergeEntitiesTest, OverlappingEntriesMatchBruteForce) {
  const std::vector<Tokens> entries = {
      {"a", "b"}, {"a", "b", "c"}, {"b", "c"}, {"c", "a"}, {"b", "c", "a", "b"}, {"c"}};
  Gazetteer gazetteer;
  for (const auto& e : entries) gazetteer.Add(e, "X");
  std::mt19937 rng(7);
  const Tokens vocab = {"a", "b", "c", "d"};
  for (int i = 0; i < 2000; ++i) {
    Tokens tokens;
    const int n = static_cast<int>(rng() % 9);
    for (int k = 0; k < n; ++k) tokens.push_back(vocab[rng() % vocab.size()]);
    EXPECT_EQ(MergeEntities(tokens, gazetteer), BruteForceMerge(tokens, entries));
  }
}

TEST(MergeEntitiesTest, CaseInsensitiveKeepsOriginalSpelling) {
  Gazetteer gazetteer;
  gazetteer.Add({"Super", "Bowl"}, "MISC");
  EXPECT_EQ(MergeEntities({"the", "SUPER", "bowl"}, gazetteer),
            (Tokens{"the", "SUPER_bowl"}));
}

TEST(PosTagTest, Examples) {
  auto tags = *TagLexicon::Load(kData + "/en/tags.tsv");
  auto tagged = PosTag({"Paris", "runs", "blorptastic", "Zorblax", "quickly",
                        "42", "!", "TAG_POS", "New_York", "the"},
                       tags);
  std::vector<std::string> only_tags;
  for (const auto& t : tagged) only_tags.push_back(t.second);
  EXPECT_EQ(only_tags, (std::vector<std::string>{"NNP", "VBZ", "NN", "NNP", "RB", "CD",
                                                 ".", "UH", "NNP", "DT"}));
}

TEST(PosTagTest, LexiconWordsAreNotProperNounsWhenCapitalized) {
  auto tags = *TagLexicon::Load(kData + "/en/tags.tsv");
  auto lexicon = *LoadPolarityLexicon(kData + "/en/lexicon.tsv");
  for (const auto& [word, label] : lexicon) {
    if (word.starts_with("TAG_")) continue;
    std::string cap = word;
    cap[0] = static_cast<char>(std::toupper(cap[0]));
    EXPECT_FALSE(IsProperNounTag(PosTag({cap}, tags)[0].second)) << cap;
  }
}

TEST(PreprocessTest, RunsAllTextStages) {
  auto resources = *LoadTextResources(kData + "/en");
  auto tagged = Preprocess("We don't like Santiago de Compostela :( Really. Sad!", resources);
  ASSERT_EQ(tagged.size(), 2u);
  Tokens first;
  for (const auto& t : tagged[0]) first.push_back(t.first);
  EXPECT_EQ(first, (Tokens{"We", "do", "not", "like", "Santiago_de_Compostela",
                           "TAG_NEG", "Really", "."}));
}

}  // namespace
}  // namespace sentiflow::sentiment
