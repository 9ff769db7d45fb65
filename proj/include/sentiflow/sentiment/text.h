// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace sentiflow::sentiment {

using Tokens = std::vector<std::string>;

inline constexpr std::string_view kTagPos = "TAG_POS";
inline constexpr std::string_view kTagNeg = "TAG_NEG";
inline constexpr std::string_view kTagUrl = "TAG_URL";
inline constexpr std::string_view kTagMention = "TAG_MENTION";

// Splits after every run of '.', '!' or '?' that is followed by whitespace
// or the end of the text. Pieces are trimmed; a non-empty text always
// yields at least one sentence.
std::vector<std::string> SplitSentences(std::string_view text);

// Replaces emoticons, URLs and @mentions with semantic tags and expands
// known abbreviations. Output words are separated by single spaces.
// Idempotent.
std::string Normalize(std::string_view sentence);

// Whitespace and punctuation segmentation. Words may contain inner
// apostrophes and hyphens, and numbers may contain inner '.' or ','.
// A run of one repeated punctuation character ("!!!") is one token.
Tokens Tokenize(std::string_view sentence);

// Expands contractions ("don't" -> "do", "not"). Apostrophe forms that are
// not contractions stay as they are.
Tokens SplitContractions(const Tokens& tokens);

// Multiword named entities, matched case-insensitively.
class Gazetteer {
 public:
  // One entry per line: space-separated tokens, a tab, a label.
  static absl::StatusOr<Gazetteer> Load(const std::filesystem::path& path);

  void Add(const Tokens& entry, std::string label);
  size_t size() const { return size_; }
  size_t max_length() const { return max_length_; }

  // Length of the longest entry that starts at tokens[pos], 0 if none.
  size_t LongestMatch(const Tokens& tokens, size_t pos) const;

 private:
  // Keyed by lowercased first token.
  std::unordered_map<std::string, std::vector<Tokens>> entries_;
  size_t size_ = 0;
  size_t max_length_ = 0;
};

// Leftmost-longest merge of gazetteer entries into single tokens joined by
// '_'. Returns the merged tokens; `merged` receives the new entity tokens.
Tokens MergeEntities(const Tokens& tokens, const Gazetteer& gazetteer,
                     std::vector<std::string>* merged = nullptr);

// Most frequent Penn tag per word.
class TagLexicon {
 public:
  static absl::StatusOr<TagLexicon> Load(const std::filesystem::path& path);

  void Add(std::string word, std::string tag);
  // Exact match first, then the lowercased form.
  const std::string* Find(std::string_view word) const;
  size_t size() const { return tags_.size(); }

 private:
  std::unordered_map<std::string, std::string> tags_;
};

using TaggedToken = std::pair<std::string, std::string>;

std::vector<TaggedToken> PosTag(const Tokens& tokens, const TagLexicon& lexicon);

bool IsPunctuationTag(std::string_view tag);
bool IsProperNounTag(std::string_view tag);

std::string AsciiLower(std::string_view s);

// Reads "<column 1>\t<column 2>" lines, skipping blanks and '#' comments.
absl::StatusOr<std::vector<std::pair<std::string, std::string>>> ReadTsv(
    const std::filesystem::path& path);

}  // namespace sentiflow::sentiment
