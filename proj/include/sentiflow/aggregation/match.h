// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sentiflow::aggregation {

// Lowercased maximal runs of word characters (ASCII letters, digits, '_'
// and any byte of a multibyte UTF-8 sequence). Everything else separates.
std::vector<std::string> MatchTokens(std::string_view text);

// Case-insensitive phrase match: the keyword's tokens must appear
// consecutively in the text's tokens. "ban" does not match "bandana".
class KeywordMatcher {
 public:
  explicit KeywordMatcher(std::string_view keyword);

  bool empty() const { return phrase_.empty(); }
  bool Matches(std::string_view text) const;

 private:
  std::vector<std::string> phrase_;
};

bool Match(std::string_view text, std::string_view keyword);

}  // namespace sentiflow::aggregation
