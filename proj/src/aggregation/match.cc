// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/match.h"

#include <algorithm>

namespace sentiflow::aggregation {
namespace {

bool IsWordByte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

std::vector<std::string> MatchTokens(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    std::string token;
    while (j < text.size() && IsWordByte(text[j])) {
      char c = text[j++];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      token.push_back(c);
    }
    out.push_back(std::move(token));
    i = j;
  }
  return out;
}

KeywordMatcher::KeywordMatcher(std::string_view keyword)
    : phrase_(MatchTokens(keyword)) {}

bool KeywordMatcher::Matches(std::string_view text) const {
  if (phrase_.empty()) return false;
  const std::vector<std::string> tokens = MatchTokens(text);
  return std::search(tokens.begin(), tokens.end(), phrase_.begin(), phrase_.end()) !=
         tokens.end();
}

bool Match(std::string_view text, std::string_view keyword) {
  return KeywordMatcher(keyword).Matches(text);
}

}  // namespace sentiflow::aggregation
