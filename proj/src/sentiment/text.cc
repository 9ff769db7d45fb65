// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/sentiment/text.h"

#include <algorithm>
#include <array>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace sentiflow::sentiment {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Bytes of multibyte UTF-8 sequences count as word characters.
bool IsWordChar(char c) {
  return IsAlpha(c) || IsDigit(c) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

struct Emoticon {
  std::string_view text;
  std::string_view tag;
};

// Longest first so that ":-)" wins over ")" style prefixes.
constexpr std::array<Emoticon, 29> kEmoticons = {{
    {">:-(", kTagNeg}, {":'-(", kTagNeg}, {":-)", kTagPos}, {":-D", kTagPos},
    {";-)", kTagPos},  {":')", kTagPos},  {"^_^", kTagPos}, {":-(", kTagNeg},
    {":'(", kTagNeg},  {":-/", kTagNeg},  {">:(", kTagNeg}, {"</3", kTagNeg},
    {":)", kTagPos},   {":D", kTagPos},   {";)", kTagPos},  {"=)", kTagPos},
    {":]", kTagPos},   {":}", kTagPos},   {"<3", kTagPos},  {"(:", kTagPos},
    {"=D", kTagPos},   {"xD", kTagPos},   {"XD", kTagPos},  {":(", kTagNeg},
    {":/", kTagNeg},   {"=(", kTagNeg},   {":[", kTagNeg},  {":@", kTagNeg},
    {"D:", kTagNeg},
}};

const std::unordered_map<std::string, std::string>& Abbreviations() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"u", "you"},          {"ur", "your"},         {"r", "are"},
      {"pls", "please"},     {"plz", "please"},      {"thx", "thanks"},
      {"thnx", "thanks"},    {"ty", "thank you"},    {"b4", "before"},
      {"gr8", "great"},      {"luv", "love"},        {"idk", "i do not know"},
      {"imo", "in my opinion"}, {"imho", "in my humble opinion"},
      {"btw", "by the way"}, {"tbh", "to be honest"}, {"omg", "oh my god"},
      {"2day", "today"},     {"2morrow", "tomorrow"}, {"tmrw", "tomorrow"},
      {"ppl", "people"},     {"bc", "because"},      {"cuz", "because"},
      {"coz", "because"},    {"msg", "message"},     {"govt", "government"},
      {"wanna", "want to"},  {"gonna", "going to"},  {"gotta", "got to"},
      {"dont", "don't"},     {"cant", "can't"},      {"wont", "won't"},
      {"im", "i'm"},         {"pic", "picture"},     {"w8", "wait"},
  };
  return *table;
}

bool IsUrl(std::string_view chunk) {
  const std::string lower = AsciiLower(chunk.substr(0, 8));
  return StartsWith(lower, "http://") || StartsWith(lower, "https://") ||
         (StartsWith(lower, "www.") && chunk.size() > 4);
}

bool AllPunctuation(std::string_view s) {
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return IsWordChar(c) || IsSpace(c); });
}

void NormalizeChunk(std::string_view chunk, std::vector<std::string>& out) {
  if (chunk.empty()) return;
  if (IsUrl(chunk)) {
    out.emplace_back(kTagUrl);
    return;
  }
  if (chunk[0] == '@' && chunk.size() > 1 &&
      (IsAlpha(chunk[1]) || IsDigit(chunk[1]) || chunk[1] == '_')) {
    size_t end = 1;
    while (end < chunk.size() &&
           (IsAlpha(chunk[end]) || IsDigit(chunk[end]) || chunk[end] == '_')) {
      ++end;
    }
    out.emplace_back(kTagMention);
    NormalizeChunk(chunk.substr(end), out);
    return;
  }
  for (const Emoticon& e : kEmoticons) {
    if (chunk == e.text) {
      out.emplace_back(e.tag);
      return;
    }
  }
  for (const Emoticon& e : kEmoticons) {
    // "great:)" -> "great TAG_POS"
    if (!IsWordChar(e.text.front()) && chunk.size() > e.text.size() &&
        EndsWith(chunk, e.text) &&
        IsWordChar(chunk[chunk.size() - e.text.size() - 1])) {
      NormalizeChunk(chunk.substr(0, chunk.size() - e.text.size()), out);
      out.emplace_back(e.tag);
      return;
    }
    // ":)!!" -> "TAG_POS !!"
    if (chunk.size() > e.text.size() && StartsWith(chunk, e.text) &&
        AllPunctuation(chunk.substr(e.text.size()))) {
      out.emplace_back(e.tag);
      NormalizeChunk(chunk.substr(e.text.size()), out);
      return;
    }
  }
  size_t core_end = chunk.size();
  while (core_end > 0 && !IsWordChar(chunk[core_end - 1])) --core_end;
  if (core_end > 0) {
    auto it = Abbreviations().find(AsciiLower(chunk.substr(0, core_end)));
    if (it != Abbreviations().end()) {
      out.push_back(absl::StrCat(it->second, std::string(chunk.substr(core_end))));
      return;
    }
  }
  out.emplace_back(chunk);
}

struct Contraction {
  std::string_view form;
  std::array<std::string_view, 2> parts;
};

constexpr std::array<Contraction, 18> kContractions = {{
    {"can't", {"can", "not"}},     {"cannot", {"can", "not"}},
    {"won't", {"will", "not"}},    {"shan't", {"shall", "not"}},
    {"ain't", {"is", "not"}},      {"let's", {"let", "us"}},
    {"it's", {"it", "is"}},        {"that's", {"that", "is"}},
    {"what's", {"what", "is"}},    {"he's", {"he", "is"}},
    {"she's", {"she", "is"}},      {"there's", {"there", "is"}},
    {"here's", {"here", "is"}},    {"where's", {"where", "is"}},
    {"who's", {"who", "is"}},      {"how's", {"how", "is"}},
    {"i'm", {"i", "am"}},          {"y'know", {"you", "know"}},
}};

struct SuffixRule {
  std::string_view suffix;
  std::string_view expansion;
};

constexpr std::array<SuffixRule, 6> kSuffixRules = {{
    {"n't", "not"}, {"'ll", "will"}, {"'re", "are"},
    {"'ve", "have"}, {"'m", "am"},   {"'d", "would"},
}};

std::string ReplaceCurlyApostrophes(std::string_view s) {
  static constexpr std::string_view kCurly = "\xE2\x80\x99";
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size();) {
    if (s.substr(i, kCurly.size()) == kCurly) {
      out.push_back('\'');
      i += kCurly.size();
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

bool AllAlpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), IsAlpha);
}

void EmitContraction(std::string_view original, std::string_view first,
                     std::string_view second, Tokens& out) {
  std::string head(first);
  if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z' &&
      !head.empty() && head[0] >= 'a' && head[0] <= 'z') {
    head[0] = static_cast<char>(head[0] - 'a' + 'A');
  }
  out.push_back(std::move(head));
  out.emplace_back(second);
}

std::string PunctuationTag(std::string_view token) {
  switch (token[0]) {
    case '.':
    case '!':
    case '?':
      return ".";
    case ',':
      return ",";
    case ':':
    case ';':
    case '-':
      return ":";
    case '(':
    case '[':
    case '{':
      return "-LRB-";
    case ')':
    case ']':
    case '}':
      return "-RRB-";
    case '"':
    case '\'':
      return "''";
    case '`':
      return "``";
    case '#':
      return "#";
    case '$':
      return "$";
    default:
      return "SYM";
  }
}

std::string SuffixTag(std::string_view lower) {
  struct Rule {
    std::string_view suffix;
    std::string_view tag;
  };
  static constexpr std::array<Rule, 14> kRules = {{
      {"ly", "RB"},    {"ing", "VBG"},  {"ed", "VBD"},   {"ness", "NN"},
      {"ment", "NN"},  {"tion", "NN"},  {"sion", "NN"},  {"ity", "NN"},
      {"able", "JJ"},  {"ible", "JJ"},  {"ous", "JJ"},   {"ful", "JJ"},
      {"less", "JJ"},  {"ive", "JJ"},
  }};
  for (const Rule& r : kRules) {
    if (lower.size() > r.suffix.size() + 1 && EndsWith(lower, r.suffix)) {
      return std::string(r.tag);
    }
  }
  if (lower.size() > 3 && EndsWith(lower, "s") && !EndsWith(lower, "ss") &&
      !EndsWith(lower, "us") && !EndsWith(lower, "is")) {
    return "NNS";
  }
  return "NN";
}

}  // namespace

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsTerminator(text[i])) continue;
    size_t end = i;
    while (end < text.size() && IsTerminator(text[end])) ++end;
    if (end == text.size() || IsSpace(text[end])) {
      std::string_view piece = Trim(text.substr(start, end - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = end;
    }
    i = end - 1;
  }
  std::string_view rest = Trim(text.substr(start));
  if (!rest.empty()) out.emplace_back(rest);
  if (out.empty() && !text.empty()) out.emplace_back(Trim(text));
  return out;
}

std::string Normalize(std::string_view sentence) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && IsSpace(sentence[i])) ++i;
    size_t j = i;
    while (j < sentence.size() && !IsSpace(sentence[j])) ++j;
    NormalizeChunk(sentence.substr(i, j - i), words);
    i = j;
  }
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

Tokens Tokenize(std::string_view s) {
  Tokens out;
  size_t i = 0;
  while (i < s.size()) {
    if (IsSpace(s[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    if (IsWordChar(s[i])) {
      while (j < s.size()) {
        if (IsWordChar(s[j])) {
          ++j;
        } else if (j + 1 < s.size() && IsWordChar(s[j + 1]) &&
                   (s[j] == '\'' || s[j] == '-' ||
                    ((s[j] == '.' || s[j] == ',') && IsDigit(s[j - 1]) &&
                     IsDigit(s[j + 1])))) {
          j += 2;
        } else {
          break;
        }
      }
    } else {
      while (j < s.size() && s[j] == s[i]) ++j;
    }
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Tokens SplitContractions(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (token.find('\'') == std::string::npos &&
        token.find("\xE2\x80\x99") == std::string::npos && token != "cannot" &&
        token != "Cannot") {
      out.push_back(token);
      continue;
    }
    const std::string lower = AsciiLower(ReplaceCurlyApostrophes(token));
    bool done = false;
    for (const Contraction& c : kContractions) {
      if (lower == c.form) {
        EmitContraction(token, c.parts[0], c.parts[1], out);
        done = true;
        break;
      }
    }
    for (size_t r = 0; !done && r < kSuffixRules.size(); ++r) {
      const SuffixRule& rule = kSuffixRules[r];
      if (!EndsWith(lower, rule.suffix)) continue;
      std::string_view stem =
          std::string_view(lower).substr(0, lower.size() - rule.suffix.size());
      if (!AllAlpha(stem)) continue;
      EmitContraction(token, stem, rule.expansion, out);
      done = true;
    }
    if (!done) out.push_back(token);
  }
  return out;
}

absl::StatusOr<std::vector<std::pair<std::string, std::string>>> ReadTsv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> cols = absl::StrSplit(line, '\t');
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path.string(), ":", line_no, ": expected two tab-separated columns"));
    }
    rows.emplace_back(std::move(cols[0]), std::move(cols[1]));
  }
  return rows;
}

absl::StatusOr<Gazetteer> Gazetteer::Load(const std::filesystem::path& path) {
  auto rows = ReadTsv(path);
  if (!rows.ok()) return rows.status();
  Gazetteer g;
  for (auto& [entry, label] : *rows) {
    Tokens tokens = absl::StrSplit(entry, ' ', absl::SkipEmpty());
    g.Add(tokens, std::move(label));
  }
  return g;
}

void Gazetteer::Add(const Tokens& entry, std::string /*label*/) {
  if (entry.empty()) return;
  Tokens lower;
  for (const auto& t : entry) lower.push_back(AsciiLower(t));
  auto& bucket = entries_[lower[0]];
  if (std::find(bucket.begin(), bucket.end(), lower) != bucket.end()) return;
  max_length_ = std::max(max_length_, lower.size());
  bucket.push_back(std::move(lower));
  ++size_;
}

size_t Gazetteer::LongestMatch(const Tokens& tokens, size_t pos) const {
  auto it = entries_.find(AsciiLower(tokens[pos]));
  if (it == entries_.end()) return 0;
  size_t best = 0;
  for (const Tokens& entry : it->second) {
    if (entry.size() <= best || pos + entry.size() > tokens.size()) continue;
    bool match = true;
    for (size_t k = 1; k < entry.size() && match; ++k) {
      match = AsciiLower(tokens[pos + k]) == entry[k];
    }
    if (match) best = entry.size();
  }
  return best;
}

Tokens MergeEntities(const Tokens& tokens, const Gazetteer& gazetteer,
                     std::vector<std::string>* merged) {
  Tokens out;
  out.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size();) {
    const size_t len = gazetteer.LongestMatch(tokens, i);
    if (len < 2) {
      out.push_back(tokens[i++]);
      continue;
    }
    std::string joined = tokens[i];
    for (size_t k = 1; k < len; ++k) absl::StrAppend(&joined, "_", tokens[i + k]);
    if (merged != nullptr) merged->push_back(joined);
    out.push_back(std::move(joined));
    i += len;
  }
  return out;
}

absl::StatusOr<TagLexicon> TagLexicon::Load(const std::filesystem::path& path) {
  auto rows = ReadTsv(path);
  if (!rows.ok()) return rows.status();
  TagLexicon lexicon;
  for (auto& [word, tag] : *rows) lexicon.Add(std::move(word), std::move(tag));
  return lexicon;
}

void TagLexicon::Add(std::string word, std::string tag) {
  tags_.insert_or_assign(std::move(word), std::move(tag));
}

const std::string* TagLexicon::Find(std::string_view word) const {
  auto it = tags_.find(std::string(word));
  if (it == tags_.end()) it = tags_.find(AsciiLower(word));
  return it == tags_.end() ? nullptr : &it->second;
}

std::vector<TaggedToken> PosTag(const Tokens& tokens, const TagLexicon& lexicon) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    std::string tag;
    if (token == kTagPos || token == kTagNeg) {
      tag = "UH";
    } else if (token == kTagUrl) {
      tag = "SYM";
    } else if (token == kTagMention) {
      tag = "NNP";
    } else if (token.find('_') != std::string::npos) {
      tag = "NNP";
    } else if (const std::string* known = lexicon.Find(token)) {
      tag = *known;
    } else if (!IsWordChar(token[0])) {
      tag = PunctuationTag(token);
    } else if (IsDigit(token[0])) {
      tag = "CD";
    } else if (token[0] >= 'A' && token[0] <= 'Z') {
      tag = "NNP";
    } else {
      tag = SuffixTag(AsciiLower(token));
    }
    out.emplace_back(token, std::move(tag));
  }
  return out;
}

bool IsPunctuationTag(std::string_view tag) {
  return tag == "." || tag == "," || tag == ":" || tag == "-LRB-" ||
         tag == "-RRB-" || tag == "''" || tag == "``" || tag == "#" ||
         tag == "$";
}

bool IsProperNounTag(std::string_view tag) { return tag == "NNP" || tag == "NNPS"; }

}  // namespace sentiflow::sentiment
