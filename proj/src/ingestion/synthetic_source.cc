// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/ingestion/synthetic_source.h"

#include <array>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "sentiflow/storage/row_key.h"

namespace sentiflow::ingestion {
namespace {

constexpr std::array<std::string_view, 16> kPositive = {
    "good",  "great",     "love",      "awesome", "excellent", "amazing",
    "happy", "wonderful", "best",      "fantastic", "nice",    "brilliant",
    "perfect", "enjoy",   "glad",      "excited"};

constexpr std::array<std::string_view, 16> kNegative = {
    "bad",   "terrible", "awful", "hate",  "horrible", "worst",
    "sad",   "angry",    "poor",  "disappointing", "ugly", "boring",
    "broken", "annoying", "disaster", "useless"};

constexpr std::array<std::string_view, 40> kFiller = {
    "today",  "just",    "the",     "new",   "people",  "about",  "watching",
    "think",  "going",   "really",  "time",  "still",   "night",  "game",
    "news",   "video",   "week",    "this",  "that",    "with",   "from",
    "everyone", "morning", "again", "here",  "city",    "team",   "update",
    "read",   "after",   "world",   "right", "now",     "what",   "everybody",
    "tonight", "story",  "check",   "our",   "some"};

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sentiment class drawn from the bias: bias >= 0 moves mass from the
// negative and neutral classes to the positive one, symmetrically below 0.
int DrawPolarity(double bias, std::mt19937_64& rng) {
  const double b = std::clamp(bias, -1.0, 1.0);
  double p_pos = 1.0 / 3, p_neg = 1.0 / 3;
  if (b >= 0) {
    p_pos = 1.0 / 3 + 2.0 / 3 * b;
    p_neg = (1.0 - b) / 3;
  } else {
    p_neg = 1.0 / 3 - 2.0 / 3 * b;
    p_pos = (1.0 + b) / 3;
  }
  const double u = std::uniform_real_distribution<double>(0, 1)(rng);
  if (u < p_pos) return 1;
  if (u < p_pos + p_neg) return -1;
  return 0;
}

}  // namespace

SyntheticSource::SyntheticSource(SyntheticOptions options, const Clock* clock)
    : options_(std::move(options)), clock_(clock) {
  if (options_.vocab.empty()) options_.vocab = DefaultTopics();
  if (options_.start_ms == 0) options_.start_ms = clock_->NowMs();
  if (options_.rate_per_s <= 0) options_.rate_per_s = 1;
  if (options_.per_call_cap < 1) options_.per_call_cap = 1;
  if (options_.min_recall_interval_s < 1) options_.min_recall_interval_s = 1;
}

std::span<const std::string_view> SyntheticSource::PositiveWords() {
  return kPositive;
}
std::span<const std::string_view> SyntheticSource::NegativeWords() {
  return kNegative;
}

const std::vector<std::string>& SyntheticSource::DefaultTopics() {
  static const std::vector<std::string> topics = {
      "travel ban", "super bowl", "trump",   "coffee",  "weather",
      "election",   "climate",    "netflix", "iphone",  "football"};
  return topics;
}

int SyntheticSource::IntendedPolarity(uint64_t seed, double bias,
                                      uint64_t stream_key) {
  std::mt19937_64 rng(SplitMix64(seed ^ SplitMix64(stream_key)));
  return DrawPolarity(bias, rng);
}

RawPost SyntheticSource::Build(uint64_t stream_key, std::string_view topic,
                               std::string source_id,
                               TimestampMs created_at) const {
  std::mt19937_64 rng(SplitMix64(options_.seed ^ SplitMix64(stream_key)));
  const int polarity = DrawPolarity(options_.sentiment_bias, rng);
  auto pick = [&rng](auto& list) {
    return std::string(list[rng() % list.size()]);
  };

  std::vector<std::string> words;
  const int n_filler = 2 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n_filler; ++i) words.push_back(pick(kFiller));
  words.insert(words.begin() + static_cast<long>(rng() % (words.size() + 1)),
               std::string(topic));
  if (polarity == 1) {
    const int n = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) {
      words.insert(words.begin() + static_cast<long>(rng() % (words.size() + 1)),
                   pick(kPositive));
    }
    if (rng() % 4 == 0) words.push_back(":)");
  } else if (polarity == -1) {
    if (rng() % 4 == 0) {
      words.insert(words.begin() + static_cast<long>(rng() % (words.size() + 1)),
                   "not " + pick(kPositive));
    } else {
      words.insert(words.begin() + static_cast<long>(rng() % (words.size() + 1)),
                   pick(kNegative));
    }
    if (rng() % 4 == 0) words.push_back(":(");
  }
  if (rng() % 8 == 0) words.insert(words.begin(), "@user" + std::to_string(rng() % 1000));
  if (rng() % 8 == 0) words.push_back("http://t.co/" + std::to_string(rng() % 100000));

  RawPost post;
  post.source_id = std::move(source_id);
  post.text = absl::StrJoin(words, " ");
  post.lang = options_.lang;
  post.created_at = created_at;
  post.author = "user" + std::to_string(rng() % 5000);
  return post;
}

RawPost SyntheticSource::Generate(uint64_t index) const {
  const auto& topic = options_.vocab[SplitMix64(options_.seed + index) %
                                     options_.vocab.size()];
  const auto offset = static_cast<TimestampMs>(
      std::floor(static_cast<double>(index) * 1000.0 / options_.rate_per_s));
  return Build(index, topic, absl::StrCat("syn", options_.seed, "-", index),
               options_.start_ms + offset);
}

std::vector<RawPost> SyntheticSource::TakeDue() {
  const TimestampMs now = clock_->NowMs();
  // Number of posts created strictly before now.
  const double elapsed = static_cast<double>(now - options_.start_ms);
  uint64_t due = 0;
  if (elapsed > 0) {
    due = static_cast<uint64_t>(std::ceil(elapsed * options_.rate_per_s / 1000.0));
  }
  std::vector<RawPost> out;
  uint64_t from = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (due <= next_index_) return out;
    from = next_index_;
    next_index_ = due;
  }
  out.reserve(due - from);
  for (uint64_t i = from; i < due; ++i) out.push_back(Generate(i));
  return out;
}

uint64_t SyntheticSource::emitted() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_index_;
}

absl::StatusOr<std::vector<RawPost>> SyntheticSource::Fetch(
    std::string_view term) {
  if (term.empty()) return absl::InvalidArgumentError("empty term");
  const int64_t window_ms = options_.min_recall_interval_s * kMsPerSecond;
  const int64_t window = clock_->NowMs() / window_ms;
  const uint64_t term_hash = storage::StableHash64(term);
  const int n = options_.per_call_cap;
  std::vector<RawPost> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    const uint64_t key = SplitMix64(term_hash ^ SplitMix64(window * 1024 + j));
    out.push_back(Build(key, term,
                        absl::StrCat("syn", options_.seed, "-t", term_hash % 1000003,
                                     "-w", window, "-", j),
                        window * window_ms + j * (window_ms / n) + 1));
  }
  return out;
}

}  // namespace sentiflow::ingestion
