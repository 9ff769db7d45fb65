// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/sentiment/text.h"

namespace sentiflow::sentiment {

// Classes in storage order; index = polarity + 1.
inline constexpr std::array<int, 3> kClasses = {-1, 0, 1};
inline constexpr int ClassIndex(int polarity) { return polarity + 1; }

// Pseudo-tokens carrying the lexicon hit counts.
inline constexpr std::string_view kLexPosFeature = "__lex_pos__";
inline constexpr std::string_view kLexNegFeature = "__lex_neg__";

// Tokens after a negator have their lexicon label flipped.
inline constexpr int kNegationScope = 2;

// token -> +1 (positive) or -1 (negative).
using PolarityLexicon = std::map<std::string, int>;

// Lines "token\tpositive|negative".
absl::StatusOr<PolarityLexicon> LoadPolarityLexicon(
    const std::filesystem::path& path);

using FeatureCounts = std::map<std::string, int>;

bool IsNegator(std::string_view lower_token);

// Unigram counts (lowercased, punctuation dropped, semantic tags kept as is)
// plus the positive and negative lexicon hit counts. Proper nouns never hit
// the lexicon.
FeatureCounts ExtractFeatures(
    const std::vector<std::vector<TaggedToken>>& sentences,
    const PolarityLexicon& lexicon);

struct NBModel {
  std::string version;
  std::array<double, 3> priors{};
  // Per feature, log P(feature | class) for each class.
  std::unordered_map<std::string, std::array<double, 3>> log_likelihood;
  PolarityLexicon lexicon;

  absl::Status Validate() const;
};

// Multinomial naive Bayes with Laplace smoothing (alpha = 1). Every class
// needs at least one example.
absl::StatusOr<NBModel> TrainFromFeatures(
    const std::vector<std::pair<FeatureCounts, int>>& examples,
    PolarityLexicon lexicon, std::string version);

// log P(c) + sum n_f log P(f | c). Features outside the vocabulary are
// ignored.
std::array<double, 3> LogScores(const FeatureCounts& features,
                                const NBModel& model);

// Normalized class probabilities (log-sum-exp).
std::array<double, 3> Posterior(const FeatureCounts& features,
                                const NBModel& model);

// Argmax of LogScores; exact ties go to 0, then +1, then -1. An empty
// feature set is 0.
int Classify(const FeatureCounts& features, const NBModel& model);

nlohmann::json ModelToJson(const NBModel& model);
absl::StatusOr<NBModel> ModelFromJson(const nlohmann::json& j);
absl::Status SaveModel(const NBModel& model, const std::filesystem::path& path);
absl::StatusOr<NBModel> LoadModel(const std::filesystem::path& path);

}  // namespace sentiflow::sentiment
