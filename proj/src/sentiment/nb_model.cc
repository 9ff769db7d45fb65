// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/sentiment/nb_model.h"

#include <cmath>
#include <fstream>

#include "absl/strings/str_cat.h"

namespace sentiflow::sentiment {
namespace {

constexpr char kFormatName[] = "sentiflow-nb";
constexpr int kFormatVersion = 1;

std::string FeatureKey(const std::string& token) {
  return token.starts_with("TAG_") ? token : AsciiLower(token);
}

}  // namespace

absl::StatusOr<PolarityLexicon> LoadPolarityLexicon(
    const std::filesystem::path& path) {
  auto rows = ReadTsv(path);
  if (!rows.ok()) return rows.status();
  PolarityLexicon lexicon;
  for (const auto& [token, label] : *rows) {
    int polarity;
    if (label == "positive") {
      polarity = 1;
    } else if (label == "negative") {
      polarity = -1;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("bad lexicon label '", label, "' for ", token));
    }
    auto [it, inserted] = lexicon.emplace(FeatureKey(token), polarity);
    if (!inserted && it->second != polarity) {
      return absl::InvalidArgumentError(
          absl::StrCat("token ", token, " has both labels"));
    }
  }
  return lexicon;
}

bool IsNegator(std::string_view t) {
  return t == "not" || t == "no" || t == "never" || t == "nothing" ||
         t == "nobody" || t == "none" || t == "nor" || t == "neither" ||
         t == "without";
}

FeatureCounts ExtractFeatures(
    const std::vector<std::vector<TaggedToken>>& sentences,
    const PolarityLexicon& lexicon) {
  FeatureCounts features;
  int pos_hits = 0, neg_hits = 0;
  for (const auto& sentence : sentences) {
    int scope = 0;
    for (const auto& [token, tag] : sentence) {
      const std::string key = FeatureKey(token);
      if (!IsPunctuationTag(tag)) ++features[key];
      if (IsNegator(key)) {
        scope = kNegationScope;
        continue;
      }
      if (!IsProperNounTag(tag)) {
        auto it = lexicon.find(key);
        if (it != lexicon.end()) {
          const int label = scope > 0 ? -it->second : it->second;
          (label > 0 ? pos_hits : neg_hits)++;
        }
      }
      if (scope > 0) --scope;
    }
  }
  if (pos_hits > 0) features[std::string(kLexPosFeature)] = pos_hits;
  if (neg_hits > 0) features[std::string(kLexNegFeature)] = neg_hits;
  return features;
}

absl::Status NBModel::Validate() const {
  double sum = 0;
  for (double p : priors) {
    if (!(p > 0 && p <= 1)) {
      return absl::InvalidArgumentError("prior outside (0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError("priors do not sum to 1");
  }
  for (const auto& [feature, ll] : log_likelihood) {
    for (double v : ll) {
      if (!std::isfinite(v) || v > 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad log likelihood for ", feature));
      }
    }
  }
  for (const auto& [token, label] : lexicon) {
    if (label != 1 && label != -1) {
      return absl::InvalidArgumentError(absl::StrCat("bad lexicon label for ", token));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<NBModel> TrainFromFeatures(
    const std::vector<std::pair<FeatureCounts, int>>& examples,
    PolarityLexicon lexicon, std::string version) {
  std::array<int64_t, 3> docs{};
  std::array<int64_t, 3> totals{};
  std::map<std::string, std::array<int64_t, 3>> counts;
  for (const auto& [features, label] : examples) {
    if (label < -1 || label > 1) {
      return absl::InvalidArgumentError(absl::StrCat("bad label ", label));
    }
    const int c = ClassIndex(label);
    ++docs[c];
    for (const auto& [feature, n] : features) {
      counts[feature][c] += n;
      totals[c] += n;
    }
  }
  for (int c = 0; c < 3; ++c) {
    if (docs[c] == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("no training example for class ", kClasses[c]));
    }
  }
  NBModel model;
  model.version = std::move(version);
  model.lexicon = std::move(lexicon);
  const double n = static_cast<double>(examples.size());
  for (int c = 0; c < 3; ++c) model.priors[c] = static_cast<double>(docs[c]) / n;
  const double vocab = static_cast<double>(counts.size());
  model.log_likelihood.reserve(counts.size());
  for (const auto& [feature, per_class] : counts) {
    std::array<double, 3> ll;
    for (int c = 0; c < 3; ++c) {
      ll[c] = std::log((static_cast<double>(per_class[c]) + 1.0) /
                       (static_cast<double>(totals[c]) + vocab));
    }
    model.log_likelihood.emplace(feature, ll);
  }
  return model;
}

std::array<double, 3> LogScores(const FeatureCounts& features,
                                const NBModel& model) {
  std::array<double, 3> scores;
  for (int c = 0; c < 3; ++c) scores[c] = std::log(model.priors[c]);
  // FeatureCounts is ordered, so the summation order is fixed.
  for (const auto& [feature, n] : features) {
    auto it = model.log_likelihood.find(feature);
    if (it == model.log_likelihood.end()) continue;
    for (int c = 0; c < 3; ++c) scores[c] += n * it->second[c];
  }
  return scores;
}

std::array<double, 3> Posterior(const FeatureCounts& features,
                                const NBModel& model) {
  std::array<double, 3> s = LogScores(features, model);
  const double max = std::max({s[0], s[1], s[2]});
  double sum = 0;
  for (double v : s) sum += std::exp(v - max);
  const double log_z = max + std::log(sum);
  for (double& v : s) v = std::exp(v - log_z);
  return s;
}

int Classify(const FeatureCounts& features, const NBModel& model) {
  if (features.empty()) return 0;
  const std::array<double, 3> s = LogScores(features, model);
  int best = 0;
  for (int polarity : {1, -1}) {
    if (s[ClassIndex(polarity)] > s[ClassIndex(best)]) best = polarity;
  }
  return best;
}

nlohmann::json ModelToJson(const NBModel& model) {
  nlohmann::json lexicon = nlohmann::json::object();
  for (const auto& [token, label] : model.lexicon) {
    lexicon[token] = label > 0 ? "positive" : "negative";
  }
  nlohmann::json ll = nlohmann::json::object();
  for (const auto& [feature, values] : model.log_likelihood) ll[feature] = values;
  return {{"format", kFormatName},
          {"format_version", kFormatVersion},
          {"version", model.version},
          {"classes", kClasses},
          {"priors", model.priors},
          {"log_likelihood", std::move(ll)},
          {"lexicon", std::move(lexicon)}};
}

absl::StatusOr<NBModel> ModelFromJson(const nlohmann::json& j) {
  try {
    if (j.at("format") != kFormatName) {
      return absl::InvalidArgumentError("not a sentiflow model file");
    }
    if (j.at("format_version").get<int>() != kFormatVersion) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unsupported model format_version ", j.at("format_version").dump()));
    }
    if (j.at("classes").get<std::array<int, 3>>() != kClasses) {
      return absl::InvalidArgumentError("unexpected class order");
    }
    NBModel model;
    model.version = j.at("version").get<std::string>();
    model.priors = j.at("priors").get<std::array<double, 3>>();
    for (const auto& [feature, values] : j.at("log_likelihood").items()) {
      model.log_likelihood.emplace(feature, values.get<std::array<double, 3>>());
    }
    for (const auto& [token, label] : j.at("lexicon").items()) {
      const std::string l = label.get<std::string>();
      if (l != "positive" && l != "negative") {
        return absl::InvalidArgumentError(absl::StrCat("bad lexicon label ", l));
      }
      model.lexicon.emplace(token, l == "positive" ? 1 : -1);
    }
    if (absl::Status s = model.Validate(); !s.ok()) return s;
    return model;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed model: ", e.what()));
  }
}

absl::Status SaveModel(const NBModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path.string()));
  out << ModelToJson(model).dump() << '\n';
  out.flush();
  if (!out) return absl::UnavailableError(absl::StrCat("write failed: ", path.string()));
  return absl::OkStatus();
}

absl::StatusOr<NBModel> LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat("not JSON: ", path.string()));
  }
  return ModelFromJson(j);
}

}  // namespace sentiflow::sentiment
