// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "sentiflow/common/clock.h"
#include "sentiflow/sentiment/nb_model.h"
#include "sentiflow/sentiment/text.h"

namespace sentiflow::sentiment {

enum class Stage { kSentences, kNormalizer, kTokens, kSplits, kNer, kTagger, kPolarity };
inline constexpr int kNumStages = 7;

std::string_view StageName(Stage stage);

// Intermediate artifacts of one post. Each stage fills in its own fields.
struct PipelineDoc {
  std::string post_id;
  std::string lang;
  TimestampMs created_at = 0;
  std::string text;
  std::vector<std::string> raw_sentences;
  std::vector<Tokens> sentences;
  std::vector<std::vector<TaggedToken>> tagged;
  std::vector<std::string> entities;
  int polarity = 0;
  bool flagged = false;
};

struct TextResources {
  Gazetteer gazetteer;
  TagLexicon tags;
};

// <dir>/gazetteer.tsv and <dir>/tags.tsv.
absl::StatusOr<TextResources> LoadTextResources(const std::filesystem::path& dir);

// Everything one language stream needs. Shared read-only between workers.
struct LanguagePack {
  std::string lang;
  std::shared_ptr<const TextResources> resources;
  std::shared_ptr<const NBModel> model;
};

void RunStage(Stage stage, PipelineDoc& doc, const LanguagePack& pack);

// Called before every stage; may throw to simulate a failing stage.
using StageHook = std::function<void(Stage, PipelineDoc&)>;

// All seven stages in order on the calling thread. A throwing stage marks
// the doc flagged with polarity 0.
void ProcessDoc(PipelineDoc& doc, const LanguagePack& pack,
                const StageHook& hook = nullptr);

// Stages up to and including the tagger.
std::vector<std::vector<TaggedToken>> Preprocess(std::string_view text,
                                                 const TextResources& resources);

int ClassifyText(std::string_view text, const LanguagePack& pack);

struct LabeledDoc {
  std::string text;
  int label = 0;
};

// Lines "label\ttext" with label in {-1, 0, 1}.
absl::StatusOr<std::vector<LabeledDoc>> LoadLabeledTsv(
    const std::filesystem::path& path);

// Runs the corpus through this pipeline's preprocessing and trains on the
// resulting features.
absl::StatusOr<NBModel> TrainNB(std::span<const LabeledDoc> corpus,
                                const TextResources& resources,
                                PolarityLexicon lexicon,
                                std::string version = "1");

struct CvResult {
  double accuracy = 0;
  double majority_baseline = 0;
  int folds = 0;
};

// k-fold cross validation; fold i holds documents with index % k == i.
absl::StatusOr<CvResult> CrossValidate(std::span<const LabeledDoc> corpus,
                                       const TextResources& resources,
                                       const PolarityLexicon& lexicon, int k);

// Loads resources and the lexicon from <data_dir>/<lang>/. The model comes
// from model_path when given, otherwise it is trained on train_path.
absl::StatusOr<LanguagePack> LoadLanguagePack(
    const std::filesystem::path& data_dir, std::string lang,
    const std::filesystem::path& model_path,
    const std::filesystem::path& train_path);

}  // namespace sentiflow::sentiment
