// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/sentiment/pipeline.h"

#include <algorithm>
#include <exception>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "sentiflow/common/log.h"

namespace sentiflow::sentiment {

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kSentences: return "sentences";
    case Stage::kNormalizer: return "normalizer";
    case Stage::kTokens: return "tokens";
    case Stage::kSplits: return "splits";
    case Stage::kNer: return "ner";
    case Stage::kTagger: return "tagger";
    case Stage::kPolarity: return "polarity";
  }
  return "unknown";
}

absl::StatusOr<TextResources> LoadTextResources(const std::filesystem::path& dir) {
  auto gazetteer = Gazetteer::Load(dir / "gazetteer.tsv");
  if (!gazetteer.ok()) return gazetteer.status();
  auto tags = TagLexicon::Load(dir / "tags.tsv");
  if (!tags.ok()) return tags.status();
  return TextResources{std::move(*gazetteer), std::move(*tags)};
}

void RunStage(Stage stage, PipelineDoc& doc, const LanguagePack& pack) {
  switch (stage) {
    case Stage::kSentences:
      doc.raw_sentences = SplitSentences(doc.text);
      break;
    case Stage::kNormalizer:
      for (std::string& s : doc.raw_sentences) s = Normalize(s);
      break;
    case Stage::kTokens:
      doc.sentences.clear();
      for (const std::string& s : doc.raw_sentences) {
        doc.sentences.push_back(Tokenize(s));
      }
      break;
    case Stage::kSplits:
      for (Tokens& t : doc.sentences) t = SplitContractions(t);
      break;
    case Stage::kNer:
      doc.entities.clear();
      for (Tokens& t : doc.sentences) {
        t = MergeEntities(t, pack.resources->gazetteer, &doc.entities);
      }
      break;
    case Stage::kTagger:
      doc.tagged.clear();
      for (const Tokens& t : doc.sentences) {
        doc.tagged.push_back(PosTag(t, pack.resources->tags));
      }
      break;
    case Stage::kPolarity:
      doc.polarity =
          Classify(ExtractFeatures(doc.tagged, pack.model->lexicon), *pack.model);
      break;
  }
}

void ProcessDoc(PipelineDoc& doc, const LanguagePack& pack, const StageHook& hook) {
  for (int i = 0; i < kNumStages; ++i) {
    const Stage stage = static_cast<Stage>(i);
    try {
      if (hook) hook(stage, doc);
      RunStage(stage, doc, pack);
    } catch (const std::exception& e) {
      LogEvent(LogLevel::kWarn, "pipeline.stage_failed",
               {{"post_id", doc.post_id}, {"stage", StageName(stage)},
                {"what", e.what()}});
      doc.flagged = true;
      doc.polarity = 0;
      return;
    }
  }
}

std::vector<std::vector<TaggedToken>> Preprocess(std::string_view text,
                                                 const TextResources& resources) {
  std::vector<std::vector<TaggedToken>> out;
  for (const std::string& sentence : SplitSentences(text)) {
    Tokens tokens = MergeEntities(SplitContractions(Tokenize(Normalize(sentence))),
                                  resources.gazetteer);
    out.push_back(PosTag(tokens, resources.tags));
  }
  return out;
}

int ClassifyText(std::string_view text, const LanguagePack& pack) {
  return Classify(
      ExtractFeatures(Preprocess(text, *pack.resources), pack.model->lexicon),
      *pack.model);
}

absl::StatusOr<std::vector<LabeledDoc>> LoadLabeledTsv(
    const std::filesystem::path& path) {
  auto rows = ReadTsv(path);
  if (!rows.ok()) return rows.status();
  std::vector<LabeledDoc> docs;
  docs.reserve(rows->size());
  for (auto& [label, text] : *rows) {
    int value;
    if (!absl::SimpleAtoi(label, &value) || value < -1 || value > 1) {
      return absl::InvalidArgumentError(absl::StrCat("bad label '", label, "'"));
    }
    docs.push_back({std::move(text), value});
  }
  return docs;
}

absl::StatusOr<NBModel> TrainNB(std::span<const LabeledDoc> corpus,
                                const TextResources& resources,
                                PolarityLexicon lexicon, std::string version) {
  std::vector<std::pair<FeatureCounts, int>> examples;
  examples.reserve(corpus.size());
  for (const LabeledDoc& doc : corpus) {
    examples.emplace_back(ExtractFeatures(Preprocess(doc.text, resources), lexicon),
                          doc.label);
  }
  return TrainFromFeatures(examples, std::move(lexicon), std::move(version));
}

absl::StatusOr<CvResult> CrossValidate(std::span<const LabeledDoc> corpus,
                                       const TextResources& resources,
                                       const PolarityLexicon& lexicon, int k) {
  if (k < 2 || static_cast<size_t>(k) > corpus.size()) {
    return absl::InvalidArgumentError("need 2 <= k <= corpus size");
  }
  std::array<int, 3> freq{};
  for (const LabeledDoc& d : corpus) ++freq[ClassIndex(d.label)];
  size_t correct = 0;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<LabeledDoc> train, test;
    for (size_t i = 0; i < corpus.size(); ++i) {
      (static_cast<int>(i % k) == fold ? test : train).push_back(corpus[i]);
    }
    auto model = TrainNB(train, resources, lexicon);
    if (!model.ok()) return model.status();
    for (const LabeledDoc& d : test) {
      const int predicted =
          Classify(ExtractFeatures(Preprocess(d.text, resources), lexicon), *model);
      if (predicted == d.label) ++correct;
    }
  }
  CvResult result;
  result.folds = k;
  result.accuracy = static_cast<double>(correct) / static_cast<double>(corpus.size());
  result.majority_baseline = static_cast<double>(*std::max_element(freq.begin(), freq.end())) /
                             static_cast<double>(corpus.size());
  return result;
}

absl::StatusOr<LanguagePack> LoadLanguagePack(
    const std::filesystem::path& data_dir, std::string lang,
    const std::filesystem::path& model_path,
    const std::filesystem::path& train_path) {
  const std::filesystem::path dir = data_dir / lang;
  auto resources = LoadTextResources(dir);
  if (!resources.ok()) return resources.status();
  auto shared_resources = std::make_shared<const TextResources>(std::move(*resources));
  absl::StatusOr<NBModel> model;
  if (!model_path.empty()) {
    model = LoadModel(model_path);
  } else {
    auto lexicon = LoadPolarityLexicon(dir / "lexicon.tsv");
    if (!lexicon.ok()) return lexicon.status();
    auto corpus = LoadLabeledTsv(train_path);
    if (!corpus.ok()) return corpus.status();
    model = TrainNB(*corpus, *shared_resources, std::move(*lexicon));
  }
  if (!model.ok()) return model.status();
  return LanguagePack{std::move(lang), std::move(shared_resources),
                      std::make_shared<const NBModel>(std::move(*model))};
}

}  // namespace sentiflow::sentiment
