// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/ingestion/post_source.h"

namespace sentiflow::ingestion {

absl::Status ValidateRawPost(const RawPost& post) {
  if (post.source_id.empty()) return absl::InvalidArgumentError("empty source_id");
  if (post.text.empty()) return absl::InvalidArgumentError("empty text");
  if (post.lang.empty()) return absl::InvalidArgumentError("empty lang");
  if (post.created_at <= 0) {
    return absl::InvalidArgumentError("created_at must be positive");
  }
  return absl::OkStatus();
}

nlohmann::json RawPostToJson(const RawPost& post) {
  nlohmann::json j = {{"source_id", post.source_id},
                      {"text", post.text},
                      {"lang", post.lang},
                      {"created_at", post.created_at}};
  if (post.author) j["author"] = *post.author;
  return j;
}

absl::StatusOr<RawPost> RawPostFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("not an object");
  const auto str = [&j](const char* field) -> const nlohmann::json* {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) return nullptr;
    return &*it;
  };
  const auto* source_id = str("source_id");
  const auto* text = str("text");
  const auto* lang = str("lang");
  auto created = j.find("created_at");
  if (!source_id || !text || !lang || created == j.end() ||
      !created->is_number_integer()) {
    return absl::InvalidArgumentError("missing or mistyped field");
  }
  RawPost post;
  post.source_id = source_id->get<std::string>();
  post.text = text->get<std::string>();
  post.lang = lang->get<std::string>();
  post.created_at = created->get<TimestampMs>();
  if (const auto* author = str("author")) post.author = author->get<std::string>();
  if (absl::Status st = ValidateRawPost(post); !st.ok()) return st;
  return post;
}

}  // namespace sentiflow::ingestion
