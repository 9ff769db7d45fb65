// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storage/post_record.h"

#include <cstring>

namespace sentiflow::storage {
namespace {

constexpr uint8_t kHasAuthor = 1 << 0;
constexpr uint8_t kHasPolarity = 1 << 1;
constexpr uint8_t kHasClassifiedAt = 1 << 2;

void PutFixed32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

void PutFixed64(std::string* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

void PutString(std::string* out, std::string_view s) {
  PutFixed32(out, static_cast<uint32_t>(s.size()));
  out->append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  bool Fixed32(uint32_t* v) {
    if (in_.size() < 4) return false;
    *v = 0;
    for (int i = 0; i < 4; ++i) {
      *v |= static_cast<uint32_t>(static_cast<unsigned char>(in_[i])) << (8 * i);
    }
    in_.remove_prefix(4);
    return true;
  }

  bool Fixed64(uint64_t* v) {
    if (in_.size() < 8) return false;
    *v = 0;
    for (int i = 0; i < 8; ++i) {
      *v |= static_cast<uint64_t>(static_cast<unsigned char>(in_[i])) << (8 * i);
    }
    in_.remove_prefix(8);
    return true;
  }

  bool Byte(uint8_t* v) {
    if (in_.empty()) return false;
    *v = static_cast<uint8_t>(in_[0]);
    in_.remove_prefix(1);
    return true;
  }

  bool String(std::string* s) {
    uint32_t n = 0;
    if (!Fixed32(&n) || in_.size() < n) return false;
    s->assign(in_.data(), n);
    in_.remove_prefix(n);
    return true;
  }

  bool done() const { return in_.empty(); }

 private:
  std::string_view in_;
};

}  // namespace

absl::Status ValidatePostRecord(const PostRecord& r) {
  if (r.post_id.empty()) return absl::InvalidArgumentError("empty post_id");
  if (r.text.empty()) return absl::InvalidArgumentError("empty text");
  if (r.created_at <= 0) {
    return absl::InvalidArgumentError("created_at must be positive");
  }
  if (r.polarity && !IsValidPolarity(*r.polarity)) {
    return absl::InvalidArgumentError("polarity outside {-1, 0, 1}");
  }
  return absl::OkStatus();
}

std::string EncodePostRecord(const PostRecord& r) {
  std::string out;
  out.reserve(64 + r.text.size());
  uint8_t flags = 0;
  if (r.author) flags |= kHasAuthor;
  if (r.polarity) flags |= kHasPolarity;
  if (r.classified_at) flags |= kHasClassifiedAt;
  out.push_back(static_cast<char>(flags));
  PutString(&out, r.post_id);
  PutString(&out, r.source_id);
  PutString(&out, r.text);
  PutString(&out, r.lang);
  PutFixed64(&out, static_cast<uint64_t>(r.created_at));
  if (r.author) PutString(&out, *r.author);
  if (r.polarity) out.push_back(static_cast<char>(*r.polarity));
  if (r.classified_at) PutFixed64(&out, static_cast<uint64_t>(*r.classified_at));
  return out;
}

absl::StatusOr<PostRecord> DecodePostRecord(std::string_view bytes) {
  Reader in(bytes);
  PostRecord r;
  uint8_t flags = 0;
  uint64_t created = 0;
  if (!in.Byte(&flags) || !in.String(&r.post_id) || !in.String(&r.source_id) ||
      !in.String(&r.text) || !in.String(&r.lang) || !in.Fixed64(&created)) {
    return absl::DataLossError("truncated post record");
  }
  r.created_at = static_cast<TimestampMs>(created);
  if (flags & kHasAuthor) {
    std::string author;
    if (!in.String(&author)) return absl::DataLossError("truncated author");
    r.author = std::move(author);
  }
  if (flags & kHasPolarity) {
    uint8_t p = 0;
    if (!in.Byte(&p)) return absl::DataLossError("truncated polarity");
    r.polarity = static_cast<int8_t>(p);
  }
  if (flags & kHasClassifiedAt) {
    uint64_t t = 0;
    if (!in.Fixed64(&t)) return absl::DataLossError("truncated classified_at");
    r.classified_at = static_cast<TimestampMs>(t);
  }
  if (!in.done()) return absl::DataLossError("trailing bytes in post record");
  return r;
}

void to_json(nlohmann::json& j, const PostRecord& r) {
  j = nlohmann::json{{"post_id", r.post_id},
                     {"source_id", r.source_id},
                     {"text", r.text},
                     {"lang", r.lang},
                     {"created_at", r.created_at}};
  if (r.author) j["author"] = *r.author;
  if (r.polarity) j["polarity"] = *r.polarity;
  if (r.classified_at) j["classified_at"] = *r.classified_at;
}

void from_json(const nlohmann::json& j, PostRecord& r) {
  j.at("post_id").get_to(r.post_id);
  r.source_id = j.value("source_id", "");
  j.at("text").get_to(r.text);
  r.lang = j.value("lang", "");
  j.at("created_at").get_to(r.created_at);
  r.author.reset();
  r.polarity.reset();
  r.classified_at.reset();
  if (j.contains("author") && !j["author"].is_null()) {
    r.author = j["author"].get<std::string>();
  }
  if (j.contains("polarity") && !j["polarity"].is_null()) {
    r.polarity = j["polarity"].get<int>();
  }
  if (j.contains("classified_at") && !j["classified_at"].is_null()) {
    r.classified_at = j["classified_at"].get<TimestampMs>();
  }
}

}  // namespace sentiflow::storage
