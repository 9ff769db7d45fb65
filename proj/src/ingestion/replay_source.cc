// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/ingestion/replay_source.h"

#include <fstream>

namespace sentiflow::ingestion {

absl::StatusOr<std::unique_ptr<ReplaySource>> ReplaySource::Open(
    const std::filesystem::path& path, int per_call_cap) {
  std::ifstream in(path);
  if (!in) {
    return absl::UnavailableError("cannot read replay file " + path.string());
  }
  std::vector<RawPost> posts;
  size_t malformed = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    auto post = RawPostFromJson(j);
    if (post.ok()) {
      posts.push_back(std::move(*post));
    } else {
      ++malformed;
    }
  }
  if (in.bad()) {
    return absl::UnavailableError("read error in " + path.string());
  }
  return std::unique_ptr<ReplaySource>(new ReplaySource(
      std::move(posts), malformed, std::max(1, per_call_cap)));
}

absl::StatusOr<std::vector<RawPost>> ReplaySource::Fetch(std::string_view) {
  std::lock_guard<std::mutex> lock(mu_);
  const size_t end = std::min(posts_.size(), pos_ + static_cast<size_t>(cap_));
  std::vector<RawPost> out(posts_.begin() + pos_, posts_.begin() + end);
  pos_ = end;
  return out;
}

std::optional<RawPost> ReplaySource::Next() {
  std::lock_guard<std::mutex> lock(mu_);
  if (pos_ >= posts_.size()) return std::nullopt;
  return posts_[pos_++];
}

bool ReplaySource::exhausted() const {
  std::lock_guard<std::mutex> lock(mu_);
  return pos_ >= posts_.size();
}

absl::Status WriteReplayFile(const std::filesystem::path& path,
                             std::span<const RawPost> posts) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) return absl::UnavailableError("cannot write " + path.string());
  for (const RawPost& p : posts) out << RawPostToJson(p).dump() << '\n';
  out.flush();
  if (!out) return absl::UnavailableError("short write to " + path.string());
  return absl::OkStatus();
}

}  // namespace sentiflow::ingestion
