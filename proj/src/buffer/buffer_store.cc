// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/buffer/buffer_store.h"

#include <fstream>

#include "absl/strings/escaping.h"
#include "json.hpp"

namespace sentiflow::buffer {

BufferStore::BufferStore(const Clock* clock) : clock_(clock) {}
BufferStore::~BufferStore() = default;

BufferStore::NamedSet& BufferStore::GetOrCreate(std::string_view name) {
  {
    std::shared_lock lock(sets_mu_);
    auto it = sets_.find(name);
    if (it != sets_.end()) return *it->second;
  }
  std::unique_lock lock(sets_mu_);
  auto [it, inserted] = sets_.try_emplace(std::string(name));
  if (inserted) it->second = std::make_unique<NamedSet>();
  return *it->second;
}

const BufferStore::NamedSet* BufferStore::Find(std::string_view name) const {
  std::shared_lock lock(sets_mu_);
  auto it = sets_.find(name);
  return it == sets_.end() ? nullptr : it->second.get();
}

void BufferStore::InsertLocked(NamedSet& set, std::string_view key,
                               BufferRecord record) {
  const uint64_t gen = set.next_generation++;
  std::string k(key);
  Entry& e = set.entries[k];
  e.record = std::move(record);
  e.generation = gen;
  e.lease_until = kUnleased;
  set.ready.emplace_back(std::move(k), gen);
}

void BufferStore::ReleaseLeases(NamedSet& set, TimestampMs now) {
  while (!set.leases.empty() && set.leases.top().until <= now) {
    Lease lease = set.leases.top();
    set.leases.pop();
    auto it = set.entries.find(lease.key);
    if (it == set.entries.end()) continue;
    Entry& e = it->second;
    if (e.generation != lease.generation || e.lease_until != lease.until) {
      continue;
    }
    e.lease_until = kUnleased;
    set.ready.emplace_front(std::move(lease.key), lease.generation);
  }
}

bool BufferStore::PutIfAbsent(std::string_view set_name, std::string_view key,
                              std::string value, int64_t ttl_s) {
  NamedSet& set = GetOrCreate(set_name);
  const TimestampMs now = clock_->NowMs();
  std::lock_guard<std::mutex> lock(set.mu);
  auto it = set.entries.find(std::string(key));
  if (it != set.entries.end() && !it->second.record.ExpiredAt(now)) {
    return false;
  }
  InsertLocked(set, key, BufferRecord{std::string(key), std::move(value), now,
                                      ttl_s});
  return true;
}

void BufferStore::Enqueue(std::string_view set_name, std::string_view key,
                          std::string value, int64_t ttl_s) {
  NamedSet& set = GetOrCreate(set_name);
  const TimestampMs now = clock_->NowMs();
  std::lock_guard<std::mutex> lock(set.mu);
  InsertLocked(set, key, BufferRecord{std::string(key), std::move(value), now,
                                      ttl_s});
}

std::vector<BufferRecord> BufferStore::PollBatch(std::string_view set_name,
                                                 size_t max_n,
                                                 int64_t lease_s) {
  std::vector<BufferRecord> out;
  if (max_n == 0) return out;
  NamedSet& set = GetOrCreate(set_name);
  const TimestampMs now = clock_->NowMs();
  const TimestampMs until = now + std::max<int64_t>(0, lease_s) * kMsPerSecond;
  std::lock_guard<std::mutex> lock(set.mu);
  ReleaseLeases(set, now);
  while (out.size() < max_n && !set.ready.empty()) {
    auto [key, gen] = std::move(set.ready.front());
    set.ready.pop_front();
    auto it = set.entries.find(key);
    if (it == set.entries.end()) continue;
    Entry& e = it->second;
    if (e.generation != gen || e.lease_until != kUnleased) continue;
    if (e.record.ExpiredAt(now)) {
      set.entries.erase(it);
      continue;
    }
    e.lease_until = until;
    set.leases.push(Lease{until, key, gen});
    out.push_back(e.record);
  }
  return out;
}

void BufferStore::Ack(std::string_view set_name,
                      std::span<const std::string> keys) {
  NamedSet& set = GetOrCreate(set_name);
  std::lock_guard<std::mutex> lock(set.mu);
  for (const auto& k : keys) set.entries.erase(k);
}

void BufferStore::Ack(std::string_view set_name, std::string_view key) {
  const std::string k(key);
  Ack(set_name, std::span<const std::string>(&k, 1));
}

void BufferStore::Release(std::string_view set_name,
                          std::span<const std::string> keys) {
  NamedSet& set = GetOrCreate(set_name);
  std::lock_guard<std::mutex> lock(set.mu);
  for (const auto& k : keys) {
    auto it = set.entries.find(k);
    if (it == set.entries.end() || it->second.lease_until == kUnleased) continue;
    it->second.lease_until = kUnleased;
    set.ready.emplace_front(k, it->second.generation);
  }
}

size_t BufferStore::SweepExpired(TimestampMs now) {
  std::vector<NamedSet*> sets;
  {
    std::shared_lock lock(sets_mu_);
    for (auto& [name, set] : sets_) sets.push_back(set.get());
  }
  size_t removed = 0;
  for (NamedSet* set : sets) {
    std::lock_guard<std::mutex> lock(set->mu);
    removed += std::erase_if(set->entries, [now](const auto& kv) {
      return kv.second.record.ExpiredAt(now);
    });
  }
  return removed;
}

std::optional<BufferRecord> BufferStore::Get(std::string_view set_name,
                                             std::string_view key) const {
  const NamedSet* set = Find(set_name);
  if (set == nullptr) return std::nullopt;
  const TimestampMs now = clock_->NowMs();
  std::lock_guard<std::mutex> lock(set->mu);
  auto it = set->entries.find(std::string(key));
  if (it == set->entries.end() || it->second.record.ExpiredAt(now)) {
    return std::nullopt;
  }
  return it->second.record;
}

size_t BufferStore::Size(std::string_view set_name) const {
  const NamedSet* set = Find(set_name);
  if (set == nullptr) return 0;
  const TimestampMs now = clock_->NowMs();
  std::lock_guard<std::mutex> lock(set->mu);
  size_t n = 0;
  for (const auto& [k, e] : set->entries) n += !e.record.ExpiredAt(now);
  return n;
}

size_t BufferStore::LeasedCount(std::string_view set_name) const {
  const NamedSet* set = Find(set_name);
  if (set == nullptr) return 0;
  const TimestampMs now = clock_->NowMs();
  std::lock_guard<std::mutex> lock(set->mu);
  size_t n = 0;
  for (const auto& [k, e] : set->entries) {
    n += e.lease_until != kUnleased && e.lease_until > now &&
         !e.record.ExpiredAt(now);
  }
  return n;
}

absl::Status BufferStore::SaveSnapshot(const std::filesystem::path& path) const {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return absl::UnavailableError("cannot write " + tmp);
    const TimestampMs now = clock_->NowMs();
    std::shared_lock sets_lock(sets_mu_);
    for (const auto& [name, set] : sets_) {
      std::lock_guard<std::mutex> lock(set->mu);
      for (const auto& [key, e] : set->entries) {
        if (e.record.ExpiredAt(now)) continue;
        nlohmann::json line = {{"set", name},
                               {"key", key},
                               {"value_b64", absl::Base64Escape(e.record.value)},
                               {"inserted_at", e.record.inserted_at},
                               {"ttl_s", e.record.ttl_s}};
        out << line.dump() << '\n';
      }
    }
    if (!out.flush()) return absl::UnavailableError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) return absl::UnavailableError("rename failed: " + ec.message());
  return absl::OkStatus();
}

absl::Status BufferStore::LoadSnapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError("cannot read " + path.string());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    std::string value;
    if (j.is_discarded() || !j.contains("set") || !j.contains("key") ||
        !absl::Base64Unescape(j.value("value_b64", ""), &value)) {
      return absl::DataLossError("bad snapshot line " + std::to_string(lineno));
    }
    NamedSet& set = GetOrCreate(j["set"].get<std::string>());
    const std::string key = j["key"].get<std::string>();
    std::lock_guard<std::mutex> lock(set.mu);
    InsertLocked(set, key,
                 BufferRecord{key, std::move(value),
                              j.value("inserted_at", TimestampMs{0}),
                              j.value("ttl_s", int64_t{0})});
  }
  return absl::OkStatus();
}

}  // namespace sentiflow::buffer
