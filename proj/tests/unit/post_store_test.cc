// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storage/post_store.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <thread>

#include "unit/test_util.h"

namespace sentiflow::storage {
namespace {

PostRecord MakePost(std::string id, TimestampMs created, std::string text = "hello") {
  PostRecord r;
  r.post_id = std::move(id);
  r.source_id = "src-" + r.post_id;
  r.text = std::move(text);
  r.lang = "en";
  r.created_at = created;
  return r;
}

std::vector<PostRecord> BruteForce(const std::vector<PostRecord>& all,
                                   TimestampMs t0, TimestampMs t1) {
  std::vector<PostRecord> out;
  for (const auto& r : all) {
    if (r.created_at >= t0 && r.created_at < t1) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.created_at, a.post_id) < std::tie(b.created_at, b.post_id);
  });
  return out;
}

TEST(PostStoreTest, PutThenGetRoundTrips) {
  auto store = PostStore::InMemory(16);
  PostRecord r = MakePost("p1", 1000);
  r.author = "alice";
  auto key = store->Put(r);
  ASSERT_TRUE(key.ok());
  auto got = store->Get(*key);
  ASSERT_TRUE(got.ok());
  EXPECT_EQ(*got, r);
  EXPECT_EQ(key->bucket, AssignBucket("p1", 16));
}

TEST(PostStoreTest, PutIsIdempotent) {
  auto store = PostStore::InMemory(4);
  ASSERT_TRUE(store->Put(MakePost("p1", 1000)).ok());
  ASSERT_TRUE(store->Put(MakePost("p1", 1000)).ok());
  EXPECT_EQ(store->size(), 1u);
}

TEST(PostStoreTest, PutRejectsInvalidRecords) {
  auto store = PostStore::InMemory(4);
  EXPECT_FALSE(store->Put(MakePost("p1", 0)).ok());
  EXPECT_FALSE(store->Put(MakePost("p1", 10, "")).ok());
  EXPECT_FALSE(store->Put(MakePost("", 10)).ok());
}

TEST(PostStoreTest, ManyPutsFillEveryBucket) {
  auto store = PostStore::InMemory(8);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_TRUE(store->Put(MakePost("n-" + std::to_string(i), 1 + i)).ok());
  }
  for (size_t n : store->bucket_sizes()) EXPECT_GT(n, 0u);
  EXPECT_EQ(store->size(), 10000u);
}

TEST(PostStoreTest, ScanBucketEdgeCases) {
  auto store = PostStore::InMemory(4);
  EXPECT_FALSE((*store->ScanBucket(0, 0, 1000))->Valid());
  ASSERT_TRUE(store->Put(MakePost("p", 500)).ok());
  const int b = AssignBucket("p", 4);
  EXPECT_FALSE((*store->ScanBucket(b, 500, 500))->Valid());
  EXPECT_EQ(store->ScanBucket(b, 10, 5).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(store->ScanBucket(4, 0, 5).ok());
}

TEST(PostStoreTest, ScanBucketIsChronological) {
  auto store = PostStore::InMemory(1);
  for (TimestampMs t : {300, 100, 200}) {
    ASSERT_TRUE(store->Put(MakePost("p" + std::to_string(t), t)).ok());
  }
  auto it = *store->ScanBucket(0, 0, 1000);
  auto rows = Collect(*it);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].created_at, 100);
  EXPECT_EQ(rows[1].created_at, 200);
  EXPECT_EQ(rows[2].created_at, 300);
  EXPECT_EQ(Collect(**store->ScanBucket(0, 100, 300)).size(), 2u);
}

TEST(PostStoreTest, ScanRangeSingleBucketMatchesScanBucket) {
  auto store = PostStore::InMemory(1);
  for (int i = 0; i < 50; ++i) {
    ASSERT_TRUE(store->Put(MakePost("q" + std::to_string(i), 1 + (i * 37) % 101)).ok());
  }
  EXPECT_EQ(Collect(**store->ScanRange(0, 200)),
            Collect(**store->ScanBucket(0, 0, 200)));
}

TEST(PostStoreTest, ScanRangeMatchesBruteForce) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<TimestampMs> ts(1, 5000);
  for (int buckets : {1, 4, 16}) {
    auto store = PostStore::InMemory(buckets);
    std::vector<PostRecord> all;
    for (int i = 0; i < 1000; ++i) {
      all.push_back(MakePost("r" + std::to_string(i), ts(rng)));
      ASSERT_TRUE(store->Put(all.back()).ok());
    }
    for (int q = 0; q < 20; ++q) {
      TimestampMs a = ts(rng), b = ts(rng);
      if (a > b) std::swap(a, b);
      EXPECT_EQ(Collect(**store->ScanRange(a, b)), BruteForce(all, a, b));
    }
    EXPECT_TRUE(Collect(**store->ScanRange(6000, 7000)).empty());
  }
}

TEST(PostStoreTest, UpdatePolarity) {
  auto store = PostStore::InMemory(16);
  PostRecord r = MakePost("p1", 1000);
  RowKey key = *store->Put(r);
  ASSERT_TRUE(store->UpdatePolarity(key, 1, 2000).ok());
  auto got = *store->Get(key);
  EXPECT_EQ(got.polarity, 1);
  EXPECT_EQ(got.classified_at, 2000);
  EXPECT_EQ(got.text, r.text);
  EXPECT_EQ(got.source_id, r.source_id);

  ASSERT_TRUE(store->UpdatePolarity(key, 0, 2100).ok());
  ASSERT_TRUE(store->UpdatePolarity(key, -1, 2200).ok());
  EXPECT_EQ(store->Get(key)->polarity, -1);

  EXPECT_EQ(store->UpdatePolarity(key, 2, 1).code(),
            absl::StatusCode::kInvalidArgument);
  RowKey missing = key;
  missing.post_id = "nope";
  EXPECT_EQ(store->UpdatePolarity(missing, 1, 1).code(),
            absl::StatusCode::kNotFound);
}

TEST(PostStoreTest, FindKeyResolvesPostId) {
  auto store = PostStore::InMemory(8);
  RowKey key = *store->Put(MakePost("abc", 77));
  EXPECT_EQ(*store->FindKey("abc"), key);
  EXPECT_EQ(store->FindKey("zzz").status().code(), absl::StatusCode::kNotFound);
}

TEST(PostStoreTest, SnapshotIsolation) {
  auto store = PostStore::InMemory(1);
  ASSERT_TRUE(store->Put(MakePost("a", 10)).ok());
  auto it = *store->ScanRange(0, 100);
  ASSERT_TRUE(store->Put(MakePost("b", 20)).ok());
  ASSERT_TRUE(store->UpdatePolarity(*store->FindKey("a"), 1, 30).ok());
  auto rows = Collect(*it);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].polarity.has_value());
}

TEST(PostStoreTest, ConcurrentPutsScansAndUpdates) {
  auto store = PostStore::InMemory(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 0; i < 2000; ++i) {
        auto key = store->Put(MakePost("t" + std::to_string(t) + "-" + std::to_string(i), 1 + i));
        ASSERT_TRUE(key.ok());
        if (i % 3 == 0) ASSERT_TRUE(store->UpdatePolarity(*key, i % 3 - 1, 5).ok());
      }
    });
  }
  threads.emplace_back([&store] {
    for (int i = 0; i < 50; ++i) {
      auto rows = Collect(**store->ScanRange(0, 3000));
      EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](auto& a, auto& b) {
        return a.created_at < b.created_at;
      }));
    }
  });
  for (auto& th : threads) th.join();
  EXPECT_EQ(store->size(), 8000u);
}

TEST(PostStoreDurabilityTest, ReopenReturnsFlushedPuts) {
  testing::TempDir dir;
  StorageConfig config{4, dir.path(), SyncPolicy::Never(), 4096};
  std::vector<PostRecord> all;
  {
    auto store = *PostStore::Open(config);
    for (int i = 0; i < 500; ++i) {
      all.push_back(MakePost("d" + std::to_string(i), 1 + i, "text " + std::to_string(i)));
      ASSERT_TRUE(store->Put(all.back()).ok());
    }
    ASSERT_TRUE(store->UpdatePolarity(*store->FindKey("d7"), -1, 99).ok());
    ASSERT_TRUE(store->Flush().ok());
  }
  auto reopened = PostStore::Open(config);
  ASSERT_TRUE(reopened.ok()) << reopened.status();
  EXPECT_EQ((*reopened)->size(), 500u);
  all[7].polarity = -1;
  all[7].classified_at = 99;
  EXPECT_EQ(Collect(**(*reopened)->ScanRange(0, 10000)), BruteForce(all, 0, 10000));
}

TEST(PostStoreDurabilityTest, BucketCountIsFixed) {
  testing::TempDir dir;
  { auto store = *PostStore::Open({4, dir.path(), SyncPolicy::Always(), 1 << 20}); }
  auto st = PostStore::Open({8, dir.path(), SyncPolicy::Always(), 1 << 20});
  EXPECT_EQ(st.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(PostStoreDurabilityTest, TornTailIsTruncated) {
  testing::TempDir dir;
  StorageConfig config{2, dir.path(), SyncPolicy::Always(), 1 << 20};
  std::string segment;
  {
    auto store = *PostStore::Open(config);
    ASSERT_TRUE(store->Put(MakePost("x", 5)).ok());
    ASSERT_TRUE(store->Put(MakePost("y", 6)).ok());
  }
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    if (e.path().extension() == ".seg") segment = e.path();
  }
  ASSERT_FALSE(segment.empty());
  const auto size = std::filesystem::file_size(segment);
  std::filesystem::resize_file(segment, size - 3);
  auto store = *PostStore::Open(config);
  EXPECT_EQ(store->size(), 1u);
  ASSERT_TRUE(store->Put(MakePost("z", 7)).ok());
  store.reset();
  EXPECT_EQ((*PostStore::Open(config))->size(), 2u);
}

TEST(PostStoreDurabilityTest, CompactionKeepsLiveRows) {
  testing::TempDir dir;
  StorageConfig config{4, dir.path(), SyncPolicy::Never(), 2048};
  {
    auto store = *PostStore::Open(config);
    for (int i = 0; i < 200; ++i) {
      auto key = *store->Put(MakePost("c" + std::to_string(i), 10 + i));
      ASSERT_TRUE(store->UpdatePolarity(key, 1, 1).ok());
      ASSERT_TRUE(store->UpdatePolarity(key, -1, 2).ok());
    }
    ASSERT_TRUE(store->Compact().ok());
    ASSERT_TRUE(store->Put(MakePost("after", 5)).ok());
    ASSERT_TRUE(store->Flush().ok());
  }
  auto store = *PostStore::Open(config);
  EXPECT_EQ(store->size(), 201u);
  for (const auto& r : Collect(**store->ScanRange(10, 1000))) {
    EXPECT_EQ(r.polarity, -1);
  }
}

}  // namespace
}  // namespace sentiflow::storage
