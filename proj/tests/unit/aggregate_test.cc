// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/aggregate.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "sentiflow/aggregation/match.h"
#include "sentiflow/aggregation/query.h"
#include "support/oracles.h"

namespace sentiflow::aggregation {
namespace {

using storage::PostRecord;
using storage::PostStore;

using testing::RegexMatch;

const std::vector<std::string> kVocab = {
    "travel", "Travel", "BAN", "ban", "bandana", "banned", "trump", "Trump's",
    "the",    "wall",   "Wall", "new", "york",   "York",   "_ban", "ban_",
    "2017",   "a",      "is",   "no"};
const std::vector<std::string> kSeparators = {" ", " ", " ", ", ", ". ", "! ", "#", "@",
                                              " - ", "'", "\t", "..."};

std::string RandomText(std::mt19937_64& rng, int max_words) {
  std::uniform_int_distribution<int> len(0, max_words);
  std::uniform_int_distribution<size_t> word(0, kVocab.size() - 1);
  std::uniform_int_distribution<size_t> sep(0, kSeparators.size() - 1);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += kSeparators[sep(rng)];
    out += kVocab[word(rng)];
  }
  return out;
}

const std::vector<std::string> kKeywords = {"ban", "travel ban", "Travel Ban", "new york",
                                            "trump", "wall", "the wall", "york ban"};

TEST(MatchTest, Examples) {
  EXPECT_TRUE(Match("Travel ban stays", "travel ban"));
  EXPECT_FALSE(Match("bandana", "ban"));
  EXPECT_TRUE(Match("the TRAVEL, ban!", "travel ban"));
  EXPECT_FALSE(Match("ban travel", "travel ban"));
  EXPECT_FALSE(Match("anything", ""));
  EXPECT_FALSE(Match("anything", " ,. "));
  EXPECT_TRUE(Match("#ban", "ban"));
  EXPECT_FALSE(Match("_ban", "ban"));
}

TEST(MatchTest, TokensSplitOnNonWordBytes) {
  EXPECT_EQ(MatchTokens("Hello, World_1 café!"),
            (std::vector<std::string>{"hello", "world_1", "café"}));
  EXPECT_TRUE(MatchTokens("  ... ").empty());
}

TEST(MatchTest, AgreesWithRegexOracle) {
  std::mt19937_64 rng(7);
  int positives = 0;
  for (int i = 0; i < 5000; ++i) {
    const std::string text = RandomText(rng, 8);
    const std::string& kw = kKeywords[static_cast<size_t>(i) % kKeywords.size()];
    const bool expected = RegexMatch(text, kw);
    positives += expected;
    ASSERT_EQ(Match(text, kw), expected) << "text='" << text << "' kw='" << kw << "'";
  }
  EXPECT_GT(positives, 500);
}

TEST(WindowOfTest, Examples) {
  EXPECT_EQ(*WindowOf(1000, 1000, 5000, 100), 1000);
  EXPECT_EQ(*WindowOf(1100, 1000, 5000, 100), 1100);
  EXPECT_EQ(*WindowOf(1099, 1000, 5000, 100), 1000);
  EXPECT_EQ(WindowOf(999, 1000, 5000, 100).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_EQ(WindowOf(5000, 1000, 5000, 100).status().code(), absl::StatusCode::kOutOfRange);
}

TEST(WindowOfTest, AgreesWithFloorOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const TimestampMs t_start =
        std::uniform_int_distribution<TimestampMs>(0, 2'000'000'000'000)(rng);
    const int64_t window = std::uniform_int_distribution<int64_t>(1, 10'000'000)(rng);
    const int64_t span = std::uniform_int_distribution<int64_t>(window, window * 50)(rng);
    const TimestampMs at =
        std::uniform_int_distribution<TimestampMs>(t_start, t_start + span - 1)(rng);
    const long double k =
        std::floor(static_cast<long double>(at - t_start) / static_cast<long double>(window));
    ASSERT_EQ(*WindowOf(at, t_start, t_start + span, window),
              t_start + static_cast<int64_t>(k) * window);
  }
}

TEST(WindowAggregateTest, ApExample) {
  WindowAggregate w;
  for (int p : {1, 1, 0, -1}) w.tuple.Add(p);
  EXPECT_EQ(w.tuple.polarity_sum, 1);
  EXPECT_EQ(w.tuple.matches, 4);
  EXPECT_EQ(w.tuple.positives, 2);
  EXPECT_EQ(w.tuple.negatives, 1);
  EXPECT_EQ(w.neutral(), 1);
  EXPECT_EQ(*w.ap(), 0.625);
  EXPECT_DOUBLE_EQ(w.pos_ratio() + w.neg_ratio() + w.neutral_ratio(), 1.0);
}

TEST(WindowAggregateTest, ApExtremesAndAbsence) {
  WindowAggregate pos, neg, empty;
  for (int i = 0; i < 3; ++i) {
    pos.tuple.Add(1);
    neg.tuple.Add(-1);
  }
  EXPECT_EQ(*pos.ap(), 1.0);
  EXPECT_EQ(*neg.ap(), 0.0);
  EXPECT_FALSE(empty.ap().has_value());
  EXPECT_FALSE(WindowToJson(empty).contains("ap"));
  EXPECT_EQ(WindowToJson(pos)["ap"], 1.0);
}

TEST(WindowAggregateTest, JsonRoundTrip) {
  WindowAggregate w{12345, {3, 7, 4, 1}};
  auto back = WindowFromJson(WindowToJson(w));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, w);
}

TEST(QueryTest, Validation) {
  Query q{"ban", 0, 1000, "en", 100, QueryMode::kOnDemand};
  EXPECT_TRUE(q.Validate().ok());
  Query bad = q;
  bad.t_end = 0;
  EXPECT_FALSE(bad.Validate().ok());
  bad = q;
  bad.window_ms = 1001;
  EXPECT_FALSE(bad.Validate().ok());
  bad = q;
  bad.window_ms = 0;
  EXPECT_FALSE(bad.Validate().ok());
  bad = q;
  bad.keyword = "  ";
  EXPECT_FALSE(bad.Validate().ok());
  bad = q;
  bad.window_ms = 1000;
  EXPECT_TRUE(bad.Validate().ok());
}

TEST(QueryTest, JsonRoundTripAndDefaults) {
  auto q = QueryFromJson({{"keyword", "ban"}, {"t_start", 1}, {"t_end", 9}, {"window_ms", 2}});
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(q->lang, "en");
  EXPECT_EQ(q->mode, QueryMode::kOnDemand);
  auto back = QueryFromJson(QueryToJson(*q));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(QueryToJson(*back), QueryToJson(*q));
  EXPECT_FALSE(QueryFromJson({{"keyword", "ban"}}).ok());
  EXPECT_FALSE(QueryFromJson(nlohmann::json::array()).ok());
}

struct Dataset {
  std::vector<PostRecord> posts;
};

Dataset RandomDataset(std::mt19937_64& rng, int n, TimestampMs span) {
  Dataset d;
  std::uniform_int_distribution<TimestampMs> at(0, span - 1);
  std::uniform_int_distribution<int> pol(-2, 1);  // -2 means unclassified
  std::bernoulli_distribution spanish(0.2);
  for (int i = 0; i < n; ++i) {
    PostRecord r;
    r.post_id = "p" + std::to_string(i);
    r.source_id = "s" + std::to_string(i);
    r.text = RandomText(rng, 6);
    if (r.text.empty()) r.text = "x";
    r.lang = spanish(rng) ? "es" : "en";
    r.created_at = 1'500'000'000'000 + at(rng);
    const int p = pol(rng);
    if (p >= -1) r.polarity = p;
    d.posts.push_back(std::move(r));
  }
  return d;
}

struct OracleResult {
  std::map<TimestampMs, Tuple> windows;
  Tuple totals;
  int64_t skipped = 0;
};

// Single pass over the plain vector; window found by stepping forward.
OracleResult BruteForce(const std::vector<PostRecord>& posts, const Query& q) {
  OracleResult out;
  for (const PostRecord& r : posts) {
    if (r.created_at < q.t_start || r.created_at >= q.t_end) continue;
    if (!q.lang.empty() && r.lang != q.lang) continue;
    if (!RegexMatch(r.text, q.keyword)) continue;
    if (!r.polarity) {
      ++out.skipped;
      continue;
    }
    TimestampMs w = q.t_start;
    while (w + q.window_ms <= r.created_at) w += q.window_ms;
    Tuple& t = out.windows[w];
    t.polarity_sum += *r.polarity;
    t.matches += 1;
    t.positives += *r.polarity == 1 ? 1 : 0;
    t.negatives += *r.polarity == -1 ? 1 : 0;
    out.totals.polarity_sum += *r.polarity;
    out.totals.matches += 1;
    out.totals.positives += *r.polarity == 1 ? 1 : 0;
    out.totals.negatives += *r.polarity == -1 ? 1 : 0;
  }
  return out;
}

void ExpectEqualsOracle(const AggregateResult& got, const OracleResult& want) {
  ASSERT_EQ(got.windows.size(), want.windows.size());
  size_t i = 0;
  for (const auto& [start, t] : want.windows) {
    const WindowAggregate& w = got.windows[i++];
    ASSERT_EQ(w.window_start, start);
    ASSERT_EQ(w.tuple, t);
    const double ap = (static_cast<double>(t.polarity_sum) / t.matches + 1) / 2;
    ASSERT_NEAR(*w.ap(), ap, 1e-12);
    ASSERT_GE(*w.ap(), 0.0);
    ASSERT_LE(*w.ap(), 1.0);
  }
  ASSERT_EQ(got.totals, want.totals);
  ASSERT_EQ(got.skipped, want.skipped);
}

Query RandomQuery(std::mt19937_64& rng, TimestampMs span) {
  Query q;
  q.keyword = kKeywords[std::uniform_int_distribution<size_t>(0, kKeywords.size() - 1)(rng)];
  const TimestampMs base = 1'500'000'000'000;
  const TimestampMs a = std::uniform_int_distribution<TimestampMs>(-span / 10, span)(rng);
  const TimestampMs b = std::uniform_int_distribution<TimestampMs>(a + 1, span + span / 10)(rng);
  q.t_start = base + a;
  q.t_end = base + b;
  q.window_ms = std::uniform_int_distribution<int64_t>(1, b - a)(rng);
  const int lang = std::uniform_int_distribution<int>(0, 2)(rng);
  q.lang = lang == 0 ? "en" : lang == 1 ? "es" : "";
  return q;
}

TEST(AggregateTest, MatchesBruteForceOnRandomDatasets) {
  std::mt19937_64 rng(20170301);
  for (int round = 0; round < 1000; ++round) {
    const int buckets = std::uniform_int_distribution<int>(1, 8)(rng);
    const TimestampMs span = std::uniform_int_distribution<TimestampMs>(10, 100000)(rng);
    Dataset d = RandomDataset(rng, std::uniform_int_distribution<int>(0, 60)(rng), span);
    auto store = PostStore::InMemory(buckets);
    for (const auto& p : d.posts) ASSERT_TRUE(store->Put(p).ok());
    const Query q = RandomQuery(rng, span);
    auto got = Aggregate(*store, q, {std::uniform_int_distribution<int>(0, 4)(rng)});
    ASSERT_TRUE(got.ok()) << got.status();
    SCOPED_TRACE(round);
    ExpectEqualsOracle(*got, BruteForce(d.posts, q));
  }
}

TEST(AggregateTest, TenThousandPostsMatchOracle) {
  std::mt19937_64 rng(99);
  const TimestampMs span = 3'600'000;
  Dataset d = RandomDataset(rng, 10000, span);
  auto store = PostStore::InMemory(16);
  for (const auto& p : d.posts) ASSERT_TRUE(store->Put(p).ok());
  for (int i = 0; i < 5; ++i) {
    const Query q = RandomQuery(rng, span);
    auto got = Aggregate(*store, q);
    ASSERT_TRUE(got.ok());
    ExpectEqualsOracle(*got, BruteForce(d.posts, q));
  }
}

TEST(AggregateTest, IndependentOfScannerCount) {
  std::mt19937_64 rng(5);
  const TimestampMs span = 600'000;
  Dataset d = RandomDataset(rng, 3000, span);
  auto store = PostStore::InMemory(8);
  for (const auto& p : d.posts) ASSERT_TRUE(store->Put(p).ok());
  const Query q{"ban", 1'500'000'000'000, 1'500'000'000'000 + span, "", 60'000,
                QueryMode::kOnDemand};
  auto reference = Aggregate(*store, q, {1});
  ASSERT_TRUE(reference.ok());
  ASSERT_FALSE(reference->windows.empty());
  for (int scanners : {0, 2, 3, 4, 8, 100}) {
    auto got = Aggregate(*store, q, {scanners});
    ASSERT_TRUE(got.ok());
    EXPECT_EQ(got->windows, reference->windows) << scanners;
    EXPECT_EQ(got->totals, reference->totals);
    EXPECT_EQ(got->skipped, reference->skipped);
  }
}

TEST(AggregateTest, WindowsTileTotals) {
  std::mt19937_64 rng(6);
  Dataset d = RandomDataset(rng, 2000, 100'000);
  auto store = PostStore::InMemory(4);
  for (const auto& p : d.posts) ASSERT_TRUE(store->Put(p).ok());
  const Query q{"travel", 1'500'000'000'000, 1'500'000'000'000 + 100'000, "", 7'000,
                QueryMode::kOnDemand};
  auto got = Aggregate(*store, q);
  ASSERT_TRUE(got.ok());
  Tuple sum;
  TimestampMs prev = q.t_start - 1;
  for (const auto& w : got->windows) {
    EXPECT_GT(w.window_start, prev);
    EXPECT_EQ((w.window_start - q.t_start) % q.window_ms, 0);
    EXPECT_GT(w.tuple.matches, 0);
    EXPECT_LE(w.tuple.positives + w.tuple.negatives, w.tuple.matches);
    prev = w.window_start;
    sum += w.tuple;
  }
  EXPECT_EQ(sum, got->totals);
}

TEST(AggregateTest, SkipsUnclassifiedAndRejectsInvalidQuery) {
  auto store = PostStore::InMemory(2);
  PostRecord a{"a", "a", "travel ban now", "en", 1000, std::nullopt, 1, 1};
  PostRecord b{"b", "b", "Travel ban later", "en", 1500, std::nullopt, std::nullopt,
               std::nullopt};
  PostRecord c{"c", "c", "no travel plans", "en", 1600, std::nullopt, -1, 1};
  for (const auto& r : {a, b, c}) ASSERT_TRUE(store->Put(r).ok());
  auto got = Aggregate(*store, {"travel ban", 0, 10000, "en", 10000, QueryMode::kOnDemand});
  ASSERT_TRUE(got.ok());
  ASSERT_EQ(got->windows.size(), 1u);
  EXPECT_EQ(got->windows[0].tuple, (Tuple{1, 1, 1, 0}));
  EXPECT_EQ(got->skipped, 1);
  EXPECT_EQ(Aggregate(*store, {"ban", 10, 5, "en", 1, QueryMode::kOnDemand}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(AggregateTest, EmptyStoreGivesEmptyResult) {
  auto store = PostStore::InMemory(4);
  auto got = Aggregate(*store, {"ban", 0, 1000, "en", 10, QueryMode::kOnDemand});
  ASSERT_TRUE(got.ok());
  EXPECT_TRUE(got->windows.empty());
  EXPECT_EQ(got->totals, Tuple{});
}

}  // namespace
}  // namespace sentiflow::aggregation
