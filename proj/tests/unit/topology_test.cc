// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include <gtest/gtest.h>

#include <map>
#include <stdexcept>

#include "sentiflow/buffer/messages.h"
#include "sentiflow/sentiment/topology.h"
#include "unit/test_util.h"

namespace sentiflow::sentiment {
namespace {

using buffer::kInputSet;
using buffer::kOutputSet;
using std::chrono::seconds;

const std::string kData = SENTIFLOW_DATA_DIR;

const LanguagePack& EnglishPack() {
  static const LanguagePack* pack = new LanguagePack(
      *LoadLanguagePack(kData, "en", "", kData + "/fixtures/labeled_300.tsv"));
  return *pack;
}

LanguagePacks Packs() { return {{"en", EnglishPack()}}; }

const std::vector<std::string> kTexts = {
    "I love the coffee here :)", "This weather is terrible", "The game starts at 5pm",
    "Worst flight ever. Never again!", "@bob thanks, brilliant work", "Reading about the debate",
    "I don't like Mondays", "Santiago de Compostela is lovely", "http://t.co/x is broken"};

void EnqueuePosts(buffer::BufferStore& buffers, int n, std::string lang = "en") {
  for (int i = 0; i < n; ++i) {
    const std::string id = "p-" + std::to_string(i);
    buffers.Enqueue(kInputSet, id,
                    buffer::EncodeInput({id, lang, kTexts[i % kTexts.size()], 1000 + i}));
  }
}

std::map<std::string, buffer::OutputMessage> Outputs(buffer::BufferStore& buffers, int n) {
  std::map<std::string, buffer::OutputMessage> out;
  for (int i = 0; i < n; ++i) {
    const std::string id = "p-" + std::to_string(i);
    if (auto rec = buffers.Get(kOutputSet, id)) out[id] = *buffer::DecodeOutput(rec->value);
  }
  return out;
}

std::map<std::string, int> Polarities(buffer::BufferStore& buffers, int n) {
  std::map<std::string, int> out;
  for (const auto& [id, msg] : Outputs(buffers, n)) out[id] = msg.polarity;
  return out;
}

TEST(HintsTest, ParseAndFormat) {
  auto hints = ParseHints("1-1-1-1-2-6-2");
  ASSERT_TRUE(hints.ok());
  EXPECT_EQ(*hints, (Hints{1, 1, 1, 1, 2, 6, 2}));
  EXPECT_EQ(FormatHints(*hints), "1-1-1-1-2-6-2");
  EXPECT_FALSE(ParseHints("1-1-1").ok());
  EXPECT_FALSE(ParseHints("1-1-1-1-0-1-1").ok());
  EXPECT_FALSE(ParseHints("1-1-x-1-1-1-1").ok());
}

TEST(TopologyTest, RejectsBadConfig) {
  buffer::BufferStore buffers;
  TopologyConfig config;
  config.hints[3] = 0;
  EXPECT_FALSE(Topology::Start(config, Packs(), buffers).ok());
  EXPECT_FALSE(Topology::Start({}, {}, buffers).ok());
}

class TopologyHintsTest : public ::testing::TestWithParam<std::string> {};

TEST_P(TopologyHintsTest, DrainsAndMatchesSerial) {
  constexpr int kPosts = 100;
  buffer::BufferStore serial_buffers;
  EnqueuePosts(serial_buffers, kPosts);
  TopologyConfig config;
  ASSERT_EQ(*DrainSerial(config, Packs(), serial_buffers), static_cast<size_t>(kPosts));
  EXPECT_EQ(serial_buffers.Size(kInputSet), 0u);

  buffer::BufferStore buffers;
  EnqueuePosts(buffers, kPosts);
  config.hints = *ParseHints(GetParam());
  config.queue_capacity = 4;
  config.batch_size = 7;
  auto topology = *Topology::Start(config, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil(
      [&] { return buffers.Size(kOutputSet) == kPosts; }, seconds(30)));
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kInputSet) == 0; }, seconds(5)));
  topology->Stop();
  EXPECT_EQ(topology->stats().classified, static_cast<uint64_t>(kPosts));
  EXPECT_EQ(topology->stats().in_flight, 0u);
  EXPECT_EQ(Polarities(buffers, kPosts), Polarities(serial_buffers, kPosts));
}

INSTANTIATE_TEST_SUITE_P(Hints, TopologyHintsTest,
                         ::testing::Values("1-1-1-1-1-1-1", "1-1-1-1-2-6-2", "3-1-2-1-1-1-4"));

TEST(TopologyTest, ExpectedPolarities) {
  buffer::BufferStore buffers;
  EnqueuePosts(buffers, static_cast<int>(kTexts.size()));
  ASSERT_TRUE(DrainSerial({}, Packs(), buffers).ok());
  auto p = Polarities(buffers, static_cast<int>(kTexts.size()));
  EXPECT_EQ(p["p-0"], 1);
  EXPECT_EQ(p["p-1"], -1);
  EXPECT_EQ(p["p-2"], 0);
  EXPECT_EQ(p["p-3"], -1);
}

TEST(TopologyTest, PoisonedDocIsFlaggedAndAcked) {
  buffer::BufferStore buffers;
  EnqueuePosts(buffers, 20);
  TopologyConfig config;
  config.hints = {1, 1, 1, 1, 2, 2, 1};
  config.stage_hook = [](Stage stage, PipelineDoc& doc) {
    if (stage == Stage::kNer && doc.post_id == "p-13") throw std::runtime_error("poison");
  };
  auto topology = *Topology::Start(config, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kOutputSet) == 20; }, seconds(30)));
  topology->Stop();
  auto out = Outputs(buffers, 20);
  EXPECT_TRUE(out["p-13"].flagged);
  EXPECT_EQ(out["p-13"].polarity, 0);
  EXPECT_FALSE(out["p-0"].flagged);
  EXPECT_EQ(topology->stats().flagged, 1u);
  EXPECT_EQ(topology->stats().classified, 19u);
  EXPECT_EQ(buffers.Size(kInputSet), 0u);

  // The serial path handles the same failure the same way.
  buffer::BufferStore serial;
  EnqueuePosts(serial, 20);
  ASSERT_TRUE(DrainSerial(config, Packs(), serial).ok());
  EXPECT_TRUE(Outputs(serial, 20)["p-13"].flagged);
}

TEST(TopologyTest, MalformedInputIsAckedAndCounted) {
  buffer::BufferStore buffers;
  buffers.Enqueue(kInputSet, "junk", "not json");
  EnqueuePosts(buffers, 3);
  auto topology = *Topology::Start({}, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kOutputSet) == 3; }, seconds(10)));
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kInputSet) == 0; }, seconds(5)));
  topology->Stop();
  EXPECT_EQ(topology->stats().malformed, 1u);
  EXPECT_EQ(topology->stats().polled, 4u);
}

TEST(TopologyTest, KillThenRestartLosesNothing) {
  constexpr int kPosts = 100;
  ManualClock clock(1'000'000);
  buffer::BufferStore buffers(&clock);
  EnqueuePosts(buffers, kPosts);
  TopologyConfig config;
  config.lease_s = 30;
  config.batch_size = 10;
  config.queue_capacity = 2;
  std::atomic<int> seen{0};
  // Slow the tagger so the kill lands with work in flight.
  config.stage_hook = [&](Stage stage, PipelineDoc&) {
    if (stage == Stage::kTagger) {
      ++seen;
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
  };
  auto first = *Topology::Start(config, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return seen.load() >= 20; }, seconds(30)));
  first->Kill();
  const size_t done_before = buffers.Size(kOutputSet);
  EXPECT_LT(done_before, static_cast<size_t>(kPosts));
  EXPECT_GT(buffers.LeasedCount(kInputSet), 0u);
  first.reset();

  // Leased records come back once their lease is over.
  clock.Advance(31 * kMsPerSecond);
  config.stage_hook = nullptr;
  auto second = *Topology::Start(config, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kOutputSet) == kPosts; }, seconds(30)));
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kInputSet) == 0; }, seconds(5)));
  second->Stop();
  EXPECT_EQ(Outputs(buffers, kPosts).size(), static_cast<size_t>(kPosts));

  buffer::BufferStore serial;
  EnqueuePosts(serial, kPosts);
  ASSERT_TRUE(DrainSerial({}, Packs(), serial).ok());
  EXPECT_EQ(Polarities(buffers, kPosts), Polarities(serial, kPosts));
}

TEST(TopologyTest, StopFinishesQueuedWork) {
  buffer::BufferStore buffers;
  EnqueuePosts(buffers, 50);
  TopologyConfig config;
  config.batch_size = 50;
  config.queue_capacity = 64;
  std::atomic<int> entered{0};
  config.stage_hook = [&](Stage stage, PipelineDoc&) {
    if (stage == Stage::kSentences) ++entered;
    std::this_thread::sleep_for(std::chrono::microseconds(200));
  };
  auto topology = *Topology::Start(config, Packs(), buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return entered.load() >= 1; }, seconds(10)));
  topology->Stop();
  const auto stats = topology->stats();
  EXPECT_EQ(stats.in_flight, 0u);
  EXPECT_EQ(stats.classified, stats.polled);
  EXPECT_EQ(buffers.Size(kOutputSet), stats.classified);
}

TEST(TopologyTest, RoutesByLanguageWithFallback) {
  // A second language whose model always says negative.
  NBModel negative;
  negative.priors = {0.98, 0.01, 0.01};
  LanguagePack xx{"xx", EnglishPack().resources, std::make_shared<NBModel>(negative)};
  LanguagePacks packs = {{"en", EnglishPack()}, {"xx", xx}};
  buffer::BufferStore buffers;
  auto put = [&](const std::string& id, const std::string& lang) {
    buffers.Enqueue(kInputSet, id, buffer::EncodeInput({id, lang, "The game starts at 5pm", 1}));
  };
  put("a", "xx");
  put("b", "en");
  put("c", "fr");  // no pack, falls back to en
  auto topology = *Topology::Start({}, packs, buffers);
  ASSERT_TRUE(testing::WaitUntil([&] { return buffers.Size(kOutputSet) == 3; }, seconds(10)));
  topology->Stop();
  auto polarity = [&](const std::string& id) {
    return buffer::DecodeOutput(buffers.Get(kOutputSet, id)->value)->polarity;
  };
  EXPECT_EQ(polarity("a"), -1);
  EXPECT_EQ(polarity("b"), 0);
  EXPECT_EQ(polarity("c"), 0);
}

TEST(BoundedQueueTest, BlocksWhenFullAndDrainsAfterClose) {
  BoundedQueue<int> q(2);
  EXPECT_TRUE(q.Push(1));
  EXPECT_TRUE(q.Push(2));
  std::atomic<bool> pushed{false};
  std::jthread producer([&] {
    q.Push(3);
    pushed = true;
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  EXPECT_FALSE(pushed.load());
  EXPECT_EQ(q.Pop(), 1);
  producer.join();
  EXPECT_TRUE(pushed.load());
  q.Close();
  EXPECT_FALSE(q.Push(4));
  EXPECT_EQ(q.Pop(), 2);
  EXPECT_EQ(q.Pop(), 3);
  EXPECT_EQ(q.Pop(), std::nullopt);
}

TEST(BoundedQueueTest, AbortDropsItems) {
  BoundedQueue<int> q(4);
  q.Push(1);
  q.Abort();
  EXPECT_EQ(q.Pop(), std::nullopt);
}

}  // namespace
}  // namespace sentiflow::sentiment
