#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "coocstat/cooccurrence_index.hpp"
#include "test_util.hpp"

using namespace coocstat;
using testutil::pair;
using testutil::sentence;

namespace {

// Direct definition: scan each sentence for the first w and v token.
ObservationSet naive_count(const std::vector<Sentence>& sentences, const std::vector<LemmaPair>& pairs) {
  ObservationSet out = empty_observations(pairs);
  out.n = sentences.size();
  if (!sentences.empty()) out.ids = IdRange{sentences.front().id, sentences.back().id};
  for (auto& o : out.pairs) {
    for (const auto& s : sentences) {
      std::optional<std::uint32_t> pw, pv;
      for (std::uint32_t i = 0; i < s.tokens.size(); ++i) {
        const auto& t = s.tokens[i];
        if (t.pos != o.pair.pos()) continue;
        if (!pw && t.lemma == o.pair.w.lemma) pw = i;
        if (!pv && t.lemma == o.pair.v.lemma) pv = i;
      }
      if (pw && pv) {
        ++o.table.o_wv;
        o.events.push_back({s.id, *pw, *pv});
      } else if (pw) {
        ++o.table.o_w_notv;
      } else if (pv) {
        ++o.table.o_notw_v;
      } else {
        ++o.table.o_notw_notv;
      }
    }
    o.table.n = sentences.size();
  }
  return out;
}

struct RandomCorpus {
  std::vector<Sentence> sentences;
  std::vector<LemmaPair> pairs;
};

RandomCorpus random_corpus(std::uint64_t seed, std::size_t n_sent, std::size_t n_pairs, std::size_t vocab = 60) {
  std::mt19937_64 rng(seed);
  RandomCorpus c;
  for (std::size_t s = 0; s < n_sent; ++s) {
    Sentence sent;
    sent.id = s;
    const auto len = 1 + rng() % 15;
    for (std::size_t i = 0; i < len; ++i) {
      const auto l = "l" + std::to_string(rng() % vocab);
      const Pos pos = rng() % 10 == 0 ? Pos::Punct : kContentPos[rng() % 2];
      sent.tokens.push_back({l, l, pos});
    }
    c.sentences.push_back(std::move(sent));
  }
  std::set<LemmaPair> pairs;
  while (pairs.size() < n_pairs) {
    const auto a = rng() % vocab, b = rng() % vocab;
    if (a == b) continue;
    pairs.insert(pair("l" + std::to_string(a), "l" + std::to_string(b), kContentPos[rng() % 2]));
  }
  c.pairs.assign(pairs.begin(), pairs.end());
  return c;
}

}  // namespace

TEST(Count, HandBuiltTable) {
  // w in 4 sentences, v in 5, both in 3, ten sentences in total.
  std::vector<Sentence> s;
  for (int i = 0; i < 3; ++i) s.push_back(sentence(i, {"x/NOUN", "w/NOUN", "v/NOUN"}));
  s.push_back(sentence(3, {"w/NOUN", "x/NOUN"}));
  s.push_back(sentence(4, {"v/NOUN"}));
  s.push_back(sentence(5, {"v/NOUN", "x/NOUN"}));
  for (int i = 6; i < 10; ++i) s.push_back(sentence(i, {"x/NOUN"}));
  const std::vector<LemmaPair> pairs{pair("w", "v", Pos::Noun)};
  const auto obs = count(s, pairs);
  EXPECT_EQ(obs.pairs[0].table, (ContingencyTable{3, 1, 2, 4, 10}));
  EXPECT_EQ(obs.n, 10u);
  ASSERT_EQ(obs.pairs[0].events.size(), 3u);
  EXPECT_EQ(obs.pairs[0].events[0], (CooccurrenceEvent{0, 1, 2}));
}

TEST(Count, RepeatedLemmaCountsOnceAtFirstPosition) {
  const std::vector<Sentence> s{sentence(0, {"hot/ADJ", "hot/ADJ", "cold/ADJ"})};
  const std::vector<LemmaPair> pairs{pair("hot", "cold", Pos::Adj)};
  const auto obs = count(s, pairs);
  EXPECT_EQ(obs.pairs[0].table.o_wv, 1u);
  ASSERT_EQ(obs.pairs[0].events.size(), 1u);
  EXPECT_EQ(obs.pairs[0].events[0].pos_w, 0u);
  EXPECT_EQ(obs.pairs[0].events[0].pos_v, 2u);
}

TEST(Count, PartOfSpeechMustMatch) {
  const std::vector<Sentence> s{sentence(0, {"bank/VERB", "the/OTHER", "river/NOUN"})};
  const std::vector<LemmaPair> pairs{pair("bank", "river", Pos::Noun)};
  const auto obs = count(s, pairs);
  EXPECT_EQ(obs.pairs[0].table, (ContingencyTable{0, 0, 1, 0, 1}));
}

TEST(Count, SharedLemmasAcrossPairs) {
  const std::vector<Sentence> s{sentence(0, {"a/NOUN", "b/NOUN", "c/NOUN"}), sentence(1, {"c/NOUN", "a/NOUN"})};
  const std::vector<LemmaPair> pairs{pair("a", "b", Pos::Noun), pair("a", "c", Pos::Noun), pair("c", "b", Pos::Noun)};
  EXPECT_EQ(count(s, pairs), naive_count(s, pairs));
}

TEST(Count, RejectsBadPairLists) {
  const std::vector<Sentence> s{sentence(0, {"a/NOUN"})};
  EXPECT_THROW(count(s, std::vector<LemmaPair>{}), ArgumentError);
  EXPECT_THROW(count(s, std::vector<LemmaPair>{pair("a", "a", Pos::Noun)}), ArgumentError);
  LemmaPair mixed = pair("a", "b", Pos::Noun);
  mixed.v.pos = Pos::Verb;
  EXPECT_THROW(count(s, std::vector<LemmaPair>{mixed}), ArgumentError);
}

TEST(Count, MatchesNaiveDefinition) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = random_corpus(seed, 300, 40, 25);
    const auto obs = count(c.sentences, c.pairs);
    EXPECT_EQ(obs, naive_count(c.sentences, c.pairs)) << "seed " << seed;
    for (const auto& o : obs.pairs) {
      EXPECT_TRUE(o.table.consistent());
      EXPECT_EQ(o.events.size(), o.table.o_wv);
    }
  }
}

TEST(Count, SentenceOrderInvariance) {
  auto c = random_corpus(3, 400, 50, 30);
  const auto a = count(c.sentences, c.pairs);
  std::mt19937_64 rng(3);
  std::shuffle(c.sentences.begin(), c.sentences.end(), rng);
  auto b = count(c.sentences, c.pairs);
  for (auto& o : b.pairs) std::sort(o.events.begin(), o.events.end());
  EXPECT_EQ(a.pairs, b.pairs);
}

TEST(Merge, IdentityAndErrors) {
  const auto c = random_corpus(4, 100, 10);
  const auto x = count(c.sentences, c.pairs);
  EXPECT_EQ(merge(x, empty_observations(c.pairs)), x);
  EXPECT_EQ(merge(empty_observations(c.pairs), x), x);
  EXPECT_THROW(merge(x, x), MergeError);
  auto other = c.pairs;
  other.pop_back();
  EXPECT_THROW(merge(x, empty_observations(other)), MergeError);
}

TEST(Merge, ThreeWayAnyOrderEqualsSinglePass) {
  const auto c = random_corpus(5, 1000, 80);
  const auto whole = count(c.sentences, c.pairs);
  const std::span<const Sentence> all(c.sentences);
  const auto p1 = count(all.subspan(0, 250), c.pairs);
  const auto p2 = count(all.subspan(250, 500), c.pairs);
  const auto p3 = count(all.subspan(750), c.pairs);
  EXPECT_EQ(merge(merge(p1, p2), p3), whole);
  EXPECT_EQ(merge(p3, merge(p1, p2)), whole);
  EXPECT_EQ(merge(merge(p2, p3), p1), whole);
  EXPECT_EQ(merge(p1, merge(p3, p2)), whole);
}

TEST(Merge, RebaseShiftsIds) {
  const std::vector<Sentence> s{sentence(0, {"a/NOUN", "b/NOUN"})};
  const std::vector<LemmaPair> pairs{pair("a", "b", Pos::Noun)};
  auto x = count(s, pairs);
  rebase(x, 10);
  EXPECT_EQ(x.pairs[0].events[0].sentence_id, 10u);
  EXPECT_EQ(x.ids, (IdRange{10, 10}));
}

TEST(CountFile, ShardedEqualsSinglePass) {
  testutil::TempDir dir("count");
  const auto c = random_corpus(6, 2000, 120);
  std::ostringstream body;
  write_corpus(body, c.sentences);
  const auto path = dir.file("c.vrt");
  testutil::write_text(path, body.str());
  const auto single = count_corpus(path, 2, c.pairs, 1, 1);
  EXPECT_EQ(single.pairs, naive_count(load_corpus(path, 2), c.pairs).pairs);
  for (std::size_t k : {2u, 3u, 7u, 16u}) {
    EXPECT_EQ(count_corpus(path, 2, c.pairs, k, 1), single) << "k=" << k;
    EXPECT_EQ(count_corpus(path, 2, c.pairs, k, 4), single) << "k=" << k << " threaded";
  }
}

TEST(CountFile, DumpRoundTrip) {
  testutil::TempDir dir("dump");
  auto c = random_corpus(7, 300, 30);
  c.pairs[0].relation = Relation::Hyp;
  c.pairs[0].head = HeadSide::V;
  const auto obs = count(c.sentences, c.pairs);
  write_observations(dir.path() / "counts", obs);
  EXPECT_EQ(read_observations(dir.path() / "counts"), obs);
}

TEST(Scanner, FrequenciesAndCooccurringPairs) {
  const std::vector<Sentence> s{sentence(0, {"a/NOUN", "b/NOUN", "a/NOUN", "run/VERB"}),
                                sentence(1, {"a/NOUN", "c/NOUN", ",/PUNCT"}), sentence(2, {"b/ADJ", "c/NOUN"})};
  std::unordered_set<LemmaKey, LemmaKeyHash> eligible{{"a", Pos::Noun}, {"b", Pos::Noun}, {"run", Pos::Verb},
                                                      {"b", Pos::Adj}};
  CorpusScanner scanner(&eligible);
  for (const auto& x : s) scanner.add(x);
  const auto f = scanner.freqs();
  EXPECT_EQ(freq_of(f, {"a", Pos::Noun}), 2u);
  EXPECT_EQ(freq_of(f, {"c", Pos::Noun}), 2u);
  EXPECT_EQ(freq_of(f, {"b", Pos::Adj}), 1u);
  EXPECT_EQ(freq_of(f, {",", Pos::Punct}), 0u);
  EXPECT_EQ(scanner.cooccurring_pairs(), (std::vector<UnorderedPair>{{Pos::Noun, "a", "b"}}));
}

TEST(Scanner, ShardedEqualsSinglePass) {
  testutil::TempDir dir("scan");
  const auto c = random_corpus(8, 1500, 1);
  std::ostringstream body;
  write_corpus(body, c.sentences);
  const auto path = dir.file("c.vrt");
  testutil::write_text(path, body.str());
  std::unordered_set<LemmaKey, LemmaKeyHash> eligible;
  for (int i = 0; i < 60; i += 2) eligible.insert({"l" + std::to_string(i), Pos::Noun});
  const auto one = scan_corpus(path, 1, &eligible, 1, 1);
  const auto many = scan_corpus(path, 1, &eligible, 5, 3);
  EXPECT_EQ(one.sentences(), many.sentences());
  EXPECT_EQ(one.freqs(), many.freqs());
  EXPECT_EQ(one.cooccurring_pairs(), many.cooccurring_pairs());
}
