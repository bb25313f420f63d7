#pragma once

// Seeded synthetic corpora with planted pair classes: independent pairs for
// calibration checks, or classes with chosen strength, order and span.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "coocstat/relation_lexicon.hpp"
#include "coocstat/types.hpp"

namespace coocstat::synthetic {

struct PlantedClass {
  Relation relation = Relation::Syn;
  Pos pos = Pos::Noun;
  std::size_t pairs = 0;
  double p_w = 0.0;      // per-sentence probability of w outside joint placement
  double p_v = 0.0;
  double p_joint = 0.0;  // probability that both are placed together
  double w_first = 0.5;  // joint placement: probability that w precedes v
  /// Joint placement keeps w and v within this many tokens of each other;
  /// absent: both are scattered like independent tokens.
  std::optional<std::uint32_t> max_gap;
  std::string prefix;    // lemma prefix, unique per class
};

struct Spec {
  std::size_t sentences = 1000;
  std::size_t min_len = 8;
  std::size_t max_len = 25;
  std::size_t topics = 20;
  std::size_t topic_vocab = 30;
  std::size_t global_vocab = 200;
  double topic_share = 0.7;  // fraction of filler tokens drawn from the sentence topic
  double punct_rate = 0.1;   // chance of a punctuation token after each filler
  std::uint64_t seed = 1;
  std::vector<PlantedClass> classes;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::vector<LexiconEntry> lexicon;     // one entry per planted related pair, head = a = generator w
  std::vector<LemmaPair> planted;        // generator orientation (w has the larger marginal)
  std::vector<LemmaKey> fillers;         // filler vocabulary
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return uniform_below(engine_, n); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline Corpus generate(const Spec& spec) {
  Rng rng(spec.seed);
  Corpus c;

  // Filler vocabulary: topic words plus a global pool, spread over the four PoS.
  std::vector<std::vector<LemmaKey>> topic_words(spec.topics);
  for (std::size_t t = 0; t < spec.topics; ++t)
    for (std::size_t i = 0; i < spec.topic_vocab; ++i) {
      LemmaKey k{"t" + std::to_string(t) + "w" + std::to_string(i), kContentPos[i % 4]};
      topic_words[t].push_back(k);
      c.fillers.push_back(k);
    }
  std::vector<LemmaKey> global;
  for (std::size_t i = 0; i < spec.global_vocab; ++i) {
    global.push_back({"g" + std::to_string(i), kContentPos[i % 4]});
    c.fillers.push_back(global.back());
  }

  struct Planted {
    LemmaKey w, v;
    const PlantedClass* cls;
  };
  std::vector<Planted> planted;
  for (const auto& cls : spec.classes)
    for (std::size_t i = 0; i < cls.pairs; ++i) {
      const auto id = std::to_string(i);
      Planted p{{cls.prefix + id + "a", cls.pos}, {cls.prefix + id + "b", cls.pos}, &cls};
      planted.push_back(p);
      std::optional<HeadSide> head;
      if (is_directed(cls.relation)) head = HeadSide::W;
      c.planted.push_back({p.w, p.v, cls.relation, head});
      if (cls.relation != Relation::Unr) {
        LexiconEntry e;
        e.a = p.w;
        e.b = p.v;
        e.relation = cls.relation;
        if (is_directed(cls.relation)) e.directed_head = Side::A;
        if (cls.relation == Relation::Hyp) e.path_length = 1;
        e.wn_freq_a = e.wn_freq_b = 10;
        c.lexicon.push_back(e);
      }
    }

  auto token = [](const LemmaKey& k) { return Token{k.lemma, k.lemma, k.pos}; };
  auto filler = [&](std::size_t topic) {
    if (!topic_words.empty() && rng.bernoulli(spec.topic_share))
      return topic_words[topic][rng.below(topic_words[topic].size())];
    return global[rng.below(global.size())];
  };

  c.sentences.reserve(spec.sentences);
  std::vector<std::vector<Token>> segments;
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    const std::size_t topic = spec.topics ? rng.below(spec.topics) : 0;
    const std::size_t len = spec.min_len + rng.below(spec.max_len - spec.min_len + 1);
    segments.clear();
    for (std::size_t i = 0; i < len; ++i) {
      segments.push_back({token(filler(topic))});
      if (rng.bernoulli(spec.punct_rate)) segments.back().push_back(Token{",", ",", Pos::Punct});
    }
    for (const auto& p : planted) {
      const auto& cls = *p.cls;
      if (rng.bernoulli(cls.p_joint)) {
        const bool w_first = rng.bernoulli(cls.w_first);
        if (cls.max_gap) {
          std::vector<Token> chunk{token(w_first ? p.w : p.v)};
          const auto gap = rng.below(*cls.max_gap + 1);
          for (std::uint64_t g = 0; g < gap; ++g) chunk.push_back(token(filler(topic)));
          chunk.push_back(token(w_first ? p.v : p.w));
          segments.push_back(std::move(chunk));
        } else {
          segments.push_back({token(p.w)});
          segments.push_back({token(p.v)});
        }
        continue;
      }
      if (rng.bernoulli(cls.p_w)) segments.push_back({token(p.w)});
      if (rng.bernoulli(cls.p_v)) segments.push_back({token(p.v)});
    }
    for (std::size_t i = segments.size(); i > 1; --i) std::swap(segments[i - 1], segments[rng.below(i)]);
    Sentence sent;
    sent.id = s;
    for (auto& seg : segments)
      for (auto& t : seg) sent.tokens.push_back(std::move(t));
    c.sentences.push_back(std::move(sent));
  }
  return c;
}

/// Corpus where ANT pairs co-occur strongly, mostly with w first and within
/// two tokens, against weaker HOL / HYP / SYN classes with random order and
/// span. Related classes are planted for NOUN, ANT and SYN also for ADJ;
/// fillers are topical so unrelated pairs show a spread of association.
inline Spec planted_preset(std::uint64_t seed, std::size_t sentences = 20000) {
  Spec s;
  s.sentences = sentences;
  s.min_len = 8;
  s.max_len = 22;
  s.topics = 20;
  s.topic_vocab = 30;
  s.global_vocab = 400;
  s.topic_share = 0.4;
  s.seed = seed;
  auto strong = [](Relation r, Pos p, std::string prefix) {
    return PlantedClass{r, p, 40, 0.004, 0.002, 0.004, 0.85, 2u, std::move(prefix)};
  };
  auto weak = [](Relation r, Pos p, std::string prefix) {
    return PlantedClass{r, p, 40, 0.004, 0.002, 0.0012, 0.5, std::nullopt, std::move(prefix)};
  };
  s.classes = {strong(Relation::Ant, Pos::Noun, "nant"), weak(Relation::Hol, Pos::Noun, "nhol"),
               weak(Relation::Hyp, Pos::Noun, "nhyp"),   weak(Relation::Syn, Pos::Noun, "nsyn"),
               strong(Relation::Ant, Pos::Adj, "jant"),  weak(Relation::Syn, Pos::Adj, "jsyn")};
  return s;
}

/// Vocabulary rows (`lemma pos wn_freq flags`) making every filler an
/// eligible unrelated-pair candidate.
inline void write_filler_vocabulary(std::ostream& out, const Corpus& c) {
  out << "lemma\tpos\twn_freq\tflags\n";
  for (const auto& k : c.fillers) out << k.lemma << '\t' << to_string(k.pos) << "\t10\t\n";
}

/// Lexicon file rows for the planted related pairs.
inline void write_lexicon(std::ostream& out, const Corpus& c) {
  out << "lemma_a\tpos\tlemma_b\trelation\tdirected_head\tpath_length\twn_freq_a\twn_freq_b\tflags_a\tflags_b\n";
  for (const auto& e : c.lexicon)
    out << e.a.lemma << '\t' << to_string(e.a.pos) << '\t' << e.b.lemma << '\t' << to_string(e.relation) << '\t'
        << (e.directed_head ? (*e.directed_head == Side::A ? "a" : "b") : "") << '\t'
        << (e.path_length ? std::to_string(*e.path_length) : "") << '\t' << e.wn_freq_a << '\t' << e.wn_freq_b
        << "\t\t\n";
}

}  // namespace coocstat::synthetic
