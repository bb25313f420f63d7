#pragma once

// Sentence-level co-occurrence counting for a fixed pair list, with
// shard-parallel execution and exact merging.

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coocstat/corpus_io.hpp"
#include "coocstat/relation_lexicon.hpp"
#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat {

/// Sentence counts for the four events {wv, w only, v only, neither}.
struct ContingencyTable {
  std::uint64_t o_wv = 0;
  std::uint64_t o_w_notv = 0;
  std::uint64_t o_notw_v = 0;
  std::uint64_t o_notw_notv = 0;
  std::uint64_t n = 0;

  /// Builds the table from the joint count and both marginals.
  static ContingencyTable from_marginals(std::uint64_t both, std::uint64_t freq_w, std::uint64_t freq_v,
                                         std::uint64_t n) {
    if (both > freq_w || both > freq_v || freq_w + freq_v - both > n)
      throw ArgumentError("inconsistent marginals for contingency table");
    return {both, freq_w - both, freq_v - both, n - freq_w - freq_v + both, n};
  }

  std::uint64_t freq_w() const noexcept { return o_wv + o_w_notv; }
  std::uint64_t freq_v() const noexcept { return o_wv + o_notw_v; }
  bool consistent() const noexcept { return o_wv + o_w_notv + o_notw_v + o_notw_notv == n; }
  ContingencyTable transposed() const noexcept { return {o_wv, o_notw_v, o_w_notv, o_notw_notv, n}; }

  bool operator==(const ContingencyTable&) const = default;
};

/// First-occurrence token positions of w and v in one shared sentence.
struct CooccurrenceEvent {
  std::uint64_t sentence_id = 0;
  std::uint32_t pos_w = 0;
  std::uint32_t pos_v = 0;

  auto operator<=>(const CooccurrenceEvent&) const = default;
};

struct PairObservations {
  LemmaPair pair;
  ContingencyTable table;
  std::vector<CooccurrenceEvent> events;  // sorted by sentence_id

  bool operator==(const PairObservations&) const = default;
};

struct IdRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;  // inclusive

  bool overlaps(const IdRange& o) const noexcept { return first <= o.last && o.first <= last; }
  bool operator==(const IdRange&) const = default;
};

/// Observations for every pair of one pair list, in pair-list order.
struct ObservationSet {
  std::vector<PairObservations> pairs;
  std::uint64_t n = 0;
  std::optional<IdRange> ids;  // absent when no sentence was seen

  const PairObservations* find(const LemmaPair& p) const {
    for (const auto& o : pairs)
      if (o.pair == p) return &o;
    return nullptr;
  }

  bool operator==(const ObservationSet&) const = default;
};

/// Observation set for `pairs` over zero sentences (the merge identity).
inline ObservationSet empty_observations(std::span<const LemmaPair> pairs) {
  ObservationSet out;
  for (const auto& p : pairs) out.pairs.push_back({p, {}, {}});
  return out;
}

/// Accumulates observations sentence by sentence. Work per sentence is
/// proportional to its length plus the pairs touching its lemmas.
class PairCounter {
 public:
  explicit PairCounter(std::span<const LemmaPair> pairs) : pairs_(pairs.begin(), pairs.end()) {
    freq_w_.assign(pairs_.size(), 0);
    freq_v_.assign(pairs_.size(), 0);
    both_.assign(pairs_.size(), 0);
    events_.resize(pairs_.size());
    for (std::uint32_t i = 0; i < pairs_.size(); ++i) {
      const auto& p = pairs_[i];
      if (p.w.pos != p.v.pos || !is_content(p.w.pos)) throw ArgumentError("pair members must share a content PoS");
      if (p.w.lemma == p.v.lemma) throw ArgumentError("pair members must differ: " + p.w.lemma);
      const auto wid = intern(p.w), vid = intern(p.v);
      roles_[wid].push_back({i, vid, true});
      roles_[vid].push_back({i, wid, false});
    }
    first_pos_.assign(keys_, -1);
  }

  void add(const Sentence& s) {
    touched_.clear();
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      if (!is_content(t.pos)) continue;
      auto it = lemma_ids_.find(t.lemma);
      if (it == lemma_ids_.end()) continue;
      const auto id = it->second[static_cast<std::size_t>(t.pos)];
      if (id < 0 || first_pos_[id] >= 0) continue;
      first_pos_[id] = static_cast<std::int64_t>(i);
      touched_.push_back(id);
    }
    for (auto id : touched_) {
      for (const auto& r : roles_[id]) {
        if (!r.is_w) {
          ++freq_v_[r.pair];
          continue;
        }
        ++freq_w_[r.pair];
        if (first_pos_[r.other] >= 0) {
          ++both_[r.pair];
          events_[r.pair].push_back({s.id, static_cast<std::uint32_t>(first_pos_[id]),
                                     static_cast<std::uint32_t>(first_pos_[r.other])});
        }
      }
    }
    for (auto id : touched_) first_pos_[id] = -1;
    ++n_;
    if (!ids_) ids_ = IdRange{s.id, s.id};
    ids_->first = std::min(ids_->first, s.id);
    ids_->last = std::max(ids_->last, s.id);
  }

  ObservationSet finish() && {
    ObservationSet out;
    out.n = n_;
    out.ids = ids_;
    out.pairs.reserve(pairs_.size());
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      auto& ev = events_[i];
      std::stable_sort(ev.begin(), ev.end(),
                       [](const auto& a, const auto& b) { return a.sentence_id < b.sentence_id; });
      out.pairs.push_back({pairs_[i], ContingencyTable::from_marginals(both_[i], freq_w_[i], freq_v_[i], n_),
                           std::move(ev)});
    }
    return out;
  }

 private:
  struct Role {
    std::uint32_t pair;
    std::int32_t other;  // key id of the partner lemma
    bool is_w;
  };

  std::int32_t intern(const LemmaKey& k) {
    auto& slots = lemma_ids_.try_emplace(k.lemma, std::array<std::int32_t, 4>{-1, -1, -1, -1}).first->second;
    auto& id = slots[static_cast<std::size_t>(k.pos)];
    if (id < 0) {
      id = keys_++;
      roles_.emplace_back();
    }
    return id;
  }

  std::vector<LemmaPair> pairs_;
  std::unordered_map<std::string, std::array<std::int32_t, 4>> lemma_ids_;
  std::int32_t keys_ = 0;
  std::vector<std::vector<Role>> roles_;
  std::vector<std::int64_t> first_pos_;
  std::vector<std::int32_t> touched_;
  std::vector<std::uint64_t> freq_w_, freq_v_, both_;
  std::vector<std::vector<CooccurrenceEvent>> events_;
  std::uint64_t n_ = 0;
  std::optional<IdRange> ids_;
};

/// Counts `pairs` over an in-memory sentence sequence.
template <class Range>
ObservationSet count(const Range& sentences, std::span<const LemmaPair> pairs) {
  if (pairs.empty()) throw ArgumentError("count: pair list is empty");
  PairCounter counter(pairs);
  for (const Sentence& s : sentences) counter.add(s);
  return std::move(counter).finish();
}

/// Shifts every sentence id by `offset`.
inline void rebase(ObservationSet& set, std::uint64_t offset) {
  for (auto& o : set.pairs)
    for (auto& e : o.events) e.sentence_id += offset;
  if (set.ids) {
    set.ids->first += offset;
    set.ids->last += offset;
  }
}

/// Combines observations from disjoint sentence-id ranges of one corpus.
inline ObservationSet merge(const ObservationSet& a, const ObservationSet& b) {
  if (a.pairs.size() != b.pairs.size()) throw MergeError("merge: pair lists differ in length");
  for (std::size_t i = 0; i < a.pairs.size(); ++i)
    if (!(a.pairs[i].pair == b.pairs[i].pair)) throw MergeError("merge: pair lists differ at row " + std::to_string(i));
  if (a.ids && b.ids && a.ids->overlaps(*b.ids)) throw MergeError("merge: overlapping sentence-id ranges");

  ObservationSet out;
  out.n = a.n + b.n;
  if (a.ids && b.ids)
    out.ids = IdRange{std::min(a.ids->first, b.ids->first), std::max(a.ids->last, b.ids->last)};
  else
    out.ids = a.ids ? a.ids : b.ids;
  out.pairs.reserve(a.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    const auto& x = a.pairs[i];
    const auto& y = b.pairs[i];
    PairObservations o{x.pair,
                       {x.table.o_wv + y.table.o_wv, x.table.o_w_notv + y.table.o_w_notv,
                        x.table.o_notw_v + y.table.o_notw_v, x.table.o_notw_notv + y.table.o_notw_notv,
                        x.table.n + y.table.n},
                       {}};
    o.events.reserve(x.events.size() + y.events.size());
    o.events.insert(o.events.end(), x.events.begin(), x.events.end());
    o.events.insert(o.events.end(), y.events.begin(), y.events.end());
    std::stable_sort(o.events.begin(), o.events.end(),
                     [](const auto& p, const auto& q) { return p.sentence_id < q.sentence_id; });
    out.pairs.push_back(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shard-parallel corpus passes

/// Runs one worker per byte range of the corpus file on up to `threads`
/// threads. `make_worker()` creates a fresh accumulator exposing
/// `add(const Sentence&)`. Returns accumulators and sentence counts in file
/// order; shard-local sentence ids start at 0.
template <class MakeWorker>
auto run_sharded(const std::string& path, std::size_t min_len, std::size_t shards, std::size_t threads,
                 MakeWorker&& make_worker) {
  using Worker = decltype(make_worker());
  const auto ranges = split_corpus(path, std::max<std::size_t>(1, shards));
  std::vector<std::optional<Worker>> workers(ranges.size());
  std::vector<std::uint64_t> counts(ranges.size(), 0);
  std::vector<std::exception_ptr> errors(ranges.size());

  std::mutex mu;
  std::size_t next = 0;
  auto loop = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= ranges.size()) return;
        i = next++;
      }
      try {
        Worker w = make_worker();
        counts[i] = read_corpus_range(path, ranges[i], min_len, [&](const Sentence& s) { w.add(s); });
        workers[i].emplace(std::move(w));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, ranges.size());
  if (n_threads == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Worker> out;
  out.reserve(workers.size());
  for (auto& w : workers) out.push_back(std::move(*w));
  return std::pair{std::move(out), std::move(counts)};
}

/// Counts `pairs` over a corpus file split into `shards` byte ranges.
/// Shard results are renumbered to global sentence ids and merged, which
/// yields exactly the single-pass result.
inline ObservationSet count_corpus(const std::string& path, std::size_t min_len, std::span<const LemmaPair> pairs,
                                   std::size_t shards = 1, std::size_t threads = 1) {
  if (pairs.empty()) throw ArgumentError("count: pair list is empty");
  auto [workers, counts] = run_sharded(path, min_len, shards, threads, [&] { return PairCounter(pairs); });
  ObservationSet total = empty_observations(pairs);
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < workers.size(); ++i) {
    auto part = std::move(workers[i]).finish();
    rebase(part, offset);
    offset += counts[i];
    total = merge(total, part);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Lemma frequencies and the unrelated-candidate universe

/// Records sentence frequencies of every content lemma, and (restricted
/// mode) which same-PoS pairs of eligible lemmas co-occur at least once.
/// No positional events are kept.
class CorpusScanner {
 public:
  CorpusScanner() = default;
  explicit CorpusScanner(const std::unordered_set<LemmaKey, LemmaKeyHash>* eligible) : eligible_(eligible) {}

  void add(const Sentence& s) {
    ++n_;
    present_.clear();
    for (const auto& t : s.tokens) {
      if (!is_content(t.pos)) continue;
      const auto id = intern(t.lemma, t.pos);
      if (std::find(present_.begin(), present_.end(), id) == present_.end()) present_.push_back(id);
    }
    for (auto id : present_) ++freq_[id];
    if (!eligible_) return;
    eligible_present_.clear();
    for (auto id : present_)
      if (eligible_flag_[id]) eligible_present_.push_back(id);
    for (std::size_t i = 0; i < eligible_present_.size(); ++i)
      for (std::size_t j = i + 1; j < eligible_present_.size(); ++j) {
        auto a = eligible_present_[i], b = eligible_present_[j];
        if (keys_[a].pos != keys_[b].pos) continue;
        if (a > b) std::swap(a, b);
        pairs_.insert((static_cast<std::uint64_t>(a) << 32) | b);
      }
  }

  std::uint64_t sentences() const noexcept { return n_; }

  LemmaFreqs freqs() const {
    LemmaFreqs out;
    for (std::size_t i = 0; i < keys_.size(); ++i) out[keys_[i]] = freq_[i];
    return out;
  }

  std::vector<UnorderedPair> cooccurring_pairs() const {
    std::vector<UnorderedPair> out;
    out.reserve(pairs_.size());
    for (auto code : pairs_) {
      const auto& a = keys_[code >> 32];
      const auto& b = keys_[code & 0xffffffffu];
      out.emplace_back(a.pos, a.lemma, b.lemma);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Folds another scanner's results into this one.
  void absorb(const CorpusScanner& other) {
    n_ += other.n_;
    std::vector<std::uint32_t> remap(other.keys_.size());
    for (std::size_t i = 0; i < other.keys_.size(); ++i) {
      remap[i] = intern(other.keys_[i].lemma, other.keys_[i].pos);
      freq_[remap[i]] += other.freq_[i];
    }
    for (auto code : other.pairs_) {
      auto a = remap[code >> 32], b = remap[code & 0xffffffffu];
      if (a > b) std::swap(a, b);
      pairs_.insert((static_cast<std::uint64_t>(a) << 32) | b);
    }
  }

 private:
  std::uint32_t intern(const std::string& lemma, Pos pos) {
    auto& slots = ids_.try_emplace(lemma, std::array<std::int64_t, 4>{-1, -1, -1, -1}).first->second;
    auto& id = slots[static_cast<std::size_t>(pos)];
    if (id < 0) {
      id = static_cast<std::int64_t>(keys_.size());
      keys_.push_back({lemma, pos});
      freq_.push_back(0);
      eligible_flag_.push_back(eligible_ && eligible_->contains(keys_.back()));
    }
    return static_cast<std::uint32_t>(id);
  }

  const std::unordered_set<LemmaKey, LemmaKeyHash>* eligible_ = nullptr;
  std::unordered_map<std::string, std::array<std::int64_t, 4>> ids_;
  std::vector<LemmaKey> keys_;
  std::vector<std::uint64_t> freq_;
  std::vector<bool> eligible_flag_;
  std::vector<std::uint32_t> present_, eligible_present_;
  std::unordered_set<std::uint64_t> pairs_;
  std::uint64_t n_ = 0;
};

/// One pass computing lemma sentence frequencies and, when `eligible` is
/// given, the co-occurring eligible same-PoS pairs.
inline CorpusScanner scan_corpus(const std::string& path, std::size_t min_len,
                                 const std::unordered_set<LemmaKey, LemmaKeyHash>* eligible = nullptr,
                                 std::size_t shards = 1, std::size_t threads = 1) {
  auto [workers, counts] = run_sharded(path, min_len, shards, threads, [&] { return CorpusScanner(eligible); });
  CorpusScanner total(eligible);
  for (const auto& w : workers) total.absorb(w);
  return total;
}

// ---------------------------------------------------------------------------
// Dump format: DIR/tables.tsv, DIR/events.tsv, DIR/summary.tsv

inline void write_observations(const std::filesystem::path& dir, const ObservationSet& set) {
  std::filesystem::create_directories(dir);
  {
    auto out = tsv::open_out((dir / "tables.tsv").string());
    out << kPairHeader << "\to_wv\to_w_notv\to_notw_v\to_notw_notv\tn\n";
    for (const auto& o : set.pairs) {
      write_pair_fields(out, o.pair);
      out << '\t' << o.table.o_wv << '\t' << o.table.o_w_notv << '\t' << o.table.o_notw_v << '\t'
          << o.table.o_notw_notv << '\t' << o.table.n << '\n';
    }
  }
  {
    auto out = tsv::open_out((dir / "events.tsv").string());
    out << "pair_index\tsentence_id\tpos_w\tpos_v\n";
    for (std::size_t i = 0; i < set.pairs.size(); ++i)
      for (const auto& e : set.pairs[i].events)
        out << i << '\t' << e.sentence_id << '\t' << e.pos_w << '\t' << e.pos_v << '\n';
  }
  {
    auto out = tsv::open_out((dir / "summary.tsv").string());
    out << "key\tvalue\n" << "n\t" << set.n << '\n' << "pairs\t" << set.pairs.size() << '\n';
    if (set.ids) out << "first_id\t" << set.ids->first << '\n' << "last_id\t" << set.ids->last << '\n';
  }
}

inline ObservationSet read_observations(const std::filesystem::path& dir) {
  ObservationSet set;
  {
    auto in = tsv::open_in((dir / "tables.tsv").string());
    tsv::for_each_row(in, "lemma_w", [&](const auto& f, std::uint64_t line) {
      if (f.size() != 10) throw ParseError("tables.tsv row needs 10 columns", line);
      PairObservations o;
      o.pair = parse_pair_fields(f, line);
      o.table = {tsv::parse_uint(f[5], line, "o_wv"), tsv::parse_uint(f[6], line, "o_w_notv"),
                 tsv::parse_uint(f[7], line, "o_notw_v"), tsv::parse_uint(f[8], line, "o_notw_notv"),
                 tsv::parse_uint(f[9], line, "n")};
      if (!o.table.consistent()) throw ParseError("contingency cells do not sum to n", line);
      set.pairs.push_back(std::move(o));
    });
  }
  {
    auto in = tsv::open_in((dir / "events.tsv").string());
    tsv::for_each_row(in, "pair_index", [&](const auto& f, std::uint64_t line) {
      if (f.size() != 4) throw ParseError("events.tsv row needs 4 columns", line);
      const auto idx = tsv::parse_uint(f[0], line, "pair_index");
      if (idx >= set.pairs.size()) throw ParseError("pair_index out of range", line);
      set.pairs[idx].events.push_back({tsv::parse_uint(f[1], line, "sentence_id"),
                                       static_cast<std::uint32_t>(tsv::parse_uint(f[2], line, "pos_w")),
                                       static_cast<std::uint32_t>(tsv::parse_uint(f[3], line, "pos_v"))});
    });
  }
  {
    auto in = tsv::open_in((dir / "summary.tsv").string());
    std::optional<std::uint64_t> first, last;
    tsv::for_each_row(in, "key", [&](const auto& f, std::uint64_t line) {
      if (f.size() != 2) throw ParseError("summary.tsv row needs 2 columns", line);
      const auto value = tsv::parse_uint(f[1], line, f[0]);
      if (f[0] == "n") set.n = value;
      else if (f[0] == "first_id") first = value;
      else if (f[0] == "last_id") last = value;
    });
    if (first && last) set.ids = IdRange{*first, *last};
  }
  for (const auto& o : set.pairs)
    if (o.events.size() != o.table.o_wv)
      throw ParseError("event count disagrees with o_wv for " + o.pair.w.lemma + "/" + o.pair.v.lemma, 0);
  return set;
}

}  // namespace coocstat
