#pragma once

// Relation pairs from a neutral lexicon export: loading, exclusion rules,
// frequency orientation, unrelated-pair sampling and derivation lookup.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat {

// ---------------------------------------------------------------------------
// Flags

enum LexFlag : std::uint8_t {
  kMwe = 1u << 0,
  kAbbrev = 1u << 1,
  kNamedEntity = 1u << 2,
  kLinkingVerb = 1u << 3,
  kAuxVerb = 1u << 4,
  kLightVerb = 1u << 5,
};
using LexFlags = std::uint8_t;

inline constexpr LexFlags kUnitFlags = kMwe | kAbbrev | kNamedEntity;
inline constexpr LexFlags kVerbClassFlags = kLinkingVerb | kAuxVerb | kLightVerb;

inline constexpr std::pair<LexFlag, std::string_view> kFlagNames[] = {
    {kMwe, "MWE"},
    {kAbbrev, "ABBREV"},
    {kNamedEntity, "NAMED_ENTITY"},
    {kLinkingVerb, "LINKING_VERB"},
    {kAuxVerb, "AUX_VERB"},
    {kLightVerb, "LIGHT_VERB"},
};

inline LexFlags parse_flags(std::string_view field, std::uint64_t line = 0) {
  LexFlags flags = 0;
  if (field.empty()) return flags;
  for (auto name : tsv::split(field, ',')) {
    bool known = false;
    for (auto [flag, n] : kFlagNames)
      if (n == name) {
        flags |= flag;
        known = true;
      }
    if (!known) throw ParseError("unknown flag '" + std::string(name) + "'", line);
  }
  return flags;
}

inline std::string format_flags(LexFlags flags) {
  std::string out;
  for (auto [flag, n] : kFlagNames)
    if (flags & flag) {
      if (!out.empty()) out += ',';
      out += n;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon entries

enum class Side : std::uint8_t { A, B };

struct LexiconEntry {
  LemmaKey a;
  LemmaKey b;
  Relation relation = Relation::Syn;
  std::optional<Side> directed_head;  // hypernym / holonym side
  std::optional<std::uint32_t> path_length;
  std::uint64_t wn_freq_a = 0;
  std::uint64_t wn_freq_b = 0;
  LexFlags flags_a = 0;
  LexFlags flags_b = 0;

  bool operator==(const LexiconEntry&) const = default;
};

inline void validate(const LexiconEntry& e, std::uint64_t line = 0) {
  if (e.a.pos != e.b.pos) throw ParseError("pair members differ in part of speech", line);
  if (!is_content(e.a.pos)) throw ParseError("pair part of speech must be NOUN, VERB, ADJ or ADV", line);
  if (e.a.lemma.empty() || e.b.lemma.empty()) throw ParseError("empty lemma", line);
  if (e.a.lemma == e.b.lemma) throw ParseError("pair members are identical", line);
  if (e.relation == Relation::Unr) throw ParseError("UNR is not a lexicon relation", line);
  if (e.path_length.has_value() != (e.relation == Relation::Hyp))
    throw ParseError("path_length must be present exactly for HYP entries", line);
  if (e.directed_head && !is_directed(e.relation))
    throw ParseError("directed_head is only meaningful for HYP and HOL", line);
}

/// Lexicon pair file: `lemma_a pos lemma_b relation directed_head path_length
/// wn_freq_a wn_freq_b flags_a flags_b`; empty field = absent. An optional
/// header line starting with `lemma_a` and `#` comment lines are skipped.
inline std::vector<LexiconEntry> read_lexicon(std::istream& in) {
  std::vector<LexiconEntry> out;
  tsv::for_each_row(in, "lemma_a", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 10)
      throw ParseError("lexicon row needs 10 columns, found " + std::to_string(f.size()), line);
    auto pos = parse_coarse_pos(f[1]);
    if (!pos) throw ParseError("unknown part of speech '" + std::string(f[1]) + "'", line);
    auto rel = parse_relation(f[3]);
    if (!rel) throw ParseError("unknown relation '" + std::string(f[3]) + "'", line);
    LexiconEntry e;
    e.a = {std::string(f[0]), *pos};
    e.b = {std::string(f[2]), *pos};
    e.relation = *rel;
    if (f[4] == "a") e.directed_head = Side::A;
    else if (f[4] == "b") e.directed_head = Side::B;
    else if (!f[4].empty()) throw ParseError("directed_head must be 'a', 'b' or empty", line);
    if (!f[5].empty())
      e.path_length = static_cast<std::uint32_t>(tsv::parse_uint(f[5], line, "path_length"));
    e.wn_freq_a = tsv::parse_uint(f[6], line, "wn_freq_a");
    e.wn_freq_b = tsv::parse_uint(f[7], line, "wn_freq_b");
    e.flags_a = parse_flags(f[8], line);
    e.flags_b = parse_flags(f[9], line);
    validate(e, line);
    out.push_back(std::move(e));
  });
  return out;
}

inline std::vector<LexiconEntry> load_lexicon(const std::string& path) {
  auto in = tsv::open_in(path);
  return read_lexicon(in);
}

// ---------------------------------------------------------------------------
// Verb classes (linking / auxiliary / light verbs)

/// lemma -> verb-class flags.
using VerbClasses = std::map<std::string, LexFlags, std::less<>>;

/// Word list: `lemma<TAB>class`, class in {LINKING, AUX, LIGHT}; a lemma may
/// appear under several classes.
inline VerbClasses read_verb_classes(std::istream& in) {
  VerbClasses out;
  tsv::for_each_row(in, "lemma", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 2) throw ParseError("verb class row needs 2 columns", line);
    LexFlags flag = 0;
    if (f[1] == "LINKING") flag = kLinkingVerb;
    else if (f[1] == "AUX") flag = kAuxVerb;
    else if (f[1] == "LIGHT") flag = kLightVerb;
    else throw ParseError("unknown verb class '" + std::string(f[1]) + "'", line);
    out[std::string(f[0])] |= flag;
  });
  return out;
}

inline VerbClasses load_verb_classes(const std::string& path) {
  auto in = tsv::open_in(path);
  return read_verb_classes(in);
}

/// The list shipped as data/verb_classes.tsv.
inline VerbClasses default_verb_classes() {
  static constexpr std::pair<std::string_view, LexFlags> kList[] = {
      {"be", kLinkingVerb | kAuxVerb}, {"seem", kLinkingVerb},   {"become", kLinkingVerb},
      {"appear", kLinkingVerb},        {"remain", kLinkingVerb}, {"stay", kLinkingVerb},
      {"look", kLinkingVerb},          {"sound", kLinkingVerb},  {"feel", kLinkingVerb},
      {"taste", kLinkingVerb},         {"smell", kLinkingVerb},  {"grow", kLinkingVerb},
      {"prove", kLinkingVerb},         {"turn", kLinkingVerb},   {"get", kLinkingVerb | kLightVerb},
      {"have", kAuxVerb | kLightVerb}, {"do", kAuxVerb | kLightVerb},
      {"will", kAuxVerb},              {"shall", kAuxVerb},      {"would", kAuxVerb},
      {"should", kAuxVerb},            {"can", kAuxVerb},        {"could", kAuxVerb},
      {"may", kAuxVerb},               {"might", kAuxVerb},      {"must", kAuxVerb},
      {"ought", kAuxVerb},             {"make", kLightVerb},     {"take", kLightVerb},
      {"give", kLightVerb},            {"go", kLightVerb},       {"put", kLightVerb},
  };
  VerbClasses out;
  for (auto [lemma, flags] : kList) out[std::string(lemma)] |= flags;
  return out;
}

inline void write_verb_classes(std::ostream& out, const VerbClasses& classes) {
  out << "lemma\tclass\n";
  for (const auto& [lemma, flags] : classes) {
    if (flags & kLinkingVerb) out << lemma << "\tLINKING\n";
    if (flags & kAuxVerb) out << lemma << "\tAUX\n";
    if (flags & kLightVerb) out << lemma << "\tLIGHT\n";
  }
}

/// Adds verb-class flags to VERB sides whose lemma is listed.
inline void apply_verb_classes(std::vector<LexiconEntry>& entries, const VerbClasses& classes) {
  for (auto& e : entries) {
    if (e.a.pos != Pos::Verb) continue;
    if (auto it = classes.find(e.a.lemma); it != classes.end()) e.flags_a |= it->second;
    if (auto it = classes.find(e.b.lemma); it != classes.end()) e.flags_b |= it->second;
  }
}

// ---------------------------------------------------------------------------
// Per-lemma metadata (used to screen unrelated candidates)

struct LemmaInfo {
  std::uint64_t wn_freq = 0;
  LexFlags flags = 0;
};

using LemmaInfoTable = std::unordered_map<LemmaKey, LemmaInfo, LemmaKeyHash>;

/// Collects per-lemma frequency (max) and flags (union) from lexicon entries.
inline void add_lemma_info(LemmaInfoTable& table, const std::vector<LexiconEntry>& entries) {
  auto add = [&](const LemmaKey& k, std::uint64_t freq, LexFlags flags) {
    auto& info = table[k];
    info.wn_freq = std::max(info.wn_freq, freq);
    info.flags |= flags;
  };
  for (const auto& e : entries) {
    add(e.a, e.wn_freq_a, e.flags_a);
    add(e.b, e.wn_freq_b, e.flags_b);
  }
}

/// Vocabulary file `lemma pos wn_freq flags` for lemmas outside any relation.
inline void read_lemma_info(std::istream& in, LemmaInfoTable& table) {
  tsv::for_each_row(in, "lemma", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 4) throw ParseError("lemma row needs 4 columns", line);
    auto pos = parse_coarse_pos(f[1]);
    if (!pos || !is_content(*pos)) throw ParseError("invalid part of speech '" + std::string(f[1]) + "'", line);
    auto& info = table[LemmaKey{std::string(f[0]), *pos}];
    info.wn_freq = std::max(info.wn_freq, tsv::parse_uint(f[2], line, "wn_freq"));
    info.flags |= parse_flags(f[3], line);
  });
}

inline void apply_verb_classes(LemmaInfoTable& table, const VerbClasses& classes) {
  for (auto& [key, info] : table)
    if (key.pos == Pos::Verb)
      if (auto it = classes.find(key.lemma); it != classes.end()) info.flags |= it->second;
}

/// Lemma-level form of exclusion rules 1, 2 and 4.
inline bool lemma_eligible(const LemmaKey& key, const LemmaInfo& info) {
  if (info.flags & kUnitFlags) return false;
  if (info.wn_freq <= 1) return false;
  if (key.pos == Pos::Verb && (info.flags & kVerbClassFlags)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exclusion rules

struct FilterReport {
  std::size_t input = 0;
  std::size_t kept = 0;
  /// Entries removed by rule 1..5 (index 0..4); each entry counts once,
  /// under the first rule that removes it.
  std::array<std::size_t, 5> excluded{};
};

struct FilterResult {
  std::vector<LexiconEntry> kept;
  FilterReport report;
};

inline constexpr std::string_view kRuleNames[5] = {
    "unit (multi-word expression, abbreviation, named entity)",
    "lexicon frequency zero or one",
    "multiple relations between the two lemmas",
    "linking, auxiliary or light verb",
    "hypernym path length above two",
};

/// Applies the five exclusion rules in order.
inline FilterResult filter_pairs(const std::vector<LexiconEntry>& entries) {
  FilterResult result;
  result.report.input = entries.size();

  std::vector<const LexiconEntry*> stage;
  stage.reserve(entries.size());
  for (const auto& e : entries) {
    if ((e.flags_a | e.flags_b) & kUnitFlags) {
      ++result.report.excluded[0];
    } else if (e.wn_freq_a <= 1 || e.wn_freq_b <= 1) {
      ++result.report.excluded[1];
    } else {
      stage.push_back(&e);
    }
  }

  // Rule 3 looks at the unordered pair across all relation labels.
  std::unordered_map<UnorderedPair, std::uint8_t, UnorderedPairHash> labels;
  for (const auto* e : stage) {
    const auto bit = static_cast<std::uint8_t>(1u << static_cast<int>(e->relation));
    labels[UnorderedPair(e->a.pos, e->a.lemma, e->b.lemma)] |= bit;
  }

  for (const auto* e : stage) {
    const auto mask = labels[UnorderedPair(e->a.pos, e->a.lemma, e->b.lemma)];
    if (mask & (mask - 1)) {
      ++result.report.excluded[2];
    } else if (e->a.pos == Pos::Verb && ((e->flags_a | e->flags_b) & kVerbClassFlags)) {
      ++result.report.excluded[3];
    } else if (e->relation == Relation::Hyp && e->path_length.value_or(0) > 2) {
      ++result.report.excluded[4];
    } else {
      result.kept.push_back(*e);
    }
  }
  result.report.kept = result.kept.size();
  return result;
}

inline void write_filter_report(std::ostream& out, const FilterReport& r) {
  out << "rule\tdescription\texcluded\n";
  for (std::size_t i = 0; i < 5; ++i) out << i + 1 << '\t' << kRuleNames[i] << '\t' << r.excluded[i] << '\n';
  out << "input\t\t" << r.input << '\n' << "kept\t\t" << r.kept << '\n';
}

// ---------------------------------------------------------------------------
// Orientation

using LemmaFreqs = std::unordered_map<LemmaKey, std::uint64_t, LemmaKeyHash>;

inline std::uint64_t freq_of(const LemmaFreqs& freqs, const LemmaKey& k) {
  auto it = freqs.find(k);
  return it == freqs.end() ? 0 : it->second;
}

/// True when `a` should be the `w` side: higher sentence frequency, ties
/// broken by lexicographically smaller lemma.
inline bool precedes_in_orientation(const LemmaKey& a, std::uint64_t fa, const LemmaKey& b, std::uint64_t fb) {
  if (fa != fb) return fa > fb;
  return a.lemma < b.lemma;
}

struct OrientResult {
  std::vector<LemmaPair> pairs;  // sorted, unique
  std::size_t dropped_unobserved = 0;
  std::size_t duplicates = 0;
};

inline OrientResult orient_pairs(const std::vector<LexiconEntry>& entries, const LemmaFreqs& freqs) {
  OrientResult result;
  std::set<std::pair<UnorderedPair, Relation>> seen;
  for (const auto& e : entries) {
    const auto fa = freq_of(freqs, e.a), fb = freq_of(freqs, e.b);
    if (fa == 0 || fb == 0) {
      ++result.dropped_unobserved;
      continue;
    }
    if (!seen.emplace(UnorderedPair(e.a.pos, e.a.lemma, e.b.lemma), e.relation).second) {
      ++result.duplicates;
      continue;
    }
    const bool a_first = precedes_in_orientation(e.a, fa, e.b, fb);
    LemmaPair p;
    p.w = a_first ? e.a : e.b;
    p.v = a_first ? e.b : e.a;
    p.relation = e.relation;
    if (e.directed_head) {
      const bool head_is_a = *e.directed_head == Side::A;
      p.head = head_is_a == a_first ? HeadSide::W : HeadSide::V;
    }
    result.pairs.push_back(std::move(p));
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

// ---------------------------------------------------------------------------
// Unrelated control pairs

/// Uniform integer in [0, bound) from a 64-bit engine by rejection
/// ("debiased modulo"), so results do not depend on the standard library's
/// distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("uniform_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

/// Samples min(n, |universe|) pairs uniformly without replacement by partial
/// Fisher-Yates over the sorted candidate universe, with std::mt19937_64
/// seeded by `seed`. Candidates present in `related` are removed first.
inline std::vector<LemmaPair> sample_unrelated(
    std::vector<UnorderedPair> cooccurring,
    const std::unordered_set<UnorderedPair, UnorderedPairHash>& related, std::int64_t n,
    std::uint64_t seed, const LemmaFreqs& freqs) {
  if (n <= 0) throw ArgumentError("sample size must be positive");
  std::sort(cooccurring.begin(), cooccurring.end());
  cooccurring.erase(std::unique(cooccurring.begin(), cooccurring.end()), cooccurring.end());
  std::erase_if(cooccurring, [&](const UnorderedPair& p) { return related.contains(p); });

  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n), cooccurring.size());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + uniform_below(rng, cooccurring.size() - i);
    std::swap(cooccurring[i], cooccurring[j]);
  }

  std::vector<LemmaPair> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const auto& c = cooccurring[i];
    LemmaKey a{c.first, c.pos}, b{c.second, c.pos};
    const bool a_first = precedes_in_orientation(a, freq_of(freqs, a), b, freq_of(freqs, b));
    out.push_back(LemmaPair{a_first ? a : b, a_first ? b : a, Relation::Unr, std::nullopt});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every unordered pair the lexicon relates, under any label.
inline std::unordered_set<UnorderedPair, UnorderedPairHash> related_set(const std::vector<LexiconEntry>& entries) {
  std::unordered_set<UnorderedPair, UnorderedPairHash> out;
  for (const auto& e : entries) out.emplace(e.a.pos, e.a.lemma, e.b.lemma);
  return out;
}

// ---------------------------------------------------------------------------
// Derivations

struct DerivationLink {
  LemmaKey source;
  LemmaKey derived;
};

/// Derivation file: `lemma pos derived_lemma derived_pos`.
inline std::vector<DerivationLink> read_derivations(std::istream& in) {
  std::vector<DerivationLink> out;
  tsv::for_each_row(in, "lemma", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 4) throw ParseError("derivation row needs 4 columns", line);
    auto p1 = parse_coarse_pos(f[1]);
    auto p2 = parse_coarse_pos(f[3]);
    if (!p1 || !p2 || !is_content(*p1) || !is_content(*p2))
      throw ParseError("invalid part of speech in derivation row", line);
    DerivationLink link{{std::string(f[0]), *p1}, {std::string(f[2]), *p2}};
    if (link.source == link.derived) throw ParseError("derivation links a lemma to itself", line);
    out.push_back(std::move(link));
  });
  return out;
}

inline std::vector<DerivationLink> load_derivations(const std::string& path) {
  auto in = tsv::open_in(path);
  return read_derivations(in);
}

struct DerivedPair {
  LemmaPair original;
  LemmaPair derived;

  auto operator<=>(const DerivedPair&) const = default;
};

/// For each pair (w, v), every related and observed pair (w_d, v_d) with w_d
/// derived from w and v_d derived from v. `lexicon` holds the related,
/// corpus-observed pairs (already oriented); the derived relation may differ
/// from the original one.
inline std::vector<DerivedPair> derived_pairs(const std::vector<LemmaPair>& pairs,
                                              const std::vector<DerivationLink>& links,
                                              const std::vector<LemmaPair>& lexicon) {
  std::map<LemmaKey, std::vector<LemmaKey>> by_source;
  for (const auto& l : links) by_source[l.source].push_back(l.derived);
  for (auto& [k, v] : by_source) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  std::unordered_map<UnorderedPair, std::vector<const LemmaPair*>, UnorderedPairHash> index;
  for (const auto& p : lexicon)
    if (p.relation != Relation::Unr) index[UnorderedPair::of(p)].push_back(&p);

  std::vector<DerivedPair> out;
  for (const auto& p : pairs) {
    auto iw = by_source.find(p.w);
    auto iv = by_source.find(p.v);
    if (iw == by_source.end() || iv == by_source.end()) continue;
    for (const auto& wd : iw->second)
      for (const auto& vd : iv->second) {
        if (wd.pos != vd.pos || wd.lemma == vd.lemma) continue;
        auto it = index.find(UnorderedPair(wd.pos, wd.lemma, vd.lemma));
        if (it == index.end()) continue;
        for (const auto* d : it->second) out.push_back({p, *d});
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pair files

inline std::string_view head_field(const std::optional<HeadSide>& h) {
  if (!h) return "";
  return *h == HeadSide::W ? "w" : "v";
}

inline std::optional<HeadSide> parse_head_field(std::string_view s, std::uint64_t line) {
  if (s.empty()) return std::nullopt;
  if (s == "w") return HeadSide::W;
  if (s == "v") return HeadSide::V;
  throw ParseError("head must be 'w', 'v' or empty", line);
}

/// Parses the five leading pair columns `lemma_w lemma_v pos relation head`.
inline LemmaPair parse_pair_fields(const std::vector<std::string_view>& f, std::uint64_t line) {
  if (f.size() < 5) throw ParseError("pair row needs at least 5 columns", line);
  auto pos = parse_coarse_pos(f[2]);
  if (!pos || !is_content(*pos)) throw ParseError("invalid part of speech '" + std::string(f[2]) + "'", line);
  auto rel = parse_relation(f[3]);
  if (!rel) throw ParseError("unknown relation '" + std::string(f[3]) + "'", line);
  LemmaPair p{{std::string(f[0]), *pos}, {std::string(f[1]), *pos}, *rel, parse_head_field(f[4], line)};
  if (p.head && !is_directed(p.relation)) throw ParseError("head given for undirected relation", line);
  return p;
}

inline void write_pair_fields(std::ostream& out, const LemmaPair& p) {
  out << p.w.lemma << '\t' << p.v.lemma << '\t' << to_string(p.pos()) << '\t' << to_string(p.relation) << '\t'
      << head_field(p.head);
}

inline constexpr std::string_view kPairHeader = "lemma_w\tlemma_v\tpos\trelation\thead";

/// Pair list file: `lemma_w lemma_v pos relation head` (head: w, v or empty).
inline void write_pairs(std::ostream& out, const std::vector<LemmaPair>& pairs) {
  out << kPairHeader << '\n';
  for (const auto& p : pairs) {
    write_pair_fields(out, p);
    out << '\n';
  }
}

inline std::vector<LemmaPair> read_pairs(std::istream& in) {
  std::vector<LemmaPair> out;
  tsv::for_each_row(in, "lemma_w", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 5) throw ParseError("pair row needs 5 columns", line);
    out.push_back(parse_pair_fields(f, line));
  });
  return out;
}

inline std::vector<LemmaPair> load_pairs(const std::string& path) {
  auto in = tsv::open_in(path);
  return read_pairs(in);
}

/// Derived pair file: original pair columns followed by derived pair columns.
inline void write_derived_pairs(std::ostream& out, const std::vector<DerivedPair>& pairs) {
  out << kPairHeader << "\tderived_w\tderived_v\tderived_pos\tderived_relation\tderived_head\n";
  for (const auto& d : pairs) {
    write_pair_fields(out, d.original);
    out << '\t';
    write_pair_fields(out, d.derived);
    out << '\n';
  }
}

inline std::vector<DerivedPair> read_derived_pairs(std::istream& in) {
  std::vector<DerivedPair> out;
  tsv::for_each_row(in, "lemma_w", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 10) throw ParseError("derived pair row needs 10 columns", line);
    std::vector<std::string_view> first(f.begin(), f.begin() + 5), second(f.begin() + 5, f.end());
    out.push_back({parse_pair_fields(first, line), parse_pair_fields(second, line)});
  });
  return out;
}

/// Corpus frequency file: `lemma pos sentence_count`.
inline void write_lemma_freqs(std::ostream& out, const LemmaFreqs& freqs) {
  std::vector<std::pair<LemmaKey, std::uint64_t>> rows(freqs.begin(), freqs.end());
  std::sort(rows.begin(), rows.end());
  out << "lemma\tpos\tsentences\n";
  for (const auto& [k, n] : rows) out << k.lemma << '\t' << to_string(k.pos) << '\t' << n << '\n';
}

inline LemmaFreqs read_lemma_freqs(std::istream& in) {
  LemmaFreqs out;
  tsv::for_each_row(in, "lemma", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 3) throw ParseError("frequency row needs 3 columns", line);
    auto pos = parse_coarse_pos(f[1]);
    if (!pos) throw ParseError("invalid part of speech '" + std::string(f[1]) + "'", line);
    out[LemmaKey{std::string(f[0]), *pos}] += tsv::parse_uint(f[2], line, "sentence count");
  });
  return out;
}

}  // namespace coocstat
