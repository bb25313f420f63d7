#pragma once

// Core value types shared by every stage of the co-occurrence pipeline.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coocstat {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::uint64_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        message_(std::move(what)),
        line_(line) {}
  std::uint64_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::uint64_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A metric was requested on data for which it has no value
/// (zero marginal, no co-occurrence events).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Part of speech

enum class Pos : std::uint8_t { Noun, Verb, Adj, Adv, Other, Punct };

inline constexpr Pos kContentPos[] = {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv};

constexpr bool is_content(Pos p) noexcept {
  return p == Pos::Noun || p == Pos::Verb || p == Pos::Adj || p == Pos::Adv;
}

constexpr std::string_view to_string(Pos p) noexcept {
  switch (p) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
    case Pos::Other: return "OTHER";
    case Pos::Punct: return "PUNCT";
  }
  return "OTHER";
}

/// Parses one of the six coarse tag names exactly (no tagset mapping).
inline std::optional<Pos> parse_coarse_pos(std::string_view s) {
  for (Pos p : {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv, Pos::Other, Pos::Punct})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Corpus units

struct Token {
  std::string surface;
  std::string lemma;  // case-folded, non-empty, no whitespace
  Pos pos = Pos::Other;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::uint64_t id = 0;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

/// A lemma together with its coarse part of speech: the unit of analysis.
struct LemmaKey {
  std::string lemma;
  Pos pos = Pos::Noun;

  auto operator<=>(const LemmaKey& o) const {
    if (auto c = pos <=> o.pos; c != 0) return c;
    return lemma <=> o.lemma;
  }
  bool operator==(const LemmaKey&) const = default;
};

struct LemmaKeyHash {
  std::size_t operator()(const LemmaKey& k) const noexcept {
    return std::hash<std::string>{}(k.lemma) * 31u + static_cast<std::size_t>(k.pos);
  }
};

// ---------------------------------------------------------------------------
// Semantic relations

/// Column order follows the report tables: ANT HOL HYP SYN UNR.
enum class Relation : std::uint8_t { Ant, Hol, Hyp, Syn, Unr };

inline constexpr Relation kAllRelations[] = {Relation::Ant, Relation::Hol, Relation::Hyp,
                                             Relation::Syn, Relation::Unr};

constexpr std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Ant: return "ANT";
    case Relation::Hol: return "HOL";
    case Relation::Hyp: return "HYP";
    case Relation::Syn: return "SYN";
    case Relation::Unr: return "UNR";
  }
  return "UNR";
}

inline std::optional<Relation> parse_relation(std::string_view s) {
  for (Relation r : kAllRelations)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

/// HYP and HOL carry a direction (which side is the hypernym / holonym).
constexpr bool is_directed(Relation r) noexcept {
  return r == Relation::Hyp || r == Relation::Hol;
}

/// Which member of an oriented pair is the hypernym / holonym.
enum class HeadSide : std::uint8_t { W, V };

/// An oriented pair: `w` is the lemma with the larger corpus sentence
/// frequency (ties: lexicographically smaller lemma).
struct LemmaPair {
  LemmaKey w;
  LemmaKey v;
  Relation relation = Relation::Unr;
  std::optional<HeadSide> head;

  Pos pos() const noexcept { return w.pos; }

  auto operator<=>(const LemmaPair& o) const {
    if (auto c = w.pos <=> o.w.pos; c != 0) return c;
    if (auto c = relation <=> o.relation; c != 0) return c;
    if (auto c = w.lemma <=> o.w.lemma; c != 0) return c;
    if (auto c = v.lemma <=> o.v.lemma; c != 0) return c;
    return head <=> o.head;
  }
  bool operator==(const LemmaPair&) const = default;
};

/// Orientation-free identity of a same-PoS lemma pair.
struct UnorderedPair {
  Pos pos = Pos::Noun;
  std::string first;   // lexicographically smaller lemma
  std::string second;

  UnorderedPair() = default;
  UnorderedPair(Pos p, std::string a, std::string b) : pos(p) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
  }
  static UnorderedPair of(const LemmaPair& p) { return {p.pos(), p.w.lemma, p.v.lemma}; }

  auto operator<=>(const UnorderedPair&) const = default;
  bool operator==(const UnorderedPair&) const = default;
};

struct UnorderedPairHash {
  std::size_t operator()(const UnorderedPair& p) const noexcept {
    std::size_t h = std::hash<std::string>{}(p.first);
    h ^= std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 31u + static_cast<std::size_t>(p.pos);
  }
};

}  // namespace coocstat
