#pragma once

// Streaming reader for vertical (one token per line) lemma/PoS-tagged corpora.
//
// Format: UTF-8, `surface<TAB>lemma<TAB>pos` per line, a blank line ends a
// sentence, lines starting with '#' are comments.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat {

inline constexpr std::size_t kDefaultMinSentenceLength = 5;

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline bool starts_with_any(std::string_view tag, std::initializer_list<std::string_view> prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](std::string_view p) { return tag.starts_with(p); });
}

}  // namespace detail

/// Maps a tagset-specific tag onto the coarse tag set. Total and
/// deterministic; anything unrecognised becomes OTHER.
///
/// Recognised inputs (case-insensitive):
///   coarse / UPOS   NOUN VERB AUX ADJ ADV PUNCT; PROPN and the remaining
///                   UPOS tags map to OTHER
///   CLAWS           NN* -> NOUN (NP* proper nouns -> OTHER),
///                   VV* VB* VD* VH* VM* -> VERB, JJ* JK -> ADJ,
///                   RR* RG* RL* RT* -> ADV, Y and punctuation marks -> PUNCT
///   Penn            NN NNS -> NOUN (NNP* -> OTHER), VB* MD -> VERB,
///                   JJ* -> ADJ, RB RBR RBS -> ADV
inline Pos map_pos(std::string_view raw_tag) {
  if (raw_tag.empty()) return Pos::Other;
  const std::string tag = detail::upper(raw_tag);

  if (tag == "NOUN") return Pos::Noun;
  if (tag == "VERB" || tag == "AUX") return Pos::Verb;
  if (tag == "ADJ") return Pos::Adj;
  if (tag == "ADV") return Pos::Adv;
  if (tag == "PUNCT" || tag == "PUNC" || tag == "SENT" || tag == "Y") return Pos::Punct;
  if (tag == "OTHER" || tag == "PROPN" || tag == "ADP" || tag == "DET" || tag == "PRON" ||
      tag == "NUM" || tag == "CCONJ" || tag == "SCONJ" || tag == "PART" || tag == "INTJ" ||
      tag == "SYM" || tag == "X")
    return Pos::Other;

  // Punctuation tags are spelled with punctuation characters (".", ",", "``",
  // "-LRB-"), so a tag that does not start alphanumerically is punctuation.
  if (!std::isalnum(static_cast<unsigned char>(tag[0]))) return Pos::Punct;

  if (detail::starts_with_any(tag, {"NNP", "NP"})) return Pos::Other;
  if (tag.starts_with("NN")) return Pos::Noun;
  if (detail::starts_with_any(tag, {"VV", "VB", "VD", "VH", "VM"}) || tag == "MD") return Pos::Verb;
  if (tag.starts_with("JJ") || tag == "JK") return Pos::Adj;
  if (detail::starts_with_any(tag, {"RR", "RG", "RL", "RT"}) || tag == "RB" || tag == "RBR" ||
      tag == "RBS")
    return Pos::Adv;
  return Pos::Other;
}

/// ASCII case folding; multi-byte UTF-8 sequences pass through unchanged.
inline std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

/// Number of tokens that count toward the sentence-length filter.
inline std::size_t content_length(const Sentence& s) {
  return static_cast<std::size_t>(std::count_if(
      s.tokens.begin(), s.tokens.end(), [](const Token& t) { return t.pos != Pos::Punct; }));
}

struct ReaderOptions {
  std::size_t min_len = kDefaultMinSentenceLength;
  std::uint64_t first_id = 0;      // id assigned to the first yielded sentence
  std::uint64_t first_line = 1;    // line number of the first line in the stream
  std::uint64_t byte_limit = std::numeric_limits<std::uint64_t>::max();
};

/// Single-consumer sequential reader. Yields sentences with at least
/// `min_len` non-punctuation tokens, numbered densely from `first_id`.
class CorpusReader {
 public:
  CorpusReader(std::istream& in, ReaderOptions opts) : in_(in), opts_(opts), line_no_(opts.first_line - 1) {
    if (opts_.min_len < 1) throw ArgumentError("min_len must be >= 1");
  }

  bool next(Sentence& out) {
    while (read_raw(out.tokens)) {
      if (passes_filter(out.tokens)) {
        out.id = opts_.first_id + yielded_++;
        return true;
      }
      ++skipped_;
    }
    return false;
  }

  /// Sentences yielded so far (N once the stream is exhausted).
  std::uint64_t yielded() const noexcept { return yielded_; }
  std::uint64_t skipped() const noexcept { return skipped_; }

 private:
  bool passes_filter(const std::vector<Token>& tokens) const {
    std::size_t content = 0;
    for (const auto& t : tokens)
      if (t.pos != Pos::Punct && ++content >= opts_.min_len) return true;
    return false;
  }

  bool read_raw(std::vector<Token>& tokens) {
    tokens.clear();
    std::string line;
    while (consumed_ < opts_.byte_limit && std::getline(in_, line)) {
      consumed_ += line.size() + 1;
      ++line_no_;
      tsv::strip_cr(line);
      if (line.empty()) {
        if (!tokens.empty()) return true;
        continue;
      }
      if (line[0] == '#') continue;
      tokens.push_back(parse_token(line));
    }
    return !tokens.empty();
  }

  Token parse_token(std::string_view line) const {
    auto fields = tsv::split(line);
    if (fields.size() != 3)
      throw ParseError("expected 3 tab-separated columns, found " + std::to_string(fields.size()),
                       line_no_);
    Token t;
    t.surface = std::string(fields[0]);
    t.lemma = fold_case(fields[1]);
    for (char& c : t.lemma)
      if (std::isspace(static_cast<unsigned char>(c))) c = '_';
    if (t.lemma.empty()) throw ParseError("empty lemma", line_no_);
    t.pos = map_pos(fields[2]);
    return t;
  }

  std::istream& in_;
  ReaderOptions opts_;
  std::uint64_t line_no_;
  std::uint64_t consumed_ = 0;
  std::uint64_t yielded_ = 0;
  std::uint64_t skipped_ = 0;
};

/// Streams every sentence of `path` through `fn`; returns N.
template <class Fn>
std::uint64_t read_corpus(const std::string& path, std::size_t min_len, Fn&& fn) {
  auto in = tsv::open_in(path);
  CorpusReader reader(in, ReaderOptions{.min_len = min_len});
  Sentence s;
  while (reader.next(s)) fn(static_cast<const Sentence&>(s));
  return reader.yielded();
}

inline std::vector<Sentence> load_corpus(const std::string& path, std::size_t min_len) {
  std::vector<Sentence> out;
  read_corpus(path, min_len, [&](const Sentence& s) { out.push_back(s); });
  return out;
}

/// Writes sentences in the vertical format, using coarse tag names.
inline void write_corpus(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens)
      out << t.surface << '\t' << t.lemma << '\t' << to_string(t.pos) << '\n';
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Sharding

/// Half-open byte range of a corpus file starting at a sentence boundary.
struct ByteRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

/// Splits a corpus file into at most `k` byte ranges, each starting at the
/// beginning of a sentence. Empty ranges are dropped.
inline std::vector<ByteRange> split_corpus(const std::string& path, std::size_t k) {
  if (k == 0) throw ArgumentError("shard count must be >= 1");
  const auto size = static_cast<std::uint64_t>(std::filesystem::file_size(path));
  std::vector<std::uint64_t> cuts{0};
  auto in = tsv::open_in(path);
  std::string line;
  for (std::size_t i = 1; i < k; ++i) {
    std::uint64_t target = size * i / k;
    if (target <= cuts.back()) continue;
    in.clear();
    in.seekg(static_cast<std::streamoff>(target));
    std::uint64_t pos = target;
    // The first (possibly partial) line is never a boundary candidate.
    if (!std::getline(in, line)) break;
    pos += line.size() + 1;
    bool found = false;
    while (std::getline(in, line)) {
      pos += line.size() + 1;
      tsv::strip_cr(line);
      if (line.empty()) {
        found = true;
        break;
      }
    }
    if (!found || pos >= size) break;
    if (pos > cuts.back()) cuts.push_back(pos);
  }
  std::vector<ByteRange> ranges;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    std::uint64_t end = i + 1 < cuts.size() ? cuts[i + 1] : size;
    if (end > cuts[i]) ranges.push_back({cuts[i], end});
  }
  if (ranges.empty()) ranges.push_back({0, 0});
  return ranges;
}

/// Number of lines that end before byte offset `offset`.
inline std::uint64_t count_lines_before(const std::string& path, std::uint64_t offset) {
  auto in = tsv::open_in(path);
  std::uint64_t lines = 0;
  std::array<char, 1 << 16> buf{};
  while (offset > 0 && in) {
    auto want = static_cast<std::streamsize>(std::min<std::uint64_t>(buf.size(), offset));
    in.read(buf.data(), want);
    auto got = in.gcount();
    lines += static_cast<std::uint64_t>(std::count(buf.data(), buf.data() + got, '\n'));
    offset -= static_cast<std::uint64_t>(got);
    if (got == 0) break;
  }
  return lines;
}

/// Streams the sentences of one byte range. Ids start at 0 within the shard;
/// parse errors report global line numbers.
template <class Fn>
std::uint64_t read_corpus_range(const std::string& path, ByteRange range, std::size_t min_len,
                                Fn&& fn) {
  auto in = tsv::open_in(path);
  in.seekg(static_cast<std::streamoff>(range.begin));
  CorpusReader reader(in, ReaderOptions{.min_len = min_len, .byte_limit = range.end - range.begin});
  Sentence s;
  try {
    while (reader.next(s)) fn(static_cast<const Sentence&>(s));
  } catch (const ParseError& e) {
    if (range.begin == 0) throw;
    throw ParseError(e.message(), e.line() + count_lines_before(path, range.begin));
  }
  return reader.yielded();
}

}  // namespace coocstat
