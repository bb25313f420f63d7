#pragma once

// Per-pair association metrics: G2 strength, order preference, distance.

#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "coocstat/cooccurrence_index.hpp"
#include "coocstat/relation_lexicon.hpp"
#include "coocstat/stat_tests.hpp"
#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Log-likelihood ratio G2 = 2 sum_c O_c ln(O_c / E_c) over the four
/// sentence events, with E_c from the marginals under independence.
inline double g2_score(const ContingencyTable& t) {
  if (t.n == 0) throw UndefinedMetricError("G2: empty corpus");
  if (!t.consistent()) throw ArgumentError("G2: cells do not sum to n");
  const double n = static_cast<double>(t.n);
  const double fw = static_cast<double>(t.freq_w());
  const double fv = static_cast<double>(t.freq_v());
  if (fw == 0.0 || fv == 0.0) throw UndefinedMetricError("G2: zero marginal");

  auto term = [n](std::uint64_t observed, double row, double col) {
    if (observed == 0) return 0.0;
    const double o = static_cast<double>(observed);
    return o * std::log(o * n / (row * col));
  };
  const double sum = term(t.o_wv, fw, fv) + term(t.o_w_notv, fw, n - fv) + term(t.o_notw_v, n - fw, fv) +
                     term(t.o_notw_notv, n - fw, n - fv);
  return std::max(0.0, 2.0 * sum);
}

/// Significance of a G2 score against chi-square with one degree of freedom.
inline double g2_p_value(double g2) { return stats::chi2_sf(g2, 1.0); }

struct OrderStats {
  double score = 0.0;  // mean of +1/-1 when preferred, else 0
  bool preferred = false;
  double p_value = 1.0;
  std::uint64_t first = 0;  // events where the reference side comes first
  std::uint64_t n = 0;
};

namespace detail {

inline OrderStats order_from_counts(std::uint64_t first, std::uint64_t n, double alpha) {
  if (n == 0) throw UndefinedMetricError("order: no co-occurrence events");
  OrderStats s;
  s.first = first;
  s.n = n;
  s.p_value = stats::binom_test_two_sided(first, n, 0.5).p_value;
  s.preferred = s.p_value < alpha;
  if (s.preferred)
    s.score = (static_cast<double>(first) - static_cast<double>(n - first)) / static_cast<double>(n);
  return s;
}

}  // namespace detail

/// +1 per event where w precedes v, -1 otherwise; a two-sided exact binomial
/// test at `alpha` decides whether the pair has a preferred order.
inline OrderStats order_stats(std::span<const CooccurrenceEvent> events, double alpha = stats::kDefaultAlpha) {
  std::uint64_t first = 0;
  for (const auto& e : events)
    if (e.pos_w < e.pos_v) ++first;
  return detail::order_from_counts(first, events.size(), alpha);
}

/// As order_stats, but +1 means the hypernym / holonym comes first.
inline OrderStats asymmetric_order_stats(std::span<const CooccurrenceEvent> events, const LemmaPair& pair,
                                         double alpha = stats::kDefaultAlpha) {
  if (!pair.head) throw ArgumentError("asymmetric order: pair has no directed head");
  std::uint64_t first = 0;
  for (const auto& e : events) {
    const bool head_first = *pair.head == HeadSide::W ? e.pos_w < e.pos_v : e.pos_v < e.pos_w;
    if (head_first) ++first;
  }
  return detail::order_from_counts(first, events.size(), alpha);
}

/// Mean number of tokens strictly between the two first occurrences.
inline double mean_distance(std::span<const CooccurrenceEvent> events) {
  if (events.empty()) throw UndefinedMetricError("distance: no co-occurrence events");
  double sum = 0.0;
  for (const auto& e : events) {
    const auto gap = e.pos_w > e.pos_v ? e.pos_w - e.pos_v : e.pos_v - e.pos_w;
    sum += static_cast<double>(gap) - 1.0;
  }
  return sum / static_cast<double>(events.size());
}

struct PairStats {
  LemmaPair pair;
  double g2 = 0.0;
  bool g2_significant = false;
  double order_score = 0.0;
  bool has_preferred_order = false;
  double order_p = kNaN;        // NaN when n_cooc = 0
  double mean_distance = kNaN;  // NaN when n_cooc = 0
  std::uint64_t n_cooc = 0;
  // Head-first order for HYP / HOL pairs with a known head.
  double asym_order_score = kNaN;
  bool asym_preferred = false;
  double asym_order_p = kNaN;

  bool operator==(const PairStats&) const = default;
};

inline PairStats compute_pair_stats(const PairObservations& obs, double alpha = stats::kDefaultAlpha) {
  PairStats s;
  s.pair = obs.pair;
  s.g2 = g2_score(obs.table);
  s.g2_significant = g2_p_value(s.g2) < alpha;
  s.n_cooc = obs.table.o_wv;
  if (obs.events.size() != obs.table.o_wv) throw ArgumentError("event list disagrees with o_wv");
  if (obs.events.empty()) return s;
  const auto order = order_stats(obs.events, alpha);
  s.order_score = order.score;
  s.has_preferred_order = order.preferred;
  s.order_p = order.p_value;
  s.mean_distance = mean_distance(obs.events);
  if (obs.pair.head) {
    const auto asym = asymmetric_order_stats(obs.events, obs.pair, alpha);
    s.asym_order_score = asym.score;
    s.asym_preferred = asym.preferred;
    s.asym_order_p = asym.p_value;
  }
  return s;
}

/// Pairs whose lemmas both occur in the corpus (positive marginals).
inline std::vector<PairStats> compute_all_stats(const ObservationSet& set, double alpha = stats::kDefaultAlpha) {
  std::vector<PairStats> out;
  out.reserve(set.pairs.size());
  for (const auto& o : set.pairs)
    if (o.table.freq_w() > 0 && o.table.freq_v() > 0) out.push_back(compute_pair_stats(o, alpha));
  return out;
}

// ---------------------------------------------------------------------------
// Per-pair TSV

inline constexpr std::string_view kStatsHeader =
    "lemma_w\tlemma_v\tpos\trelation\tg2\tg2_sig\torder_score\torder_pref\torder_p\tmean_dist\tn_cooc"
    "\thead\tasym_order_score\tasym_order_pref\tasym_order_p";

inline void write_stats(std::ostream& out, const std::vector<PairStats>& stats) {
  out << kStatsHeader << '\n';
  for (const auto& s : stats) {
    out << s.pair.w.lemma << '\t' << s.pair.v.lemma << '\t' << to_string(s.pair.pos()) << '\t'
        << to_string(s.pair.relation) << '\t' << tsv::fmt(s.g2) << '\t' << (s.g2_significant ? 1 : 0) << '\t'
        << tsv::fmt(s.order_score) << '\t' << (s.has_preferred_order ? 1 : 0) << '\t' << tsv::fmt(s.order_p)
        << '\t' << tsv::fmt(s.mean_distance) << '\t' << s.n_cooc << '\t' << head_field(s.pair.head) << '\t'
        << tsv::fmt(s.asym_order_score) << '\t' << (s.asym_preferred ? 1 : 0) << '\t'
        << tsv::fmt(s.asym_order_p) << '\n';
  }
}

inline std::vector<PairStats> read_stats(std::istream& in) {
  std::vector<PairStats> out;
  tsv::for_each_row(in, "lemma_w", [&](const auto& f, std::uint64_t line) {
    if (f.size() != 15) throw ParseError("stats row needs 15 columns, found " + std::to_string(f.size()), line);
    std::vector<std::string_view> pair_fields{f[0], f[1], f[2], f[3], f[11]};
    PairStats s;
    s.pair = parse_pair_fields(pair_fields, line);
    s.g2 = tsv::parse_double(f[4], line, "g2");
    s.g2_significant = tsv::parse_bool01(f[5], line, "g2_sig");
    s.order_score = tsv::parse_double(f[6], line, "order_score");
    s.has_preferred_order = tsv::parse_bool01(f[7], line, "order_pref");
    s.order_p = tsv::parse_double(f[8], line, "order_p");
    s.mean_distance = tsv::parse_double(f[9], line, "mean_dist");
    s.n_cooc = tsv::parse_uint(f[10], line, "n_cooc");
    s.asym_order_score = tsv::parse_double(f[12], line, "asym_order_score");
    s.asym_preferred = tsv::parse_bool01(f[13], line, "asym_order_pref");
    s.asym_order_p = tsv::parse_double(f[14], line, "asym_order_p");
    out.push_back(std::move(s));
  });
  return out;
}

inline std::vector<PairStats> load_stats(const std::string& path) {
  auto in = tsv::open_in(path);
  return read_stats(in);
}

}  // namespace coocstat
