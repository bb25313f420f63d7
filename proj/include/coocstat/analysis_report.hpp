#pragma once

// Aggregation of per-pair statistics into relation x PoS summaries,
// Brunner-Munzel comparisons between relations, derivation and
// lexical-constraint analyses, and table / figure rendering.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "coocstat/assoc_metrics.hpp"
#include "coocstat/relation_lexicon.hpp"
#include "coocstat/stat_tests.hpp"
#include "coocstat/tsv.hpp"
#include "coocstat/types.hpp"

namespace coocstat::report {

/// Population over which the strength average and comparison run.
enum class Population { All, Significant };

/// How a relation's average distance is formed from its pairs.
enum class DistanceAverage { PerPair, Pooled };

enum class Metric { G2, Order, Distance };
inline constexpr Metric kMetrics[] = {Metric::G2, Metric::Order, Metric::Distance};

constexpr std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::G2: return "g2";
    case Metric::Order: return "order";
    case Metric::Distance: return "distance";
  }
  return "";
}

using Cell = std::pair<Pos, Relation>;

inline std::map<Cell, std::vector<const PairStats*>> group_by_cell(const std::vector<PairStats>& stats) {
  std::map<Cell, std::vector<const PairStats*>> out;
  for (const auto& s : stats) out[{s.pair.pos(), s.pair.relation}].push_back(&s);
  return out;
}

inline std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// ---------------------------------------------------------------------------
// Summaries

struct RelationSummary {
  Pos pos = Pos::Noun;
  Relation relation = Relation::Ant;
  std::size_t n_pairs = 0;
  std::size_t n_significant = 0;
  std::optional<double> avg_g2_all;
  std::optional<double> avg_g2_sig;
  std::optional<double> pct_g2_sig;
  std::optional<double> avg_order;       // over significant pairs
  std::optional<double> pct_order_pref;  // among significant pairs
  std::optional<double> avg_distance;    // per-pair means, significant pairs
  std::optional<double> avg_distance_pooled;
  std::size_t n_distance = 0;            // significant pairs with at least one event

  std::optional<double> avg_g2(Population p) const { return p == Population::All ? avg_g2_all : avg_g2_sig; }
  std::optional<double> distance(DistanceAverage d) const {
    return d == DistanceAverage::PerPair ? avg_distance : avg_distance_pooled;
  }
};

/// One summary per PoS x relation in table order; cells without pairs carry
/// n_pairs = 0 and no averages.
inline std::vector<RelationSummary> summarize(const std::vector<PairStats>& stats) {
  const auto groups = group_by_cell(stats);
  std::vector<RelationSummary> out;
  for (Pos pos : kContentPos)
    for (Relation rel : kAllRelations) {
      RelationSummary s;
      s.pos = pos;
      s.relation = rel;
      auto it = groups.find({pos, rel});
      if (it != groups.end()) {
        std::vector<double> g2_all, g2_sig, order, dist;
        std::size_t preferred = 0;
        double pooled_sum = 0.0;
        std::uint64_t pooled_n = 0;
        for (const auto* p : it->second) {
          g2_all.push_back(p->g2);
          if (!p->g2_significant) continue;
          g2_sig.push_back(p->g2);
          order.push_back(p->order_score);
          if (p->has_preferred_order) ++preferred;
          if (p->n_cooc > 0 && !std::isnan(p->mean_distance)) {
            dist.push_back(p->mean_distance);
            pooled_sum += p->mean_distance * static_cast<double>(p->n_cooc);
            pooled_n += p->n_cooc;
          }
        }
        s.n_pairs = g2_all.size();
        s.n_significant = g2_sig.size();
        s.avg_g2_all = mean_of(g2_all);
        s.avg_g2_sig = mean_of(g2_sig);
        if (s.n_pairs) s.pct_g2_sig = 100.0 * static_cast<double>(s.n_significant) / static_cast<double>(s.n_pairs);
        s.avg_order = mean_of(order);
        if (s.n_significant)
          s.pct_order_pref = 100.0 * static_cast<double>(preferred) / static_cast<double>(s.n_significant);
        s.avg_distance = mean_of(dist);
        s.n_distance = dist.size();
        if (pooled_n) s.avg_distance_pooled = pooled_sum / static_cast<double>(pooled_n);
      }
      out.push_back(s);
    }
  return out;
}

inline const RelationSummary& find_summary(const std::vector<RelationSummary>& rows, Pos pos, Relation rel) {
  for (const auto& r : rows)
    if (r.pos == pos && r.relation == rel) return r;
  throw ArgumentError("no summary row for cell");
}

// ---------------------------------------------------------------------------
// Relation comparisons

/// The per-pair values that enter a comparison: strength over the chosen
/// population, order scores and distances over significant pairs.
inline std::vector<double> metric_values(const std::vector<const PairStats*>& group, Metric metric,
                                         Population population = Population::All) {
  std::vector<double> out;
  for (const auto* p : group) {
    switch (metric) {
      case Metric::G2:
        if (population == Population::All || p->g2_significant) out.push_back(p->g2);
        break;
      case Metric::Order:
        if (p->g2_significant) out.push_back(p->order_score);
        break;
      case Metric::Distance:
        if (p->g2_significant && p->n_cooc > 0 && !std::isnan(p->mean_distance)) out.push_back(p->mean_distance);
        break;
    }
  }
  return out;
}

struct ComparisonCell {
  std::optional<stats::TestResult> result;  // absent: untestable (a group below 2 values)
  bool significant = false;
};

struct MetricComparison {
  Pos pos = Pos::Noun;
  Metric metric = Metric::G2;
  std::vector<Relation> relations;  // relations present for this PoS
  /// Keyed by (r1, r2) with r1 < r2; the test is run with x = r1, y = r2.
  std::map<std::pair<Relation, Relation>, ComparisonCell> cells;
  std::map<Relation, bool> distinct;

  /// Result for (a, b); the orientation follows the arguments, so the
  /// statistic flips sign and the effect becomes 1 - effect when swapped.
  ComparisonCell get(Relation a, Relation b) const {
    if (a == b) throw ArgumentError("comparison of a relation with itself");
    const bool swapped = b < a;
    auto it = cells.find(swapped ? std::pair{b, a} : std::pair{a, b});
    if (it == cells.end()) throw ArgumentError("relation pair not compared");
    ComparisonCell c = it->second;
    if (swapped && c.result) {
      c.result->statistic = -c.result->statistic;
      c.result->effect = 1.0 - c.result->effect;
    }
    return c;
  }
};

struct ComparisonMatrix {
  std::vector<MetricComparison> entries;

  const MetricComparison* find(Pos pos, Metric metric) const {
    for (const auto& e : entries)
      if (e.pos == pos && e.metric == metric) return &e;
    return nullptr;
  }
  bool distinct(Pos pos, Metric metric, Relation rel) const {
    const auto* e = find(pos, metric);
    if (!e) return false;
    auto it = e->distinct.find(rel);
    return it != e->distinct.end() && it->second;
  }
};

/// Two-sided Brunner-Munzel test for every relation pair, per PoS and metric.
/// A relation is distinct when it differs significantly from every other
/// relation present for that PoS and metric (at least one other required).
inline ComparisonMatrix compare_relations(const std::vector<PairStats>& stats, double alpha = stats::kDefaultAlpha,
                                          Population population = Population::All) {
  const auto groups = group_by_cell(stats);
  ComparisonMatrix matrix;
  for (Pos pos : kContentPos)
    for (Metric metric : kMetrics) {
      MetricComparison mc;
      mc.pos = pos;
      mc.metric = metric;
      std::map<Relation, std::vector<double>> values;
      for (Relation rel : kAllRelations) {
        auto it = groups.find({pos, rel});
        if (it == groups.end() || it->second.empty()) continue;
        mc.relations.push_back(rel);
        values[rel] = metric_values(it->second, metric, population);
      }
      for (std::size_t i = 0; i < mc.relations.size(); ++i)
        for (std::size_t j = i + 1; j < mc.relations.size(); ++j) {
          const auto& x = values[mc.relations[i]];
          const auto& y = values[mc.relations[j]];
          ComparisonCell cell;
          if (x.size() >= 2 && y.size() >= 2) {
            cell.result = stats::brunner_munzel(x, y);
            cell.significant = cell.result->p_value < alpha;
          }
          mc.cells[{mc.relations[i], mc.relations[j]}] = cell;
        }
      for (Relation r : mc.relations) {
        bool all = mc.relations.size() >= 2;
        for (Relation other : mc.relations)
          if (other != r && !mc.get(r, other).significant) all = false;
        mc.distinct[r] = all;
      }
      matrix.entries.push_back(std::move(mc));
    }
  return matrix;
}

// ---------------------------------------------------------------------------
// Derivation persistence

struct DerivationRow {
  Pos orig_pos = Pos::Noun;
  Pos derived_pos = Pos::Noun;
  Relation orig_rel = Relation::Ant;
  Relation derived_rel = Relation::Ant;
  std::size_t count = 0;       // derived pairs whose original co-occurs significantly
  std::size_t sustaining = 0;  // ... and which are significant themselves

  auto key() const { return std::tuple{orig_pos, derived_pos, orig_rel, derived_rel}; }
};

/// Counts derived pairs by category. Only pairs whose original co-occurs
/// significantly enter; pairs lacking statistics on either side are skipped.
inline std::vector<DerivationRow> derivation_persistence(const std::vector<DerivedPair>& derived,
                                                         const std::vector<PairStats>& stats) {
  std::map<std::pair<UnorderedPair, Relation>, const PairStats*> index;
  for (const auto& s : stats) index[{UnorderedPair::of(s.pair), s.pair.relation}] = &s;
  auto lookup = [&](const LemmaPair& p) -> const PairStats* {
    auto it = index.find({UnorderedPair::of(p), p.relation});
    return it == index.end() ? nullptr : it->second;
  };
  std::map<std::tuple<Pos, Pos, Relation, Relation>, DerivationRow> rows;
  for (const auto& d : derived) {
    const auto* o = lookup(d.original);
    const auto* x = lookup(d.derived);
    if (!o || !x || !o->g2_significant) continue;
    DerivationRow key_row{d.original.pos(), d.derived.pos(), d.original.relation, d.derived.relation};
    auto& row = rows.try_emplace(key_row.key(), key_row).first->second;
    ++row.count;
    if (x->g2_significant) ++row.sustaining;
  }
  std::vector<DerivationRow> out;
  for (auto& [k, r] : rows) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// Associated lemma counts

struct AssociationRow {
  Pos pos = Pos::Noun;
  Relation relation = Relation::Ant;
  std::size_t pairs = 0;
  std::size_t distinct_w = 0;
  std::optional<double> average;  // mean number of distinct v per distinct w
};

struct AssociationTable {
  std::vector<AssociationRow> rows;               // every PoS x relation, table order
  std::map<Relation, std::optional<double>> micro;  // total pairs / total distinct w
};

inline AssociationTable associated_counts(const std::vector<LemmaPair>& pairs) {
  std::map<Cell, std::map<std::string, std::set<std::string>>> partners;
  for (const auto& p : pairs) partners[{p.pos(), p.relation}][p.w.lemma].insert(p.v.lemma);
  AssociationTable t;
  std::map<Relation, std::pair<std::size_t, std::size_t>> totals;
  for (Pos pos : kContentPos)
    for (Relation rel : kAllRelations) {
      AssociationRow row;
      row.pos = pos;
      row.relation = rel;
      auto it = partners.find({pos, rel});
      if (it != partners.end()) {
        for (const auto& [w, vs] : it->second) row.pairs += vs.size();
        row.distinct_w = it->second.size();
        row.average = static_cast<double>(row.pairs) / static_cast<double>(row.distinct_w);
        totals[rel].first += row.pairs;
        totals[rel].second += row.distinct_w;
      }
      t.rows.push_back(row);
    }
  for (Relation rel : kAllRelations) {
    auto it = totals.find(rel);
    t.micro[rel] = it == totals.end() || it->second.second == 0
                       ? std::nullopt
                       : std::optional<double>(static_cast<double>(it->second.first) /
                                               static_cast<double>(it->second.second));
  }
  return t;
}

inline AssociationTable associated_counts(const std::vector<PairStats>& stats) {
  std::vector<LemmaPair> pairs;
  pairs.reserve(stats.size());
  for (const auto& s : stats) pairs.push_back(s.pair);
  return associated_counts(pairs);
}

// ---------------------------------------------------------------------------
// Distributions

/// Linear-interpolation quantile: position h = (n - 1) q on sorted values.
inline double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ArgumentError("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

struct FiveNumber {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

inline FiveNumber five_number(const std::vector<double>& values) {
  return {quantile(values, 0.0), quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75),
          quantile(values, 1.0)};
}

enum class Figure { G2, Order, Distance, AsymmetricOrder };
inline constexpr Figure kFigures[] = {Figure::G2, Figure::Order, Figure::Distance, Figure::AsymmetricOrder};

constexpr std::string_view to_string(Figure f) noexcept {
  switch (f) {
    case Figure::G2: return "g2";
    case Figure::Order: return "order";
    case Figure::Distance: return "distance";
    case Figure::AsymmetricOrder: return "asym_order";
  }
  return "";
}

struct Distribution {
  Pos pos = Pos::Noun;
  Relation relation = Relation::Ant;
  std::vector<double> values;  // in input order
  FiveNumber summary;
};

/// Non-empty value groups per PoS x relation for one figure. The asymmetric
/// figure uses head-first order scores of significant HYP / HOL pairs.
inline std::vector<Distribution> distributions(const std::vector<PairStats>& stats, Figure fig,
                                               Population population = Population::All) {
  const auto groups = group_by_cell(stats);
  std::vector<Distribution> out;
  for (Pos pos : kContentPos)
    for (Relation rel : kAllRelations) {
      auto it = groups.find({pos, rel});
      if (it == groups.end()) continue;
      Distribution d{pos, rel, {}, {}};
      switch (fig) {
        case Figure::G2: d.values = metric_values(it->second, Metric::G2, population); break;
        case Figure::Order: d.values = metric_values(it->second, Metric::Order); break;
        case Figure::Distance: d.values = metric_values(it->second, Metric::Distance); break;
        case Figure::AsymmetricOrder:
          for (const auto* p : it->second)
            if (p->g2_significant && p->pair.head && !std::isnan(p->asym_order_score))
              d.values.push_back(p->asym_order_score);
          break;
      }
      if (d.values.empty()) continue;
      d.summary = five_number(d.values);
      out.push_back(std::move(d));
    }
  return out;
}

inline void write_distribution_csv(std::ostream& summary, std::ostream& raw, const std::vector<Distribution>& ds) {
  summary << "pos,relation,n,min,q1,median,q3,max\n";
  raw << "pos,relation,value\n";
  for (const auto& d : ds) {
    summary << to_string(d.pos) << ',' << to_string(d.relation) << ',' << d.values.size() << ','
            << tsv::fmt(d.summary.min) << ',' << tsv::fmt(d.summary.q1) << ',' << tsv::fmt(d.summary.median) << ','
            << tsv::fmt(d.summary.q3) << ',' << tsv::fmt(d.summary.max) << '\n';
    for (double v : d.values) raw << to_string(d.pos) << ',' << to_string(d.relation) << ',' << tsv::fmt(v) << '\n';
  }
}

/// Standalone SVG box plot (whiskers at min / max), one panel per PoS.
/// `log_scale` plots log10(1 + x).
inline void write_boxplot_svg(std::ostream& out, const std::vector<Distribution>& ds, std::string_view title,
                              bool log_scale) {
  constexpr double kPanelW = 260, kPanelH = 220, kTop = 40, kLeft = 50, kBox = 24;
  auto tr = [&](double x) { return log_scale ? std::log10(1.0 + std::max(0.0, x)) : x; };
  double lo = 0, hi = 1;
  bool first = true;
  for (const auto& d : ds) {
    const double a = tr(d.summary.min), b = tr(d.summary.max);
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  }
  if (hi <= lo) hi = lo + 1;
  auto y = [&](double v) { return kTop + kPanelH - (tr(v) - lo) / (hi - lo) * kPanelH; };

  const double width = kLeft + 4 * kPanelW + 20;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << kTop + kPanelH + 50
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << title << (log_scale ? " (log10(1+x))" : "")
      << "</text>\n";
  out << "<text x=\"4\" y=\"" << kTop + 8 << "\">" << tsv::fixed(hi, 2) << "</text>\n";
  out << "<text x=\"4\" y=\"" << kTop + kPanelH << "\">" << tsv::fixed(lo, 2) << "</text>\n";
  for (std::size_t pi = 0; pi < 4; ++pi) {
    const Pos pos = kContentPos[pi];
    const double x0 = kLeft + pi * kPanelW;
    out << "<rect x=\"" << x0 << "\" y=\"" << kTop << "\" width=\"" << kPanelW - 10 << "\" height=\"" << kPanelH
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    out << "<text x=\"" << x0 + 4 << "\" y=\"" << kTop + kPanelH + 32 << "\">" << to_string(pos) << "</text>\n";
    std::size_t slot = 0;
    for (const auto& d : ds) {
      if (d.pos != pos) continue;
      const double cx = x0 + 30 + slot++ * 48;
      const auto& s = d.summary;
      out << "<line x1=\"" << cx << "\" x2=\"" << cx << "\" y1=\"" << tsv::fixed(y(s.max), 2) << "\" y2=\""
          << tsv::fixed(y(s.min), 2) << "\" stroke=\"black\"/>\n";
      out << "<rect x=\"" << cx - kBox / 2 << "\" y=\"" << tsv::fixed(y(s.q3), 2) << "\" width=\"" << kBox
          << "\" height=\"" << tsv::fixed(std::max(0.5, y(s.q1) - y(s.q3)), 2)
          << "\" fill=\"#cde\" stroke=\"black\"/>\n";
      out << "<line x1=\"" << cx - kBox / 2 << "\" x2=\"" << cx + kBox / 2 << "\" y1=\"" << tsv::fixed(y(s.median), 2)
          << "\" y2=\"" << tsv::fixed(y(s.median), 2) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << cx - 10 << "\" y=\"" << kTop + kPanelH + 16 << "\">" << to_string(d.relation)
          << "</text>\n";
    }
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Table rendering

namespace fmt {

/// Integer with thousands separators: 11144 -> "11,144".
inline std::string thousands(double x) {
  const long long v = std::llround(x);
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return v < 0 ? "-" + out : out;
}

/// Two decimals without the leading zero: 0.13 -> ".13", -0.05 -> "-.05".
inline std::string short_decimal(double x) {
  std::string s = tsv::fixed(x, 2);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  else if (s.rfind("-0.", 0) == 0) s.erase(1, 1);
  return s;
}

inline std::string percent(double x) { return tsv::fixed(x, 0) + "%"; }

inline std::string opt(const std::optional<double>& x, std::string (*f)(double)) { return x ? f(*x) : "--"; }

inline std::string csv_opt(const std::optional<double>& x) { return x ? tsv::fmt(*x) : "NA"; }

inline std::string bold_if(std::string s, bool b) { return b && s != "--" ? "**" + s + "**" : s; }

}  // namespace fmt

inline constexpr std::string_view kMdHeader = "| PoS | ANT | HOL | HYP | SYN | UNR |\n|---|---:|---:|---:|---:|---:|\n";

/// Lemma-pair counts per PoS x relation with a total row.
inline void write_table1(std::ostream& md, std::ostream& csv, const std::vector<RelationSummary>& rows) {
  csv << "pos,relation,n_pairs\n";
  md << kMdHeader;
  std::map<Relation, std::size_t> totals;
  for (Pos pos : kContentPos) {
    md << "| " << to_string(pos) << " |";
    for (Relation rel : kAllRelations) {
      const auto& r = find_summary(rows, pos, rel);
      totals[rel] += r.n_pairs;
      csv << to_string(pos) << ',' << to_string(rel) << ',' << r.n_pairs << '\n';
      md << ' ' << (r.n_pairs ? fmt::thousands(static_cast<double>(r.n_pairs)) : "--") << " |";
    }
    md << '\n';
  }
  md << "| Total |";
  for (Relation rel : kAllRelations) md << ' ' << fmt::thousands(static_cast<double>(totals[rel])) << " |";
  md << "\n\nCounts of observed lemma pairs. \"--\": no pairs for this PoS and relation.\n";
}

/// Strength: average G2, share of significant pairs, pair count.
inline void write_table2(std::ostream& md, std::ostream& csv, const std::vector<RelationSummary>& rows,
                         const ComparisonMatrix& cmp, Population population) {
  csv << "pos,relation,n_pairs,n_sig,avg_g2,avg_g2_all,avg_g2_sig,pct_g2_sig,distinct\n";
  md << kMdHeader;
  for (Pos pos : kContentPos) {
    std::string avg = "| " + std::string(to_string(pos)) + " |", pct = "| |", cnt = "| |";
    for (Relation rel : kAllRelations) {
      const auto& r = find_summary(rows, pos, rel);
      const bool distinct = cmp.distinct(pos, Metric::G2, rel);
      csv << to_string(pos) << ',' << to_string(rel) << ',' << r.n_pairs << ',' << r.n_significant << ','
          << fmt::csv_opt(r.avg_g2(population)) << ',' << fmt::csv_opt(r.avg_g2_all) << ','
          << fmt::csv_opt(r.avg_g2_sig) << ',' << fmt::csv_opt(r.pct_g2_sig) << ',' << (distinct ? 1 : 0) << '\n';
      avg += " " + fmt::bold_if(fmt::opt(r.avg_g2(population), fmt::thousands), distinct) + " |";
      pct += " " + fmt::opt(r.pct_g2_sig, fmt::percent) + " |";
      cnt += " " + (r.n_pairs ? "n=" + std::to_string(r.n_pairs) : std::string("--")) + " |";
    }
    md << avg << '\n' << pct << '\n' << cnt << '\n';
  }
  md << "\nPer PoS: average G2 (" << (population == Population::All ? "all observed pairs" : "significant pairs")
     << "), percentage of pairs with significant co-occurrence, number of pairs. "
        "Bold: differs significantly from every other relation of the same PoS.\n";
}

/// Order: average order score and share with a preferred order, both among
/// significantly co-occurring pairs.
inline void write_table3(std::ostream& md, std::ostream& csv, const std::vector<RelationSummary>& rows,
                         const ComparisonMatrix& cmp) {
  csv << "pos,relation,n_sig,avg_order,pct_order_pref,distinct\n";
  md << kMdHeader;
  for (Pos pos : kContentPos) {
    std::string avg = "| " + std::string(to_string(pos)) + " |", pct = "| |", cnt = "| |";
    for (Relation rel : kAllRelations) {
      const auto& r = find_summary(rows, pos, rel);
      const bool distinct = cmp.distinct(pos, Metric::Order, rel);
      csv << to_string(pos) << ',' << to_string(rel) << ',' << r.n_significant << ',' << fmt::csv_opt(r.avg_order)
          << ',' << fmt::csv_opt(r.pct_order_pref) << ',' << (distinct ? 1 : 0) << '\n';
      avg += " " + fmt::bold_if(fmt::opt(r.avg_order, fmt::short_decimal), distinct) + " |";
      pct += " " + fmt::opt(r.pct_order_pref, fmt::percent) + " |";
      cnt += " " + (r.n_significant ? "n=" + std::to_string(r.n_significant) : std::string("--")) + " |";
    }
    md << avg << '\n' << pct << '\n' << cnt << '\n';
  }
  md << "\nPer PoS: average order score, percentage of pairs with a preferred order, number of significantly "
        "co-occurring pairs (the population of both rows).\n";
}

/// Distance among significantly co-occurring pairs: the selected average,
/// the other averaging variant, and the number of contributing pairs.
inline void write_table4(std::ostream& md, std::ostream& csv, const std::vector<RelationSummary>& rows,
                         const ComparisonMatrix& cmp, DistanceAverage how) {
  const auto other = how == DistanceAverage::PerPair ? DistanceAverage::Pooled : DistanceAverage::PerPair;
  const std::string other_label = other == DistanceAverage::Pooled ? "pooled " : "per pair ";
  csv << "pos,relation,n_pairs,avg_distance,avg_distance_pair,avg_distance_pooled,distinct\n";
  md << kMdHeader;
  for (Pos pos : kContentPos) {
    std::string avg = "| " + std::string(to_string(pos)) + " |", alt = "| |", cnt = "| |";
    for (Relation rel : kAllRelations) {
      const auto& r = find_summary(rows, pos, rel);
      const bool distinct = cmp.distinct(pos, Metric::Distance, rel);
      csv << to_string(pos) << ',' << to_string(rel) << ',' << r.n_distance << ',' << fmt::csv_opt(r.distance(how))
          << ',' << fmt::csv_opt(r.avg_distance) << ',' << fmt::csv_opt(r.avg_distance_pooled) << ','
          << (distinct ? 1 : 0) << '\n';
      avg += " " + fmt::bold_if(fmt::opt(r.distance(how), fmt::thousands), distinct) + " |";
      const auto alt_value = r.distance(other);
      alt += " " + (alt_value ? other_label + fmt::thousands(*alt_value) : std::string("--")) + " |";
      cnt += " " + (r.n_distance ? "n=" + std::to_string(r.n_distance) : std::string("--")) + " |";
    }
    md << avg << '\n' << alt << '\n' << cnt << '\n';
  }
  md << "\nPer PoS: average number of tokens between significantly co-occurring pairs ("
     << (how == DistanceAverage::PerPair ? "mean of per-pair means" : "pooled over all events")
     << "), the other averaging variant, number of contributing pairs.\n";
}

inline void write_table5(std::ostream& md, std::ostream& csv, const std::vector<DerivationRow>& rows) {
  csv << "orig_pos,derived_pos,orig_relation,derived_relation,count,sustaining\n";
  md << "| Orig. PoS | Derv. PoS | Orig. Rel. | Derv. Rel. | Count |\n|---|---|---|---|---:|\n";
  std::size_t total = 0, sustaining = 0;
  for (const auto& r : rows) {
    csv << to_string(r.orig_pos) << ',' << to_string(r.derived_pos) << ',' << to_string(r.orig_rel) << ','
        << to_string(r.derived_rel) << ',' << r.count << ',' << r.sustaining << '\n';
    md << "| " << to_string(r.orig_pos) << " | " << to_string(r.derived_pos) << " | " << to_string(r.orig_rel)
       << " | " << to_string(r.derived_rel) << " | " << r.count << " (" << r.sustaining << ") |\n";
    total += r.count;
    sustaining += r.sustaining;
  }
  md << "| TOTAL | | | | " << total << " (" << sustaining << ") |\n";
  md << "\nDerived pairs of significantly co-occurring related pairs; in parentheses those that remain "
        "significant.\n";
}

inline void write_table6(std::ostream& md, std::ostream& csv, const AssociationTable& t) {
  csv << "pos,relation,pairs,distinct_w,average\n";
  md << kMdHeader;
  for (Pos pos : kContentPos) {
    md << "| " << to_string(pos) << " |";
    for (const auto& r : t.rows)
      if (r.pos == pos) {
        csv << to_string(pos) << ',' << to_string(r.relation) << ',' << r.pairs << ',' << r.distinct_w << ','
            << fmt::csv_opt(r.average) << '\n';
        md << ' ' << (r.average ? tsv::fixed(*r.average, 1) : "--") << " |";
      }
    md << '\n';
  }
  md << "| Micro AVG |";
  for (Relation rel : kAllRelations) {
    const auto& m = t.micro.at(rel);
    csv << "ALL," << to_string(rel) << ",,," << fmt::csv_opt(m) << '\n';
    md << ' ' << (m ? tsv::fixed(*m, 1) : "--") << " |";
  }
  md << "\n\nAverage number of distinct partner lemmas per more frequent lemma.\n";
}

/// Pairwise test results as CSV, one row per PoS x metric x relation pair.
inline void write_comparisons(std::ostream& csv, const ComparisonMatrix& cmp) {
  csv << "pos,metric,relation_x,relation_y,statistic,df,p_value,effect,degenerate,significant\n";
  for (const auto& e : cmp.entries)
    for (const auto& [key, cell] : e.cells) {
      csv << to_string(e.pos) << ',' << to_string(e.metric) << ',' << to_string(key.first) << ','
          << to_string(key.second) << ',';
      if (cell.result)
        csv << tsv::fmt(cell.result->statistic) << ',' << tsv::fmt(cell.result->df) << ','
            << tsv::fmt(cell.result->p_value) << ',' << tsv::fmt(cell.result->effect) << ','
            << (cell.result->degenerate ? 1 : 0) << ',' << (cell.significant ? 1 : 0) << '\n';
      else
        csv << "NA,NA,NA,NA,NA,untestable\n";
    }
}

}  // namespace coocstat::report
