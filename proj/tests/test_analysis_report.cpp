#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "coocstat/analysis_report.hpp"
#include "test_util.hpp"

using namespace coocstat;
using namespace coocstat::report;
using testutil::pair;

namespace {

PairStats stat(const std::string& w, const std::string& v, Pos pos, Relation rel, double g2, bool sig,
               double order = 0.0, double dist = 1.0, std::uint64_t n_cooc = 3) {
  PairStats s;
  s.pair = pair(w, v, pos, rel);
  s.g2 = g2;
  s.g2_significant = sig;
  s.order_score = order;
  s.has_preferred_order = order != 0.0;
  s.mean_distance = dist;
  s.n_cooc = n_cooc;
  return s;
}

std::vector<PairStats> group(Relation rel, const std::vector<double>& g2, Pos pos = Pos::Noun,
                             const std::string& prefix = "") {
  std::vector<PairStats> out;
  for (std::size_t i = 0; i < g2.size(); ++i)
    out.push_back(stat(prefix + "w" + std::to_string(i), prefix + "v" + std::to_string(i), pos, rel, g2[i], true,
                       g2[i] / 1000.0, g2[i] / 10.0));
  return out;
}

}  // namespace

TEST(Summarize, SpecExample) {
  const std::vector<PairStats> s{stat("a", "b", Pos::Noun, Relation::Syn, 10, true, 0.5, 4.0, 8),
                                 stat("c", "d", Pos::Noun, Relation::Syn, 2, false, 0.0, 2.0, 2),
                                 stat("e", "f", Pos::Noun, Relation::Syn, 3, false, 0.0, 6.0, 4)};
  const auto rows = summarize(s);
  EXPECT_EQ(rows.size(), 20u);
  const auto& r = find_summary(rows, Pos::Noun, Relation::Syn);
  EXPECT_EQ(r.n_pairs, 3u);
  EXPECT_DOUBLE_EQ(*r.avg_g2_all, 5.0);
  EXPECT_DOUBLE_EQ(*r.avg_g2_sig, 10.0);
  EXPECT_NEAR(*r.pct_g2_sig, 100.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(*r.avg_order, 0.5);
  EXPECT_DOUBLE_EQ(*r.pct_order_pref, 100.0);
  EXPECT_DOUBLE_EQ(*r.avg_distance, 4.0);
  EXPECT_EQ(fmt::percent(*r.pct_g2_sig), "33%");

  const auto& empty = find_summary(rows, Pos::Verb, Relation::Hol);
  EXPECT_EQ(empty.n_pairs, 0u);
  EXPECT_FALSE(empty.avg_g2_all);
  EXPECT_FALSE(empty.pct_g2_sig);
}

TEST(Summarize, NoSignificantPairsLeavesRestrictedAveragesAbsent) {
  const auto rows = summarize({stat("a", "b", Pos::Adj, Relation::Ant, 1.0, false)});
  const auto& r = find_summary(rows, Pos::Adj, Relation::Ant);
  EXPECT_DOUBLE_EQ(*r.avg_g2_all, 1.0);
  EXPECT_DOUBLE_EQ(*r.pct_g2_sig, 0.0);
  EXPECT_FALSE(r.avg_g2_sig);
  EXPECT_FALSE(r.avg_order);
  EXPECT_FALSE(r.pct_order_pref);
  EXPECT_FALSE(r.avg_distance);
}

TEST(Summarize, DistanceAverages) {
  const auto rows = summarize({stat("a", "b", Pos::Noun, Relation::Ant, 50, true, 0, 2.0, 1),
                               stat("c", "d", Pos::Noun, Relation::Ant, 50, true, 0, 8.0, 3)});
  const auto& r = find_summary(rows, Pos::Noun, Relation::Ant);
  EXPECT_DOUBLE_EQ(*r.distance(DistanceAverage::PerPair), 5.0);
  EXPECT_DOUBLE_EQ(*r.distance(DistanceAverage::Pooled), 6.5);
}

TEST(Summarize, PermutationInvariant) {
  std::mt19937_64 rng(31);
  auto s = group(Relation::Ant, {5, 80, 3, 17, 44, 2});
  auto more = group(Relation::Syn, {1, 9, 300}, Pos::Adj);
  s.insert(s.end(), more.begin(), more.end());
  s[2].g2_significant = false;
  const auto a = summarize(s);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(s.begin(), s.end(), rng);
    const auto b = summarize(s);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].n_pairs, b[i].n_pairs);
      if (a[i].avg_g2_all) {
        EXPECT_NEAR(*a[i].avg_g2_all, *b[i].avg_g2_all, 1e-12);
        EXPECT_NEAR(*a[i].avg_distance, *b[i].avg_distance, 1e-12);
      }
    }
  }
}

TEST(Format, Numbers) {
  EXPECT_EQ(fmt::thousands(11144.0), "11,144");
  EXPECT_EQ(fmt::thousands(915.4), "915");
  EXPECT_EQ(fmt::thousands(1234567.0), "1,234,567");
  EXPECT_EQ(fmt::short_decimal(0.13), ".13");
  EXPECT_EQ(fmt::short_decimal(-0.051), "-.05");
  EXPECT_EQ(fmt::short_decimal(0.0), ".00");
  EXPECT_EQ(fmt::percent(99.4), "99%");
  EXPECT_EQ(fmt::opt(std::nullopt, fmt::percent), "--");
  EXPECT_EQ(fmt::bold_if("915", true), "**915**");
  EXPECT_EQ(fmt::bold_if("--", true), "--");
}

TEST(Table2, RowShape) {
  std::vector<PairStats> s;
  for (int i = 0; i < 100; ++i)
    s.push_back(stat("w" + std::to_string(i), "v" + std::to_string(i), Pos::Noun, Relation::Ant, 11144, i != 0));
  const auto rows = summarize(s);
  std::ostringstream md, csv;
  write_table2(md, csv, rows, ComparisonMatrix{}, Population::All);
  EXPECT_NE(md.str().find("| NOUN | 11,144 | -- | -- | -- | -- |\n| | 99% | -- | -- | -- | -- |\n| | n=100 | -- |"),
            std::string::npos)
      << md.str();
  EXPECT_NE(csv.str().find("NOUN,ANT,100,99,11144,11144,11144,99,0"), std::string::npos) << csv.str();
  EXPECT_NE(csv.str().find("VERB,HOL,0,0,NA,NA,NA,NA,0"), std::string::npos);
}

TEST(Compare, SeparatedGroupIsDistinct) {
  std::vector<double> high, mid, low;
  for (int i = 0; i < 40; ++i) {
    high.push_back(1000 + i);
    mid.push_back(100 + (i * 7) % 40);
    low.push_back(10 + (i * 3) % 40);
  }
  auto s = group(Relation::Ant, high);
  for (auto& x : group(Relation::Syn, mid, Pos::Noun, "s")) s.push_back(x);
  for (auto& x : group(Relation::Hyp, low, Pos::Noun, "h")) s.push_back(x);
  const auto cmp = compare_relations(s);
  EXPECT_TRUE(cmp.distinct(Pos::Noun, Metric::G2, Relation::Ant));
  EXPECT_TRUE(cmp.distinct(Pos::Noun, Metric::Order, Relation::Ant));
  EXPECT_TRUE(cmp.distinct(Pos::Noun, Metric::Distance, Relation::Ant));
  EXPECT_FALSE(cmp.distinct(Pos::Verb, Metric::G2, Relation::Ant));
}

TEST(Compare, IdenticalGroupsAreNotDistinct) {
  auto s = group(Relation::Ant, {1, 2, 3, 4, 5, 6});
  for (auto& x : group(Relation::Syn, {1, 2, 3, 4, 5, 6}, Pos::Noun, "s")) s.push_back(x);
  const auto cmp = compare_relations(s);
  const auto cell = cmp.find(Pos::Noun, Metric::G2)->get(Relation::Ant, Relation::Syn);
  ASSERT_TRUE(cell.result);
  EXPECT_DOUBLE_EQ(cell.result->p_value, 1.0);
  EXPECT_FALSE(cmp.distinct(Pos::Noun, Metric::G2, Relation::Ant));
}

TEST(Compare, UndersizedGroupIsUntestable) {
  auto s = group(Relation::Ant, {100});
  for (auto& x : group(Relation::Syn, {1, 2, 3}, Pos::Noun, "s")) s.push_back(x);
  const auto cmp = compare_relations(s);
  const auto cell = cmp.find(Pos::Noun, Metric::G2)->get(Relation::Syn, Relation::Ant);
  EXPECT_FALSE(cell.result);
  EXPECT_FALSE(cell.significant);
  EXPECT_FALSE(cmp.distinct(Pos::Noun, Metric::G2, Relation::Syn));
  std::ostringstream csv;
  write_comparisons(csv, cmp);
  EXPECT_NE(csv.str().find("NOUN,g2,ANT,SYN,NA,NA,NA,NA,NA,untestable"), std::string::npos) << csv.str();
}

TEST(Compare, SingleRelationIsNeverDistinct) {
  const auto cmp = compare_relations(group(Relation::Ant, {1, 2, 3, 4}));
  EXPECT_FALSE(cmp.distinct(Pos::Noun, Metric::G2, Relation::Ant));
}

TEST(Compare, MatrixIsSymmetric) {
  std::mt19937_64 rng(32);
  std::vector<PairStats> s;
  for (Relation rel : {Relation::Ant, Relation::Hol, Relation::Syn, Relation::Unr}) {
    std::vector<double> g;
    for (int i = 0; i < 15; ++i) g.push_back(static_cast<double>(rng() % 100));
    for (auto& x : group(rel, g, Pos::Noun, std::string(to_string(rel)))) s.push_back(x);
  }
  const auto cmp = compare_relations(s);
  for (const auto& e : cmp.entries)
    for (Relation a : e.relations)
      for (Relation b : e.relations) {
        if (a == b) continue;
        const auto ab = e.get(a, b), ba = e.get(b, a);
        ASSERT_TRUE(ab.result && ba.result);
        EXPECT_EQ(ab.significant, ba.significant);
        EXPECT_DOUBLE_EQ(ab.result->p_value, ba.result->p_value);
        EXPECT_DOUBLE_EQ(ab.result->statistic, -ba.result->statistic);
        EXPECT_NEAR(ab.result->effect + ba.result->effect, 1.0, 1e-12);
      }
}

TEST(Quantiles, LinearInterpolation) {
  const auto f = five_number({5, 3, 1, 4, 2});
  EXPECT_DOUBLE_EQ(f.min, 1);
  EXPECT_DOUBLE_EQ(f.q1, 2);
  EXPECT_DOUBLE_EQ(f.median, 3);
  EXPECT_DOUBLE_EQ(f.q3, 4);
  EXPECT_DOUBLE_EQ(f.max, 5);
  const auto one = five_number({7});
  EXPECT_DOUBLE_EQ(one.min, 7);
  EXPECT_DOUBLE_EQ(one.q1, 7);
  EXPECT_DOUBLE_EQ(one.max, 7);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.25), 1.75);
  EXPECT_THROW(quantile({}, 0.5), ArgumentError);
}

TEST(Distributions, EmptyGroupsOmitted) {
  auto s = group(Relation::Ant, {1, 2, 3, 4, 5});
  s.push_back(stat("x", "y", Pos::Verb, Relation::Syn, 0.5, false));
  const auto g2 = distributions(s, Figure::G2);
  ASSERT_EQ(g2.size(), 2u);
  const auto order = distributions(s, Figure::Order);
  ASSERT_EQ(order.size(), 1u);
  EXPECT_DOUBLE_EQ(order[0].summary.median, 0.003);
  EXPECT_TRUE(distributions(s, Figure::AsymmetricOrder).empty());
  std::ostringstream sum, raw, svg;
  write_distribution_csv(sum, raw, g2);
  EXPECT_NE(sum.str().find("NOUN,ANT,5,1,2,3,4,5"), std::string::npos) << sum.str();
  write_boxplot_svg(svg, g2, "G2", true);
  EXPECT_EQ(svg.str().rfind("<svg", 0), 0u);
}

TEST(Associated, SpecExamples) {
  const auto t = associated_counts(std::vector<LemmaPair>{pair("w", "v1", Pos::Noun, Relation::Hyp),
                                                          pair("w", "v2", Pos::Noun, Relation::Hyp),
                                                          pair("u", "x", Pos::Noun, Relation::Hyp)});
  for (const auto& r : t.rows)
    if (r.pos == Pos::Noun && r.relation == Relation::Hyp) {
      EXPECT_DOUBLE_EQ(*r.average, 1.5);
    }
  EXPECT_DOUBLE_EQ(*t.micro.at(Relation::Hyp), 1.5);
  EXPECT_FALSE(t.micro.at(Relation::Ant));

  std::vector<LemmaPair> unique, hub;
  for (int i = 0; i < 6; ++i) {
    unique.push_back(pair("w" + std::to_string(i), "v" + std::to_string(i), Pos::Adj, Relation::Ant));
    hub.push_back(pair("hub", "p" + std::to_string(i), Pos::Adj, Relation::Syn));
  }
  EXPECT_DOUBLE_EQ(*associated_counts(unique).micro.at(Relation::Ant), 1.0);
  EXPECT_DOUBLE_EQ(*associated_counts(hub).micro.at(Relation::Syn), 6.0);
}

TEST(Associated, MicroAverageAtLeastOne) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    std::vector<LemmaPair> p;
    for (int i = 0; i < 30; ++i)
      p.push_back(pair("w" + std::to_string(rng() % 8), "v" + std::to_string(rng() % 20), kContentPos[rng() % 4],
                       kAllRelations[rng() % 5]));
    for (const auto& [rel, m] : associated_counts(p).micro)
      if (m) {
        EXPECT_GE(*m, 1.0);
      }
  }
}

TEST(Derivation, PersistenceCounts) {
  auto orig_sig = stat("strong", "weak", Pos::Adj, Relation::Ant, 50, true);
  auto orig_weak = stat("big", "small", Pos::Adj, Relation::Ant, 1, false);
  auto d1 = stat("strongly", "weakly", Pos::Adv, Relation::Ant, 30, true);
  auto d2 = stat("strength", "weakness", Pos::Noun, Relation::Ant, 0.5, false);
  auto d3 = stat("bigly", "smally", Pos::Adv, Relation::Ant, 40, true);
  const std::vector<DerivedPair> derived{{orig_sig.pair, d1.pair}, {orig_sig.pair, d2.pair}, {orig_weak.pair, d3.pair}};
  const auto rows = derivation_persistence(derived, {orig_sig, orig_weak, d1, d2, d3});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].derived_pos, Pos::Noun);
  EXPECT_EQ(rows[0].count, 1u);
  EXPECT_EQ(rows[0].sustaining, 0u);
  EXPECT_EQ(rows[1].derived_pos, Pos::Adv);
  EXPECT_EQ(rows[1].count, 1u);
  EXPECT_EQ(rows[1].sustaining, 1u);
  EXPECT_TRUE(derivation_persistence({}, {orig_sig}).empty());
}

TEST(Table5, RowShape) {
  std::vector<DerivationRow> rows(1);
  rows[0].orig_pos = Pos::Adj;
  rows[0].derived_pos = Pos::Adv;
  rows[0].count = 13;
  rows[0].sustaining = 12;
  std::ostringstream md, csv;
  write_table5(md, csv, rows);
  EXPECT_NE(md.str().find("| ADJ | ADV | ANT | ANT | 13 (12) |"), std::string::npos) << md.str();
  EXPECT_NE(md.str().find("| TOTAL | | | | 13 (12) |"), std::string::npos);
  EXPECT_NE(csv.str().find("ADJ,ADV,ANT,ANT,13,12"), std::string::npos);
}

TEST(Table6, MicroRow) {
  std::ostringstream md, csv;
  write_table6(md, csv, associated_counts(std::vector<LemmaPair>{pair("w", "a", Pos::Noun, Relation::Ant)}));
  EXPECT_NE(md.str().find("| NOUN | 1.0 | -- | -- | -- | -- |"), std::string::npos) << md.str();
  EXPECT_NE(md.str().find("| Micro AVG | 1.0 | -- | -- | -- | -- |"), std::string::npos);
}
