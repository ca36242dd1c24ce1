#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <json.hpp>

#include "ontoqual/scoring/criteria.hpp"
#include "ontoqual/scoring/report.hpp"
#include "ontoqual/scoring/scorecard.hpp"

using namespace ontoqual;
using metrics::MetricId;
using scoring::Characteristic;

namespace {

MetricId m(int i) { return static_cast<MetricId>(i); }

std::map<MetricId, int> all_scores(int value) {
  std::map<MetricId, int> out;
  for (auto id : metrics::kAllMetrics) out[id] = value;
  return out;
}

// Criteria table rows transcribed by hand; each entry is (raw, expected score).
struct Point {
  Rational raw;
  int score;
};

std::vector<Point> lower_points(int a, int b, int c, int d) {
  const Rational eps(1, 100);
  return {{Rational(a), 5}, {Rational(a) + eps, 4}, {Rational(b), 4}, {Rational(b) + eps, 3},
          {Rational(c), 3}, {Rational(c) + eps, 2}, {Rational(d), 2}, {Rational(d) + eps, 1},
          {Rational(1000), 1}};
}

std::vector<Point> percent_points() {
  return {{Rational(0), 1},         {Rational(20, 100), 1}, {Rational(21, 100), 2},
          {Rational(40, 100), 2},   {Rational(41, 100), 3}, {Rational(60, 100), 3},
          {Rational(61, 100), 4},   {Rational(80, 100), 4}, {Rational(81, 100), 5},
          {Rational(1), 5},         {Rational(7, 2), 5}};
}

std::map<MetricId, std::vector<Point>> paper_table() {
  return {
      {m(1), lower_points(2, 4, 6, 8)},  {m(2), lower_points(5, 8, 11, 15)},
      {m(3), lower_points(2, 4, 6, 8)},  {m(4), lower_points(2, 4, 6, 8)},
      {m(5), lower_points(3, 6, 8, 12)}, {m(6), lower_points(2, 4, 6, 8)},
      {m(7), lower_points(3, 6, 8, 12)}, {m(8), lower_points(2, 4, 6, 8)},
      {m(9), lower_points(2, 4, 6, 8)},  {m(10), percent_points()},
      {m(11), percent_points()},         {m(12), percent_points()},
      {m(13), percent_points()},         {m(14), percent_points()},
  };
}

}  // namespace

TEST(Criteria, LcomExamples) {
  EXPECT_EQ(scoring::normalize(m(1), 2), 5);
  EXPECT_EQ(scoring::normalize(m(1), 4), 4);
  EXPECT_EQ(scoring::normalize(m(1), 6), 3);
  EXPECT_EQ(scoring::normalize(m(1), 8), 2);
  EXPECT_EQ(scoring::normalize(m(1), Rational(801, 100)), 1);
}

TEST(Criteria, RatioExamples) {
  EXPECT_EQ(scoring::normalize(m(10), Rational(4, 5)), 4);
  EXPECT_EQ(scoring::normalize(m(10), Rational(81, 100)), 5);
  EXPECT_EQ(scoring::normalize(m(11), Rational(1, 5)), 1);
}

TEST(Criteria, ZeroTangledness) {
  EXPECT_EQ(scoring::normalize(m(9), 0), 5);
  auto n = scoring::normalize_with_note(m(9), 0);
  EXPECT_EQ(n.score, 5);
  EXPECT_TRUE(n.note.has_value());
  EXPECT_FALSE(scoring::normalize_with_note(m(9), 1).note.has_value());
}

TEST(Criteria, ClampNotes) {
  auto above = scoring::normalize_with_note(m(14), Rational(3, 2));
  EXPECT_EQ(above.score, 5);
  EXPECT_TRUE(above.note.has_value());
  auto below_one = scoring::normalize_with_note(m(3), Rational(1, 2));
  EXPECT_EQ(below_one.score, 5);
  EXPECT_TRUE(below_one.note.has_value());
  // M1 and M8 print "<=2", so nothing is clamped there.
  EXPECT_FALSE(scoring::normalize_with_note(m(1), Rational(1, 2)).note.has_value());
  EXPECT_FALSE(scoring::normalize_with_note(m(8), 0).note.has_value());
}

TEST(Criteria, EveryTableBoundary) {
  int asserted = 0;
  for (const auto& [id, points] : paper_table()) {
    for (const auto& p : points) {
      EXPECT_EQ(scoring::normalize(id, p.raw), p.score)
          << metrics::metric_key(id) << " raw " << p.raw;
      ++asserted;
    }
  }
  EXPECT_GE(asserted, 70);
}

TEST(Criteria, StringKeys) {
  EXPECT_EQ(scoring::normalize("m2", 5), 5);
  EXPECT_THROW(scoring::normalize("m15", 1), scoring::UnknownMetric);
  EXPECT_THROW(scoring::normalize("nope", 1), scoring::UnknownMetric);
  EXPECT_THROW(scoring::normalize(m(1), -1), std::invalid_argument);
}

TEST(Criteria, BandsCoverTheAxisDisjointly) {
  const auto& table = scoring::CriteriaTable::standard();
  std::vector<Rational> samples;
  for (int i = 0; i <= 2000; ++i) samples.push_back(Rational(i, 100));
  for (int i = 0; i <= 1000; ++i) samples.push_back(Rational(i) * 1000);
  for (const auto& [id, points] : paper_table()) {
    for (const auto& p : points) samples.push_back(p.raw);
  }
  for (auto id : metrics::kAllMetrics) {
    auto bands = table.bands(id);
    ASSERT_EQ(bands.size(), 5u);
    std::vector<int> scores;
    for (const auto& b : bands) scores.push_back(b.score);
    std::sort(scores.begin(), scores.end());
    EXPECT_EQ(scores, (std::vector<int>{1, 2, 3, 4, 5}));
    for (const auto& raw : samples) {
      int hits = 0;
      for (const auto& b : bands) hits += b.contains(raw) ? 1 : 0;
      EXPECT_EQ(hits, 1) << metrics::metric_key(id) << " " << raw;
    }
  }
}

TEST(Criteria, Monotonicity) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> num(0, 200000);
  for (auto id : metrics::kAllMetrics) {
    bool lower_better = static_cast<int>(id) <= 9;
    for (int i = 0; i < 2000; ++i) {
      Rational a(num(rng), 10000), b(num(rng), 10000);
      if (b < a) std::swap(a, b);
      int sa = scoring::normalize(id, a), sb = scoring::normalize(id, b);
      if (lower_better) {
        EXPECT_GE(sa, sb);
      } else {
        EXPECT_LE(sa, sb);
      }
    }
  }
}

TEST(Associations, TableShape) {
  auto table = scoring::association_table();
  ASSERT_EQ(table.size(), 24u);
  std::map<Characteristic, int> per_char;
  for (const auto& sc : table) ++per_char[sc.characteristic];
  EXPECT_EQ(per_char[Characteristic::kS], 4);
  EXPECT_EQ(per_char[Characteristic::kF], 9);
  EXPECT_EQ(per_char[Characteristic::kM], 6);
  EXPECT_EQ(per_char[Characteristic::kT], 1);
  EXPECT_EQ(per_char[Characteristic::kR], 2);
  EXPECT_EQ(per_char[Characteristic::kC], 1);
  EXPECT_EQ(per_char[Characteristic::kO], 1);

  auto find = [&](std::string_view id) {
    for (const auto& sc : table)
      if (sc.id == id) return sc.metrics;
    ADD_FAILURE() << id;
    return std::vector<MetricId>{};
  };
  EXPECT_EQ(find("S-FRS"), std::vector<MetricId>{m(10)});
  EXPECT_EQ(find("F-KU"), (std::vector<MetricId>{m(13), m(12), m(14), m(8), m(1), m(4)}));
  EXPECT_EQ(find("M-C"), (std::vector<MetricId>{m(2), m(3), m(1), m(7), m(8), m(6), m(5)}));
  EXPECT_EQ(find("O-L"), (std::vector<MetricId>{m(2), m(1), m(7), m(8), m(6), m(5)}));
}

TEST(Aggregate, ConstantScores) {
  for (int v = 1; v <= 5; ++v) {
    auto card = scoring::aggregate(all_scores(v));
    EXPECT_EQ(card.overall, v);
    for (const auto& [id, s] : card.subchar_scores) EXPECT_EQ(s, v) << id;
    for (const auto& [c, s] : card.char_scores) EXPECT_EQ(s, v);
    EXPECT_EQ(card.subchar_scores.size(), 24u);
    EXPECT_EQ(card.char_scores.size(), 7u);
  }
}

TEST(Aggregate, SingleMemberSubcharacteristic) {
  auto scores = all_scores(3);
  scores[m(10)] = 4;
  EXPECT_EQ(scoring::aggregate(scores).subchar_scores.at("S-FRS"), 4);
}

TEST(Aggregate, MeansByHand) {
  auto scores = all_scores(5);
  scores[m(1)] = 1;
  scores[m(4)] = 2;
  auto card = scoring::aggregate(scores);
  // F-KU = (5 + 5 + 5 + 5 + 1 + 2) / 6.
  EXPECT_EQ(card.subchar_scores.at("F-KU"), Rational(23, 6));
  EXPECT_EQ(card.subchar_scores.at("R-A"), 1);
  // R = mean(R-R = (5+5+5+1)/4, R-A = 1).
  EXPECT_EQ(card.char_scores.at(Characteristic::kR), (Rational(16, 4) + 1) / 2);
}

TEST(Aggregate, MissingMetric) {
  auto scores = all_scores(4);
  scores.erase(m(7));
  try {
    scoring::aggregate(scores);
    FAIL();
  } catch (const scoring::MissingMetric& e) {
    EXPECT_EQ(e.metric(), m(7));
  }
}

TEST(Aggregate, BoundsAndPermutation) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> score(1, 5);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::pair<MetricId, int>> pairs;
    for (auto id : metrics::kAllMetrics) pairs.emplace_back(id, score(rng));
    int lo = 5, hi = 1;
    for (const auto& [id, s] : pairs) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    auto card = scoring::aggregate(std::map<MetricId, int>(pairs.begin(), pairs.end()));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::map<MetricId, int> shuffled;
    for (const auto& [id, s] : pairs) shuffled.emplace(id, s);
    auto again = scoring::aggregate(shuffled);
    EXPECT_EQ(again.overall, card.overall);
    EXPECT_EQ(again.subchar_scores, card.subchar_scores);
    for (const auto& [id, s] : card.subchar_scores) {
      EXPECT_GE(s, lo);
      EXPECT_LE(s, hi);
    }
    for (const auto& [c, s] : card.char_scores) {
      EXPECT_GE(s, lo);
      EXPECT_LE(s, hi);
    }
    EXPECT_GE(card.overall, lo);
    EXPECT_LE(card.overall, hi);
  }
}

TEST(Aggregate, BrickOverall) {
  std::map<Characteristic, Rational> brick = {
      {Characteristic::kF, parse_rational("3.56")}, {Characteristic::kR, parse_rational("3.25")},
      {Characteristic::kC, parse_rational("3.75")}, {Characteristic::kS, parse_rational("4.50")},
      {Characteristic::kM, parse_rational("4.14")}, {Characteristic::kT, parse_rational("4.00")},
      {Characteristic::kO, parse_rational("4.33")}};
  Rational overall = scoring::overall_from_characteristics(brick);
  EXPECT_EQ(to_decimal(overall, 2), "3.93");
  EXPECT_LE(abs(overall - parse_rational("3.93")), parse_rational("0.005"));
  brick.erase(Characteristic::kO);
  EXPECT_THROW(scoring::overall_from_characteristics(brick), std::invalid_argument);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal(Rational(5), 2), "5.00");
  EXPECT_EQ(to_decimal(Rational(2, 3), 2), "0.67");
  EXPECT_EQ(to_decimal(Rational(1, 8), 2), "0.13");
  EXPECT_EQ(to_decimal(Rational(1, 200), 2), "0.01");
  EXPECT_EQ(to_compact_decimal(Rational(1, 4)), "0.25");
  EXPECT_EQ(to_compact_decimal(Rational(2)), "2");
  EXPECT_EQ(to_compact_decimal(Rational(2, 3)), "0.666667");
  EXPECT_EQ(parse_rational("7/3"), Rational(7, 3));
  EXPECT_EQ(ratio(Rational(1), Rational(0)), 0);
}

namespace {

scoring::Evaluation sample_evaluation() {
  metrics::MetricVector v;
  v.m1_lcom = 2;
  v.m2_wmc = 1;
  v.m3_dit = 2;
  v.m4_nac = 2;
  v.m5_noc = 1;
  v.m6_cbo = 2;
  v.m7_rfc = 0;
  v.m8_nom = 0;
  v.m9_tm = 2;
  v.m10_rr = 1;
  v.m14_inr = Rational(2, 3);
  return scoring::score_metrics("diamond.ttl", v, metrics::Interpretation::kDefault);
}

}  // namespace

TEST(Report, JsonSchema) {
  auto e = sample_evaluation();
  auto j = nlohmann::json::parse(scoring::render_json(e));
  for (const char* key : {"ontology", "interpretation_mode", "metrics", "subcharacteristics",
                          "characteristics", "overall", "radar", "warnings"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["ontology"], "diamond.ttl");
  EXPECT_EQ(j["interpretation_mode"], "default");
  EXPECT_EQ(j["metrics"].size(), 14u);
  EXPECT_EQ(j["metrics"]["m14"]["score"], 4);
  EXPECT_EQ(j["subcharacteristics"].size(), 24u);
  EXPECT_EQ(j["characteristics"].size(), 7u);
}

TEST(Report, AllFivesRenderAsFive) {
  metrics::MetricVector v;
  v.m1_lcom = v.m2_wmc = v.m3_dit = v.m4_nac = v.m5_noc = v.m6_cbo = v.m7_rfc = v.m8_nom = 1;
  v.m9_tm = 1;
  v.m10_rr = v.m11_pr = v.m12_ar = v.m13_an = v.m14_inr = 1;
  auto e = scoring::score_metrics("five", v, metrics::Interpretation::kDefault);
  EXPECT_EQ(e.card.overall, 5);
  std::string json = scoring::render_json(e);
  EXPECT_NE(json.find("\"overall\": 5.00"), std::string::npos) << json;
}

TEST(Report, CsvRowCount) {
  std::string csv = scoring::render_csv(sample_evaluation());
  std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(lines, 1u + 14 + 24 + 7 + 1);
}

TEST(Report, MarkdownShowsOverall) {
  // M12 and M13 stay at 0 here, which drags F down; check the figure that is printed.
  auto e = sample_evaluation();
  std::string md = scoring::render_markdown(e);
  EXPECT_NE(md.find(to_decimal(e.card.overall, 2)), std::string::npos);
  EXPECT_NE(md.find("|"), std::string::npos);
}

TEST(Report, Formats) {
  EXPECT_EQ(scoring::parse_report_format("md"), scoring::ReportFormat::kMarkdown);
  EXPECT_EQ(scoring::report_extension(scoring::ReportFormat::kCsv), "csv");
  EXPECT_THROW(scoring::parse_report_format("xml"), std::invalid_argument);
  auto e = sample_evaluation();
  EXPECT_EQ(scoring::render_report(e, scoring::ReportFormat::kJson), scoring::render_json(e));
}
