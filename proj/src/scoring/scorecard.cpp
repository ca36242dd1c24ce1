#include "ontoqual/scoring/scorecard.hpp"

namespace ontoqual::scoring {

namespace {

using M = MetricId;
using C = Characteristic;

const std::vector<SubCharacteristic> kAssociations = {
    {"S-FRS", "Formal Relations Support", C::kS, {M::kM10}},
    {"S-C", "Cohesion", C::kS, {M::kM1}},
    {"S-T", "Tangledness", C::kS, {M::kM9}},
    {"S-R", "Redundancy", C::kS, {M::kM13}},
    {"F-CV", "Controlled Vocabulary", C::kF, {M::kM13}},
    {"F-SVR", "Schema and Value Reconciliation", C::kF, {M::kM10, M::kM12, M::kM13}},
    {"F-CSQ", "Consistent Search and Query", C::kF, {M::kM10, M::kM12, M::kM14}},
    {"F-KA", "Knowledge Acquisition", C::kF, {M::kM13, M::kM10, M::kM8}},
    {"F-S", "Similarity", C::kF, {M::kM10, M::kM12}},
    {"F-IL", "Indexing and Linking", C::kF, {M::kM10, M::kM12, M::kM14}},
    {"F-RR", "Results Representation", C::kF, {M::kM12}},
    {"F-GDT", "Guidance and Decision Trees", C::kF, {M::kM14, M::kM12}},
    {"F-KU", "Knowledge Use", C::kF, {M::kM13, M::kM12, M::kM14, M::kM8, M::kM1, M::kM4}},
    {"M-M", "Modularity", C::kM, {M::kM2, M::kM6}},
    {"M-R", "Reusability", C::kM, {M::kM2, M::kM3, M::kM5, M::kM7, M::kM8, M::kM6}},
    {"M-A", "Analysability", C::kM, {M::kM2, M::kM3, M::kM1, M::kM7, M::kM8, M::kM6}},
    {"M-C", "Changeability", C::kM, {M::kM2, M::kM3, M::kM1, M::kM7, M::kM8, M::kM6, M::kM5}},
    {"M-MS", "Modification Stability", C::kM, {M::kM2, M::kM6, M::kM1, M::kM7, M::kM5}},
    {"M-T", "Testability", C::kM, {M::kM2, M::kM3, M::kM1, M::kM7, M::kM8, M::kM6}},
    {"T-A", "Adaptability", C::kT, {M::kM2, M::kM3, M::kM7, M::kM6}},
    {"R-R", "Recoverability", C::kR, {M::kM2, M::kM3, M::kM8, M::kM1}},
    {"R-A", "Availability", C::kR, {M::kM1}},
    {"C-R", "Replaceability", C::kC, {M::kM2, M::kM3, M::kM5, M::kM8}},
    {"O-L", "Learnability", C::kO, {M::kM2, M::kM1, M::kM7, M::kM8, M::kM6, M::kM5}},
};

}  // namespace

std::string_view characteristic_code(Characteristic c) {
  switch (c) {
    case C::kS: return "S";
    case C::kF: return "F";
    case C::kM: return "M";
    case C::kT: return "T";
    case C::kR: return "R";
    case C::kC: return "C";
    case C::kO: return "O";
  }
  return "?";
}

std::string_view characteristic_name(Characteristic c) {
  switch (c) {
    case C::kS: return "Structural";
    case C::kF: return "Functional Adequacy";
    case C::kM: return "Maintainability";
    case C::kT: return "Transferability";
    case C::kR: return "Reliability";
    case C::kC: return "Compatibility";
    case C::kO: return "Operability";
  }
  return "?";
}

Characteristic parse_characteristic(std::string_view code) {
  for (Characteristic c : kAllCharacteristics)
    if (characteristic_code(c) == code) return c;
  throw std::invalid_argument("unknown characteristic: " + std::string(code));
}

std::span<const SubCharacteristic> association_table() { return kAssociations; }

Rational overall_from_characteristics(const std::map<Characteristic, Rational>& scores) {
  Rational sum = 0;
  for (Characteristic c : kAllCharacteristics) {
    auto it = scores.find(c);
    if (it == scores.end())
      throw std::invalid_argument("missing characteristic score: " +
                                  std::string(characteristic_code(c)));
    sum += it->second;
  }
  return sum / static_cast<int>(kAllCharacteristics.size());
}

ScoreCard aggregate(const std::map<MetricId, int>& metric_scores,
                    std::span<const SubCharacteristic> associations) {
  for (MetricId id : metrics::kAllMetrics) {
    auto it = metric_scores.find(id);
    if (it == metric_scores.end()) throw MissingMetric(id);
    if (it->second < 1 || it->second > 5)
      throw std::invalid_argument("metric score out of range for " + metrics::metric_key(id));
  }
  ScoreCard card;
  card.metric_scores = metric_scores;
  std::map<Characteristic, std::pair<Rational, int>> sums;
  for (const auto& sub : associations) {
    Rational total = 0;
    for (MetricId m : sub.metrics) total += metric_scores.at(m);
    Rational mean = total / static_cast<int>(sub.metrics.size());
    card.subchar_scores.emplace(std::string(sub.id), mean);
    auto& [sum, count] = sums[sub.characteristic];
    sum += mean;
    ++count;
  }
  for (const auto& [c, acc] : sums) card.char_scores.emplace(c, acc.first / acc.second);
  card.overall = overall_from_characteristics(card.char_scores);
  return card;
}

}  // namespace ontoqual::scoring
