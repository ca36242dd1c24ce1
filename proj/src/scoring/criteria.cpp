#include "ontoqual/scoring/criteria.hpp"

namespace ontoqual::scoring {

bool Band::contains(const Rational& raw) const {
  bool above = lower_inclusive ? raw >= lower : raw > lower;
  bool below = !upper || raw <= *upper;
  return above && below;
}

namespace {

MetricCriteria lower(MetricId id, int a, int b, int c, int d,
                     std::array<std::string_view, 5> captions) {
  return {id, Direction::kLowerIsBetter, {Rational(a), Rational(b), Rational(c), Rational(d)},
          captions};
}

MetricCriteria percent(MetricId id) {
  return {id,
          Direction::kHigherIsBetter,
          {Rational(1, 5), Rational(2, 5), Rational(3, 5), Rational(4, 5)},
          {"[0,20]%", "(20-40]%", "(40-60]%", "(60-80]%", ">80%"}};
}

// Metrics whose best band is printed as "[1, x]".
bool closed_from_one(MetricId id) {
  switch (id) {
    case MetricId::kM3:
    case MetricId::kM4:
    case MetricId::kM5:
    case MetricId::kM6:
    case MetricId::kM7:
      return true;
    default:
      return false;
  }
}

}  // namespace

const CriteriaTable& CriteriaTable::standard() {
  static const CriteriaTable table({
      lower(MetricId::kM1, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "<=2"}),
      lower(MetricId::kM2, 5, 8, 11, 15, {">15", "(11,15]", "(8,11]", "(5, 8]", "<=5"}),
      lower(MetricId::kM3, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "[1,2]"}),
      lower(MetricId::kM4, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "[1,2]"}),
      lower(MetricId::kM5, 3, 6, 8, 12, {">12", "(8-12]", "(6,8]", "(3,6]", "[1,3]"}),
      lower(MetricId::kM6, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "[1,2]"}),
      lower(MetricId::kM7, 3, 6, 8, 12, {">12", "(8-12]", "(6-8]", "(3-6]", "[1-3]"}),
      lower(MetricId::kM8, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "<=2"}),
      lower(MetricId::kM9, 2, 4, 6, 8, {">8", "(6-8]", "(4,6]", "(2, 4]", "(0,2]"}),
      percent(MetricId::kM10),
      percent(MetricId::kM11),
      percent(MetricId::kM12),
      percent(MetricId::kM13),
      percent(MetricId::kM14),
  });
  return table;
}

CriteriaTable::CriteriaTable(std::vector<MetricCriteria> rows) : rows_(std::move(rows)) {}

const MetricCriteria& CriteriaTable::criteria(MetricId id) const {
  for (const auto& row : rows_)
    if (row.metric == id) return row;
  throw UnknownMetric(metrics::metric_key(id));
}

std::vector<Band> CriteriaTable::bands(MetricId id) const {
  const auto& c = criteria(id);
  std::vector<Band> out;
  const bool lower_better = c.direction == Direction::kLowerIsBetter;
  auto score_at = [&](int i) { return lower_better ? 5 - i : i + 1; };
  out.push_back({Rational(0), true, c.cuts[0], score_at(0)});
  for (int i = 1; i < 4; ++i) out.push_back({c.cuts[i - 1], false, c.cuts[i], score_at(i)});
  out.push_back({c.cuts[3], false, std::nullopt, score_at(4)});
  return out;
}

namespace {

int band_score(const MetricCriteria& c, const Rational& raw) {
  const bool lower_better = c.direction == Direction::kLowerIsBetter;
  for (int i = 0; i < 4; ++i) {
    if (raw <= c.cuts[i]) return lower_better ? 5 - i : i + 1;
  }
  return lower_better ? 1 : 5;
}

}  // namespace

NormalizedScore normalize_with_note(MetricId metric, const Rational& raw,
                                    const CriteriaTable& table) {
  if (raw < 0) throw std::invalid_argument("raw metric value must be non-negative");
  const auto& c = table.criteria(metric);
  // Values above 1 already land in the top ratio band, so clamping only adds the note.
  NormalizedScore out{band_score(c, raw), std::nullopt};
  const std::string key = metrics::metric_key(metric);
  if (c.direction == Direction::kLowerIsBetter) {
    if (metric == MetricId::kM9 && raw == 0) {
      out.note = key + ": raw 0 (no multiple inheritance) scored 5";
    } else if (closed_from_one(metric) && raw < 1) {
      out.note = key + ": raw " + to_compact_decimal(raw) + " below 1 scored 5";
    }
  } else if (raw > 1) {
    out.note = key + ": raw " + to_compact_decimal(raw) + " above 100% clamped to 100%";
  }
  return out;
}

int normalize(MetricId metric, const Rational& raw, const CriteriaTable& table) {
  if (raw < 0) throw std::invalid_argument("raw metric value must be non-negative");
  return band_score(table.criteria(metric), raw);
}

int normalize(std::string_view metric, const Rational& raw, const CriteriaTable& table) {
  MetricId id;
  try {
    id = metrics::parse_metric_id(metric);
  } catch (const std::invalid_argument&) {
    throw UnknownMetric(std::string(metric));
  }
  return normalize(id, raw, table);
}

}  // namespace ontoqual::scoring
