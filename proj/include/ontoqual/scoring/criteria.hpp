#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/metrics/metrics.hpp"
#include "ontoqual/util/rational.hpp"

namespace ontoqual::scoring {

using metrics::MetricId;

class UnknownMetric : public std::invalid_argument {
 public:
  explicit UnknownMetric(const std::string& metric)
      : std::invalid_argument("unknown metric: " + metric) {}
};

enum class Direction { kLowerIsBetter, kHigherIsBetter };

/// One interval of the raw-value axis and the score it maps to.
struct Band {
  Rational lower;
  bool lower_inclusive;
  std::optional<Rational> upper;  // nullopt = unbounded
  int score;

  bool contains(const Rational& raw) const;
};

/// Evaluation criteria of one metric.
///
/// `cuts` are the four interior band edges in ascending order. Every band is
/// closed on the right: for lower-is-better metrics raw <= cuts[0] scores 5,
/// (cuts[0], cuts[1]] scores 4, and so on down to 1 above cuts[3]. For the
/// ratio metrics raw <= cuts[0] scores 1 up to 5 above cuts[3], with raw
/// clamped to 1 first.
struct MetricCriteria {
  MetricId metric;
  Direction direction;
  std::array<Rational, 4> cuts;
  /// Band captions for scores 1..5, as printed in the criteria table.
  std::array<std::string_view, 5> captions;
};

struct NormalizedScore {
  int score;
  /// Set when a clamping convention decided the band.
  std::optional<std::string> note;
};

class CriteriaTable {
 public:
  /// The OQuaRE criteria for M1..M14.
  static const CriteriaTable& standard();

  explicit CriteriaTable(std::vector<MetricCriteria> rows);

  const MetricCriteria& criteria(MetricId id) const;

  /// Disjoint bands covering [0, inf), ordered by raw value.
  std::vector<Band> bands(MetricId id) const;

 private:
  std::vector<MetricCriteria> rows_;
};

/// Maps a raw value to its 1..5 score. Throws std::invalid_argument for
/// negative raw values.
int normalize(MetricId metric, const Rational& raw,
              const CriteriaTable& table = CriteriaTable::standard());

/// String-keyed variant ("m1".."m14"); throws UnknownMetric.
int normalize(std::string_view metric, const Rational& raw,
              const CriteriaTable& table = CriteriaTable::standard());

/// normalize() plus a note when raw fell outside the printed bands
/// (M9 = 0, ratio metrics above 1, values below a "[1, x]" bottom band).
NormalizedScore normalize_with_note(MetricId metric, const Rational& raw,
                                    const CriteriaTable& table = CriteriaTable::standard());

}  // namespace ontoqual::scoring
