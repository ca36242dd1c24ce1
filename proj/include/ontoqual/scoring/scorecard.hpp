#pragma once

#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/metrics/metrics.hpp"
#include "ontoqual/util/rational.hpp"

namespace ontoqual::scoring {

using metrics::MetricId;

enum class Characteristic { kS, kF, kM, kT, kR, kC, kO };

inline constexpr std::array<Characteristic, 7> kAllCharacteristics = {
    Characteristic::kS, Characteristic::kF, Characteristic::kM, Characteristic::kT,
    Characteristic::kR, Characteristic::kC, Characteristic::kO};

/// "S", "F", ...
std::string_view characteristic_code(Characteristic c);
/// "Structural", "Functional Adequacy", ...
std::string_view characteristic_name(Characteristic c);
Characteristic parse_characteristic(std::string_view code);

struct SubCharacteristic {
  std::string_view id;  // "S-FRS"
  std::string_view name;
  Characteristic characteristic;
  std::vector<MetricId> metrics;
};

/// Association table: 24 sub-characteristics in table order.
std::span<const SubCharacteristic> association_table();

class MissingMetric : public std::invalid_argument {
 public:
  explicit MissingMetric(MetricId id)
      : std::invalid_argument("missing metric score: " + metrics::metric_key(id)), id_(id) {}
  MetricId metric() const { return id_; }

 private:
  MetricId id_;
};

struct ScoreCard {
  std::map<MetricId, int> metric_scores;
  std::map<std::string, Rational> subchar_scores;
  std::map<Characteristic, Rational> char_scores;
  Rational overall;
};

/// Sub-characteristic = mean of member metric scores; characteristic = mean
/// of its sub-characteristics; overall = mean of the seven characteristics.
ScoreCard aggregate(const std::map<MetricId, int>& metric_scores,
                    std::span<const SubCharacteristic> associations = association_table());

/// Mean of the seven characteristic scores; throws std::invalid_argument if
/// one is missing.
Rational overall_from_characteristics(const std::map<Characteristic, Rational>& scores);

}  // namespace ontoqual::scoring
