#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/ontology/view.hpp"
#include "ontoqual/util/rational.hpp"

namespace ontoqual::metrics {

/// Identifiers M1..M14, in table order.
enum class MetricId : int {
  kM1 = 1, kM2, kM3, kM4, kM5, kM6, kM7, kM8, kM9, kM10, kM11, kM12, kM13, kM14
};

inline constexpr std::size_t kMetricCount = 14;
inline constexpr std::array<MetricId, kMetricCount> kAllMetrics = {
    MetricId::kM1,  MetricId::kM2,  MetricId::kM3,  MetricId::kM4,  MetricId::kM5,
    MetricId::kM6,  MetricId::kM7,  MetricId::kM8,  MetricId::kM9,  MetricId::kM10,
    MetricId::kM11, MetricId::kM12, MetricId::kM13, MetricId::kM14};

/// "m1" .. "m14".
std::string metric_key(MetricId id);
/// "LCOMOnto", "WMCOnto", ...
std::string_view metric_acronym(MetricId id);
/// Parses "m7", "M7" or "7". Throws std::invalid_argument.
MetricId parse_metric_id(std::string_view text);

/// How M5 (children per leaf) is read. The literal wording is identically
/// zero; the default reading uses subclass edges per class with children.
enum class Interpretation { kDefault, kLiteral };

std::string_view interpretation_name(Interpretation mode);
Interpretation parse_interpretation(std::string_view text);

/// How M1 averages path lengths.
enum class PathAveraging {
  /// Mean over every leaf-to-Thing path.
  kPooled,
  /// Mean over leaves of each leaf's mean path length.
  kPerLeaf,
};

struct MetricVector {
  Rational m1_lcom, m2_wmc, m3_dit, m4_nac, m5_noc, m6_cbo, m7_rfc, m8_nom, m9_tm;
  Rational m10_rr, m11_pr, m12_ar, m13_an, m14_inr;
  /// Notes about empty denominators and similar conventions.
  std::vector<std::string> warnings;

  const Rational& get(MetricId id) const;
  Rational& get(MetricId id);

  /// Exact equality of the 14 values (warnings ignored).
  bool same_values(const MetricVector& other) const;
};

struct PathMetrics {
  Rational m1, m2, m3;
};
struct DegreeMetrics {
  Rational m4, m5;
};
struct CouplingMetrics {
  Rational m6, m7, m8;
};
struct RichnessMetrics {
  Rational m10, m11, m12, m13, m14;
};

// The view-based functions never throw: a view always holds >= 1 class.
// Empty denominators yield 0 and append to `warnings` when it is non-null.

PathMetrics compute_path_metrics(const ontology::OntologyView& view,
                                 PathAveraging averaging = PathAveraging::kPooled,
                                 std::vector<std::string>* warnings = nullptr);
DegreeMetrics compute_degree_metrics(const ontology::OntologyView& view, Interpretation interp,
                                     std::vector<std::string>* warnings = nullptr);
CouplingMetrics compute_coupling_metrics(const ontology::OntologyView& view,
                                         std::vector<std::string>* warnings = nullptr);
Rational compute_tangledness(const ontology::OntologyView& view,
                             std::vector<std::string>* warnings = nullptr);
RichnessMetrics compute_richness_metrics(const ontology::OntologyView& view,
                                         std::vector<std::string>* warnings = nullptr);

MetricVector compute_metric_vector(const ontology::OntologyView& view,
                                   Interpretation interp = Interpretation::kDefault);

}  // namespace ontoqual::metrics
