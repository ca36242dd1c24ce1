#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/metrics/metrics.hpp"
#include "ontoqual/scoring/criteria.hpp"
#include "ontoqual/scoring/scorecard.hpp"

namespace ontoqual::scoring {

enum class ReportFormat { kJson, kCsv, kMarkdown };

ReportFormat parse_report_format(std::string_view text);
std::string_view report_extension(ReportFormat format);

/// Everything one evaluated ontology reports.
struct Evaluation {
  std::string ontology;
  metrics::Interpretation interpretation = metrics::Interpretation::kDefault;
  metrics::MetricVector vector;
  ScoreCard card;
  std::vector<std::string> warnings;
};

/// Normalizes every raw metric and aggregates; band notes and the vector's
/// own warnings are appended to `warnings`.
Evaluation score_metrics(std::string ontology, metrics::MetricVector vector,
                         metrics::Interpretation interpretation,
                         std::vector<std::string> warnings = {},
                         const CriteriaTable& table = CriteriaTable::standard());

/// Stable-key JSON:
/// {"ontology", "interpretation_mode", "metrics": {"m1": {"name", "raw",
/// "raw_exact", "score"}}, "subcharacteristics", "characteristics",
/// "overall", "radar", "warnings"}. Aggregates carry two decimals.
std::string render_json(const Evaluation& e);

/// Header plus one row per metric, sub-characteristic, characteristic and the
/// overall score.
std::string render_csv(const Evaluation& e);

std::string render_markdown(const Evaluation& e);

std::string render_report(const Evaluation& e, ReportFormat format);

}  // namespace ontoqual::scoring
