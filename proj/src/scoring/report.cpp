#include "ontoqual/scoring/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ontoqual::scoring {

namespace {

std::string quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string two_places(const Rational& r) { return to_decimal(r, 2); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string exact(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Aggregates absent from a hand-built card render as "null" / "n/a".
std::string sub_value(const ScoreCard& card, std::string_view id, std::string_view missing) {
  auto it = card.subchar_scores.find(std::string(id));
  return it == card.subchar_scores.end() ? std::string(missing) : two_places(it->second);
}

std::string char_value(const ScoreCard& card, Characteristic c, std::string_view missing) {
  auto it = card.char_scores.find(c);
  return it == card.char_scores.end() ? std::string(missing) : two_places(it->second);
}

std::string metric_score(const ScoreCard& card, MetricId id, std::string_view missing) {
  auto it = card.metric_scores.find(id);
  return it == card.metric_scores.end() ? std::string(missing) : std::to_string(it->second);
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "md" || text == "markdown") return ReportFormat::kMarkdown;
  throw std::invalid_argument("unknown report format: " + std::string(text));
}

std::string_view report_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kMarkdown: return "md";
  }
  return "txt";
}

Evaluation score_metrics(std::string ontology, metrics::MetricVector vector,
                         metrics::Interpretation interpretation, std::vector<std::string> warnings,
                         const CriteriaTable& table) {
  Evaluation e;
  e.ontology = std::move(ontology);
  e.interpretation = interpretation;
  e.warnings = std::move(warnings);
  e.warnings.insert(e.warnings.end(), vector.warnings.begin(), vector.warnings.end());
  std::map<MetricId, int> scores;
  for (MetricId id : metrics::kAllMetrics) {
    auto normalized = normalize_with_note(id, vector.get(id), table);
    scores[id] = normalized.score;
    if (normalized.note) e.warnings.push_back(*normalized.note);
  }
  e.vector = std::move(vector);
  e.card = aggregate(scores);
  return e;
}

std::string render_json(const Evaluation& e) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"ontology\": " << quote(e.ontology) << ",\n";
  os << "  \"interpretation_mode\": " << quote(metrics::interpretation_name(e.interpretation))
     << ",\n";
  os << "  \"metrics\": {\n";
  for (std::size_t i = 0; i < metrics::kAllMetrics.size(); ++i) {
    MetricId id = metrics::kAllMetrics[i];
    const Rational& raw = e.vector.get(id);
    os << "    " << quote(metrics::metric_key(id)) << ": {\"name\": "
       << quote(metrics::metric_acronym(id)) << ", \"raw\": " << to_compact_decimal(raw)
       << ", \"raw_exact\": " << quote(exact(raw))
       << ", \"score\": " << metric_score(e.card, id, "null") << "}"
       << (i + 1 < metrics::kAllMetrics.size() ? "," : "") << "\n";
  }
  os << "  },\n";
  auto subs = association_table();
  os << "  \"subcharacteristics\": {\n";
  for (std::size_t i = 0; i < subs.size(); ++i) {
    os << "    " << quote(subs[i].id) << ": " << sub_value(e.card, subs[i].id, "null")
       << (i + 1 < subs.size() ? "," : "") << "\n";
  }
  os << "  },\n";
  os << "  \"characteristics\": {\n";
  for (std::size_t i = 0; i < kAllCharacteristics.size(); ++i) {
    Characteristic c = kAllCharacteristics[i];
    os << "    " << quote(characteristic_code(c)) << ": " << char_value(e.card, c, "null")
       << (i + 1 < kAllCharacteristics.size() ? "," : "") << "\n";
  }
  os << "  },\n";
  os << "  \"overall\": " << two_places(e.card.overall) << ",\n";
  // Radar chart inputs: one axis per characteristic and per sub-characteristic.
  os << "  \"radar\": {\n";
  os << "    \"characteristics\": {\"labels\": [";
  for (std::size_t i = 0; i < kAllCharacteristics.size(); ++i)
    os << (i ? ", " : "") << quote(characteristic_name(kAllCharacteristics[i]));
  os << "], \"values\": [";
  for (std::size_t i = 0; i < kAllCharacteristics.size(); ++i)
    os << (i ? ", " : "") << char_value(e.card, kAllCharacteristics[i], "null");
  os << "]},\n";
  os << "    \"subcharacteristics\": {\"labels\": [";
  for (std::size_t i = 0; i < subs.size(); ++i) os << (i ? ", " : "") << quote(subs[i].id);
  os << "], \"values\": [";
  for (std::size_t i = 0; i < subs.size(); ++i)
    os << (i ? ", " : "") << sub_value(e.card, subs[i].id, "null");
  os << "]}\n";
  os << "  },\n";
  os << "  \"warnings\": [";
  for (std::size_t i = 0; i < e.warnings.size(); ++i)
    os << (i ? ", " : "") << "\n    " << quote(e.warnings[i]);
  os << (e.warnings.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

std::string render_csv(const Evaluation& e) {
  std::ostringstream os;
  os << "kind,id,name,raw,score\n";
  for (MetricId id : metrics::kAllMetrics) {
    os << "metric," << metrics::metric_key(id) << "," << metrics::metric_acronym(id) << ","
       << to_compact_decimal(e.vector.get(id)) << "," << metric_score(e.card, id, "") << "\n";
  }
  for (const auto& sub : association_table()) {
    os << "subcharacteristic," << sub.id << "," << csv_field(sub.name) << ",,"
       << sub_value(e.card, sub.id, "") << "\n";
  }
  for (Characteristic c : kAllCharacteristics) {
    os << "characteristic," << characteristic_code(c) << "," << csv_field(characteristic_name(c))
       << ",," << char_value(e.card, c, "") << "\n";
  }
  os << "overall,overall,Overall,," << two_places(e.card.overall) << "\n";
  return os.str();
}

std::string render_markdown(const Evaluation& e) {
  std::ostringstream os;
  os << "# Quality report: " << e.ontology << "\n\n";
  os << "Overall score: **" << two_places(e.card.overall) << "** (M5 interpretation: "
     << metrics::interpretation_name(e.interpretation) << ")\n\n";
  os << "## Characteristics\n\n| Characteristic | Score |\n|---|---|\n";
  for (Characteristic c : kAllCharacteristics) {
    os << "| " << characteristic_name(c) << " (" << characteristic_code(c) << ") | "
       << char_value(e.card, c, "n/a") << " |\n";
  }
  os << "\n## Sub-characteristics\n\n| Id | Name | Metrics | Score |\n|---|---|---|---|\n";
  for (const auto& sub : association_table()) {
    os << "| " << sub.id << " | " << sub.name << " | ";
    for (std::size_t i = 0; i < sub.metrics.size(); ++i)
      os << (i ? ", " : "") << "M" << static_cast<int>(sub.metrics[i]);
    os << " | " << sub_value(e.card, sub.id, "n/a") << " |\n";
  }
  os << "\n## Metrics\n\n| Metric | Name | Raw | Score |\n|---|---|---|---|\n";
  for (MetricId id : metrics::kAllMetrics) {
    os << "| M" << static_cast<int>(id) << " | " << metrics::metric_acronym(id) << " | "
       << to_compact_decimal(e.vector.get(id)) << " | " << metric_score(e.card, id, "n/a")
       << " |\n";
  }
  if (!e.warnings.empty()) {
    os << "\n## Warnings\n\n";
    for (const auto& w : e.warnings) os << "- " << w << "\n";
  }
  return os.str();
}

std::string render_report(const Evaluation& e, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return render_json(e);
    case ReportFormat::kCsv: return render_csv(e);
    case ReportFormat::kMarkdown: return render_markdown(e);
  }
  return {};
}

}  // namespace ontoqual::scoring
