#include "ontoqual/cq/suite.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ontoqual/sparql/query.hpp"

namespace ontoqual::cq {

using nlohmann::ordered_json;

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kFully: return "Fully";
    case Status::kPartially: return "Partially";
    case Status::kUnable: return "Unable";
  }
  return "";
}

Status parse_status(std::string_view text) {
  if (text == "Fully") return Status::kFully;
  if (text == "Partially") return Status::kPartially;
  if (text == "Unable") return Status::kUnable;
  throw SuiteFormatError("invalid status '" + std::string(text) +
                         "' (expected Fully, Partially or Unable)");
}

std::string_view status_symbol(Status s) {
  switch (s) {
    case Status::kFully: return "●";
    case Status::kPartially: return "◐";
    case Status::kUnable: return "○";
  }
  return "";
}

std::string_view group_name(Group g) {
  switch (g) {
    case Group::kSpaces: return "Spaces";
    case Group::kEquipmentSystems: return "EquipmentSystems";
    case Group::kPointsMeasurements: return "PointsMeasurements";
  }
  return "";
}

Group parse_group(std::string_view text) {
  if (text == "Spaces") return Group::kSpaces;
  if (text == "EquipmentSystems") return Group::kEquipmentSystems;
  if (text == "PointsMeasurements") return Group::kPointsMeasurements;
  throw SuiteFormatError("invalid group '" + std::string(text) + "'");
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SuiteFormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SuiteFormatError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw SuiteFormatError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

CqSuite parse_suite(std::string_view json_text, const std::filesystem::path& base_dir) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SuiteFormatError(std::string("invalid suite JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SuiteFormatError("suite must be a JSON object");
  CqSuite suite;
  suite.id = require_string(doc, "suite", "suite");
  const auto& questions = require(doc, "questions", "suite");
  if (!questions.is_array()) throw SuiteFormatError("suite: \"questions\" must be an array");

  for (const auto& q : questions) {
    if (!q.is_object()) throw SuiteFormatError("question must be an object");
    Question question;
    question.id = require_string(q, "id", "question");
    std::string where = "question " + question.id;
    question.text = require_string(q, "text", where);
    question.group = parse_group(require_string(q, "group", where));
    const auto& entries = require(q, "entries", where);
    if (!entries.is_object()) throw SuiteFormatError(where + ": \"entries\" must be an object");
    for (const auto& [ontology, e] : entries.items()) {
      std::string ewhere = where + " / " + ontology;
      if (!e.is_object()) throw SuiteFormatError(ewhere + ": entry must be an object");
      Entry entry;
      entry.expected = parse_status(require_string(e, "expected", ewhere));
      if (auto it = e.find("note"); it != e.end() && it->is_string()) entry.note = *it;
      const auto& query = require(e, "query", ewhere);
      if (query.is_string() && query.get<std::string>() != "N/A") {
        entry.query_path = query.get<std::string>();
        entry.query_text = read_file(base_dir / *entry.query_path);
      } else if (!query.is_null() && !query.is_string()) {
        throw SuiteFormatError(ewhere + ": \"query\" must be a path or null");
      }
      if (!entry.query_path && entry.expected != Status::kUnable)
        throw SuiteFormatError(ewhere + ": an N/A entry must be expected Unable");
      if (std::find(suite.ontologies.begin(), suite.ontologies.end(), ontology) ==
          suite.ontologies.end())
        suite.ontologies.push_back(ontology);
      if (!question.entries.emplace(ontology, std::move(entry)).second)
        throw SuiteFormatError(ewhere + ": duplicate entry");
    }
    suite.questions.push_back(std::move(question));
  }
  return suite;
}

CqSuite load_suite(const std::filesystem::path& file) {
  return parse_suite(read_file(file), file.parent_path());
}

std::vector<std::string> validate_suite(const CqSuite& suite) {
  std::vector<std::string> problems;
  for (const auto& q : suite.questions) {
    for (const auto& [ontology, e] : q.entries) {
      if (!e.query_text) continue;
      try {
        sparql::parse_query(*e.query_text);
      } catch (const std::exception& ex) {
        problems.push_back(q.id + " / " + ontology + ": " + ex.what());
      }
    }
  }
  return problems;
}

bool CqReport::any_error() const {
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [](const Outcome& o) { return o.error.has_value(); });
}

std::size_t CqReport::regressions() const {
  return static_cast<std::size_t>(std::count_if(
      outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.regression; }));
}

const Outcome* CqReport::find(std::string_view question_id, std::string_view ontology) const {
  for (const auto& o : outcomes)
    if (o.question_id == question_id && o.ontology == ontology) return &o;
  return nullptr;
}

std::map<std::string, Tally> tally(const CqSuite& suite) {
  std::map<std::string, Tally> out;
  for (const auto& name : suite.ontologies) out[name];
  for (const auto& q : suite.questions) {
    for (const auto& [ontology, e] : q.entries) {
      Tally& t = out[ontology];
      switch (e.expected) {
        case Status::kFully: ++t.fully; break;
        case Status::kPartially: ++t.partially; break;
        case Status::kUnable: ++t.unable; break;
      }
    }
  }
  for (auto& [_, t] : out) t.weighted = Rational(t.fully) + Rational(t.partially) / 2;
  return out;
}

CqReport run_suite(const CqSuite& suite, const std::map<std::string, rdf::Graph>& graphs,
                   sparql::Inference inference) {
  CqReport report;
  report.suite_id = suite.id;
  report.inference = inference;
  report.ontologies = suite.ontologies;
  report.tallies = tally(suite);
  for (const auto& q : suite.questions) {
    for (const auto& ontology : suite.ontologies) {
      auto it = q.entries.find(ontology);
      if (it == q.entries.end()) continue;
      const Entry& e = it->second;
      Outcome o;
      o.question_id = q.id;
      o.ontology = ontology;
      o.expected = e.expected;
      o.has_query = e.query_text.has_value();
      if (o.has_query) {
        std::optional<sparql::Query> query;
        try {
          query = sparql::parse_query(*e.query_text);
          o.parsed = true;
        } catch (const std::exception& ex) {
          o.error = ex.what();
        }
        auto g = graphs.find(ontology);
        if (query && g == graphs.end()) {
          o.error = "no graph for ontology " + ontology;
        } else if (query) {
          try {
            o.rows = sparql::evaluate(*query, g->second, inference).rows.size();
            o.executed = true;
          } catch (const std::exception& ex) {
            o.error = ex.what();
          }
        }
      }
      o.regression = e.expected != Status::kUnable && (!o.executed || o.rows == 0);
      report.outcomes.push_back(std::move(o));
    }
  }
  return report;
}

std::string report_to_json(const CqReport& report) {
  ordered_json doc;
  doc["suite"] = report.suite_id;
  doc["inference"] = std::string(sparql::inference_name(report.inference));
  ordered_json tallies = ordered_json::object();
  for (const auto& name : report.ontologies) {
    const Tally& t = report.tallies.at(name);
    ordered_json j;
    j["fully"] = t.fully;
    j["partially"] = t.partially;
    j["unable"] = t.unable;
    j["total"] = t.total();
    j["weighted"] = to_compact_decimal(t.weighted);
    tallies[name] = std::move(j);
  }
  doc["tallies"] = std::move(tallies);
  ordered_json outcomes = ordered_json::array();
  for (const auto& o : report.outcomes) {
    ordered_json j;
    j["question"] = o.question_id;
    j["ontology"] = o.ontology;
    j["expected"] = std::string(status_name(o.expected));
    j["has_query"] = o.has_query;
    j["parsed"] = o.parsed;
    j["executed"] = o.executed;
    j["rows"] = o.rows;
    j["error"] = o.error ? ordered_json(*o.error) : ordered_json(nullptr);
    j["regression"] = o.regression;
    outcomes.push_back(std::move(j));
  }
  doc["outcomes"] = std::move(outcomes);
  doc["regressions"] = report.regressions();
  return doc.dump(2) + "\n";
}

std::string report_to_markdown(const CqSuite& suite, const CqReport& report) {
  std::ostringstream out;
  out << "# " << suite.id << "\n\n";
  out << "Inference: " << sparql::inference_name(report.inference) << "\n\n";
  out << "| # | Group | Question |";
  for (const auto& name : report.ontologies) out << " " << name << " |";
  out << "\n|---|---|---|";
  for (std::size_t i = 0; i < report.ontologies.size(); ++i) out << ":---:|";
  out << "\n";
  for (const auto& q : suite.questions) {
    out << "| " << q.id << " | " << group_name(q.group) << " | " << q.text << " |";
    for (const auto& name : report.ontologies) {
      auto it = q.entries.find(name);
      out << " ";
      if (it != q.entries.end()) {
        out << status_symbol(it->second.expected);
        const Outcome* o = report.find(q.id, name);
        if (o && o->regression) out << " !";
      }
      out << " |";
    }
    out << "\n";
  }
  auto count_row = [&](const char* label, auto field) {
    out << "| | | " << label << " |";
    for (const auto& name : report.ontologies) out << " " << field(report.tallies.at(name)) << " |";
    out << "\n";
  };
  count_row("Fully ●", [](const Tally& t) { return std::to_string(t.fully); });
  count_row("Partially ◐", [](const Tally& t) { return std::to_string(t.partially); });
  count_row("Unable ○", [](const Tally& t) { return std::to_string(t.unable); });
  count_row("Weighted", [](const Tally& t) { return to_compact_decimal(t.weighted); });
  out << "\n● Fully answered, ◐ Partially answered, ○ Unable to answer. "
         "`!` marks an entry whose query failed or returned no rows.\n";
  return out.str();
}

}  // namespace ontoqual::cq
