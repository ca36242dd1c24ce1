#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/rdf/graph.hpp"
#include "ontoqual/sparql/eval.hpp"
#include "ontoqual/util/rational.hpp"

namespace ontoqual::cq {

class SuiteFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Status { kFully, kPartially, kUnable };

std::string_view status_name(Status s);
/// Exactly "Fully", "Partially" or "Unable".
Status parse_status(std::string_view text);
/// ● ◐ ○
std::string_view status_symbol(Status s);

enum class Group { kSpaces, kEquipmentSystems, kPointsMeasurements };

std::string_view group_name(Group g);
Group parse_group(std::string_view text);

struct Entry {
  /// Absent for "N/A" entries.
  std::optional<std::string> query_path;
  std::optional<std::string> query_text;
  Status expected = Status::kUnable;
  std::string note;
};

struct Question {
  std::string id;
  std::string text;
  Group group = Group::kSpaces;
  /// Keyed by ontology name.
  std::map<std::string, Entry> entries;
};

struct CqSuite {
  std::string id;
  std::vector<Question> questions;
  /// Ontology names in order of first appearance in the suite file.
  std::vector<std::string> ontologies;
};

/// Parses suite JSON; query paths are resolved against `base_dir` and read.
CqSuite parse_suite(std::string_view json_text, const std::filesystem::path& base_dir);
CqSuite load_suite(const std::filesystem::path& file);

/// Problems that break the suite invariants (unparseable queries). Empty
/// when the suite is valid.
std::vector<std::string> validate_suite(const CqSuite& suite);

struct Outcome {
  std::string question_id;
  std::string ontology;
  Status expected = Status::kUnable;
  bool has_query = false;
  bool parsed = false;
  bool executed = false;
  std::size_t rows = 0;
  std::optional<std::string> error;
  /// Expected an answer but the query failed or returned no rows.
  bool regression = false;
};

struct Tally {
  std::size_t fully = 0;
  std::size_t partially = 0;
  std::size_t unable = 0;
  Rational weighted = 0;
  std::size_t total() const { return fully + partially + unable; }
};

struct CqReport {
  std::string suite_id;
  sparql::Inference inference = sparql::Inference::kNone;
  std::vector<std::string> ontologies;
  /// Question order, then ontology order.
  std::vector<Outcome> outcomes;
  std::map<std::string, Tally> tallies;

  bool any_error() const;
  std::size_t regressions() const;
  const Outcome* find(std::string_view question_id, std::string_view ontology) const;
};

/// Tallies expected statuses per ontology: fully + 0.5 * partially.
std::map<std::string, Tally> tally(const CqSuite& suite);

/// Runs every entry. Query failures are recorded, never thrown.
CqReport run_suite(const CqSuite& suite, const std::map<std::string, rdf::Graph>& graphs,
                   sparql::Inference inference);

std::string report_to_json(const CqReport& report);
/// Circle matrix, one row per question plus count rows.
std::string report_to_markdown(const CqSuite& suite, const CqReport& report);

}  // namespace ontoqual::cq
