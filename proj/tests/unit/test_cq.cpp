#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "ontoqual/cq/suite.hpp"
#include "ontoqual/rdf/turtle.hpp"

using namespace ontoqual;
using cq::Status;

namespace {

namespace fs = std::filesystem;

const fs::path kSuiteDir = fs::path(ONTOQUAL_SOURCE_DIR) / "data/cq/energy_audits";

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("ontoqual-cq-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name) << content;
  }

 private:
  fs::path path_;
};

// Three questions for one ontology: one per status.
const char* kToySuite = R"({
  "suite": "toy",
  "questions": [
    {"id": "#1", "text": "Rooms?", "group": "Spaces",
     "entries": {"Toy": {"query": "rooms.rq", "expected": "Fully", "note": ""}}},
    {"id": "#2", "text": "Floors?", "group": "Spaces",
     "entries": {"Toy": {"query": "floors.rq", "expected": "Partially", "note": "no area"}}},
    {"id": "#3", "text": "Meters?", "group": "PointsMeasurements",
     "entries": {"Toy": {"query": "N/A", "expected": "Unable", "note": "not modelled"}}}
  ]
})";

const char* kRooms = "PREFIX ex: <http://example.org/>\nSELECT ?r WHERE { ?r a ex:Room }\n";
const char* kFloors = "PREFIX ex: <http://example.org/>\nSELECT ?f WHERE { ?f a ex:Floor }\n";

std::map<std::string, rdf::Graph> toy_graphs(const std::string& ttl) {
  std::map<std::string, rdf::Graph> graphs;
  graphs.emplace("Toy", rdf::parse_turtle("@prefix ex: <http://example.org/> .\n" + ttl));
  return graphs;
}

std::map<std::string, rdf::Graph> bundled_graphs() {
  std::map<std::string, rdf::Graph> graphs;
  for (const char* name : {"Brick", "RECore", "Haystack", "DB"}) {
    graphs.emplace(name, rdf::parse_turtle_file((kSuiteDir / "models" / (std::string(name) + ".ttl")).string()));
  }
  return graphs;
}

}  // namespace

TEST(Suite, StatusNamesAndSymbols) {
  EXPECT_EQ(cq::parse_status("Partially"), Status::kPartially);
  EXPECT_THROW(cq::parse_status("partial"), cq::SuiteFormatError);
  EXPECT_EQ(cq::status_symbol(Status::kFully), "●");
  EXPECT_EQ(cq::status_symbol(Status::kPartially), "◐");
  EXPECT_EQ(cq::status_symbol(Status::kUnable), "○");
  EXPECT_EQ(cq::parse_group("EquipmentSystems"), cq::Group::kEquipmentSystems);
}

TEST(Suite, ToyCounts) {
  TempDir dir;
  dir.write("rooms.rq", kRooms);
  dir.write("floors.rq", kFloors);
  auto suite = cq::parse_suite(kToySuite, dir.path());
  auto tallies = cq::tally(suite);
  const auto& t = tallies.at("Toy");
  EXPECT_EQ(t.fully, 1u);
  EXPECT_EQ(t.partially, 1u);
  EXPECT_EQ(t.unable, 1u);
  EXPECT_EQ(t.weighted, Rational(3, 2));
  EXPECT_TRUE(cq::validate_suite(suite).empty());
}

TEST(Suite, ToyRunAndMarkdown) {
  TempDir dir;
  dir.write("rooms.rq", kRooms);
  dir.write("floors.rq", kFloors);
  auto suite = cq::parse_suite(kToySuite, dir.path());
  auto report = cq::run_suite(suite, toy_graphs("ex:r a ex:Room . ex:f a ex:Floor ."),
                              sparql::Inference::kNone);
  EXPECT_EQ(report.regressions(), 0u);
  EXPECT_FALSE(report.any_error());
  const auto* o = report.find("#1", "Toy");
  ASSERT_NE(o, nullptr);
  EXPECT_TRUE(o->parsed && o->executed);
  EXPECT_EQ(o->rows, 1u);
  EXPECT_FALSE(report.find("#3", "Toy")->has_query);

  std::string md = cq::report_to_markdown(suite, report);
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = md.find(needle); pos != std::string::npos; pos = md.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_NE(md.find("| #1 | Spaces | Rooms? | ● |"), std::string::npos) << md;
  EXPECT_NE(md.find("| #2 | Spaces | Floors? | ◐ |"), std::string::npos) << md;
  EXPECT_NE(md.find("| #3 | PointsMeasurements | Meters? | ○ |"), std::string::npos) << md;
  EXPECT_GE(count("●"), 1u);
  EXPECT_NE(md.find("Weighted | 1.5"), std::string::npos) << md;
}

TEST(Suite, EmptyResultIsARegression) {
  TempDir dir;
  dir.write("rooms.rq", kRooms);
  dir.write("floors.rq", kFloors);
  auto suite = cq::parse_suite(kToySuite, dir.path());
  auto report = cq::run_suite(suite, toy_graphs("ex:f a ex:Floor ."), sparql::Inference::kNone);
  EXPECT_EQ(report.regressions(), 1u);
  EXPECT_TRUE(report.find("#1", "Toy")->regression);
  EXPECT_FALSE(report.find("#2", "Toy")->regression);
  EXPECT_NE(cq::report_to_markdown(suite, report).find("● !"), std::string::npos);
}

TEST(Suite, QueryErrorsAreCaptured) {
  TempDir dir;
  dir.write("rooms.rq", "PREFIX ex: <http://example.org/>\nSELECT ?r WHERE { ?r a ex:Room } ORDER BY ?r");
  dir.write("floors.rq", kFloors);
  auto suite = cq::parse_suite(kToySuite, dir.path());
  EXPECT_EQ(cq::validate_suite(suite).size(), 1u);
  auto report = cq::run_suite(suite, toy_graphs("ex:f a ex:Floor ."), sparql::Inference::kNone);
  EXPECT_TRUE(report.any_error());
  const auto* o = report.find("#1", "Toy");
  EXPECT_FALSE(o->parsed);
  ASSERT_TRUE(o->error.has_value());
  EXPECT_NE(o->error->find("ORDER BY"), std::string::npos);

  auto missing = cq::run_suite(suite, {}, sparql::Inference::kNone);
  EXPECT_TRUE(missing.any_error());
}

TEST(Suite, FormatErrors) {
  TempDir dir;
  EXPECT_THROW(cq::parse_suite("{", dir.path()), cq::SuiteFormatError);
  EXPECT_THROW(cq::parse_suite(R"({"suite": "x"})", dir.path()), cq::SuiteFormatError);
  EXPECT_THROW(cq::parse_suite(R"({"suite": "x", "questions": [{"id": "#1", "text": "t",
      "group": "Spaces", "entries": {"A": {"query": null, "expected": "Fully"}}}]})",
                               dir.path()),
               cq::SuiteFormatError);
  EXPECT_THROW(cq::parse_suite(R"({"suite": "x", "questions": [{"id": "#1", "text": "t",
      "group": "Spaces", "entries": {"A": {"query": "missing.rq", "expected": "Fully"}}}]})",
                               dir.path()),
               cq::SuiteFormatError);
}

TEST(Suite, CountIdentityOnRandomMatrices) {
  std::mt19937 rng(6);
  const char* statuses[] = {"Fully", "Partially", "Unable"};
  for (int round = 0; round < 100; ++round) {
    nlohmann::json j;
    j["suite"] = "random";
    j["questions"] = nlohmann::json::array();
    int questions = 1 + static_cast<int>(rng() % 20);
    std::map<std::string, std::size_t> entries;
    std::map<std::string, Rational> weighted;
    for (int q = 0; q < questions; ++q) {
      nlohmann::json question = {{"id", "#" + std::to_string(q)}, {"text", "q"}, {"group", "Spaces"}};
      for (const char* onto : {"A", "B", "C"}) {
        if (rng() % 4 == 0) continue;
        std::string status = statuses[rng() % 3];
        question["entries"][onto] = {{"query", nullptr}, {"expected", "Unable"}};
        if (status != "Unable") {
          // Answerable entries need a query file; reuse one shared text through a data URI-free path.
          question["entries"][onto] = {{"query", "q.rq"}, {"expected", status}};
          weighted[onto] += status == "Fully" ? Rational(1) : Rational(1, 2);
        }
        ++entries[onto];
      }
      if (!question.contains("entries")) question["entries"] = nlohmann::json::object();
      j["questions"].push_back(question);
    }
    TempDir dir;
    dir.write("q.rq", kRooms);
    auto suite = cq::parse_suite(j.dump(), dir.path());
    for (const auto& [onto, t] : cq::tally(suite)) {
      EXPECT_EQ(t.total(), entries[onto]);
      EXPECT_EQ(t.weighted, weighted[onto]);
      EXPECT_EQ(t.weighted, Rational(t.fully) + Rational(t.partially) / 2);
    }
  }
}

TEST(Bundled, BrickCountsFromTable) {
  auto suite = cq::load_suite(kSuiteDir / "suite.json");
  EXPECT_EQ(suite.questions.size(), 16u);
  EXPECT_EQ(suite.ontologies, (std::vector<std::string>{"Brick", "RECore", "Haystack", "DB"}));
  EXPECT_TRUE(cq::validate_suite(suite).empty());
  auto tallies = cq::tally(suite);
  EXPECT_EQ(tallies.at("Brick").fully, 12u);
  EXPECT_EQ(tallies.at("Brick").partially, 4u);
  EXPECT_EQ(tallies.at("Brick").unable, 0u);
  EXPECT_EQ(tallies.at("Brick").weighted, 14);
  for (const auto& [onto, t] : tallies) EXPECT_EQ(t.total(), 16u) << onto;
}

TEST(Bundled, RunsCleanUnderInference) {
  auto suite = cq::load_suite(kSuiteDir / "suite.json");
  auto report = cq::run_suite(suite, bundled_graphs(), sparql::Inference::kRdfsSubclass);
  EXPECT_FALSE(report.any_error());
  EXPECT_EQ(report.regressions(), 0u);
  EXPECT_EQ(report.outcomes.size(), 64u);

  auto j = nlohmann::json::parse(cq::report_to_json(report));
  EXPECT_EQ(j["suite"], "energy-audits");
  EXPECT_EQ(j["inference"], "rdfs-subclass");
  EXPECT_EQ(j["tallies"]["Brick"]["weighted"], "14");
  EXPECT_EQ(j["regressions"], 0);

  std::string md = cq::report_to_markdown(suite, report);
  EXPECT_NE(md.find("| # | Group | Question | Brick | RECore | Haystack | DB |"), std::string::npos)
      << md;
  EXPECT_NE(md.find("Fully ● | 12 |"), std::string::npos) << md;
}

TEST(Bundled, WithoutInferenceSomeQueriesComeBackEmpty) {
  auto suite = cq::load_suite(kSuiteDir / "suite.json");
  auto report = cq::run_suite(suite, bundled_graphs(), sparql::Inference::kNone);
  EXPECT_FALSE(report.any_error());
  EXPECT_GT(report.regressions(), 0u);
}
