#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ontoqual/cq/alignment.hpp"

using namespace ontoqual;
using cq::Vocabulary;
using rdf::Term;
using rdf::Triple;

namespace {

const std::string kSosa = "http://www.w3.org/ns/sosa/";
const std::string kBrick = "https://brickschema.org/schema/Brick#";

Triple with_predicate(const std::string& p) {
  return {Term::iri("http://example.org/s"), Term::iri(p), Term::iri("http://example.org/o")};
}

cq::RewriteResult rewrite(const std::string& p, Vocabulary from, Vocabulary to) {
  std::vector<Triple> in = {with_predicate(p)};
  return cq::rewrite_with_alignment(in, from, to, cq::AlignmentMap::builtin());
}

}  // namespace

TEST(Alignment, Vocabularies) {
  EXPECT_EQ(cq::parse_vocabulary("haystack"), Vocabulary::kHaystack);
  EXPECT_EQ(cq::parse_vocabulary("RECore"), Vocabulary::kRecore);
  EXPECT_EQ(cq::vocabulary_name(Vocabulary::kDb), "DB");
  EXPECT_THROW(cq::parse_vocabulary("SAREF"), cq::UnknownVocabulary);
}

TEST(Alignment, BuiltinMatchesShippedTable) {
  std::ifstream in(std::string(ONTOQUAL_SOURCE_DIR) + "/data/alignment/points.json");
  std::stringstream ss;
  ss << in.rdbuf();
  auto shipped = cq::AlignmentMap::from_json(ss.str());
  EXPECT_EQ(shipped.to_json(), cq::AlignmentMap::builtin().to_json());
  EXPECT_EQ(cq::AlignmentMap::builtin().rows().size(), 5u);
}

TEST(Alignment, ObservesToBrick) {
  auto r = rewrite(kSosa + "observes", Vocabulary::kOdp, Vocabulary::kBrick);
  ASSERT_EQ(r.triples.size(), 1u);
  EXPECT_TRUE(r.unmappable.empty());
  EXPECT_EQ(r.triples[0].predicate, Term::iri(kBrick + "measures"));
  EXPECT_EQ(r.triples[0].subject, with_predicate("x").subject);
}

TEST(Alignment, HasPropertyIsUnmappableEverywhere) {
  for (Vocabulary to : {Vocabulary::kBrick, Vocabulary::kRecore, Vocabulary::kHaystack, Vocabulary::kDb}) {
    auto r = rewrite("http://www.w3.org/ns/ssn/hasProperty", Vocabulary::kOdp, to);
    EXPECT_TRUE(r.triples.empty());
    ASSERT_EQ(r.unmappable.size(), 1u);
    EXPECT_NE(r.unmappable[0].reason.find("hasProperty"), std::string::npos);
  }
}

TEST(Alignment, ObservesToDbIsUnmappable) {
  auto r = rewrite(kSosa + "observes", Vocabulary::kOdp, Vocabulary::kDb);
  EXPECT_TRUE(r.triples.empty());
  ASSERT_EQ(r.unmappable.size(), 1u);
}

TEST(Alignment, UnalignedPredicatePassesThrough) {
  auto r = rewrite("http://example.org/foo", Vocabulary::kOdp, Vocabulary::kBrick);
  ASSERT_EQ(r.triples.size(), 1u);
  EXPECT_EQ(r.triples[0], with_predicate("http://example.org/foo"));
}

TEST(Alignment, AmbiguousReverse) {
  // brick:measures is the Brick side of two ODP rows.
  auto r = rewrite(kBrick + "measures", Vocabulary::kBrick, Vocabulary::kOdp);
  ASSERT_EQ(r.unmappable.size(), 1u);
  EXPECT_NE(r.unmappable[0].reason.find("ambiguous"), std::string::npos);
}

TEST(Alignment, SameVocabularyIsRejected) {
  EXPECT_THROW(rewrite(kSosa + "observes", Vocabulary::kBrick, Vocabulary::kBrick),
               std::invalid_argument);
}

TEST(Alignment, RoundTripWhereBothDirectionsAreDefined) {
  const auto map = cq::AlignmentMap::builtin();
  int checked = 0;
  for (Vocabulary x : cq::kAllVocabularies) {
    if (x == Vocabulary::kOdp) continue;
    for (const auto& row : map.rows()) {
      if (!row.get(Vocabulary::kOdp) || !row.get(x)) continue;
      if (map.rows_for(x, *row.get(x)).size() != 1) continue;
      std::vector<Triple> in = {with_predicate(*row.get(Vocabulary::kOdp))};
      auto there = cq::rewrite_with_alignment(in, Vocabulary::kOdp, x, map);
      ASSERT_TRUE(there.unmappable.empty()) << row.label;
      auto back = cq::rewrite_with_alignment(there.triples, x, Vocabulary::kOdp, map);
      ASSERT_TRUE(back.unmappable.empty()) << row.label;
      EXPECT_EQ(back.triples, in) << row.label << " via " << cq::vocabulary_name(x);
      ++checked;
    }
  }
  EXPECT_GE(checked, 5);
}

TEST(Alignment, RecoreRoundTripPredicateSet) {
  const auto map = cq::AlignmentMap::builtin();
  std::vector<Triple> in = {with_predicate(kSosa + "madeObservation"),
                            with_predicate("http://example.org/untouched")};
  auto there = cq::rewrite_with_alignment(in, Vocabulary::kOdp, Vocabulary::kRecore, map);
  auto back = cq::rewrite_with_alignment(there.triples, Vocabulary::kRecore, Vocabulary::kOdp, map);
  EXPECT_EQ(back.triples, in);
}

TEST(Alignment, UnmappableJson) {
  auto r = rewrite(kSosa + "observes", Vocabulary::kOdp, Vocabulary::kDb);
  auto j = nlohmann::json::parse(cq::unmappable_to_json(r.unmappable));
  ASSERT_EQ(j["unmappable"].size(), 1u);
  EXPECT_EQ(j["unmappable"][0]["predicate"], "<" + kSosa + "observes>");
  EXPECT_TRUE(j["unmappable"][0].contains("reason"));
}

TEST(Alignment, FromJsonRejectsGarbage) {
  EXPECT_ANY_THROW(cq::AlignmentMap::from_json("{\"rows\": 3}"));
  EXPECT_ANY_THROW(cq::AlignmentMap::from_json("not json"));
}
