#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ontoqual/rdf/graph.hpp"
#include "ontoqual/rdf/turtle.hpp"
#include "ontoqual/rdf/vocab.hpp"
#include "oracles.hpp"

using namespace ontoqual;
namespace oracle = ontoqual::testing;
using rdf::Term;
using rdf::Triple;

namespace {

const std::string kEx = "http://example.org/";
Term ex(const std::string& local) { return Term::iri(kEx + local); }

std::vector<Triple> all_triples(const rdf::Graph& g) {
  std::vector<Triple> out;
  for (const auto& t : g.triples()) out.push_back(g.materialize(t));
  return out;
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e :
       std::filesystem::directory_iterator(std::string(ONTOQUAL_SOURCE_DIR) + "/tests/fixtures/turtle")) {
    if (e.path().extension() == ".ttl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST(Term, NTriplesForms) {
  EXPECT_EQ(Term::iri("http://e/a").to_ntriples(), "<http://e/a>");
  EXPECT_EQ(Term::blank("b0").to_ntriples(), "_:b0");
  EXPECT_EQ(Term::literal("a\"b\n").to_ntriples(), "\"a\\\"b\\n\"");
  EXPECT_EQ(Term::lang("x", "EN-gb").to_ntriples(), "\"x\"@en-gb");
  EXPECT_EQ(Term::typed("1", std::string(rdf::vocab::kXsd) + "integer").to_ntriples(),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>");
}

TEST(Term, XsdStringIsPlain) {
  EXPECT_EQ(Term::typed("v", std::string(rdf::vocab::kXsdString)), Term::literal("v"));
}

TEST(Term, OrderFollowsSerialization) {
  std::vector<Term> terms = {Term::blank("z"), Term::iri("http://b"), Term::literal("q"),
                             Term::iri("http://a"), Term::blank("a")};
  std::sort(terms.begin(), terms.end());
  for (std::size_t i = 1; i < terms.size(); ++i) {
    EXPECT_LT(terms[i - 1].to_ntriples(), terms[i].to_ntriples());
  }
}

TEST(Turtle, SingleTriple) {
  auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(all_triples(g)[0],
            (Triple{Term::iri("http://e/a"), Term::iri("http://e/p"), Term::iri("http://e/b")}));
}

TEST(Turtle, AKeyword) {
  auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:r1 a ex:Room .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(all_triples(g)[0].predicate, Term::iri(std::string(rdf::vocab::kRdfType)));
}

TEST(Turtle, CollectionExpansionByHand) {
  const std::string first = std::string(rdf::vocab::kRdf) + "first";
  const std::string rest = std::string(rdf::vocab::kRdf) + "rest";
  const std::string nil = std::string(rdf::vocab::kRdf) + "nil";
  for (int n = 0; n <= 4; ++n) {
    std::string doc = "@prefix ex: <http://example.org/> . ex:a ex:p (";
    for (int i = 0; i < n; ++i) doc += " ex:i" + std::to_string(i);
    doc += " ) .";
    auto g = rdf::parse_turtle(doc);
    ASSERT_EQ(g.size(), static_cast<std::size_t>(2 * n + 1)) << n;

    // Walk the list from ex:a and compare with the items in order.
    auto head = g.match(ex("a"), ex("p"), std::nullopt);
    ASSERT_EQ(head.size(), 1u);
    Term node = head[0].object;
    for (int i = 0; i < n; ++i) {
      ASSERT_TRUE(node.is_blank());
      auto f = g.match(node, Term::iri(first), std::nullopt);
      ASSERT_EQ(f.size(), 1u);
      EXPECT_EQ(f[0].object, ex("i" + std::to_string(i)));
      auto r = g.match(node, Term::iri(rest), std::nullopt);
      ASSERT_EQ(r.size(), 1u);
      node = r[0].object;
    }
    EXPECT_EQ(node, Term::iri(nil));
  }
}

TEST(Turtle, NumericAndBooleanShorthand) {
  auto g = rdf::parse_turtle(
      "@prefix ex: <http://example.org/> . ex:s ex:p 42 , -3.5 , 1e2 , true .");
  std::vector<std::string> dts;
  for (const auto& t : all_triples(g)) dts.push_back(t.object.datatype());
  std::sort(dts.begin(), dts.end());
  const std::string x(rdf::vocab::kXsd);
  EXPECT_EQ(dts, (std::vector<std::string>{x + "boolean", x + "decimal", x + "double", x + "integer"}));
}

TEST(Turtle, BlankLabelsAreFreshAndShared) {
  auto g = rdf::parse_turtle("@prefix ex: <http://example.org/> . _:q ex:p _:q . [] ex:p _:r .");
  auto ts = all_triples(g);
  ASSERT_EQ(ts.size(), 2u);
  int self_loops = 0;
  for (const auto& t : ts) {
    EXPECT_NE(t.subject.value(), "q");
    if (t.subject == t.object) ++self_loops;
  }
  EXPECT_EQ(self_loops, 1);
}

TEST(Turtle, BaseResolution) {
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "g"), "http://a/b/c/g");
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "../g"), "http://a/b/g");
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "#s"), "http://a/b/c/d;p?q#s");
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "/g"), "http://a/g");
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "//g"), "http://g");
  EXPECT_EQ(rdf::resolve_iri("http://a/b/c/d;p?q", "http://x/y"), "http://x/y");
  auto g = rdf::parse_turtle("<a> <p> <b> .", std::string("http://example.org/dir/doc"));
  EXPECT_EQ(all_triples(g)[0].subject, Term::iri("http://example.org/dir/a"));
}

TEST(Turtle, UndefinedPrefix) {
  try {
    rdf::parse_turtle("@prefix ex: <http://e/> .\nex:a nope:p ex:b .");
    FAIL();
  } catch (const rdf::UndefinedPrefix& e) {
    EXPECT_EQ(e.prefix(), "nope");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Turtle, SyntaxErrorPositions) {
  struct Case {
    std::string doc;
    std::size_t line;
  };
  std::vector<Case> cases = {
      {"<http://a> <http://b> <http://c>", 1},
      {"<http://a> <http://b>\n .", 2},
      {"<http://a> <http://b> \"open .", 1},
      {"@prefix ex <http://e/> .", 1},
      {"<http://a> <http://b> <http://c> .\n<< <http://a> <http://b> <http://c> >> <http://p> 1 .", 2},
      {"<http://a> <http://b> ( <http://c> .", 1},
      {"<http://a> \"lit\" <http://c> .", 1},
  };
  for (const auto& c : cases) {
    try {
      rdf::parse_turtle(c.doc);
      ADD_FAILURE() << "accepted: " << c.doc;
    } catch (const rdf::SyntaxError& e) {
      EXPECT_EQ(e.line(), c.line) << c.doc;
      EXPECT_GE(e.column(), 1u);
    }
  }
}

TEST(Turtle, Serialization) {
  auto empty = rdf::parse_turtle("@prefix ex: <http://example.org/> .");
  std::string text = rdf::serialize_turtle(empty);
  EXPECT_EQ(text, "@prefix ex: <http://example.org/> .\n");

  auto one = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .");
  auto again = rdf::parse_turtle(rdf::serialize_turtle(one));
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(all_triples(again), all_triples(one));
}

TEST(Turtle, PrefixesSortedAndLf) {
  auto g = rdf::parse_turtle(
      "@prefix z: <http://z/> . @prefix a: <http://a/> . @prefix m: <http://m/> . a:x z:y m:w .");
  std::string text = rdf::serialize_turtle(g);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  auto pa = text.find("@prefix a:"), pm = text.find("@prefix m:"), pz = text.find("@prefix z:");
  EXPECT_LT(pa, pm);
  EXPECT_LT(pm, pz);
}

TEST(Turtle, CorpusRoundTrip) {
  auto files = corpus();
  ASSERT_GE(files.size(), 20u);
  for (const auto& f : files) {
    auto g = rdf::parse_turtle_file(f.string());
    auto back = rdf::parse_turtle(rdf::serialize_turtle(g));
    EXPECT_TRUE(oracle::isomorphic(g, back)) << f;
    EXPECT_EQ(g.size(), back.size()) << f;
  }
}

TEST(Turtle, SerializationIsDeterministic) {
  for (const auto& f : corpus()) {
    auto a = rdf::serialize_turtle(rdf::parse_turtle_file(f.string()));
    auto b = rdf::serialize_turtle(rdf::parse_turtle_file(f.string()));
    EXPECT_EQ(a, b) << f;
  }
}

TEST(Turtle, LargeBlankGraphRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> node(0, 39), pred(0, 3), kind(0, 2);
  auto pick = [&](bool allow_literal) {
    int k = kind(rng);
    int n = node(rng);
    if (k == 0) return Term::blank("x" + std::to_string(n));
    if (k == 1 || !allow_literal) return ex("n" + std::to_string(n));
    return Term::literal("v" + std::to_string(n));
  };
  std::vector<Triple> triples;
  std::set<Triple> distinct;
  while (distinct.size() < 200) {
    Triple t{pick(false), ex("p" + std::to_string(pred(rng))), pick(true)};
    distinct.insert(t);
    triples.push_back(t);
  }
  auto g = oracle::make_graph(triples);
  auto back = rdf::parse_turtle(rdf::serialize_turtle(g));
  EXPECT_EQ(back.size(), g.size());
  EXPECT_TRUE(oracle::isomorphic(g, back));
}

TEST(Isomorphism, DetectsDifferences) {
  auto a = rdf::parse_turtle("@prefix ex: <http://example.org/> . _:x ex:p _:y . _:y ex:p _:x .");
  auto b = rdf::parse_turtle("@prefix ex: <http://example.org/> . _:x ex:p _:x . _:y ex:p _:y .");
  auto c = rdf::parse_turtle("@prefix ex: <http://example.org/> . _:m ex:p _:n . _:n ex:p _:m .");
  EXPECT_FALSE(oracle::isomorphic(a, b));
  EXPECT_TRUE(oracle::isomorphic(a, c));
}

TEST(Graph, MatchExamples) {
  auto g = rdf::parse_turtle("@prefix ex: <http://example.org/> . ex:x a ex:T .");
  auto typed = g.match(std::nullopt, Term::iri(std::string(rdf::vocab::kRdfType)), std::nullopt);
  ASSERT_EQ(typed.size(), 1u);
  EXPECT_EQ(typed[0].subject, ex("x"));
  EXPECT_TRUE(g.match(ex("absent"), std::nullopt, std::nullopt).empty());
}

TEST(Graph, SealedIsReadOnlyAndUnsealedIsNotQueryable) {
  rdf::Graph g;
  g.add(ex("a"), ex("p"), ex("b"));
  EXPECT_THROW(g.size(), rdf::GraphStateError);
  g.seal();
  EXPECT_THROW(g.add(ex("a"), ex("p"), ex("c")), rdf::GraphStateError);
}

TEST(Graph, DuplicatesCollapse) {
  auto g = rdf::parse_turtle_file(std::string(ONTOQUAL_SOURCE_DIR) +
                                  "/tests/fixtures/turtle/19_duplicate_triples.ttl");
  EXPECT_EQ(g.size(), 1u);
}

TEST(Graph, IndexCoherenceAgainstLinearScan) {
  std::mt19937 rng(11);
  for (int round = 0; round < 40; ++round) {
    auto triples = oracle::random_instance_graph(rng, 200);
    auto g = oracle::make_graph(triples);
    std::set<Triple> distinct(triples.begin(), triples.end());
    std::vector<Term> pool;
    for (const auto& t : distinct) {
      pool.push_back(t.subject);
      pool.push_back(t.predicate);
      pool.push_back(t.object);
    }
    pool.push_back(ex("not-in-graph"));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int mask = 0; mask < 8; ++mask) {
      for (int sample = 0; sample < 5; ++sample) {
        std::optional<Term> s, p, o;
        if (mask & 1) s = pool[pick(rng)];
        if (mask & 2) p = pool[pick(rng)];
        if (mask & 4) o = pool[pick(rng)];
        std::vector<Triple> expected;
        for (const auto& t : distinct) {
          if ((!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o)) {
            expected.push_back(t);
          }
        }
        EXPECT_EQ(g.match(s, p, o), expected);
      }
    }
  }
}
