#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontoqual/rdf/term.hpp"

namespace ontoqual::sparql {

class QuerySyntaxError : public std::runtime_error {
 public:
  QuerySyntaxError(std::size_t position, std::size_t line, std::size_t column,
                   const std::string& message);
  /// Byte offset into the query text.
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t position_, line_, column_;
};

/// A construct outside the supported subset (ORDER BY, DISTINCT, ...).
class UnsupportedFeature : public std::runtime_error {
 public:
  explicit UnsupportedFeature(std::string feature)
      : std::runtime_error("UnsupportedFeature: " + feature), feature_(std::move(feature)) {}
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

struct Variable {
  std::string name;  // without '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

enum class PathModifier { kOne, kZeroOrMore, kOneOrMore };

struct PathStep {
  std::string iri;
  PathModifier modifier = PathModifier::kOne;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Sequence of IRI steps, each optionally quantified with `*` or `+`.
struct Path {
  std::vector<PathStep> steps;
  bool is_plain() const { return steps.size() == 1 && steps[0].modifier == PathModifier::kOne; }
  friend bool operator==(const Path&, const Path&) = default;
};

using Predicate = std::variant<Variable, Path>;

struct TriplePattern {
  PatternTerm subject;
  Predicate predicate;
  PatternTerm object;
};

struct Comparison {
  enum class Op { kEqual, kNotEqual };
  Op op;
  PatternTerm lhs;
  PatternTerm rhs;
};

/// Algebra node.
struct Pattern {
  enum class Kind {
    kBgp,       // triples
    kJoin,      // children[0] ⋈ children[1]
    kLeftJoin,  // children[0] OPTIONAL children[1], condition = filters
    kUnion,     // children[0] ∪ children[1]
    kFilter,    // filters (conjunction) over children[0]
  };

  Kind kind = Kind::kBgp;
  std::vector<TriplePattern> triples;
  std::vector<Pattern> children;
  std::vector<Comparison> filters;

  static Pattern bgp(std::vector<TriplePattern> triples = {});
  static Pattern binary(Kind kind, Pattern left, Pattern right,
                        std::vector<Comparison> condition = {});
  static Pattern filter(std::vector<Comparison> conditions, Pattern inner);
};

struct Query {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> projection;
  Pattern where;
};

/// Variables occurring anywhere in the pattern, sorted.
std::vector<std::string> pattern_variables(const Pattern& pattern);

/// Parses the supported subset: PREFIX/BASE, SELECT ?v..., WHERE group
/// patterns with triples (`a`, `;`, `,`), OPTIONAL, UNION, FILTER with
/// `=`/`!=`, and property paths built from `/`, `*`, `+`.
Query parse_query(std::string_view text);

}  // namespace ontoqual::sparql
