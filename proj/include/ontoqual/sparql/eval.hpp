#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/rdf/graph.hpp"
#include "ontoqual/sparql/query.hpp"

namespace ontoqual::sparql {

enum class Inference {
  kNone,
  /// rdf:type is matched through the transitive closure of rdfs:subClassOf.
  kRdfsSubclass,
};

Inference parse_inference(std::string_view text);
std::string_view inference_name(Inference mode);

using Row = std::vector<std::optional<rdf::Term>>;

/// Multiset of solutions over `vars`. Compare only after canonicalize().
struct SolutionSequence {
  std::vector<std::string> vars;
  std::vector<Row> rows;

  /// Sorts rows (unbound before bound, terms by N-Triples order).
  void canonicalize();
  /// Removes duplicate rows; implies canonicalize().
  void make_distinct();

  friend bool operator==(const SolutionSequence&, const SolutionSequence&) = default;
};

/// Evaluates over a sealed graph. Results are canonicalized.
SolutionSequence evaluate(const Query& query, const rdf::Graph& graph,
                          Inference inference = Inference::kNone);

/// Input plus every rdf:type triple entailed through transitive
/// rdfs:subClassOf. Idempotent.
rdf::Graph materialize_subclass_closure(const rdf::Graph& graph);

/// SPARQL-results-like JSON: {"head": {"vars": [...]}, "results":
/// {"bindings": [...]}}.
std::string results_to_json(const SolutionSequence& solutions);
/// Header row of ?vars, then N-Triples cells; unbound cells are empty.
std::string results_to_tsv(const SolutionSequence& solutions);

}  // namespace ontoqual::sparql
