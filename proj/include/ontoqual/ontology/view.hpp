#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ontoqual/rdf/graph.hpp"

namespace ontoqual::ontology {

/// Index of a named class (or a collapsed subClassOf cycle) in a view.
using ClassId = std::uint32_t;

/// The universal root. Sorts after every real ClassId.
inline constexpr ClassId kThing = std::numeric_limits<ClassId>::max();

class EmptyOntology : public std::runtime_error {
 public:
  EmptyOntology() : std::runtime_error("empty ontology") {}
};

class CyclicHierarchy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ViewConfig {
  /// Count restrictions reached through owl:equivalentClass as well as
  /// rdfs:subClassOf.
  bool equivalent_class_restrictions = true;
  /// Merge subClassOf cycles into one class; when off, cycles throw
  /// CyclicHierarchy.
  bool collapse_cycles = true;
};

enum class PropertyKind { kObject, kDatatype };

struct PropertyInfo {
  std::string iri;
  PropertyKind kind;
  /// Declared rdfs:domain classes that resolve to a ClassId or kThing.
  std::vector<ClassId> domains;
};

/// The TBox abstraction the quality metrics read.
///
/// Every class has at least one parent: its named superclasses, or kThing
/// when it has none. The parent relation is acyclic.
class OntologyView {
 public:
  std::size_t class_count() const { return members_.size(); }

  /// IRIs merged into this class, sorted. Size > 1 only for collapsed cycles.
  const std::vector<std::string>& members(ClassId c) const { return members_[c]; }
  /// First member IRI, or the owl:Thing IRI for kThing.
  const std::string& name(ClassId c) const;

  std::span<const ClassId> parents(ClassId c) const { return parents_[c]; }
  std::span<const ClassId> children(ClassId c) const { return children_[c]; }
  /// Classes whose only parent is owl:Thing (implicitly or explicitly).
  std::span<const ClassId> roots() const { return roots_; }
  std::span<const ClassId> leaves() const { return leaves_; }

  /// (child, parent) pairs, parent possibly kThing; sorted.
  const std::vector<std::pair<ClassId, ClassId>>& subclass_edges() const { return edges_; }
  /// Edges whose parent is a named class.
  std::size_t named_edge_count() const { return named_edges_; }

  const std::vector<PropertyInfo>& properties() const { return properties_; }
  std::size_t restriction_count(ClassId c) const { return restrictions_[c]; }
  std::size_t annotation_count(ClassId c) const { return annotations_[c]; }

  std::optional<ClassId> find(std::string_view iri) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend OntologyView extract_view(const rdf::Graph&, const ViewConfig&);

  void finish_topology();

  std::vector<std::vector<std::string>> members_;
  std::unordered_map<std::string, ClassId> by_iri_;
  std::vector<std::vector<ClassId>> parents_;
  std::vector<std::vector<ClassId>> children_;
  std::vector<ClassId> roots_;
  std::vector<ClassId> leaves_;
  std::vector<std::pair<ClassId, ClassId>> edges_;
  std::size_t named_edges_ = 0;
  std::vector<PropertyInfo> properties_;
  std::vector<std::size_t> restrictions_;
  std::vector<std::size_t> annotations_;
  std::vector<std::string> warnings_;
};

/// Builds the view from a sealed graph. Throws EmptyOntology when no class
/// is found.
OntologyView extract_view(const rdf::Graph& graph, const ViewConfig& config = {});

using ClassPath = std::vector<ClassId>;

/// Every upward path from `leaf` to kThing (inclusive at both ends), sorted.
/// Path length in edges is size() - 1.
std::vector<ClassPath> enumerate_paths(const OntologyView& view, ClassId leaf);

/// Strict ancestors of c, sorted; always ends with kThing.
std::vector<ClassId> ancestors(const OntologyView& view, ClassId c);

/// JSON dump for debugging (`--dump-view`).
std::string view_to_json(const OntologyView& view);

}  // namespace ontoqual::ontology
