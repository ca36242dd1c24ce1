#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ontoqual/rdf/graph.hpp"

namespace ontoqual::rdf {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class UndefinedPrefix : public SyntaxError {
 public:
  UndefinedPrefix(std::size_t line, std::size_t column, std::string prefix);

  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

/// Parses a Turtle document into a sealed graph.
///
/// Blank node labels are replaced by fresh labels `b0`, `b1`, ... in order of
/// first appearance; the document labels are not preserved.
Graph parse_turtle(std::string_view document, std::optional<std::string> base = std::nullopt);
Graph parse_turtle(std::istream& in, std::optional<std::string> base = std::nullopt);
Graph parse_turtle_file(const std::string& path);

/// Writes a sealed graph as Turtle: sorted @prefix lines, then one block per
/// subject in SPO order. LF line endings.
std::string serialize_turtle(const Graph& graph);

/// Resolves a possibly relative IRI reference against a base IRI.
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace ontoqual::rdf
