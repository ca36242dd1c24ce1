#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace ontoqual::rdf {

/// An RDF term: IRI, blank node or literal.
///
/// IRIs are always absolute. Literals carry an empty datatype for plain
/// xsd:string values, and a language tag only when no datatype is present.
class Term {
 public:
  enum class Kind : unsigned char { kIri = 0, kBlank = 1, kLiteral = 2 };

  Term() = default;

  static Term iri(std::string value);
  static Term blank(std::string label);
  /// Plain string literal.
  static Term literal(std::string lexical);
  /// Typed literal. xsd:string is normalised to a plain literal.
  static Term typed(std::string lexical, std::string datatype);
  static Term lang(std::string lexical, std::string language);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::kIri; }
  bool is_blank() const { return kind_ == Kind::kBlank; }
  bool is_literal() const { return kind_ == Kind::kLiteral; }

  /// IRI string, blank label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  /// N-Triples style serialization; also the canonical sort key.
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  Kind kind_ = Kind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

/// Escapes a literal lexical form for a double-quoted N-Triples/Turtle string.
std::string escape_string(std::string_view s);

/// Escapes an IRI body for `<...>`.
std::string escape_iri(std::string_view s);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b);
};

}  // namespace ontoqual::rdf
