#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoqual/rdf/term.hpp"

namespace ontoqual::cq {

class UnknownVocabulary : public std::invalid_argument {
 public:
  explicit UnknownVocabulary(const std::string& name)
      : std::invalid_argument("unknown vocabulary '" + name +
                              "' (expected ODP, Brick, RECore, Haystack or DB)") {}
};

enum class Vocabulary { kOdp, kBrick, kRecore, kHaystack, kDb };

inline constexpr std::array<Vocabulary, 5> kAllVocabularies = {
    Vocabulary::kOdp, Vocabulary::kBrick, Vocabulary::kRecore, Vocabulary::kHaystack,
    Vocabulary::kDb};

std::string_view vocabulary_name(Vocabulary v);
/// Case-insensitive.
Vocabulary parse_vocabulary(std::string_view text);

struct AlignmentRow {
  std::string label;
  /// Property IRI per vocabulary, indexed by Vocabulary; absent is "N/A".
  std::array<std::optional<std::string>, 5> properties;

  const std::optional<std::string>& get(Vocabulary v) const {
    return properties[static_cast<std::size_t>(v)];
  }
};

class AlignmentMap {
 public:
  AlignmentMap() = default;
  explicit AlignmentMap(std::vector<AlignmentRow> rows) : rows_(std::move(rows)) {}

  /// The five points-and-measurements rows.
  static AlignmentMap builtin();
  /// {"rows": [{"label": ..., "ODP": iri|null, "Brick": iri|null, ...}]}
  static AlignmentMap from_json(std::string_view text);
  std::string to_json() const;

  const std::vector<AlignmentRow>& rows() const { return rows_; }

  /// Rows whose `v` column equals `iri`.
  std::vector<const AlignmentRow*> rows_for(Vocabulary v, std::string_view iri) const;

 private:
  std::vector<AlignmentRow> rows_;
};

struct Unmappable {
  rdf::Triple triple;
  std::string reason;
};

struct RewriteResult {
  std::vector<rdf::Triple> triples;
  std::vector<Unmappable> unmappable;
};

/// Substitutes aligned predicates. A predicate that matches several rows
/// with different targets is reported as ambiguous.
RewriteResult rewrite_with_alignment(std::span<const rdf::Triple> triples, Vocabulary from,
                                     Vocabulary to, const AlignmentMap& map);

std::string unmappable_to_json(const std::vector<Unmappable>& items);

}  // namespace ontoqual::cq
