#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ontoqual/rdf/term.hpp"

namespace ontoqual::rdf {

using TermId = std::uint32_t;

struct IdTriple {
  TermId s;
  TermId p;
  TermId o;

  friend bool operator==(const IdTriple&, const IdTriple&) = default;
  friend auto operator<=>(const IdTriple&, const IdTriple&) = default;
};

/// Raised when a sealed graph is modified or an unsealed graph is queried.
class GraphStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Triple store with SPO/POS/OSP sorted indexes.
///
/// A graph is filled through add() and then sealed. Sealing interns terms in
/// ascending N-Triples order, so comparing ids compares term serializations,
/// and the SPO index is the deterministic iteration order. Sealed graphs are
/// read-only and safe to share across threads.
class Graph {
 public:
  Graph() = default;

  void add(Term subject, Term predicate, Term object);
  void add(Triple triple) {
    add(std::move(triple.subject), std::move(triple.predicate), std::move(triple.object));
  }
  void set_prefix(std::string prefix, std::string ns);

  void seal();
  bool sealed() const { return sealed_; }

  /// Number of distinct triples (sealed graphs only).
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  std::optional<TermId> find(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const { return terms_.size(); }

  /// All triples in SPO order.
  std::span<const IdTriple> triples() const;

  /// Triples matching every bound position, in SPO order.
  std::vector<IdTriple> match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                  std::optional<TermId> o) const;

  /// Contiguous index range for the pattern. Order is index order, which is
  /// SPO only when s is bound or nothing is bound.
  std::span<const IdTriple> scan(std::optional<TermId> s, std::optional<TermId> p,
                                 std::optional<TermId> o, std::vector<IdTriple>& scratch) const;

  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  bool contains(TermId s, TermId p, TermId o) const;

  Triple materialize(const IdTriple& t) const {
    return Triple{terms_[t.s], terms_[t.p], terms_[t.o]};
  }

 private:
  void require_sealed() const;

  bool sealed_ = false;
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<IdTriple> pending_;
  // SPO order; pos_ and osp_ store rotated triples (p,o,s) and (o,s,p).
  std::vector<IdTriple> spo_;
  std::vector<IdTriple> pos_;
  std::vector<IdTriple> osp_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace ontoqual::rdf
