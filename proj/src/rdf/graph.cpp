#include "ontoqual/rdf/graph.hpp"

#include <algorithm>
#include <numeric>

namespace ontoqual::rdf {

namespace {

IdTriple rotate_pos(const IdTriple& t) { return {t.p, t.o, t.s}; }
IdTriple rotate_osp(const IdTriple& t) { return {t.o, t.s, t.p}; }
IdTriple unrotate_pos(const IdTriple& t) { return {t.o, t.s, t.p}; }
IdTriple unrotate_osp(const IdTriple& t) { return {t.p, t.o, t.s}; }

// Range of rotated triples whose first one or two components match.
std::span<const IdTriple> prefix_range(const std::vector<IdTriple>& index, TermId a,
                                       std::optional<TermId> b) {
  auto lo = std::lower_bound(index.begin(), index.end(), a,
                             [](const IdTriple& t, TermId v) { return t.s < v; });
  auto hi = std::upper_bound(lo, index.end(), a,
                             [](TermId v, const IdTriple& t) { return v < t.s; });
  if (b) {
    auto blo = std::lower_bound(lo, hi, *b, [](const IdTriple& t, TermId v) { return t.p < v; });
    auto bhi = std::upper_bound(blo, hi, *b, [](TermId v, const IdTriple& t) { return v < t.p; });
    lo = blo;
    hi = bhi;
  }
  return {lo, hi};
}

}  // namespace

void Graph::add(Term subject, Term predicate, Term object) {
  if (sealed_) throw GraphStateError("graph is sealed");
  if (!predicate.is_iri()) throw std::invalid_argument("predicate must be an IRI");
  if (subject.is_literal()) throw std::invalid_argument("subject must not be a literal");
  auto intern = [this](Term&& t) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
    if (inserted) terms_.push_back(std::move(t));
    return it->second;
  };
  TermId s = intern(std::move(subject));
  TermId p = intern(std::move(predicate));
  TermId o = intern(std::move(object));
  pending_.push_back({s, p, o});
}

void Graph::set_prefix(std::string prefix, std::string ns) {
  if (sealed_) throw GraphStateError("graph is sealed");
  prefixes_[std::move(prefix)] = std::move(ns);
}

void Graph::seal() {
  if (sealed_) return;
  std::vector<TermId> order(terms_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) keys[i] = terms_[i].to_ntriples();
  std::sort(order.begin(), order.end(),
            [&](TermId a, TermId b) { return keys[a] < keys[b]; });
  std::vector<TermId> remap(terms_.size());
  std::vector<Term> sorted;
  sorted.reserve(terms_.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = static_cast<TermId>(rank);
    sorted.push_back(std::move(terms_[order[rank]]));
  }
  terms_ = std::move(sorted);
  ids_.clear();
  ids_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) ids_.emplace(terms_[i], static_cast<TermId>(i));

  spo_.reserve(pending_.size());
  for (const auto& t : pending_) spo_.push_back({remap[t.s], remap[t.p], remap[t.o]});
  pending_.clear();
  pending_.shrink_to_fit();
  std::sort(spo_.begin(), spo_.end());
  spo_.erase(std::unique(spo_.begin(), spo_.end()), spo_.end());

  pos_.reserve(spo_.size());
  osp_.reserve(spo_.size());
  for (const auto& t : spo_) {
    pos_.push_back(rotate_pos(t));
    osp_.push_back(rotate_osp(t));
  }
  std::sort(pos_.begin(), pos_.end());
  std::sort(osp_.begin(), osp_.end());
  sealed_ = true;
}

void Graph::require_sealed() const {
  if (!sealed_) throw GraphStateError("graph is not sealed");
}

std::size_t Graph::size() const {
  require_sealed();
  return spo_.size();
}

std::optional<TermId> Graph::find(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const IdTriple> Graph::triples() const {
  require_sealed();
  return spo_;
}

std::span<const IdTriple> Graph::scan(std::optional<TermId> s, std::optional<TermId> p,
                                      std::optional<TermId> o,
                                      std::vector<IdTriple>& scratch) const {
  require_sealed();
  auto unrotate = [&scratch](std::span<const IdTriple> range, auto fn) {
    scratch.clear();
    scratch.reserve(range.size());
    for (const auto& t : range) scratch.push_back(fn(t));
    return std::span<const IdTriple>(scratch);
  };
  if (s) {
    if (p) {
      auto range = prefix_range(spo_, *s, p);
      if (!o) return range;
      auto it = std::lower_bound(range.begin(), range.end(), IdTriple{*s, *p, *o});
      if (it != range.end() && it->o == *o) return {it, it + 1};
      return {};
    }
    if (o) return unrotate(prefix_range(osp_, *o, s), unrotate_osp);
    return prefix_range(spo_, *s, std::nullopt);
  }
  if (p) return unrotate(prefix_range(pos_, *p, o), unrotate_pos);
  if (o) return unrotate(prefix_range(osp_, *o, std::nullopt), unrotate_osp);
  return spo_;
}

std::vector<IdTriple> Graph::match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                       std::optional<TermId> o) const {
  std::vector<IdTriple> scratch;
  auto range = scan(s, p, o, scratch);
  std::vector<IdTriple> out(range.begin(), range.end());
  if (!s && (p || o)) std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  require_sealed();
  std::optional<TermId> si, pi, oi;
  if (s && !(si = find(*s))) return {};
  if (p && !(pi = find(*p))) return {};
  if (o && !(oi = find(*o))) return {};
  std::vector<Triple> out;
  for (const auto& t : match_ids(si, pi, oi)) out.push_back(materialize(t));
  return out;
}

bool Graph::contains(TermId s, TermId p, TermId o) const {
  require_sealed();
  return std::binary_search(spo_.begin(), spo_.end(), IdTriple{s, p, o});
}

}  // namespace ontoqual::rdf
