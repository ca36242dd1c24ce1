#include "ontoqual/ontology/view.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "ontoqual/rdf/vocab.hpp"

namespace ontoqual::ontology {

namespace {

namespace vocab = rdf::vocab;
using rdf::Term;
using rdf::TermId;

const std::string kThingIri(vocab::kOwlThing);

std::optional<TermId> lookup(const rdf::Graph& g, std::string_view iri) {
  return g.find(Term::iri(std::string(iri)));
}

// Iterative Tarjan; returns the component index of every node.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& adj,
                                            std::size_t& component_count) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  std::size_t counter = 0;
  component_count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next == 0 && index[v] == kUnset) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < adj[v].size()) {
        std::size_t w = adj[v][next++];
        if (index[w] == kUnset) {
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        for (;;) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = component_count;
          if (w == v) break;
        }
        ++component_count;
      }
      std::size_t finished = v;
      work.pop_back();
      if (!work.empty()) {
        std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

const std::string& OntologyView::name(ClassId c) const {
  if (c == kThing) return kThingIri;
  return members_[c].front();
}

std::optional<ClassId> OntologyView::find(std::string_view iri) const {
  if (iri == vocab::kOwlThing) return kThing;
  auto it = by_iri_.find(std::string(iri));
  if (it == by_iri_.end()) return std::nullopt;
  return it->second;
}

void OntologyView::finish_topology() {
  const std::size_t n = members_.size();
  children_.assign(n, {});
  roots_.clear();
  leaves_.clear();
  edges_.clear();
  named_edges_ = 0;
  for (ClassId c = 0; c < n; ++c) {
    auto& ps = parents_[c];
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ps.empty()) ps.push_back(kThing);
    for (ClassId p : ps) {
      edges_.emplace_back(c, p);
      if (p != kThing) {
        children_[p].push_back(c);
        ++named_edges_;
      }
    }
    if (ps.size() == 1 && ps.front() == kThing) roots_.push_back(c);
  }
  for (ClassId c = 0; c < n; ++c) {
    std::sort(children_[c].begin(), children_[c].end());
    if (children_[c].empty()) leaves_.push_back(c);
  }
  std::sort(edges_.begin(), edges_.end());
}

OntologyView extract_view(const rdf::Graph& graph, const ViewConfig& config) {
  auto type_id = lookup(graph, vocab::kRdfType);
  auto sub_id = lookup(graph, vocab::kRdfsSubClassOf);
  auto equiv_id = lookup(graph, vocab::kOwlEquivalentClass);
  auto class_id = lookup(graph, vocab::kOwlClass);
  auto thing_id = lookup(graph, vocab::kOwlThing);
  auto restriction_id = lookup(graph, vocab::kOwlRestriction);
  auto label_id = lookup(graph, vocab::kRdfsLabel);
  auto comment_id = lookup(graph, vocab::kRdfsComment);
  auto domain_id = lookup(graph, vocab::kRdfsDomain);
  auto objprop_id = lookup(graph, vocab::kOwlObjectProperty);
  auto dataprop_id = lookup(graph, vocab::kOwlDatatypeProperty);

  auto named = [&](TermId t) { return graph.term(t).is_iri() && t != thing_id; };

  // Class terms, ordered by term id (= N-Triples order).
  std::set<TermId> class_terms;
  if (type_id && class_id) {
    for (const auto& t : graph.match_ids(std::nullopt, type_id, class_id))
      if (named(t.s)) class_terms.insert(t.s);
  }
  std::vector<rdf::IdTriple> sub_triples;
  if (sub_id) sub_triples = graph.match_ids(std::nullopt, sub_id, std::nullopt);
  for (const auto& t : sub_triples) {
    if (named(t.s)) class_terms.insert(t.s);
    if (named(t.o)) class_terms.insert(t.o);
  }
  if (class_terms.empty()) throw EmptyOntology();

  std::vector<TermId> terms(class_terms.begin(), class_terms.end());
  std::unordered_map<TermId, std::size_t> node_of;
  for (std::size_t i = 0; i < terms.size(); ++i) node_of.emplace(terms[i], i);

  std::vector<std::vector<std::size_t>> adj(terms.size());
  for (const auto& t : sub_triples) {
    auto a = node_of.find(t.s);
    auto b = node_of.find(t.o);
    if (a == node_of.end() || b == node_of.end() || a->second == b->second) continue;
    adj[a->second].push_back(b->second);
  }

  std::size_t components = 0;
  std::vector<std::size_t> comp = strongly_connected(adj, components);

  // Order components by their smallest member so ClassIds follow IRI order.
  std::vector<std::size_t> first_member(components, terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    first_member[comp[i]] = std::min(first_member[comp[i]], i);
  std::vector<std::size_t> comp_order(components);
  for (std::size_t c = 0; c < components; ++c) comp_order[c] = c;
  std::sort(comp_order.begin(), comp_order.end(),
            [&](std::size_t a, std::size_t b) { return first_member[a] < first_member[b]; });
  std::vector<ClassId> class_of_comp(components);
  for (std::size_t rank = 0; rank < components; ++rank)
    class_of_comp[comp_order[rank]] = static_cast<ClassId>(rank);

  OntologyView view;
  view.members_.assign(components, {});
  view.parents_.assign(components, {});
  std::vector<ClassId> class_of_node(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    ClassId c = class_of_comp[comp[i]];
    class_of_node[i] = c;
    const std::string& iri = graph.term(terms[i]).value();
    view.members_[c].push_back(iri);
    view.by_iri_.emplace(iri, c);
  }
  for (ClassId c = 0; c < components; ++c) {
    auto& m = view.members_[c];
    std::sort(m.begin(), m.end());
    if (m.size() > 1) {
      if (!config.collapse_cycles) throw CyclicHierarchy("subClassOf cycle through " + m.front());
      std::string list;
      for (const auto& iri : m) list += (list.empty() ? "" : ", ") + iri;
      view.warnings_.push_back("subClassOf cycle collapsed into one class: {" + list + "}");
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j : adj[i]) {
      ClassId a = class_of_node[i], b = class_of_node[j];
      if (a != b) view.parents_[a].push_back(b);
    }
  }
  view.finish_topology();

  auto class_for_term = [&](TermId t) -> std::optional<ClassId> {
    if (thing_id && t == *thing_id) return kThing;
    auto it = node_of.find(t);
    if (it == node_of.end()) return std::nullopt;
    return class_of_node[it->second];
  };

  // Restrictions: distinct owl:Restriction nodes one subClassOf/equivalentClass
  // hop away from a member IRI.
  std::set<TermId> restriction_nodes;
  if (type_id && restriction_id) {
    for (const auto& t : graph.match_ids(std::nullopt, type_id, restriction_id))
      restriction_nodes.insert(t.s);
  }
  std::vector<std::set<TermId>> restrictions(components);
  auto collect_restrictions = [&](std::optional<TermId> predicate) {
    if (!predicate) return;
    for (const auto& t : graph.match_ids(std::nullopt, predicate, std::nullopt)) {
      if (!restriction_nodes.contains(t.o)) continue;
      auto c = class_for_term(t.s);
      if (c && *c != kThing) restrictions[*c].insert(t.o);
    }
  };
  collect_restrictions(sub_id);
  if (config.equivalent_class_restrictions) collect_restrictions(equiv_id);
  view.restrictions_.resize(components);
  for (ClassId c = 0; c < components; ++c) view.restrictions_[c] = restrictions[c].size();

  view.annotations_.assign(components, 0);
  for (auto predicate : {label_id, comment_id}) {
    if (!predicate) continue;
    for (const auto& t : graph.match_ids(std::nullopt, predicate, std::nullopt)) {
      auto c = class_for_term(t.s);
      if (c && *c != kThing) ++view.annotations_[*c];
    }
  }

  std::map<TermId, PropertyKind> property_terms;
  if (type_id) {
    // Object wins when a property carries both types.
    for (auto [type, kind] : {std::pair{dataprop_id, PropertyKind::kDatatype},
                              std::pair{objprop_id, PropertyKind::kObject}}) {
      if (!type) continue;
      for (const auto& t : graph.match_ids(std::nullopt, type_id, type))
        if (graph.term(t.s).is_iri()) property_terms[t.s] = kind;
    }
  }
  for (const auto& [term, kind] : property_terms) {
    PropertyInfo info{graph.term(term).value(), kind, {}};
    if (domain_id) {
      for (const auto& t : graph.match_ids(term, domain_id, std::nullopt))
        if (auto c = class_for_term(t.o)) info.domains.push_back(*c);
    }
    std::sort(info.domains.begin(), info.domains.end());
    info.domains.erase(std::unique(info.domains.begin(), info.domains.end()), info.domains.end());
    view.properties_.push_back(std::move(info));
  }
  return view;
}

std::vector<ClassPath> enumerate_paths(const OntologyView& view, ClassId leaf) {
  std::vector<ClassPath> out;
  ClassPath current{leaf};
  // Explicit DFS stack of (class, next parent index).
  std::vector<std::pair<ClassId, std::size_t>> stack{{leaf, 0}};
  while (!stack.empty()) {
    auto& [c, next] = stack.back();
    if (c == kThing) {
      out.push_back(current);
      stack.pop_back();
      current.pop_back();
      continue;
    }
    auto parents = view.parents(c);
    if (next < parents.size()) {
      ClassId p = parents[next++];
      current.push_back(p);
      stack.emplace_back(p, 0);
      continue;
    }
    stack.pop_back();
    current.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClassId> ancestors(const OntologyView& view, ClassId c) {
  std::vector<bool> seen(view.class_count(), false);
  std::vector<ClassId> frontier{c};
  std::vector<ClassId> out;
  bool thing = false;
  while (!frontier.empty()) {
    ClassId x = frontier.back();
    frontier.pop_back();
    for (ClassId p : view.parents(x)) {
      if (p == kThing) {
        thing = true;
      } else if (!seen[p]) {
        seen[p] = true;
        out.push_back(p);
        frontier.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (thing) out.push_back(kThing);
  return out;
}

std::string view_to_json(const OntologyView& view) {
  nlohmann::ordered_json j;
  auto name = [&](ClassId c) { return view.name(c); };
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (ClassId c = 0; c < view.class_count(); ++c) {
    nlohmann::ordered_json entry;
    entry["iri"] = name(c);
    if (view.members(c).size() > 1) entry["members"] = view.members(c);
    nlohmann::ordered_json parents = nlohmann::ordered_json::array();
    for (ClassId p : view.parents(c)) parents.push_back(name(p));
    entry["parents"] = parents;
    entry["restrictions"] = view.restriction_count(c);
    entry["annotations"] = view.annotation_count(c);
    classes.push_back(entry);
  }
  j["classes"] = classes;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& p : view.properties()) {
    nlohmann::ordered_json entry;
    entry["iri"] = p.iri;
    entry["kind"] = p.kind == PropertyKind::kObject ? "object" : "datatype";
    nlohmann::ordered_json domains = nlohmann::ordered_json::array();
    for (ClassId d : p.domains) domains.push_back(name(d));
    entry["domains"] = domains;
    props.push_back(entry);
  }
  j["properties"] = props;
  nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
  for (ClassId c : view.leaves()) leaves.push_back(name(c));
  j["leaves"] = leaves;
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (ClassId c : view.roots()) roots.push_back(name(c));
  j["roots"] = roots;
  j["warnings"] = view.warnings();
  return j.dump(2) + "\n";
}

}  // namespace ontoqual::ontology
