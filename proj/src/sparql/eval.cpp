#include "ontoqual/sparql/eval.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ontoqual/rdf/vocab.hpp"

namespace ontoqual::sparql {

using rdf::IdTriple;
using rdf::Term;
using rdf::TermId;

Inference parse_inference(std::string_view text) {
  if (text == "none") return Inference::kNone;
  if (text == "rdfs-subclass") return Inference::kRdfsSubclass;
  throw std::invalid_argument("unknown inference mode '" + std::string(text) +
                              "' (expected none or rdfs-subclass)");
}

std::string_view inference_name(Inference mode) {
  return mode == Inference::kNone ? "none" : "rdfs-subclass";
}

void SolutionSequence::canonicalize() { std::sort(rows.begin(), rows.end()); }

void SolutionSequence::make_distinct() {
  canonicalize();
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

namespace {

constexpr TermId kUnbound = UINT32_MAX;
using Binding = std::vector<TermId>;

struct Slot {
  bool is_var = false;
  std::uint32_t index = 0;  // variable index or term id
};

struct Step {
  TermId predicate;
  PathModifier modifier;
};

struct CTriple {
  Slot subject;
  bool predicate_var = false;
  std::uint32_t predicate_index = 0;
  std::vector<Step> steps;
  Slot object;
};

struct CCompare {
  Comparison::Op op;
  Slot lhs, rhs;
};

struct CPattern {
  Pattern::Kind kind;
  std::vector<CTriple> triples;
  std::vector<CPattern> children;
  std::vector<CCompare> filters;
};

class Evaluator {
 public:
  Evaluator(const rdf::Graph& graph, Inference inference) : graph_(graph) {
    std::vector<IdTriple> scratch;
    is_node_.assign(graph_.term_count(), false);
    for (const auto& t : graph_.triples()) {
      is_node_[t.s] = true;
      is_node_[t.o] = true;
    }
    if (auto id = graph_.find(Term::iri(std::string(rdf::vocab::kRdfType)))) type_id_ = *id;
    if (inference == Inference::kRdfsSubclass) build_virtual_types();
  }

  SolutionSequence run(const Query& query) {
    for (const auto& v : pattern_variables(query.where)) {
      var_index_.emplace(v, var_names_.size());
      var_names_.push_back(v);
    }
    CPattern root = compile(query.where);
    std::vector<Binding> rows = eval(root);

    SolutionSequence out;
    out.vars = query.projection;
    std::vector<std::uint32_t> proj;
    for (const auto& v : query.projection) proj.push_back(var_index_.at(v));
    out.rows.reserve(rows.size());
    for (const auto& b : rows) {
      Row row;
      row.reserve(proj.size());
      for (auto i : proj) {
        if (b[i] == kUnbound) {
          row.emplace_back(std::nullopt);
        } else {
          row.emplace_back(term_of(b[i]));
        }
      }
      out.rows.push_back(std::move(row));
    }
    out.canonicalize();
    return out;
  }

 private:
  const Term& term_of(TermId id) const {
    return id < graph_.term_count() ? graph_.term(id) : extra_terms_[id - graph_.term_count()];
  }

  TermId intern(const Term& term) {
    if (auto id = graph_.find(term)) return *id;
    auto [it, inserted] = extra_ids_.try_emplace(
        term, static_cast<TermId>(graph_.term_count() + extra_terms_.size()));
    if (inserted) extra_terms_.push_back(term);
    return it->second;
  }

  bool in_graph(TermId id) const { return id < graph_.term_count(); }

  void build_virtual_types() {
    if (type_id_ == kUnbound) return;
    auto sub = graph_.find(Term::iri(std::string(rdf::vocab::kRdfsSubClassOf)));
    if (!sub) return;
    std::unordered_map<TermId, std::vector<TermId>> supers;
    for (const auto& t : graph_.match_ids(std::nullopt, *sub, std::nullopt))
      supers[t.s].push_back(t.o);
    std::unordered_map<TermId, std::vector<TermId>> closure;
    auto closure_of = [&](TermId c) -> const std::vector<TermId>& {
      auto it = closure.find(c);
      if (it != closure.end()) return it->second;
      std::vector<TermId> reached;
      std::unordered_set<TermId> seen;
      std::deque<TermId> queue{c};
      while (!queue.empty()) {
        TermId x = queue.front();
        queue.pop_front();
        auto s = supers.find(x);
        if (s == supers.end()) continue;
        for (TermId y : s->second)
          if (seen.insert(y).second) {
            reached.push_back(y);
            queue.push_back(y);
          }
      }
      return closure.emplace(c, std::move(reached)).first->second;
    };
    std::set<std::pair<TermId, TermId>> added;
    for (const auto& t : graph_.match_ids(std::nullopt, type_id_, std::nullopt)) {
      for (TermId d : closure_of(t.o))
        if (!graph_.contains(t.s, type_id_, d)) added.emplace(t.s, d);
    }
    virtual_so_.assign(added.begin(), added.end());
    for (auto [s, o] : virtual_so_) virtual_os_.emplace_back(o, s);
    std::sort(virtual_os_.begin(), virtual_os_.end());
  }

  Slot compile_term(const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) return {true, var_index_.at(v->name)};
    return {false, intern(std::get<Term>(t))};
  }

  CPattern compile(const Pattern& p) {
    CPattern c;
    c.kind = p.kind;
    for (const auto& tp : p.triples) {
      CTriple ct;
      ct.subject = compile_term(tp.subject);
      ct.object = compile_term(tp.object);
      if (const auto* v = std::get_if<Variable>(&tp.predicate)) {
        ct.predicate_var = true;
        ct.predicate_index = var_index_.at(v->name);
      } else {
        for (const auto& step : std::get<Path>(tp.predicate).steps)
          ct.steps.push_back({intern(Term::iri(step.iri)), step.modifier});
      }
      c.triples.push_back(std::move(ct));
    }
    for (const auto& child : p.children) c.children.push_back(compile(child));
    for (const auto& f : p.filters) c.filters.push_back({f.op, compile_term(f.lhs), compile_term(f.rhs)});
    return c;
  }

  std::vector<Binding> eval(const CPattern& p) {
    switch (p.kind) {
      case Pattern::Kind::kBgp:
        return eval_bgp(p.triples);
      case Pattern::Kind::kJoin:
        return join(eval(p.children[0]), eval(p.children[1]), nullptr);
      case Pattern::Kind::kLeftJoin:
        return join(eval(p.children[0]), eval(p.children[1]), &p.filters);
      case Pattern::Kind::kUnion: {
        auto left = eval(p.children[0]);
        auto right = eval(p.children[1]);
        left.insert(left.end(), std::make_move_iterator(right.begin()),
                    std::make_move_iterator(right.end()));
        return left;
      }
      case Pattern::Kind::kFilter: {
        auto rows = eval(p.children[0]);
        std::erase_if(rows, [&](const Binding& b) { return !passes(p.filters, b); });
        return rows;
      }
    }
    return {};
  }

  static TermId value_of(const Slot& s, const Binding& b) {
    return s.is_var ? b[s.index] : s.index;
  }

  // Unbound operand is an evaluation error, which drops the row.
  static bool passes(const std::vector<CCompare>& filters, const Binding& b) {
    for (const auto& f : filters) {
      TermId l = value_of(f.lhs, b), r = value_of(f.rhs, b);
      if (l == kUnbound || r == kUnbound) return false;
      bool eq = l == r;
      if (f.op == Comparison::Op::kEqual ? !eq : eq) return false;
    }
    return true;
  }

  static bool merge(const Binding& a, const Binding& b, Binding& out) {
    out = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] == kUnbound) continue;
      if (out[i] == kUnbound) {
        out[i] = b[i];
      } else if (out[i] != b[i]) {
        return false;
      }
    }
    return true;
  }

  std::vector<Binding> join(const std::vector<Binding>& left, const std::vector<Binding>& right,
                            const std::vector<CCompare>* optional_condition) {
    std::vector<Binding> out;
    Binding merged;
    for (const auto& l : left) {
      bool matched = false;
      for (const auto& r : right) {
        if (!merge(l, r, merged)) continue;
        if (optional_condition && !passes(*optional_condition, merged)) continue;
        matched = true;
        out.push_back(merged);
      }
      if (optional_condition && !matched) out.push_back(l);
    }
    return out;
  }

  static int bound_positions(const CTriple& t, const std::vector<bool>& bound) {
    auto is_bound = [&](const Slot& s) { return !s.is_var || bound[s.index]; };
    int n = is_bound(t.subject) + is_bound(t.object);
    if (!t.predicate_var || bound[t.predicate_index]) ++n;
    return n;
  }

  std::vector<Binding> eval_bgp(const std::vector<CTriple>& triples) {
    std::vector<Binding> rows{Binding(var_names_.size(), kUnbound)};
    std::vector<bool> bound(var_names_.size(), false);
    std::vector<bool> done(triples.size(), false);
    for (std::size_t n = 0; n < triples.size() && !rows.empty(); ++n) {
      std::size_t best = triples.size();
      int best_score = -1;
      for (std::size_t i = 0; i < triples.size(); ++i) {
        if (done[i]) continue;
        int score = bound_positions(triples[i], bound);
        if (score > best_score) {
          best = i;
          best_score = score;
        }
      }
      done[best] = true;
      const CTriple& t = triples[best];
      std::vector<Binding> next;
      for (const auto& row : rows) extend(t, row, next);
      rows = std::move(next);
      for (const Slot* s : {&t.subject, &t.object})
        if (s->is_var) bound[s->index] = true;
      if (t.predicate_var) bound[t.predicate_index] = true;
    }
    return rows;
  }

  static bool bind(Binding& b, const Slot& s, TermId value) {
    if (!s.is_var) return s.index == value;
    if (b[s.index] == kUnbound) {
      b[s.index] = value;
      return true;
    }
    return b[s.index] == value;
  }

  void extend(const CTriple& t, const Binding& row, std::vector<Binding>& out) {
    std::optional<TermId> s, o;
    if (TermId v = value_of(t.subject, row); v != kUnbound) s = v;
    if (TermId v = value_of(t.object, row); v != kUnbound) o = v;

    if (t.predicate_var || (t.steps.size() == 1 && t.steps[0].modifier == PathModifier::kOne)) {
      std::optional<TermId> p;
      if (t.predicate_var) {
        if (row[t.predicate_index] != kUnbound) p = row[t.predicate_index];
      } else {
        p = t.steps[0].predicate;
      }
      for_each_triple(s, p, o, [&](TermId ts, TermId tp, TermId to) {
        Binding b = row;
        if (!bind(b, t.subject, ts)) return;
        if (t.predicate_var && !bind(b, Slot{true, t.predicate_index}, tp)) return;
        if (!bind(b, t.object, to)) return;
        out.push_back(std::move(b));
      });
      return;
    }

    PathEnds ends{s, o, !t.subject.is_var, !t.object.is_var};
    for (auto [ps, po] : eval_path(t.steps, ends)) {
      Binding b = row;
      if (!bind(b, t.subject, ps) || !bind(b, t.object, po)) continue;
      out.push_back(std::move(b));
    }
  }

  // Graph triples plus virtual rdf:type triples.
  template <typename F>
  void for_each_triple(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
                       F&& fn) {
    for (auto q : {s, p, o})
      if (q && !in_graph(*q)) return;
    std::vector<IdTriple> scratch;
    for (const auto& t : graph_.scan(s, p, o, scratch)) fn(t.s, t.p, t.o);
    if (virtual_so_.empty() || (p && *p != type_id_)) return;
    if (s) {
      auto lo = std::lower_bound(virtual_so_.begin(), virtual_so_.end(), std::pair{*s, TermId{0}});
      for (auto it = lo; it != virtual_so_.end() && it->first == *s; ++it)
        if (!o || it->second == *o) fn(it->first, type_id_, it->second);
    } else if (o) {
      auto lo = std::lower_bound(virtual_os_.begin(), virtual_os_.end(), std::pair{*o, TermId{0}});
      for (auto it = lo; it != virtual_os_.end() && it->first == *o; ++it)
        fn(it->second, type_id_, it->first);
    } else {
      for (auto [vs, vo] : virtual_so_) fn(vs, type_id_, vo);
    }
  }

  std::vector<TermId> neighbours(TermId node, TermId predicate, bool forward) {
    std::vector<TermId> out;
    if (forward) {
      for_each_triple(node, predicate, std::nullopt,
                      [&](TermId, TermId, TermId o) { out.push_back(o); });
    } else {
      for_each_triple(std::nullopt, predicate, node,
                      [&](TermId s, TermId, TermId) { out.push_back(s); });
    }
    return out;
  }

  // Distinct nodes reachable in one or more steps.
  const std::vector<TermId>& reach(TermId node, TermId predicate, bool forward) {
    auto key = std::tuple{node, predicate, forward};
    auto it = reach_cache_.find(key);
    if (it != reach_cache_.end()) return it->second;
    std::vector<TermId> reached;
    std::unordered_set<TermId> seen;
    std::deque<TermId> queue{node};
    while (!queue.empty()) {
      TermId x = queue.front();
      queue.pop_front();
      for (TermId y : neighbours(x, predicate, forward))
        if (seen.insert(y).second) {
          reached.push_back(y);
          queue.push_back(y);
        }
    }
    return reach_cache_.emplace(key, std::move(reached)).first->second;
  }

  struct PathEnds {
    std::optional<TermId> subject, object;
    bool subject_constant, object_constant;
  };

  std::vector<TermId> node_domain() const {
    std::vector<TermId> out;
    for (TermId i = 0; i < is_node_.size(); ++i)
      if (is_node_[i]) out.push_back(i);
    return out;
  }

  // Multiset of (subject, object) pairs. Walks from whichever end is bound.
  std::vector<std::pair<TermId, TermId>> eval_path(const std::vector<Step>& steps,
                                                   const PathEnds& ends) {
    bool forward = ends.subject.has_value() || !ends.object.has_value();
    std::optional<TermId> start = forward ? ends.subject : ends.object;
    std::optional<TermId> finish = forward ? ends.object : ends.subject;
    bool start_constant = forward ? ends.subject_constant : ends.object_constant;
    bool finish_constant = forward ? ends.object_constant : ends.subject_constant;
    std::vector<Step> order = steps;
    if (!forward) std::reverse(order.begin(), order.end());

    // (origin, current)
    std::vector<std::pair<TermId, TermId>> frontier;
    if (start) {
      frontier.emplace_back(*start, *start);
    } else {
      for (TermId n : node_domain()) frontier.emplace_back(n, n);
    }

    for (std::size_t i = 0; i < order.size() && !frontier.empty(); ++i) {
      const Step& step = order[i];
      bool first = i == 0, last = i + 1 == order.size();
      std::vector<std::pair<TermId, TermId>> next;
      if (step.modifier == PathModifier::kOne && first && !start) {
        // Enumerate the predicate's triples directly.
        for_each_triple(std::nullopt, step.predicate, std::nullopt, [&](TermId s, TermId, TermId o) {
          if (forward) {
            next.emplace_back(s, o);
          } else {
            next.emplace_back(o, s);
          }
        });
        frontier = std::move(next);
        continue;
      }
      for (auto [origin, cur] : frontier) {
        if (step.modifier == PathModifier::kOne) {
          for (TermId y : neighbours(cur, step.predicate, forward)) next.emplace_back(origin, y);
          continue;
        }
        const auto& r = reach(cur, step.predicate, forward);
        bool self_reached = false;
        for (TermId y : r) {
          next.emplace_back(origin, y);
          if (y == cur) self_reached = true;
        }
        if (step.modifier == PathModifier::kZeroOrMore && !self_reached) {
          bool allowed = (in_graph(cur) && is_node_[cur]) ||
                         (first && start_constant && start && cur == *start) ||
                         (last && finish_constant && finish && cur == *finish);
          if (allowed) next.emplace_back(origin, cur);
        }
      }
      frontier = std::move(next);
    }

    std::vector<std::pair<TermId, TermId>> out;
    out.reserve(frontier.size());
    for (auto [origin, cur] : frontier) {
      if (finish && cur != *finish) continue;
      if (forward) {
        out.emplace_back(origin, cur);
      } else {
        out.emplace_back(cur, origin);
      }
    }
    return out;
  }

  struct KeyHash {
    std::size_t operator()(const std::tuple<TermId, TermId, bool>& k) const {
      auto [a, b, c] = k;
      return (static_cast<std::size_t>(a) * 1000003u) ^ (static_cast<std::size_t>(b) << 1) ^ c;
    }
  };

  const rdf::Graph& graph_;
  TermId type_id_ = kUnbound;
  std::vector<bool> is_node_;
  std::vector<std::pair<TermId, TermId>> virtual_so_, virtual_os_;
  std::unordered_map<Term, TermId, rdf::TermHash> extra_ids_;
  std::vector<Term> extra_terms_;
  std::unordered_map<std::string, std::uint32_t> var_index_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::tuple<TermId, TermId, bool>, std::vector<TermId>, KeyHash> reach_cache_;
};

}  // namespace

SolutionSequence evaluate(const Query& query, const rdf::Graph& graph, Inference inference) {
  if (!graph.sealed()) throw rdf::GraphStateError("evaluate requires a sealed graph");
  return Evaluator(graph, inference).run(query);
}

rdf::Graph materialize_subclass_closure(const rdf::Graph& graph) {
  if (!graph.sealed()) throw rdf::GraphStateError("materialize requires a sealed graph");
  rdf::Graph out;
  for (const auto& [prefix, ns] : graph.prefixes()) out.set_prefix(prefix, ns);
  for (const auto& t : graph.triples()) out.add(graph.materialize(t));

  auto type = graph.find(Term::iri(std::string(rdf::vocab::kRdfType)));
  auto sub = graph.find(Term::iri(std::string(rdf::vocab::kRdfsSubClassOf)));
  if (type && sub) {
    std::set<std::pair<TermId, TermId>> types;
    for (const auto& t : graph.match_ids(std::nullopt, *type, std::nullopt)) types.emplace(t.s, t.o);
    std::vector<std::pair<TermId, TermId>> edges;
    for (const auto& t : graph.match_ids(std::nullopt, *sub, std::nullopt)) edges.emplace_back(t.s, t.o);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::pair<TermId, TermId>> fresh;
      for (auto [x, c] : types)
        for (auto [from, to] : edges)
          if (from == c && !types.contains({x, to})) fresh.emplace_back(x, to);
      for (auto f : fresh) changed |= types.insert(f).second;
    }
    for (auto [x, c] : types) out.add(graph.term(x), graph.term(*type), graph.term(c));
  }
  out.seal();
  return out;
}

std::string results_to_json(const SolutionSequence& solutions) {
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (const auto& v : solutions.vars) vars.push_back(v);
  nlohmann::ordered_json bindings = nlohmann::ordered_json::array();
  for (const auto& row : solutions.rows) {
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i]) continue;
      const Term& t = *row[i];
      nlohmann::ordered_json cell;
      if (t.is_iri()) {
        cell["type"] = "uri";
        cell["value"] = t.value();
      } else if (t.is_blank()) {
        cell["type"] = "bnode";
        cell["value"] = t.value();
      } else {
        cell["type"] = "literal";
        cell["value"] = t.value();
        if (!t.language().empty()) {
          cell["xml:lang"] = t.language();
        } else if (!t.datatype().empty()) {
          cell["datatype"] = t.datatype();
        }
      }
      b[solutions.vars[i]] = std::move(cell);
    }
    bindings.push_back(std::move(b));
  }
  nlohmann::ordered_json doc;
  doc["head"]["vars"] = std::move(vars);
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump(2) + "\n";
}

std::string results_to_tsv(const SolutionSequence& solutions) {
  std::string out;
  for (std::size_t i = 0; i < solutions.vars.size(); ++i) {
    if (i) out += '\t';
    out += "?" + solutions.vars[i];
  }
  out += '\n';
  for (const auto& row : solutions.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      if (row[i]) out += row[i]->to_ntriples();
    }
    out += '\n';
  }
  return out;
}

}  // namespace ontoqual::sparql
