#include "ontoqual/metrics/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ontoqual::metrics {

using ontology::ClassId;
using ontology::kThing;
using ontology::OntologyView;

std::string metric_key(MetricId id) { return "m" + std::to_string(static_cast<int>(id)); }

std::string_view metric_acronym(MetricId id) {
  static constexpr std::array<std::string_view, kMetricCount> kNames = {
      "LCOMOnto", "WMCOnto", "DITOnto", "NACOnto", "NOCOnto", "CBOOnto",  "RFCOnto",
      "NOMOnto",  "TMOnto",  "RROnto",  "PROnto",  "AROnto",  "ANOnto",   "INROnto"};
  return kNames[static_cast<std::size_t>(id) - 1];
}

MetricId parse_metric_id(std::string_view text) {
  if (!text.empty() && (text.front() == 'm' || text.front() == 'M')) text.remove_prefix(1);
  int n = 0;
  if (text.empty() || text.size() > 2) throw std::invalid_argument("unknown metric");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("unknown metric");
    n = n * 10 + (c - '0');
  }
  if (n < 1 || n > static_cast<int>(kMetricCount)) throw std::invalid_argument("unknown metric");
  return static_cast<MetricId>(n);
}

std::string_view interpretation_name(Interpretation mode) {
  return mode == Interpretation::kLiteral ? "literal" : "default";
}

Interpretation parse_interpretation(std::string_view text) {
  if (text == "default") return Interpretation::kDefault;
  if (text == "literal") return Interpretation::kLiteral;
  throw std::invalid_argument("unknown interpretation mode: " + std::string(text));
}

const Rational& MetricVector::get(MetricId id) const {
  return const_cast<MetricVector*>(this)->get(id);
}

Rational& MetricVector::get(MetricId id) {
  switch (id) {
    case MetricId::kM1: return m1_lcom;
    case MetricId::kM2: return m2_wmc;
    case MetricId::kM3: return m3_dit;
    case MetricId::kM4: return m4_nac;
    case MetricId::kM5: return m5_noc;
    case MetricId::kM6: return m6_cbo;
    case MetricId::kM7: return m7_rfc;
    case MetricId::kM8: return m8_nom;
    case MetricId::kM9: return m9_tm;
    case MetricId::kM10: return m10_rr;
    case MetricId::kM11: return m11_pr;
    case MetricId::kM12: return m12_ar;
    case MetricId::kM13: return m13_an;
    case MetricId::kM14: return m14_inr;
  }
  throw std::invalid_argument("unknown metric");
}

bool MetricVector::same_values(const MetricVector& other) const {
  return std::all_of(kAllMetrics.begin(), kAllMetrics.end(),
                     [&](MetricId id) { return get(id) == other.get(id); });
}

namespace {

Rational checked_ratio(const Rational& num, const Rational& den, std::string_view what,
                       std::vector<std::string>* warnings) {
  if (den == 0) {
    if (warnings) warnings->push_back(std::string(what) + ": empty denominator, defined as 0");
    return 0;
  }
  return num / den;
}

struct UpwardPaths {
  BigInt count;       // number of paths to Thing
  BigInt length_sum;  // total edges over those paths
  std::size_t longest = 0;
};

// Aggregates over all upward paths without enumerating them; parents are
// processed before children.
std::vector<UpwardPaths> upward_path_stats(const OntologyView& view) {
  const std::size_t n = view.class_count();
  std::vector<UpwardPaths> stats(n);
  std::vector<std::size_t> pending(n, 0);
  std::vector<ClassId> ready;
  for (ClassId c = 0; c < n; ++c) {
    for (ClassId p : view.parents(c))
      if (p != kThing) ++pending[c];
    if (pending[c] == 0) ready.push_back(c);
  }
  while (!ready.empty()) {
    ClassId c = ready.back();
    ready.pop_back();
    UpwardPaths& s = stats[c];
    for (ClassId p : view.parents(c)) {
      if (p == kThing) {
        s.count += 1;
        s.length_sum += 1;
        s.longest = std::max<std::size_t>(s.longest, 1);
      } else {
        const UpwardPaths& ps = stats[p];
        s.count += ps.count;
        s.length_sum += ps.length_sum + ps.count;
        s.longest = std::max(s.longest, ps.longest + 1);
      }
    }
    for (ClassId child : view.children(c))
      if (--pending[child] == 0) ready.push_back(child);
  }
  return stats;
}

}  // namespace

PathMetrics compute_path_metrics(const OntologyView& view, PathAveraging averaging,
                                 std::vector<std::string>* warnings) {
  auto stats = upward_path_stats(view);
  BigInt paths = 0, lengths = 0;
  Rational per_leaf_sum = 0;
  std::size_t longest = 0;
  for (ClassId leaf : view.leaves()) {
    const auto& s = stats[leaf];
    paths += s.count;
    lengths += s.length_sum;
    per_leaf_sum += Rational(s.length_sum, s.count);
    longest = std::max(longest, s.longest);
  }
  const Rational leaves(view.leaves().size());
  PathMetrics out;
  out.m1 = averaging == PathAveraging::kPooled
               ? checked_ratio(Rational(lengths), Rational(paths), "m1", warnings)
               : checked_ratio(per_leaf_sum, leaves, "m1", warnings);
  out.m2 = checked_ratio(Rational(paths), leaves, "m2", warnings);
  out.m3 = Rational(longest);
  return out;
}

DegreeMetrics compute_degree_metrics(const OntologyView& view, Interpretation interp,
                                     std::vector<std::string>* warnings) {
  std::size_t parent_total = 0;
  for (ClassId leaf : view.leaves()) parent_total += view.parents(leaf).size();
  DegreeMetrics out;
  out.m4 = checked_ratio(Rational(parent_total), Rational(view.leaves().size()), "m4", warnings);
  if (interp == Interpretation::kLiteral) {
    out.m5 = 0;  // leaves have no subclasses
  } else {
    std::size_t with_children = 0;
    for (ClassId c = 0; c < view.class_count(); ++c)
      if (!view.children(c).empty()) ++with_children;
    out.m5 = checked_ratio(Rational(view.named_edge_count()), Rational(with_children), "m5",
                           warnings);
  }
  return out;
}

CouplingMetrics compute_coupling_metrics(const OntologyView& view,
                                         std::vector<std::string>* warnings) {
  const std::size_t n = view.class_count();
  std::size_t with_named_parent = 0;
  for (ClassId c = 0; c < n; ++c) {
    auto ps = view.parents(c);
    if (std::any_of(ps.begin(), ps.end(), [](ClassId p) { return p != kThing; }))
      ++with_named_parent;
  }
  // Properties per domain class (kThing included), for RFC.
  std::vector<std::vector<std::size_t>> props_by_domain(n);
  std::vector<std::size_t> thing_props;
  const auto& props = view.properties();
  for (std::size_t i = 0; i < props.size(); ++i) {
    for (ClassId d : props[i].domains) {
      if (d == kThing) {
        thing_props.push_back(i);
      } else {
        props_by_domain[d].push_back(i);
      }
    }
  }
  std::size_t accessible_total = 0;
  std::vector<std::size_t> mark(props.size(), n + 1);
  for (ClassId c = 0; c < n; ++c) {
    std::size_t count = 0;
    auto visit = [&](std::size_t p) {
      if (mark[p] != c) {
        mark[p] = c;
        ++count;
      }
    };
    for (std::size_t p : props_by_domain[c]) visit(p);
    for (ClassId a : ontology::ancestors(view, c)) {
      if (a == kThing) {
        for (std::size_t p : thing_props) visit(p);
      } else {
        for (std::size_t p : props_by_domain[a]) visit(p);
      }
    }
    accessible_total += count;
  }
  CouplingMetrics out;
  out.m6 = checked_ratio(Rational(view.named_edge_count()), Rational(with_named_parent), "m6",
                         warnings);
  out.m7 = Rational(accessible_total, n);
  out.m8 = Rational(props.size(), n);
  return out;
}

Rational compute_tangledness(const OntologyView& view, std::vector<std::string>* warnings) {
  std::size_t tangled = 0, parent_total = 0;
  for (ClassId c = 0; c < view.class_count(); ++c) {
    auto ps = view.parents(c);
    if (ps.size() > 1) {
      ++tangled;
      parent_total += ps.size();
    }
  }
  return checked_ratio(Rational(parent_total), Rational(tangled), "m9", warnings);
}

RichnessMetrics compute_richness_metrics(const OntologyView& view,
                                         std::vector<std::string>* warnings) {
  const Rational edges(view.named_edge_count());
  const Rational props(view.properties().size());
  const Rational classes(view.class_count());
  std::size_t restrictions = 0, annotations = 0;
  for (ClassId c = 0; c < view.class_count(); ++c) {
    restrictions += view.restriction_count(c);
    annotations += view.annotation_count(c);
  }
  RichnessMetrics out;
  out.m10 = checked_ratio(edges, edges + props, "m10", warnings);
  out.m11 = checked_ratio(props, edges + props, "m11", nullptr);
  out.m12 = Rational(restrictions) / classes;
  out.m13 = Rational(annotations) / classes;
  out.m14 = edges / classes;
  return out;
}

MetricVector compute_metric_vector(const OntologyView& view, Interpretation interp) {
  MetricVector v;
  auto* w = &v.warnings;
  auto path = compute_path_metrics(view, PathAveraging::kPooled, w);
  auto degree = compute_degree_metrics(view, interp, w);
  auto coupling = compute_coupling_metrics(view, w);
  auto richness = compute_richness_metrics(view, w);
  v.m1_lcom = path.m1;
  v.m2_wmc = path.m2;
  v.m3_dit = path.m3;
  v.m4_nac = degree.m4;
  v.m5_noc = degree.m5;
  v.m6_cbo = coupling.m6;
  v.m7_rfc = coupling.m7;
  v.m8_nom = coupling.m8;
  v.m9_tm = compute_tangledness(view, w);
  v.m10_rr = richness.m10;
  v.m11_pr = richness.m11;
  v.m12_ar = richness.m12;
  v.m13_an = richness.m13;
  v.m14_inr = richness.m14;
  return v;
}

}  // namespace ontoqual::metrics
