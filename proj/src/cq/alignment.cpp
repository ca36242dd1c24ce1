#include "ontoqual/cq/alignment.hpp"

#include <algorithm>

#include <json.hpp>

namespace ontoqual::cq {

using nlohmann::ordered_json;

std::string_view vocabulary_name(Vocabulary v) {
  switch (v) {
    case Vocabulary::kOdp: return "ODP";
    case Vocabulary::kBrick: return "Brick";
    case Vocabulary::kRecore: return "RECore";
    case Vocabulary::kHaystack: return "Haystack";
    case Vocabulary::kDb: return "DB";
  }
  return "";
}

Vocabulary parse_vocabulary(std::string_view text) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  };
  std::string key = lower(text);
  for (Vocabulary v : kAllVocabularies)
    if (lower(vocabulary_name(v)) == key) return v;
  throw UnknownVocabulary(std::string(text));
}

namespace {

constexpr const char* kSosa = "http://www.w3.org/ns/sosa/";
constexpr const char* kSsn = "http://www.w3.org/ns/ssn/";
constexpr const char* kBrick = "https://brickschema.org/schema/Brick#";
constexpr const char* kCore = "https://w3id.org/rec/core#";
constexpr const char* kPhIoT = "https://project-haystack.org/def/phIoT/3.9.11#";
constexpr const char* kQudt = "http://qudt.org/schema/qudt/";

AlignmentRow row(std::string label, std::string odp, std::optional<std::string> brick,
                 std::optional<std::string> recore, std::optional<std::string> haystack) {
  AlignmentRow r;
  r.label = std::move(label);
  r.properties = {std::move(odp), std::move(brick), std::move(recore), std::move(haystack),
                  std::nullopt};
  return r;
}

}  // namespace

AlignmentMap AlignmentMap::builtin() {
  std::string sosa = kSosa, brick = kBrick, core = kCore, ph = kPhIoT;
  return AlignmentMap({
      row("madeObservation", sosa + "madeObservation", brick + "timeseries",
          core + "generatedObservation", std::nullopt),
      row("observes", sosa + "observes", brick + "measures", core + "observes",
          ph + "pointQuantity"),
      row("hasFeatureOfInterest", sosa + "hasFeatureOfInterest", brick + "measures",
          core + "observes", ph + "pointSubject"),
      row("observedProperty", sosa + "observedProperty", std::nullopt,
          std::string(kQudt) + "hasQuantityKind", std::nullopt),
      row("hasProperty", std::string(kSsn) + "hasProperty", std::nullopt, std::nullopt,
          std::nullopt),
  });
}

AlignmentMap AlignmentMap::from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid alignment JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw std::invalid_argument("alignment JSON must be an object with a \"rows\" array");
  std::vector<AlignmentRow> rows;
  for (const auto& r : doc["rows"]) {
    if (!r.is_object() || !r.contains("label") || !r["label"].is_string())
      throw std::invalid_argument("alignment row needs a string \"label\"");
    AlignmentRow out;
    out.label = r["label"].get<std::string>();
    for (const auto& [key, value] : r.items()) {
      if (key == "label") continue;
      Vocabulary v = parse_vocabulary(key);
      if (value.is_string()) {
        out.properties[static_cast<std::size_t>(v)] = value.get<std::string>();
      } else if (!value.is_null()) {
        throw std::invalid_argument("alignment row " + out.label + ": \"" + key +
                                    "\" must be an IRI or null");
      }
    }
    rows.push_back(std::move(out));
  }
  return AlignmentMap(std::move(rows));
}

std::string AlignmentMap::to_json() const {
  ordered_json rows = ordered_json::array();
  for (const auto& r : rows_) {
    ordered_json j;
    j["label"] = r.label;
    for (Vocabulary v : kAllVocabularies) {
      const auto& p = r.get(v);
      j[std::string(vocabulary_name(v))] = p ? ordered_json(*p) : ordered_json(nullptr);
    }
    rows.push_back(std::move(j));
  }
  ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::vector<const AlignmentRow*> AlignmentMap::rows_for(Vocabulary v, std::string_view iri) const {
  std::vector<const AlignmentRow*> out;
  for (const auto& r : rows_)
    if (r.get(v) && *r.get(v) == iri) out.push_back(&r);
  return out;
}

RewriteResult rewrite_with_alignment(std::span<const rdf::Triple> triples, Vocabulary from,
                                     Vocabulary to, const AlignmentMap& map) {
  if (from == to) throw std::invalid_argument("rewrite requires distinct vocabularies");
  RewriteResult result;
  for (const auto& t : triples) {
    auto rows = map.rows_for(from, t.predicate.value());
    if (!t.predicate.is_iri() || rows.empty()) {
      result.triples.push_back(t);
      continue;
    }
    std::vector<std::string> targets;
    std::vector<std::string> labels;
    bool absent = false;
    for (const auto* r : rows) {
      labels.push_back(r->label);
      if (r->get(to)) {
        targets.push_back(*r->get(to));
      } else {
        absent = true;
      }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::string joined;
    for (const auto& l : labels) joined += (joined.empty() ? "" : ", ") + l;

    if (targets.empty()) {
      result.unmappable.push_back(
          {t, "no " + std::string(vocabulary_name(to)) + " property for row " + joined});
    } else if (targets.size() > 1 || absent) {
      result.unmappable.push_back({t, "ambiguous: predicate matches rows " + joined});
    } else {
      result.triples.push_back({t.subject, rdf::Term::iri(targets.front()), t.object});
    }
  }
  return result;
}

std::string unmappable_to_json(const std::vector<Unmappable>& items) {
  ordered_json arr = ordered_json::array();
  for (const auto& u : items) {
    ordered_json j;
    j["subject"] = u.triple.subject.to_ntriples();
    j["predicate"] = u.triple.predicate.to_ntriples();
    j["object"] = u.triple.object.to_ntriples();
    j["reason"] = u.reason;
    arr.push_back(std::move(j));
  }
  ordered_json doc;
  doc["unmappable"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace ontoqual::cq
