#include "ontoqual/rdf/term.hpp"

#include <cstdio>

#include "ontoqual/rdf/vocab.hpp"

namespace ontoqual::rdf {

Term Term::iri(std::string value) { return Term(Kind::kIri, std::move(value), {}, {}); }

Term Term::blank(std::string label) { return Term(Kind::kBlank, std::move(label), {}, {}); }

Term Term::literal(std::string lexical) {
  return Term(Kind::kLiteral, std::move(lexical), {}, {});
}

Term Term::typed(std::string lexical, std::string datatype) {
  if (datatype == vocab::kXsdString) datatype.clear();
  return Term(Kind::kLiteral, std::move(lexical), std::move(datatype), {});
}

Term Term::lang(std::string lexical, std::string language) {
  for (char& c : language) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return Term(Kind::kLiteral, std::move(lexical), {}, std::move(language));
}

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string escape_iri(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      char buf[12];
      std::snprintf(buf, sizeof buf, "\\u%04X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  switch (kind_) {
    case Kind::kIri:
      return "<" + escape_iri(value_) + ">";
    case Kind::kBlank:
      return "_:" + value_;
    case Kind::kLiteral: {
      std::string out = "\"" + escape_string(value_) + "\"";
      if (!language_.empty()) {
        out += "@" + language_;
      } else if (!datatype_.empty()) {
        out += "^^<" + escape_iri(datatype_) + ">";
      }
      return out;
    }
  }
  return {};
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) {
    // N-Triples first characters: '"' < '<' < '_'.
    auto rank = [](Term::Kind k) {
      switch (k) {
        case Term::Kind::kLiteral: return 0;
        case Term::Kind::kIri: return 1;
        case Term::Kind::kBlank: return 2;
      }
      return 3;
    };
    return rank(a.kind_) <=> rank(b.kind_);
  }
  if (a.kind_ == Term::Kind::kBlank) return a.value_ <=> b.value_;
  return a.to_ntriples() <=> b.to_ntriples();
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(t.kind());
}

std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  return a.object <=> b.object;
}

}  // namespace ontoqual::rdf
