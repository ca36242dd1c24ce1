#include "ontoqual/rdf/turtle.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "ontoqual/rdf/vocab.hpp"

namespace ontoqual::rdf {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

UndefinedPrefix::UndefinedPrefix(std::size_t line, std::size_t column, std::string prefix)
    : SyntaxError(line, column, "undefined prefix '" + prefix + ":'"), prefix_(std::move(prefix)) {}

namespace {

bool is_alpha(unsigned char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
// PN_CHARS_BASE, approximated: ASCII letters plus any non-ASCII byte.
bool is_pn_base(unsigned char c) { return is_alpha(c) || c >= 0x80; }
bool is_pn_chars_u(unsigned char c) { return is_pn_base(c) || c == '_'; }
bool is_pn_chars(unsigned char c) { return is_pn_chars_u(c) || c == '-' || is_digit(c); }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool has_scheme(std::string_view iri) {
  if (iri.empty() || !is_alpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(iri[i]);
    if (c == ':') return true;
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return false;
  }
  return false;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::optional<std::string> base)
      : text_(text), base_(std::move(base)) {}

  Graph run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    graph_.seal();
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    auto [line, col] = position(at);
    throw SyntaxError(line, col, msg);
  }

  std::pair<std::size_t, std::size_t> position(std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  bool at_end() const { return pos_ >= text_.size(); }
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? static_cast<unsigned char>(text_[pos_ + ahead]) : 0;
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  bool starts_with_keyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char c = text_[pos_ + i];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      if (c != kw[i]) return false;
    }
    unsigned char next = peek(kw.size());
    return !(is_pn_chars(next) || next == ':');
  }

  void skip_ws() {
    while (!at_end()) {
      unsigned char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != static_cast<unsigned char>(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void statement() {
    if (peek() == '@') {
      if (starts_with("@prefix")) {
        pos_ += 7;
        prefix_decl();
        expect('.');
        return;
      }
      if (starts_with("@base")) {
        pos_ += 5;
        base_decl();
        expect('.');
        return;
      }
      fail("unknown directive");
    }
    if (starts_with_keyword("PREFIX")) {
      pos_ += 6;
      prefix_decl();
      return;
    }
    if (starts_with_keyword("BASE")) {
      pos_ += 4;
      base_decl();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::size_t start = pos_;
    std::string prefix;
    if (peek() != ':') {
      if (!is_pn_base(peek())) fail("expected prefix name");
      while (is_pn_chars(peek()) || peek() == '.') prefix += static_cast<char>(text_[pos_++]);
      if (!prefix.empty() && prefix.back() == '.') fail_at(start, "prefix name ends with '.'");
    }
    if (peek() != ':') fail("expected ':' after prefix name");
    ++pos_;
    skip_ws();
    std::string ns = iri_ref();
    prefixes_[prefix] = ns;
    graph_.set_prefix(prefix, ns);
  }

  void base_decl() {
    skip_ws();
    base_ = iri_ref();
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Term subject = blank_node_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    predicate_object_list(subject);
  }

  Term subject_term() {
    skip_ws();
    unsigned char c = peek();
    if (c == '<') {
      if (peek(1) == '<') fail("RDF-star quoted triples are not supported");
      return Term::iri(iri_ref());
    }
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-')
      fail("literal in subject position");
    if (c == '{') fail("N3 formulae are not supported");
    return Term::iri(prefixed_name());
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      Term predicate = verb();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        ++pos_;
        skip_ws();
      }
      unsigned char c = peek();
      if (c == '.' || c == ']' || at_end()) return;
    }
  }

  Term verb() {
    skip_ws();
    if (peek() == 'a' && !(is_pn_chars(peek(1)) || peek(1) == ':' || peek(1) == '.')) {
      ++pos_;
      return Term::iri(std::string(vocab::kRdfType));
    }
    if (peek() == '<') {
      if (peek(1) == '<') fail("RDF-star quoted triples are not supported");
      return Term::iri(iri_ref());
    }
    if (peek() == '[' || peek() == '(' || peek() == '"' || (peek() == '_' && peek(1) == ':'))
      fail("predicate must be an IRI");
    return Term::iri(prefixed_name());
  }

  void object_list(const Term& subject, const Term& predicate) {
    for (;;) {
      Term object = object_term();
      graph_.add(subject, predicate, std::move(object));
      skip_ws();
      if (peek() != ',') return;
      ++pos_;
    }
  }

  Term object_term() {
    skip_ws();
    unsigned char c = peek();
    if (at_end()) fail("expected object but reached end of input");
    if (c == '<') {
      if (peek(1) == '<') fail("RDF-star quoted triples are not supported");
      return Term::iri(iri_ref());
    }
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '"' || c == '\'') return rdf_literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1))))
      return numeric_literal();
    if (c == '{') fail("N3 formulae are not supported");
    if (keyword_here("true")) {
      pos_ += 4;
      return Term::typed("true", std::string(vocab::kXsdBoolean));
    }
    if (keyword_here("false")) {
      pos_ += 5;
      return Term::typed("false", std::string(vocab::kXsdBoolean));
    }
    return Term::iri(prefixed_name());
  }

  bool keyword_here(std::string_view kw) const {
    if (!starts_with(kw)) return false;
    unsigned char next = peek(kw.size());
    return !(is_pn_chars(next) || next == ':');
  }

  Term fresh_blank() { return Term::blank("b" + std::to_string(next_blank_++)); }

  Term blank_label() {
    std::size_t start = pos_;
    pos_ += 2;
    std::string label;
    unsigned char c = peek();
    if (!(is_pn_chars_u(c) || is_digit(c))) fail_at(start, "invalid blank node label");
    while (is_pn_chars(peek()) || peek() == '.') label += static_cast<char>(text_[pos_++]);
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
    }
    auto it = blank_labels_.find(label);
    if (it != blank_labels_.end()) return it->second;
    Term t = fresh_blank();
    blank_labels_.emplace(label, t);
    return t;
  }

  Term blank_node_property_list() {
    ++pos_;  // '['
    skip_ws();
    Term node = fresh_blank();
    if (peek() == ']') {
      ++pos_;
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Term collection() {
    ++pos_;  // '('
    std::vector<Term> items;
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated collection");
      if (peek() == ')') {
        ++pos_;
        break;
      }
      items.push_back(object_term());
    }
    Term nil = Term::iri(std::string(vocab::kRdfNil));
    if (items.empty()) return nil;
    Term first_p = Term::iri(std::string(vocab::kRdfFirst));
    Term rest_p = Term::iri(std::string(vocab::kRdfRest));
    Term head = fresh_blank();
    Term cell = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      graph_.add(cell, first_p, std::move(items[i]));
      Term next = i + 1 < items.size() ? fresh_blank() : nil;
      graph_.add(cell, rest_p, next);
      cell = std::move(next);
    }
    return head;
  }

  std::uint32_t read_hex(std::size_t digits) {
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      unsigned char c = peek();
      if (!is_hex(c)) fail("invalid unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
      ++pos_;
    }
    return cp;
  }

  std::string iri_ref() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() != '<') fail("expected IRI");
    ++pos_;
    std::string iri;
    for (;;) {
      if (at_end()) fail_at(start, "unterminated IRI");
      unsigned char c = peek();
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (peek() == 'u') {
          ++pos_;
          append_utf8(iri, read_hex(4));
        } else if (peek() == 'U') {
          ++pos_;
          append_utf8(iri, read_hex(8));
        } else {
          fail("invalid escape in IRI");
        }
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`')
        fail("invalid character in IRI");
      iri += static_cast<char>(c);
      ++pos_;
    }
    return absolutize(iri, start);
  }

  std::string absolutize(const std::string& iri, std::size_t at) const {
    if (has_scheme(iri)) return iri;
    if (!base_) fail_at(at, "relative IRI <" + iri + "> without a base");
    return resolve_iri(*base_, iri);
  }

  std::string prefixed_name() {
    std::size_t start = pos_;
    std::string prefix;
    if (peek() != ':') {
      if (!is_pn_base(peek())) fail("unexpected character");
      while (is_pn_chars(peek()) || (peek() == '.' && (is_pn_chars(peek(1)) || peek(1) == '.')))
        prefix += static_cast<char>(text_[pos_++]);
      if (peek() != ':') fail_at(start, "expected prefixed name");
    }
    ++pos_;  // ':'
    std::string local;
    auto local_char = [this](bool first) {
      unsigned char c = peek();
      if (is_pn_chars_u(c) || is_digit(c) || c == ':' || c == '%' || c == '\\') return true;
      if (first) return false;
      return c == '-' || c == '.';
    };
    bool first = true;
    while (local_char(first)) {
      unsigned char c = peek();
      if (c == '.') {
        // A trailing '.' terminates the statement.
        std::size_t k = 0;
        while (peek(k) == '.') ++k;
        unsigned char after = peek(k);
        if (!(is_pn_chars(after) || after == ':' || after == '%' || after == '\\')) break;
      }
      if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("invalid percent escape");
        local.append(text_.substr(pos_, 3));
        pos_ += 3;
      } else if (c == '\\') {
        unsigned char e = peek(1);
        static constexpr std::string_view kEscapable = "_~.-!$&'()*+,;=/?#@%";
        if (kEscapable.find(static_cast<char>(e)) == std::string_view::npos)
          fail("invalid local name escape");
        local += static_cast<char>(e);
        pos_ += 2;
      } else {
        local += static_cast<char>(c);
        ++pos_;
      }
      first = false;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      auto [line, col] = position(start);
      throw UndefinedPrefix(line, col, prefix);
    }
    return it->second + local;
  }

  Term rdf_literal() {
    std::size_t start = pos_;
    unsigned char quote = peek();
    bool long_form = peek(1) == quote && peek(2) == quote;
    pos_ += long_form ? 3 : 1;
    std::string lexical;
    for (;;) {
      if (at_end()) fail_at(start, "unterminated string literal");
      unsigned char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          // Up to two extra quotes may close a long string ("""a"""").
          break;
        }
      } else {
        if (c == quote) {
          ++pos_;
          break;
        }
        if (c == '\n' || c == '\r') fail("newline in short string literal");
      }
      if (c == '\\') {
        ++pos_;
        unsigned char e = peek();
        ++pos_;
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'b': lexical += '\b'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 'f': lexical += '\f'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          case 'u': append_utf8(lexical, read_hex(4)); break;
          case 'U': append_utf8(lexical, read_hex(8)); break;
          default: fail("invalid string escape");
        }
        continue;
      }
      lexical += static_cast<char>(c);
      ++pos_;
    }
    if (peek() == '@') {
      ++pos_;
      std::string lang;
      while (is_alpha(peek())) lang += static_cast<char>(text_[pos_++]);
      if (lang.empty()) fail("empty language tag");
      while (peek() == '-' && (is_alpha(peek(1)) || is_digit(peek(1)))) {
        lang += static_cast<char>(text_[pos_++]);
        while (is_alpha(peek()) || is_digit(peek())) lang += static_cast<char>(text_[pos_++]);
      }
      return Term::lang(std::move(lexical), std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      pos_ += 2;
      std::string datatype = peek() == '<' ? iri_ref() : prefixed_name();
      return Term::typed(std::move(lexical), std::move(datatype));
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric_literal() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical += static_cast<char>(text_[pos_++]);
    bool int_digits = false, frac_digits = false, exponent = false;
    while (is_digit(peek())) {
      lexical += static_cast<char>(text_[pos_++]);
      int_digits = true;
    }
    if (peek() == '.' && is_digit(peek(1))) {
      lexical += static_cast<char>(text_[pos_++]);
      while (is_digit(peek())) {
        lexical += static_cast<char>(text_[pos_++]);
        frac_digits = true;
      }
    }
    if ((peek() == 'e' || peek() == 'E') && (int_digits || frac_digits)) {
      std::size_t save = pos_;
      std::string exp(1, static_cast<char>(text_[pos_++]));
      if (peek() == '+' || peek() == '-') exp += static_cast<char>(text_[pos_++]);
      if (!is_digit(peek())) {
        pos_ = save;
      } else {
        while (is_digit(peek())) exp += static_cast<char>(text_[pos_++]);
        lexical += exp;
        exponent = true;
      }
    }
    if (!int_digits && !frac_digits) fail("invalid numeric literal");
    if (exponent) return Term::typed(std::move(lexical), std::string(vocab::kXsdDouble));
    if (frac_digits) return Term::typed(std::move(lexical), std::string(vocab::kXsdDecimal));
    return Term::typed(std::move(lexical), std::string(vocab::kXsdInteger));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::string> base_;
  std::unordered_map<std::string, std::string> prefixes_;
  std::unordered_map<std::string, Term> blank_labels_;
  std::size_t next_blank_ = 0;
  Graph graph_;
};

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view path) {
  std::string input(path);
  std::string output;
  while (!input.empty()) {
    if (input.starts_with("../")) {
      input.erase(0, 3);
    } else if (input.starts_with("./")) {
      input.erase(0, 2);
    } else if (input.starts_with("/./")) {
      input.erase(0, 2);
    } else if (input == "/.") {
      input = "/";
    } else if (input.starts_with("/../") || input == "/..") {
      input = input == "/.." ? "/" : input.substr(3);
      auto slash = output.rfind('/');
      output.erase(slash == std::string::npos ? 0 : slash);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t start = input[0] == '/' ? 1 : 0;
      std::size_t next = input.find('/', start);
      if (next == std::string::npos) next = input.size();
      output += input.substr(0, next);
      input.erase(0, next);
    }
  }
  return output;
}

struct IriParts {
  std::string scheme, authority, path, query, fragment;
  bool has_authority = false, has_query = false, has_fragment = false;
};

IriParts split_iri(std::string_view s) {
  IriParts parts;
  if (has_scheme(s)) {
    auto colon = s.find(':');
    parts.scheme = std::string(s.substr(0, colon));
    s.remove_prefix(colon + 1);
  }
  if (auto hash = s.find('#'); hash != std::string_view::npos) {
    parts.fragment = std::string(s.substr(hash + 1));
    parts.has_fragment = true;
    s = s.substr(0, hash);
  }
  if (auto q = s.find('?'); q != std::string_view::npos) {
    parts.query = std::string(s.substr(q + 1));
    parts.has_query = true;
    s = s.substr(0, q);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    auto slash = s.find('/');
    parts.authority = std::string(s.substr(0, slash));
    parts.has_authority = true;
    s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
  }
  parts.path = std::string(s);
  return parts;
}

std::string join_iri(const IriParts& p) {
  std::string out;
  if (!p.scheme.empty()) out += p.scheme + ":";
  if (p.has_authority) out += "//" + p.authority;
  out += p.path;
  if (p.has_query) out += "?" + p.query;
  if (p.has_fragment) out += "#" + p.fragment;
  return out;
}

bool safe_local(std::string_view local) {
  if (local.empty()) return true;
  auto ok = [](unsigned char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; };
  if (!(is_alpha(local[0]) || is_digit(local[0]) || local[0] == '_')) return false;
  for (std::size_t i = 1; i < local.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(local[i]);
    if (!(ok(c) || (c == '.' && i + 1 < local.size()))) return false;
  }
  return true;
}

std::string render_iri(const std::string& iri, const std::map<std::string, std::string>& prefixes) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() > best_len && iri.starts_with(ns) && safe_local(std::string_view(iri).substr(ns.size()))) {
      best_prefix = &prefix;
      best_len = ns.size();
    }
  }
  if (best_prefix) return *best_prefix + ":" + iri.substr(best_len);
  return "<" + escape_iri(iri) + ">";
}

std::string render_term(const Term& t, const std::map<std::string, std::string>& prefixes) {
  switch (t.kind()) {
    case Term::Kind::kIri:
      return render_iri(t.value(), prefixes);
    case Term::Kind::kBlank:
      return "_:" + t.value();
    case Term::Kind::kLiteral: {
      std::string out = "\"" + escape_string(t.value()) + "\"";
      if (!t.language().empty()) {
        out += "@" + t.language();
      } else if (!t.datatype().empty()) {
        out += "^^" + render_iri(t.datatype(), prefixes);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view reference) {
  IriParts r = split_iri(reference);
  IriParts b = split_iri(base);
  IriParts t;
  if (!r.scheme.empty()) {
    t = r;
    t.path = remove_dot_segments(r.path);
  } else {
    if (r.has_authority) {
      t.authority = r.authority;
      t.has_authority = true;
      t.path = remove_dot_segments(r.path);
      t.query = r.query;
      t.has_query = r.has_query;
    } else {
      if (r.path.empty()) {
        t.path = b.path;
        if (r.has_query) {
          t.query = r.query;
          t.has_query = true;
        } else {
          t.query = b.query;
          t.has_query = b.has_query;
        }
      } else {
        if (r.path.starts_with("/")) {
          t.path = remove_dot_segments(r.path);
        } else {
          std::string merged;
          if (b.has_authority && b.path.empty()) {
            merged = "/" + r.path;
          } else {
            auto slash = b.path.rfind('/');
            merged = (slash == std::string::npos ? std::string() : b.path.substr(0, slash + 1)) + r.path;
          }
          t.path = remove_dot_segments(merged);
        }
        t.query = r.query;
        t.has_query = r.has_query;
      }
      t.authority = b.authority;
      t.has_authority = b.has_authority;
    }
    t.scheme = b.scheme;
  }
  t.fragment = r.fragment;
  t.has_fragment = r.has_fragment;
  return join_iri(t);
}

Graph parse_turtle(std::string_view document, std::optional<std::string> base) {
  return TurtleParser(document, std::move(base)).run();
}

Graph parse_turtle(std::istream& in, std::optional<std::string> base) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_turtle(std::string_view(text), std::move(base));
}

Graph parse_turtle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_turtle(in, std::nullopt);
}

std::string serialize_turtle(const Graph& graph) {
  const auto& prefixes = graph.prefixes();
  std::ostringstream out;
  for (const auto& [prefix, ns] : prefixes) {
    out << "@prefix " << prefix << ": <" << escape_iri(ns) << "> .\n";
  }
  auto triples = graph.triples();
  if (!triples.empty() && !prefixes.empty()) out << "\n";
  const std::string rdf_type(vocab::kRdfType);
  std::size_t i = 0;
  while (i < triples.size()) {
    TermId subject = triples[i].s;
    out << render_term(graph.term(subject), prefixes);
    bool first_predicate = true;
    while (i < triples.size() && triples[i].s == subject) {
      TermId predicate = triples[i].p;
      const Term& p = graph.term(predicate);
      out << (first_predicate ? " " : " ;\n    ");
      out << (p.value() == rdf_type ? std::string("a") : render_term(p, prefixes));
      bool first_object = true;
      while (i < triples.size() && triples[i].s == subject && triples[i].p == predicate) {
        out << (first_object ? " " : " , ") << render_term(graph.term(triples[i].o), prefixes);
        first_object = false;
        ++i;
      }
      first_predicate = false;
    }
    out << " .\n";
  }
  return out.str();
}

}  // namespace ontoqual::rdf
