#include <algorithm>
#include <set>

#include "ontoqual/rdf/turtle.hpp"
#include "ontoqual/rdf/vocab.hpp"
#include "ontoqual/sparql/query.hpp"

namespace ontoqual::sparql {

QuerySyntaxError::QuerySyntaxError(std::size_t position, std::size_t line, std::size_t column,
                                   const std::string& message)
    : std::runtime_error("query syntax error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      position_(position),
      line_(line),
      column_(column) {}

Pattern Pattern::bgp(std::vector<TriplePattern> triples) {
  Pattern p;
  p.kind = Kind::kBgp;
  p.triples = std::move(triples);
  return p;
}

Pattern Pattern::binary(Kind kind, Pattern left, Pattern right, std::vector<Comparison> condition) {
  Pattern p;
  p.kind = kind;
  p.children.push_back(std::move(left));
  p.children.push_back(std::move(right));
  p.filters = std::move(condition);
  return p;
}

Pattern Pattern::filter(std::vector<Comparison> conditions, Pattern inner) {
  Pattern p;
  p.kind = Kind::kFilter;
  p.children.push_back(std::move(inner));
  p.filters = std::move(conditions);
  return p;
}

namespace {

void collect_vars(const PatternTerm& t, std::set<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
}

void collect_vars(const Pattern& p, std::set<std::string>& out) {
  for (const auto& tp : p.triples) {
    collect_vars(tp.subject, out);
    if (const auto* v = std::get_if<Variable>(&tp.predicate)) out.insert(v->name);
    collect_vars(tp.object, out);
  }
  for (const auto& c : p.filters) {
    collect_vars(c.lhs, out);
    collect_vars(c.rhs, out);
  }
  for (const auto& child : p.children) collect_vars(child, out);
}

bool is_alpha(unsigned char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_name_start(unsigned char c) { return is_alpha(c) || c == '_' || c >= 0x80; }
bool is_name_char(unsigned char c) { return is_name_start(c) || is_digit(c) || c == '-'; }

bool is_empty_bgp(const Pattern& p) {
  return p.kind == Pattern::Kind::kBgp && p.triples.empty();
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {
    prefixes_["rdf"] = std::string(rdf::vocab::kRdf);
    prefixes_["rdfs"] = std::string(rdf::vocab::kRdfs);
    prefixes_["owl"] = std::string(rdf::vocab::kOwl);
    prefixes_["xsd"] = std::string(rdf::vocab::kXsd);
  }

  Query run() {
    Query q;
    prologue();
    skip_ws();
    for (auto form : {"ASK", "CONSTRUCT", "DESCRIBE"})
      if (keyword(form)) throw UnsupportedFeature(form);
    if (!keyword("SELECT")) fail("expected SELECT");
    pos_ += 6;
    skip_ws();
    if (keyword("DISTINCT")) throw UnsupportedFeature("DISTINCT");
    if (keyword("REDUCED")) throw UnsupportedFeature("REDUCED");
    for (;;) {
      skip_ws();
      if (peek() == '?' || peek() == '$') {
        q.projection.push_back(variable().name);
      } else if (peek() == '*') {
        throw UnsupportedFeature("SELECT *");
      } else if (peek() == '(') {
        throw UnsupportedFeature("SELECT expression");
      } else {
        break;
      }
    }
    if (q.projection.empty()) fail("expected projection variables");
    skip_ws();
    if (keyword("FROM")) throw UnsupportedFeature("FROM");
    if (keyword("WHERE")) pos_ += 5;
    skip_ws();
    q.where = group();
    skip_ws();
    static constexpr std::pair<const char*, const char*> kModifiers[] = {
        {"ORDER", "ORDER BY"}, {"GROUP", "GROUP BY"}, {"HAVING", "HAVING"},
        {"LIMIT", "LIMIT"},    {"OFFSET", "OFFSET"},  {"VALUES", "VALUES"}};
    for (auto [kw, name] : kModifiers)
      if (keyword(kw)) throw UnsupportedFeature(name);
    if (!at_end()) fail("unexpected trailing content");

    std::set<std::string> vars;
    collect_vars(q.where, vars);
    for (const auto& v : q.projection)
      if (!vars.contains(v)) fail_at(0, "projected variable ?" + v + " does not occur in WHERE");
    q.prefixes = declared_;
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw QuerySyntaxError(at, line, col, msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? static_cast<unsigned char>(text_[pos_ + ahead]) : 0;
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

  // Case-insensitive keyword at the cursor, not followed by a name char.
  bool keyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      unsigned char c = static_cast<unsigned char>(text_[pos_ + i]);
      if (c >= 'a' && c <= 'z') c = static_cast<unsigned char>(c - 'a' + 'A');
      if (c != static_cast<unsigned char>(kw[i])) return false;
    }
    unsigned char next = peek(kw.size());
    return !(is_name_char(next) || next == ':');
  }

  void expect(char c) {
    skip_ws();
    if (peek() != static_cast<unsigned char>(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void prologue() {
    for (;;) {
      skip_ws();
      if (keyword("PREFIX")) {
        pos_ += 6;
        skip_ws();
        std::string prefix;
        while (is_name_char(peek()) || peek() == '.') prefix += static_cast<char>(text_[pos_++]);
        if (peek() != ':') fail("expected ':' in PREFIX declaration");
        ++pos_;
        skip_ws();
        std::string ns = iri_ref();
        prefixes_[prefix] = ns;
        declared_[prefix] = ns;
      } else if (keyword("BASE")) {
        pos_ += 4;
        skip_ws();
        base_ = iri_ref();
      } else {
        return;
      }
    }
  }

  std::string iri_ref() {
    std::size_t start = pos_;
    if (peek() != '<') fail("expected IRI");
    ++pos_;
    std::string iri;
    while (!at_end() && peek() != '>') {
      unsigned char c = peek();
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}') fail("invalid IRI");
      iri += static_cast<char>(c);
      ++pos_;
    }
    if (at_end()) fail_at(start, "unterminated IRI");
    ++pos_;
    if (iri.find(':') == std::string::npos) {
      if (!base_) fail_at(start, "relative IRI without BASE");
      iri = rdf::resolve_iri(*base_, iri);
    }
    return iri;
  }

  std::string prefixed_name() {
    std::size_t start = pos_;
    std::string prefix;
    while (is_name_char(peek()) || (peek() == '.' && is_name_char(peek(1))))
      prefix += static_cast<char>(text_[pos_++]);
    if (peek() != ':') fail_at(start, "expected prefixed name");
    ++pos_;
    std::string local;
    while (is_name_char(peek()) || peek() == ':' ||
           (peek() == '.' && (is_name_char(peek(1)) || peek(1) == ':'))) {
      local += static_cast<char>(text_[pos_++]);
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail_at(start, "undefined prefix '" + prefix + ":'");
    return it->second + local;
  }

  std::string iri() {
    if (peek() == '<') return iri_ref();
    return prefixed_name();
  }

  Variable variable() {
    ++pos_;  // ? or $
    std::string name;
    while (is_name_char(peek())) name += static_cast<char>(text_[pos_++]);
    if (name.empty()) fail("empty variable name");
    return Variable{name};
  }

  rdf::Term literal() {
    unsigned char quote = peek();
    bool long_form = peek(1) == quote && peek(2) == quote;
    std::size_t start = pos_;
    pos_ += long_form ? 3 : 1;
    std::string lexical;
    for (;;) {
      if (at_end()) fail_at(start, "unterminated string");
      unsigned char c = peek();
      if (long_form ? (c == quote && peek(1) == quote && peek(2) == quote) : c == quote) {
        pos_ += long_form ? 3 : 1;
        break;
      }
      if (c == '\\') {
        unsigned char e = peek(1);
        pos_ += 2;
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 'b': lexical += '\b'; break;
          case 'f': lexical += '\f'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          default: fail("unsupported string escape");
        }
        continue;
      }
      lexical += static_cast<char>(c);
      ++pos_;
    }
    if (peek() == '@') {
      ++pos_;
      std::string lang;
      while (is_alpha(peek()) || is_digit(peek()) || peek() == '-')
        lang += static_cast<char>(text_[pos_++]);
      if (lang.empty()) fail("empty language tag");
      return rdf::Term::lang(std::move(lexical), std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      pos_ += 2;
      return rdf::Term::typed(std::move(lexical), iri());
    }
    return rdf::Term::literal(std::move(lexical));
  }

  rdf::Term number() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical += static_cast<char>(text_[pos_++]);
    bool frac = false, exp = false;
    while (is_digit(peek())) lexical += static_cast<char>(text_[pos_++]);
    if (peek() == '.' && is_digit(peek(1))) {
      frac = true;
      lexical += static_cast<char>(text_[pos_++]);
      while (is_digit(peek())) lexical += static_cast<char>(text_[pos_++]);
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      exp = true;
      lexical += static_cast<char>(text_[pos_++]);
      if (peek() == '+' || peek() == '-') lexical += static_cast<char>(text_[pos_++]);
      while (is_digit(peek())) lexical += static_cast<char>(text_[pos_++]);
    }
    if (lexical.empty() || lexical == "+" || lexical == "-") fail("invalid number");
    std::string_view dt = exp ? rdf::vocab::kXsdDouble
                              : frac ? rdf::vocab::kXsdDecimal : rdf::vocab::kXsdInteger;
    return rdf::Term::typed(std::move(lexical), std::string(dt));
  }

  // Subject/object position.
  PatternTerm term_or_var() {
    skip_ws();
    unsigned char c = peek();
    if (c == '?' || c == '$') return variable();
    if (c == '<') return rdf::Term::iri(iri_ref());
    if (c == '"' || c == '\'') return literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) return number();
    if ((c == '_' && peek(1) == ':') || c == '[') throw UnsupportedFeature("blank node in query");
    if (c == '(') throw UnsupportedFeature("collection in query");
    if (keyword("true")) {
      pos_ += 4;
      return rdf::Term::typed("true", std::string(rdf::vocab::kXsdBoolean));
    }
    if (keyword("false")) {
      pos_ += 5;
      return rdf::Term::typed("false", std::string(rdf::vocab::kXsdBoolean));
    }
    if (is_name_char(c) || c == ':') return rdf::Term::iri(prefixed_name());
    fail("expected term or variable");
  }

  PathStep path_element() {
    skip_ws();
    unsigned char c = peek();
    if (c == '^') throw UnsupportedFeature("inverse property path");
    if (c == '!') throw UnsupportedFeature("negated property path");
    if (c == '(') throw UnsupportedFeature("grouped property path");
    PathStep step;
    if (c == 'a' && !(is_name_char(peek(1)) || peek(1) == ':')) {
      ++pos_;
      step.iri = std::string(rdf::vocab::kRdfType);
    } else if (c == '<' || is_name_char(c) || c == ':') {
      step.iri = iri();
    } else {
      fail("expected predicate");
    }
    if (peek() == '*') {
      ++pos_;
      step.modifier = PathModifier::kZeroOrMore;
    } else if (peek() == '+') {
      ++pos_;
      step.modifier = PathModifier::kOneOrMore;
    } else if (peek() == '?' && !is_name_char(peek(1))) {
      throw UnsupportedFeature("zero-or-one property path");
    } else if (peek() == '{') {
      throw UnsupportedFeature("counted property path");
    }
    return step;
  }

  Predicate verb() {
    skip_ws();
    if (peek() == '?' || peek() == '$') return variable();
    Path path;
    path.steps.push_back(path_element());
    for (;;) {
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        path.steps.push_back(path_element());
      } else if (peek() == '|') {
        throw UnsupportedFeature("alternative property path");
      } else {
        break;
      }
    }
    return path;
  }

  bool starts_triple() const {
    unsigned char c = peek();
    if (c == '?' || c == '$' || c == '<' || c == '"' || c == '\'' || c == '_' || c == '[' ||
        c == '(' || is_digit(c) || c == '+' || c == '-' || c == ':')
      return true;
    if (!is_name_start(c)) return false;
    static constexpr const char* kKeywords[] = {"OPTIONAL", "FILTER", "UNION",  "MINUS", "GRAPH",
                                                "SERVICE",  "BIND",   "VALUES", "SELECT"};
    for (auto kw : kKeywords)
      if (keyword(kw)) return false;
    return true;
  }

  void triples_same_subject(std::vector<TriplePattern>& out) {
    PatternTerm subject = term_or_var();
    for (;;) {
      Predicate predicate = verb();
      for (;;) {
        PatternTerm object = term_or_var();
        out.push_back({subject, predicate, std::move(object)});
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        ++pos_;
        skip_ws();
      }
      if (peek() == '.' || peek() == '}') return;
    }
  }

  Comparison::Op comparison_op() {
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      return Comparison::Op::kEqual;
    }
    if (peek() == '!' && peek(1) == '=') {
      pos_ += 2;
      return Comparison::Op::kNotEqual;
    }
    if (peek() == '<' || peek() == '>') throw UnsupportedFeature("FILTER ordering comparison");
    if (peek() == '&' || peek() == '|') throw UnsupportedFeature("FILTER boolean connective");
    fail("expected '=' or '!='");
  }

  PatternTerm filter_operand() {
    skip_ws();
    unsigned char c = peek();
    if (c == '(') throw UnsupportedFeature("FILTER nested expression");
    if (c == '!') throw UnsupportedFeature("FILTER negation");
    if (is_name_start(c)) {
      // A name followed by '(' is a function call.
      std::size_t k = pos_;
      while (k < text_.size() && is_name_char(static_cast<unsigned char>(text_[k]))) ++k;
      if (k < text_.size() && text_[k] == '(')
        throw UnsupportedFeature("FILTER function " + std::string(text_.substr(pos_, k - pos_)));
    }
    return term_or_var();
  }

  Comparison constraint() {
    skip_ws();
    if (peek() != '(') {
      std::size_t k = pos_;
      while (k < text_.size() && is_name_char(static_cast<unsigned char>(text_[k]))) ++k;
      throw UnsupportedFeature("FILTER function " + std::string(text_.substr(pos_, k - pos_)));
    }
    ++pos_;
    Comparison c;
    c.lhs = filter_operand();
    c.op = comparison_op();
    c.rhs = filter_operand();
    skip_ws();
    if (peek() == '&' || peek() == '|') throw UnsupportedFeature("FILTER boolean connective");
    expect(')');
    return c;
  }

  static void join_into(Pattern& acc, Pattern next) {
    if (is_empty_bgp(acc)) {
      acc = std::move(next);
    } else if (is_empty_bgp(next)) {
      return;
    } else if (acc.kind == Pattern::Kind::kBgp && next.kind == Pattern::Kind::kBgp) {
      for (auto& t : next.triples) acc.triples.push_back(std::move(t));
    } else {
      acc = Pattern::binary(Pattern::Kind::kJoin, std::move(acc), std::move(next));
    }
  }

  Pattern group() {
    expect('{');
    skip_ws();
    if (keyword("SELECT")) throw UnsupportedFeature("subquery");
    Pattern acc = Pattern::bgp();
    std::vector<Comparison> filters;
    // Triples after OPTIONAL or a group start a new BGP, joined on the right.
    bool extend_bgp = true;
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated group pattern");
      if (peek() == '}') {
        ++pos_;
        break;
      }
      if (peek() == '.') {
        ++pos_;
        continue;
      }
      if (keyword("OPTIONAL")) {
        pos_ += 8;
        skip_ws();
        Pattern inner = group();
        std::vector<Comparison> condition;
        if (inner.kind == Pattern::Kind::kFilter) {
          condition = std::move(inner.filters);
          Pattern body = std::move(inner.children[0]);
          inner = std::move(body);
        }
        acc = Pattern::binary(Pattern::Kind::kLeftJoin, std::move(acc), std::move(inner),
                              std::move(condition));
        extend_bgp = false;
        continue;
      }
      if (keyword("FILTER")) {
        pos_ += 6;
        filters.push_back(constraint());
        continue;
      }
      for (auto kw : {"MINUS", "GRAPH", "SERVICE", "BIND", "VALUES"})
        if (keyword(kw)) throw UnsupportedFeature(kw);
      if (keyword("UNION")) fail("UNION without a preceding group");
      if (peek() == '{') {
        Pattern alt = group();
        for (;;) {
          skip_ws();
          if (!keyword("UNION")) break;
          pos_ += 5;
          skip_ws();
          alt = Pattern::binary(Pattern::Kind::kUnion, std::move(alt), group());
        }
        join_into(acc, std::move(alt));
        extend_bgp = false;
        continue;
      }
      if (!starts_triple()) fail("unexpected token in group pattern");
      std::vector<TriplePattern> block;
      triples_same_subject(block);
      if (acc.kind == Pattern::Kind::kBgp) {
        for (auto& t : block) acc.triples.push_back(std::move(t));
      } else if (extend_bgp && acc.kind == Pattern::Kind::kJoin &&
                 acc.children[1].kind == Pattern::Kind::kBgp) {
        for (auto& t : block) acc.children[1].triples.push_back(std::move(t));
      } else {
        acc = Pattern::binary(Pattern::Kind::kJoin, std::move(acc), Pattern::bgp(std::move(block)));
      }
      extend_bgp = true;
    }
    if (!filters.empty()) return Pattern::filter(std::move(filters), std::move(acc));
    return acc;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::string> base_;
  std::map<std::string, std::string> prefixes_;
  std::map<std::string, std::string> declared_;
};

}  // namespace

std::vector<std::string> pattern_variables(const Pattern& pattern) {
  std::set<std::string> vars;
  collect_vars(pattern, vars);
  return {vars.begin(), vars.end()};
}

Query parse_query(std::string_view text) { return QueryParser(text).run(); }

}  // namespace ontoqual::sparql
