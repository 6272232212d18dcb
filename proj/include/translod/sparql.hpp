#pragma once

// SPARQL subset: PREFIX declarations, SELECT [DISTINCT] and CONSTRUCT forms,
// basic graph patterns, and FILTER (?var = "literal") equality. Nothing else.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "translod/error.hpp"
#include "translod/namespaces.hpp"
#include "translod/term.hpp"

namespace translod::sparql {

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;

  static bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
      return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
  }
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

/// Equality constraint from FILTER (?var = "literal").
struct Filter {
  Variable var;
  Literal value;
};

struct SelectForm {
  bool distinct = false;
  std::vector<Variable> projection;
};

struct ConstructForm {
  std::vector<TriplePattern> tmpl;
};

struct Query {
  std::variant<SelectForm, ConstructForm> form;
  std::vector<TriplePattern> where;
  std::vector<Filter> filters;
  NamespaceMap prefixes;

  bool is_select() const { return std::holds_alternative<SelectForm>(form); }
  const SelectForm& select() const { return std::get<SelectForm>(form); }
  const ConstructForm& construct() const { return std::get<ConstructForm>(form); }
};

namespace detail {

enum class TokKind {
  Keyword,   // PREFIX SELECT DISTINCT CONSTRUCT WHERE FILTER (case-insensitive)
  A,         // bare 'a'
  Var,       // ?name
  IriRef,    // <...>
  QName,     // prefix:local (local may be empty in PREFIX declarations)
  String,    // cooked literal body
  LangTag,   // cooked tag, lowercase
  DatatypeIri,  // ^^<iri> or ^^qname, cooked to the full IRI
  LBrace,
  RBrace,
  LParen,
  RParen,
  Equals,
  Dot,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  Lexer(std::string_view src, const NamespaceMap& prefixes)
      : src_(src), prefixes_(&prefixes) {}

  Token next() {
    skip_space();
    std::size_t at = i_;
    if (i_ >= src_.size()) return {TokKind::End, "", at};
    char c = src_[i_];
    switch (c) {
      case '{': ++i_; return {TokKind::LBrace, "{", at};
      case '}': ++i_; return {TokKind::RBrace, "}", at};
      case '(': ++i_; return {TokKind::LParen, "(", at};
      case ')': ++i_; return {TokKind::RParen, ")", at};
      case '=': ++i_; return {TokKind::Equals, "=", at};
      case '.': ++i_; return {TokKind::Dot, ".", at};
      case '?': return lex_var(at);
      case '<': return lex_iriref(at);
      case '"': return lex_string(at);
      case '@': return lex_lang(at);
      case '^': return lex_datatype(at);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return lex_word(at);
    throw QueryParseError(at, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token lex_var(std::size_t at) {
    ++i_;
    std::size_t start = i_;
    while (i_ < src_.size() && word_char(src_[i_])) ++i_;
    std::string name(src_.substr(start, i_ - start));
    if (!Variable::valid_name(name))
      throw QueryParseError(at, "variable name after '?'");
    return {TokKind::Var, name, at};
  }

  Token lex_iriref(std::size_t at) {
    ++i_;
    std::size_t start = i_;
    while (i_ < src_.size() && src_[i_] != '>') {
      if (src_[i_] == '\n')
        throw QueryParseError(at, "closing '>' on the same line");
      ++i_;
    }
    if (i_ >= src_.size()) throw QueryParseError(at, "closing '>'");
    std::string iri(src_.substr(start, i_ - start));
    ++i_;
    if (!Iri::is_valid(iri)) throw QueryParseError(at, "absolute IRI");
    return {TokKind::IriRef, std::move(iri), at};
  }

  Token lex_string(std::size_t at) {
    ++i_;
    std::string out;
    while (true) {
      if (i_ >= src_.size()) throw QueryParseError(at, "closing '\"'");
      char c = src_[i_++];
      if (c == '"') break;
      if (c == '\n') throw QueryParseError(at, "closing '\"' on the same line");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (i_ >= src_.size()) throw QueryParseError(at, "escape after '\\'");
      char e = src_[i_++];
      switch (e) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'u': out += unescape_hex(at, 4); break;
        case 'U': out += unescape_hex(at, 8); break;
        default:
          throw QueryParseError(i_ - 1, "valid escape sequence");
      }
    }
    return {TokKind::String, std::move(out), at};
  }

  std::string unescape_hex(std::size_t at, int digits) {
    if (i_ + digits > src_.size()) throw QueryParseError(at, "hex escape digits");
    char32_t cp = 0;
    for (int k = 0; k < digits; ++k) {
      char h = src_[i_++];
      int v;
      if (h >= '0' && h <= '9') v = h - '0';
      else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
      else throw QueryParseError(i_ - 1, "hex digit");
      cp = cp * 16 + static_cast<char32_t>(v);
    }
    std::string out;
    text::utf8_encode(cp, out);
    return out;
  }

  Token lex_lang(std::size_t at) {
    ++i_;
    std::size_t start = i_;
    while (i_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '-'))
      ++i_;
    std::string tag(src_.substr(start, i_ - start));
    if (tag.empty()) throw QueryParseError(at, "language tag after '@'");
    return {TokKind::LangTag, std::move(tag), at};
  }

  Token lex_datatype(std::size_t at) {
    if (i_ + 1 >= src_.size() || src_[i_ + 1] != '^')
      throw QueryParseError(at, "'^^'");
    i_ += 2;
    skip_space();
    if (i_ >= src_.size()) throw QueryParseError(at, "datatype IRI after '^^'");
    Token t = src_[i_] == '<' ? lex_iriref(i_) : lex_word(i_);
    if (t.kind == TokKind::IriRef) return {TokKind::DatatypeIri, t.text, at};
    if (t.kind == TokKind::QName)
      return {TokKind::DatatypeIri, expand_qname(t.text, *prefixes_).value, at};
    throw QueryParseError(at, "datatype IRI after '^^'");
  }

  Token lex_word(std::size_t at) {
    std::size_t start = i_;
    while (i_ < src_.size() && word_char(src_[i_])) ++i_;
    std::string word(src_.substr(start, i_ - start));
    if (i_ < src_.size() && src_[i_] == ':') {
      ++i_;
      std::size_t lstart = i_;
      while (i_ < src_.size() && (word_char(src_[i_]) || src_[i_] == '-')) ++i_;
      return {TokKind::QName,
              word + ':' + std::string(src_.substr(lstart, i_ - lstart)), at};
    }
    std::string upper = word;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == "PREFIX" || upper == "SELECT" || upper == "DISTINCT" ||
        upper == "CONSTRUCT" || upper == "WHERE" || upper == "FILTER")
      return {TokKind::Keyword, upper, at};
    if (word == "a") return {TokKind::A, "a", at};
    throw QueryParseError(at, "keyword, qname or 'a' (got '" + word + "')");
  }

  std::string_view src_;
  const NamespaceMap* prefixes_;
  std::size_t i_ = 0;
};

/// One Parser can read a whole stream of queries (as in a rule file);
/// PREFIX declarations accumulate across them.
class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src, prefixes_) { advance(); }

  bool at_end() const { return cur_.kind == TokKind::End; }

  /// Consumes any PREFIX declarations at the cursor.
  void parse_prologue() {
    while (cur_.kind == TokKind::Keyword && cur_.text == "PREFIX")
      parse_prefix();
  }

  /// Parses exactly one query and requires nothing after it.
  Query parse_single() {
    Query q = parse_one();
    if (!at_end()) fail("end of query");
    return q;
  }

  /// Parses a single query and leaves the cursor on whatever follows it.
  Query parse_one() {
    parse_prologue();
    query_ = Query{};
    query_.prefixes = prefixes_;
    if (cur_.kind == TokKind::Keyword && cur_.text == "SELECT") {
      parse_select();
    } else if (cur_.kind == TokKind::Keyword && cur_.text == "CONSTRUCT") {
      parse_construct();
    } else {
      fail("SELECT or CONSTRUCT");
    }
    expect_keyword("WHERE");
    parse_group(query_.where, true);
    check_variables();
    return std::move(query_);
  }

  const NamespaceMap& prefixes() const { return prefixes_; }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    throw QueryParseError(cur_.pos, "expected " + expected);
  }

  void expect(TokKind kind, const std::string& what) {
    if (cur_.kind != kind) fail(what);
    advance();
  }

  void expect_keyword(const std::string& kw) {
    if (cur_.kind != TokKind::Keyword || cur_.text != kw) fail(kw);
    advance();
  }

  void parse_prefix() {
    advance();
    if (cur_.kind != TokKind::QName || cur_.text.back() != ':')
      fail("prefix declaration like 'ex:'");
    std::string prefix = cur_.text.substr(0, cur_.text.size() - 1);
    advance();
    if (cur_.kind != TokKind::IriRef) fail("namespace IRI");
    prefixes_.bind(prefix, cur_.text);
    advance();
  }

  void parse_select() {
    advance();
    SelectForm sel;
    if (cur_.kind == TokKind::Keyword && cur_.text == "DISTINCT") {
      sel.distinct = true;
      advance();
    }
    while (cur_.kind == TokKind::Var) {
      sel.projection.push_back(Variable{cur_.text});
      advance();
    }
    if (sel.projection.empty()) fail("at least one projected variable");
    query_.form = std::move(sel);
  }

  void parse_construct() {
    advance();
    ConstructForm con;
    parse_group(con.tmpl, false);
    if (con.tmpl.empty()) fail("at least one template pattern");
    query_.form = std::move(con);
  }

  void parse_group(std::vector<TriplePattern>& patterns, bool allow_filter) {
    expect(TokKind::LBrace, "'{'");
    while (cur_.kind != TokKind::RBrace) {
      if (cur_.kind == TokKind::Keyword && cur_.text == "FILTER") {
        if (!allow_filter) fail("a triple pattern ('FILTER' not allowed here)");
        parse_filter();
      } else {
        patterns.push_back(parse_pattern());
      }
      if (cur_.kind == TokKind::Dot) advance();
    }
    advance();
  }

  void parse_filter() {
    advance();
    expect(TokKind::LParen, "'('");
    if (cur_.kind != TokKind::Var) fail("variable inside FILTER");
    Variable var{cur_.text};
    advance();
    expect(TokKind::Equals, "'='");
    if (cur_.kind != TokKind::String) fail("string literal inside FILTER");
    Literal value = Literal::plain(cur_.text);
    advance();
    query_.filters.push_back(Filter{std::move(var), std::move(value)});
    expect(TokKind::RParen, "')'");
  }

  TriplePattern parse_pattern() {
    TriplePattern p;
    p.subject = parse_term(Pos::Subject);
    p.predicate = parse_term(Pos::Predicate);
    p.object = parse_term(Pos::Object);
    return p;
  }

  enum class Pos { Subject, Predicate, Object };

  PatternTerm parse_term(Pos pos) {
    std::size_t at = cur_.pos;
    switch (cur_.kind) {
      case TokKind::Var: {
        Variable v{cur_.text};
        advance();
        return v;
      }
      case TokKind::A: {
        if (pos != Pos::Predicate)
          throw QueryParseError(at, "'a' is only valid as a predicate");
        advance();
        return Term{rdf_type()};
      }
      case TokKind::IriRef: {
        Term t{Iri{cur_.text}};
        advance();
        return t;
      }
      case TokKind::QName: {
        if (cur_.text.back() == ':')
          throw QueryParseError(at, "qname with a local part");
        Term t{expand_qname(cur_.text, query_.prefixes)};
        advance();
        return t;
      }
      case TokKind::String: {
        if (pos != Pos::Object)
          throw QueryParseError(at, "IRI or variable (literals are objects only)");
        std::string body = cur_.text;
        advance();
        if (cur_.kind == TokKind::LangTag) {
          Literal l = Literal::tagged(body, cur_.text);
          advance();
          return Term{std::move(l)};
        }
        if (cur_.kind == TokKind::DatatypeIri) {
          Literal l = Literal::typed(body, Iri{cur_.text});
          advance();
          return Term{std::move(l)};
        }
        return Term{Literal::plain(body)};
      }
      default:
        fail("term (variable, IRI, qname or literal)");
    }
  }

  void check_variables() {
    std::vector<std::string> bound;
    auto note = [&](const PatternTerm& t) {
      if (const auto* v = std::get_if<Variable>(&t)) bound.push_back(v->name);
    };
    for (const TriplePattern& p : query_.where) {
      note(p.subject);
      note(p.predicate);
      note(p.object);
    }
    auto is_bound = [&](const std::string& name) {
      for (const std::string& b : bound)
        if (b == name) return true;
      return false;
    };
    auto require = [&](const Variable& v) {
      if (!is_bound(v.name)) throw UnboundVariableError(v.name);
    };
    if (query_.is_select()) {
      for (const Variable& v : query_.select().projection) require(v);
    } else {
      for (const TriplePattern& p : query_.construct().tmpl)
        for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object})
          if (const auto* v = std::get_if<Variable>(t)) require(*v);
    }
    for (const Filter& f : query_.filters) require(f.var);
  }

  NamespaceMap prefixes_;
  Query query_;
  Lexer lexer_;
  Token cur_;
};

}  // namespace detail

inline Query parse_query(std::string_view text) {
  std::size_t bad = 0;
  if (!text::utf8_valid(text, &bad))
    throw QueryParseError(bad, "valid UTF-8");
  return detail::Parser(text).parse_single();
}

}  // namespace translod::sparql
