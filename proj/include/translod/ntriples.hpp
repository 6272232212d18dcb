#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/text.hpp"

namespace translod {

/// One line per triple, lexicographically sorted so equal graphs always
/// serialize to identical bytes.
inline std::string serialize_ntriples(const Graph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.size());
  for (const Triple& t : g.triples()) {
    lines.push_back(to_ntriples(t.subject) + " " + to_ntriples(t.predicate) +
                    " " + to_ntriples(t.object) + " .");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

namespace detail {

class NtLineParser {
 public:
  NtLineParser(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  Triple parse() {
    skip_ws();
    Term s = parse_subject();
    require_ws();
    Term p = parse_predicate();
    require_ws();
    Term o = parse_object();
    skip_ws();
    if (eof() || line_[pos_] != '.') fail("expected '.' terminator");
    ++pos_;
    skip_ws();
    if (!eof()) fail("trailing characters after '.'");
    return Triple{std::move(s), std::move(p), std::move(o)};
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SyntaxError(line_no_, why);
  }

  bool eof() const { return pos_ >= line_.size(); }

  void skip_ws() {
    while (!eof() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  void require_ws() {
    if (eof() || (line_[pos_] != ' ' && line_[pos_] != '\t'))
      fail("expected whitespace between terms");
    skip_ws();
  }

  Term parse_subject() {
    if (eof()) fail("expected subject");
    if (line_[pos_] == '<') return parse_iri();
    if (line_[pos_] == '_') return parse_blank();
    fail("subject must be an IRI or blank node");
  }

  Term parse_predicate() {
    if (eof() || line_[pos_] != '<') fail("predicate must be an IRI");
    return parse_iri();
  }

  Term parse_object() {
    if (eof()) fail("expected object");
    if (line_[pos_] == '<') return parse_iri();
    if (line_[pos_] == '_') return parse_blank();
    if (line_[pos_] == '"') return parse_literal();
    fail("object must be an IRI, blank node or literal");
  }

  Term parse_iri() {
    ++pos_;  // '<'
    std::size_t end = line_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string value(line_.substr(pos_, end - pos_));
    pos_ = end + 1;
    if (!Iri::is_valid(value)) fail("invalid IRI: <" + value + ">");
    return Iri{std::move(value)};
  }

  Term parse_blank() {
    if (pos_ + 1 >= line_.size() || line_[pos_ + 1] != ':')
      fail("expected '_:' blank node");
    pos_ += 2;
    std::size_t start = pos_;
    while (!eof()) {
      char c = line_[pos_];
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                (c >= '0' && c <= '9') || c == '_';
      if (!ok) break;
      ++pos_;
    }
    if (pos_ == start) fail("empty blank node label");
    return BlankNode{std::string(line_.substr(start, pos_ - start))};
  }

  Term parse_literal() {
    ++pos_;  // '"'
    std::string lex;
    while (true) {
      if (eof()) fail("unterminated literal");
      char c = line_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (eof()) fail("dangling escape");
        char e = line_[pos_++];
        switch (e) {
          case '"': lex += '"'; break;
          case '\\': lex += '\\'; break;
          case 'n': lex += '\n'; break;
          case 'r': lex += '\r'; break;
          case 't': lex += '\t'; break;
          case 'u': lex_append_codepoint(lex, 4); break;
          case 'U': lex_append_codepoint(lex, 8); break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      lex += c;
      ++pos_;
    }
    if (!eof() && line_[pos_] == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!eof()) {
        char c = line_[pos_];
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '-';
        if (!ok) break;
        ++pos_;
      }
      if (pos_ == start) fail("empty language tag");
      return Literal::tagged(std::move(lex),
                             line_.substr(start, pos_ - start));
    }
    if (pos_ + 1 < line_.size() && line_[pos_] == '^' && line_[pos_ + 1] == '^') {
      pos_ += 2;
      if (eof() || line_[pos_] != '<') fail("expected datatype IRI after ^^");
      Term dt = parse_iri();
      return Literal::typed(std::move(lex), std::get<Iri>(std::move(dt)));
    }
    return Literal::plain(std::move(lex));
  }

  void lex_append_codepoint(std::string& lex, int digits) {
    if (pos_ + static_cast<std::size_t>(digits) > line_.size())
      fail("truncated \\u escape");
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = line_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<char32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<char32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<char32_t>(c - 'A' + 10);
      else fail("bad hex digit in \\u escape");
    }
    text::utf8_encode(cp, lex);
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Strict N-Triples parser. Blank lines and '#' comment lines are skipped;
/// any malformed line raises SyntaxError with its line number.
inline Graph parse_ntriples(std::string_view input) {
  std::size_t bad = 0;
  if (!text::utf8_valid(input, &bad)) {
    std::size_t line_no = 1 + static_cast<std::size_t>(std::count(
                                  input.begin(), input.begin() + static_cast<std::ptrdiff_t>(bad), '\n'));
    throw SyntaxError(line_no, "invalid UTF-8");
  }
  Graph g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    ++line_no;
    std::string_view line = input.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string trimmed = text::trim(line);
    if (!trimmed.empty() && trimmed[0] != '#') {
      g.insert(detail::NtLineParser(line, line_no).parse());
    }
    if (end == input.size()) break;
    start = end + 1;
  }
  return g;
}

}  // namespace translod
