#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace translod {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A qname used a prefix that is not bound in the namespace map.
struct UnknownPrefixError : Error {
  std::string prefix;
  explicit UnknownPrefixError(std::string p)
      : Error("unknown prefix: " + p), prefix(std::move(p)) {}
};

/// A literal appeared in subject or predicate position.
struct InvalidPositionError : Error {
  using Error::Error;
};

/// Malformed line in a line-oriented format (N-Triples, gazetteer, ...).
struct SyntaxError : Error {
  std::size_t line;
  std::string reason;
  SyntaxError(std::size_t line_no, std::string why)
      : Error("line " + std::to_string(line_no) + ": " + why),
        line(line_no),
        reason(std::move(why)) {}
};

/// Date cell does not match dd/mm/yyyy or names an impossible date.
struct BadDateError : Error {
  using Error::Error;
};

/// Malformed XML input.
struct XmlSyntaxError : Error {
  std::size_t position;  // line number when known, 0 otherwise
  XmlSyntaxError(std::size_t pos, const std::string& why)
      : Error("xml: line " + std::to_string(pos) + ": " + why), position(pos) {}
};

/// A required child element is missing.
struct MissingFieldError : Error {
  std::string element;
  std::string field;
  MissingFieldError(std::string elem, std::string fld)
      : Error(elem + ": missing " + fld),
        element(std::move(elem)),
        field(std::move(fld)) {}
};

/// A numeric value is outside its legal range.
struct RangeError : Error {
  using Error::Error;
};

/// Query text rejected by the SPARQL-subset parser.
struct QueryParseError : Error {
  std::size_t position;  // byte offset into the query text
  std::string expected;
  QueryParseError(std::size_t pos, std::string what_expected)
      : Error("query parse error at offset " + std::to_string(pos) + ": " +
              what_expected),
        position(pos),
        expected(std::move(what_expected)) {}
};

/// A projected, template or filter variable does not occur in the WHERE clause.
struct UnboundVariableError : Error {
  std::string name;
  explicit UnboundVariableError(std::string var)
      : Error("unbound variable: ?" + var), name(std::move(var)) {}
};

/// No supported media type satisfies the Accept header (HTTP 406).
struct NotAcceptableError : Error {
  using Error::Error;
};

}  // namespace translod
