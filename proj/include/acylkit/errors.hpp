#ifndef ACYLKIT_ERRORS_HPP_
#define ACYLKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace acyl {

// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
  explicit Error(std::string const& msg) : std::runtime_error(msg) {}
};

// Malformed input document (lexical/JSON level). `offset` is a byte
// position into the document when known, otherwise 0.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(std::string const& msg, std::size_t off = 0)
      : Error(msg), offset(off) {}
};

// Structurally valid document that violates a schema constraint.
// `path` names the offending field, e.g. "payload.edges[2]".
struct SchemaError : Error {
  std::string path;
  SchemaError(std::string const& field_path, std::string const& msg)
      : Error(field_path + ": " + msg), path(field_path) {}
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

// Raised by conjugate_trivializer when a subgroup has finite index.
struct FiniteIndexInput : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace acyl

#endif  // ACYLKIT_ERRORS_HPP_
