#ifndef TYPESEM_ERRORS_HPP
#define TYPESEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace typesem {

/// Malformed or unsupported input: bad JSON shape, unknown schema version,
/// unparseable words or values. CLI exit code 2.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string &what) : std::runtime_error(what) {}
};

/// Structurally well-formed input that violates a semantic requirement:
/// mismatched base spaces, a generator that is not injective, a prefix
/// exchange whose endpoints do not chain, a contract violation such as
/// comparing functions over different spaces. CLI exit code 2.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string &what) : std::runtime_error(what) {}
};

/// A certificate produced by the engine failed re-verification, or two
/// independent decision routes disagreed. Always a bug, never a property
/// of the input. CLI exit code 3.
class InternalCheckError : public std::runtime_error {
public:
  explicit InternalCheckError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace typesem

#endif // TYPESEM_ERRORS_HPP
