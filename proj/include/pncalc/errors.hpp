#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pncalc {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grammar violation while scanning a polynomial expression.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  /// Byte offset into the offending expression string.
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// An identifier that is not a coordinate of the governing chart.
class UnknownVariable : public Error {
public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Operands live on different charts.
class ChartMismatch : public Error {
public:
  using Error::Error;
};

/// Containers whose sizes disagree with the ambient dimension.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// A bivector/endomorphism pair fails the compatibility precondition
/// N·P = P·Nᵀ, so the deformed bivector N·P does not exist.
class NotCompatible : public Error {
public:
  using Error::Error;
};

/// A coefficient matrix that was required to be antisymmetric is not.
class NotAntisymmetric : public Error {
public:
  using Error::Error;
};

/// A structure-constant table violates the Jacobi identity where a Lie
/// algebra was required.
class JacobiFailure : public Error {
public:
  using Error::Error;
};

/// The Jacobian of a polynomial group law has non-constant determinant,
/// which the polynomial inversion path cannot handle.
class NonConstantDeterminant : public Error {
public:
  using Error::Error;
};

/// Data attached to different Lie algebras was mixed in one operation.
class AlgebraMismatch : public Error {
public:
  using Error::Error;
};

/// Model payloads that belong to different base objects were combined.
class ModelMismatch : public Error {
public:
  using Error::Error;
};

/// Filesystem failure while reading or writing a model or report.
class IoError : public Error {
public:
  using Error::Error;
};

/// A model file is structurally invalid (missing key, wrong JSON type...).
/// Carries a JSON-pointer-style path to the offending element.
class SchemaError : public Error {
public:
  SchemaError(const std::string& what, const std::string& pointer)
      : Error(what + " (at " + pointer + ")"), pointer_(pointer) {}

  const std::string& pointer() const noexcept { return pointer_; }

private:
  std::string pointer_;
};

/// A model field failed to parse as a polynomial or rational.
/// Carries the field path and the offset reported by the scanner.
class ParseError : public Error {
public:
  ParseError(const std::string& what, const std::string& field,
             std::size_t position)
      : Error(what + " (field " + field + ", offset " +
              std::to_string(position) + ")"),
        field_(field), position_(position) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string field_;
  std::size_t position_;
};

/// A model parsed cleanly but violates a structural invariant of its kind.
class InvariantError : public Error {
public:
  using Error::Error;
};

}  // namespace pncalc
