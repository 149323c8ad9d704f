#pragma once

#include <stdexcept>
#include <string>

namespace niemytzki {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers can catch the whole family at once; the CLI maps any Error to
// exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

struct MembershipError : Error {
  explicit MembershipError(const std::string& msg) : Error(msg) {}
};

struct AnchorMismatch : Error {
  explicit AnchorMismatch(const std::string& msg) : Error(msg) {}
};

struct UnsupportedTarget : Error {
  explicit UnsupportedTarget(const std::string& msg) : Error(msg) {}
};

struct UnsupportedFamily : Error {
  explicit UnsupportedFamily(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

struct NoRootError : Error {
  explicit NoRootError(const std::string& msg) : Error(msg) {}
};

struct EvaluationError : Error {
  explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

struct AllDegenerateError : Error {
  explicit AllDegenerateError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct AxiomError : Error {
  explicit AxiomError(const std::string& msg) : Error(msg) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& msg) : Error(msg) {}
};

}  // namespace niemytzki
