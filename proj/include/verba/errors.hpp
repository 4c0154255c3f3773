#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace verba {

enum class Errc {
  InvalidOrder,
  NonAssociative,
  NoIdentity,
  NoInverse,
  UnknownFactor,
  LetterOutOfRange,
  SignatureMismatch,
  NotHyperbolic,
  NotSimple,
  NotApplicable,
  PreconditionTooShort,
  NoCommonStructure,
  BallTooLarge,
  WindowTooSmall,
  BudgetExceeded,
  BadArity,
  CommutingPair,
  SearchExhausted,
  StructureMismatch,
  ParseError,
  UnknownSuite,
};

/// Library-wide exception; `code` tells callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// BudgetExceeded carries the length bound of the offending node.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t bound)
      : Error(Errc::BudgetExceeded, what), bound_(bound) {}
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t bound_;
};

}  // namespace verba
