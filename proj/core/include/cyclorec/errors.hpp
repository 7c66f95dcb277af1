#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cyclorec {

/// How an error maps onto the command line exit-code contract.
enum class ErrorClass {
  Usage = 1,      // bad input, bad configuration, violated preconditions
  Structure = 2,  // exceptional parameter, desired-structure failure
  Budget = 3,     // timeouts and caps
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define CYCLOREC_DEFINE_ERROR(Name, Cls)                                  \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorClass::Cls, what) {} \
  };

CYCLOREC_DEFINE_ERROR(BadInput, Usage)
CYCLOREC_DEFINE_ERROR(ZeroElement, Usage)
CYCLOREC_DEFINE_ERROR(NonIntegral, Usage)
CYCLOREC_DEFINE_ERROR(NotRootOfUnity, Usage)
CYCLOREC_DEFINE_ERROR(EmptyS, Usage)
CYCLOREC_DEFINE_ERROR(MissingConstant, Usage)
CYCLOREC_DEFINE_ERROR(ParseError, Usage)
CYCLOREC_DEFINE_ERROR(ValidationError, Usage)
CYCLOREC_DEFINE_ERROR(UniverseTooSmall, Usage)
CYCLOREC_DEFINE_ERROR(DegenerateTerm, Structure)
CYCLOREC_DEFINE_ERROR(DegenerateGap, Structure)
CYCLOREC_DEFINE_ERROR(StructureViolation, Structure)
CYCLOREC_DEFINE_ERROR(IncompleteFactorization, Budget)
CYCLOREC_DEFINE_ERROR(FactorizationTimeout, Budget)
CYCLOREC_DEFINE_ERROR(CapExceeded, Budget)

#undef CYCLOREC_DEFINE_ERROR

/// Raised when the specialization point lies in the exceptional set.
class ExceptionalParameter : public Error {
 public:
  ExceptionalParameter(const std::string& what, std::vector<std::string> reasons)
      : Error(ErrorClass::Structure, what), reasons_(std::move(reasons)) {}
  const std::vector<std::string>& reasons() const noexcept { return reasons_; }

 private:
  std::vector<std::string> reasons_;
};

}  // namespace cyclorec
