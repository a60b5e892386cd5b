#pragma once

#include <stdexcept>
#include <string>

namespace vorcycle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define VORCYCLE_DEFINE_ERROR(Name)         \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(std::string(#Name ": ") + what) {} \
  };

VORCYCLE_DEFINE_ERROR(SpanMismatch)
VORCYCLE_DEFINE_ERROR(NotPositiveDefinite)
VORCYCLE_DEFINE_ERROR(ZeroVector)
VORCYCLE_DEFINE_ERROR(NotFullDim)
VORCYCLE_DEFINE_ERROR(BoundaryFacet)
VORCYCLE_DEFINE_ERROR(WitnessMismatch)
VORCYCLE_DEFINE_ERROR(WrongGroupParity)
VORCYCLE_DEFINE_ERROR(InvariantViolation)
VORCYCLE_DEFINE_ERROR(IndexOutOfRange)
VORCYCLE_DEFINE_ERROR(ParseError)
VORCYCLE_DEFINE_ERROR(CacheCorruption)

#undef VORCYCLE_DEFINE_ERROR

}  // namespace vorcycle
