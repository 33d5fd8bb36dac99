#pragma once

#include <stdexcept>
#include <string>

namespace tempohom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TEMPOHOM_ERROR(Name)              \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

TEMPOHOM_ERROR(BlueprintInvalid)
TEMPOHOM_ERROR(GridError)
TEMPOHOM_ERROR(IllPosedCell)
TEMPOHOM_ERROR(PositivityViolation)
TEMPOHOM_ERROR(SingularStageSystem)
TEMPOHOM_ERROR(MissingCoupling)
TEMPOHOM_ERROR(OrderUnavailable)
TEMPOHOM_ERROR(BoundaryLeak)
TEMPOHOM_ERROR(GridMismatch)
TEMPOHOM_ERROR(GuardViolation)
TEMPOHOM_ERROR(InsufficientPoints)

#undef TEMPOHOM_ERROR

}  // namespace tempohom
