#pragma once

#include <stdexcept>
#include <string>

namespace hg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HG_DECLARE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

HG_DECLARE_ERROR(DivisionByZero)
HG_DECLARE_ERROR(OrderUnavailable)
HG_DECLARE_ERROR(RootUnavailable)
HG_DECLARE_ERROR(FieldMismatch)
HG_DECLARE_ERROR(ShapeMismatch)
HG_DECLARE_ERROR(ComoduleAxiomFailure)
HG_DECLARE_ERROR(NotGaloisError)
HG_DECLARE_ERROR(CentreRequired)
HG_DECLARE_ERROR(SubspaceMismatch)
HG_DECLARE_ERROR(ClosureFailure)
HG_DECLARE_ERROR(CheckFailure)
HG_DECLARE_ERROR(NotCocommutative)
HG_DECLARE_ERROR(UnsupportedFamily)
HG_DECLARE_ERROR(CocycleInvalid)
HG_DECLARE_ERROR(NotGaloisObject)
HG_DECLARE_ERROR(NotInvertible)
HG_DECLARE_ERROR(InputError)

#undef HG_DECLARE_ERROR

}  // namespace hg
