#pragma once

#include <stdexcept>
#include <string>

namespace tbill {

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TBILL_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

TBILL_DEFINE_ERROR(DegeneratePolygon);
TBILL_DEFINE_ERROR(NonConvex);
TBILL_DEFINE_ERROR(OnEdge);
TBILL_DEFINE_ERROR(OnVertex);
TBILL_DEFINE_ERROR(TangentChord);
TBILL_DEFINE_ERROR(TangentCrossing);
TBILL_DEFINE_ERROR(DegenerateChord);
TBILL_DEFINE_ERROR(HitBreakpoint);
TBILL_DEFINE_ERROR(SingularLattice);
TBILL_DEFINE_ERROR(RightAngledDegenerate);
TBILL_DEFINE_ERROR(NearVertex);
TBILL_DEFINE_ERROR(SelfIntersecting);
TBILL_DEFINE_ERROR(NoSingularLeaf);
TBILL_DEFINE_ERROR(PreconditionViolation);
TBILL_DEFINE_ERROR(ConfigError);

#undef TBILL_DEFINE_ERROR

}  // namespace tbill
