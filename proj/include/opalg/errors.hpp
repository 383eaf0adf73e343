#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define OPALG_DEFINE_ERROR(Name)                          \
  struct Name : Error {                                   \
    explicit Name(const std::string& msg) : Error(msg) {} \
  }

// Construction and validation failures.
OPALG_DEFINE_ERROR(NonPositiveWeight);
OPALG_DEFINE_ERROR(NormalizationViolation);
OPALG_DEFINE_ERROR(ShapeMismatch);
OPALG_DEFINE_ERROR(OwnerMismatch);
OPALG_DEFINE_ERROR(InvalidGroupTable);
OPALG_DEFINE_ERROR(NotStarClosed);
OPALG_DEFINE_ERROR(NotUnitary);
OPALG_DEFINE_ERROR(NotSubalgebra);
OPALG_DEFINE_ERROR(NotProjection);
OPALG_DEFINE_ERROR(AmbientMismatch);
OPALG_DEFINE_ERROR(InvariantViolation);
OPALG_DEFINE_ERROR(DuplicateAutomorphism);

// Numerical decision failures.  These indicate that a tolerance-guarded
// decision could not be made, not that the input is invalid.
OPALG_DEFINE_ERROR(RankDeficiencyUndetermined);
OPALG_DEFINE_ERROR(DegenerateNormalization);
OPALG_DEFINE_ERROR(OptimizerNonConvergence);
OPALG_DEFINE_ERROR(CarrierViolation);

// Batch-runner failures.
OPALG_DEFINE_ERROR(ConfigParse);
OPALG_DEFINE_ERROR(NumericalFailure);

#undef OPALG_DEFINE_ERROR

}  // namespace opalg
