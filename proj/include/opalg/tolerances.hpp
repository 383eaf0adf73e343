#pragma once

namespace opalg {

/// Numerical thresholds used across the library.  All residual-style
/// tolerances can be scaled uniformly (CLI --tolerance-scale); the rank
/// decision band is structural and never scaled.
struct Tolerances {
  double invariant = 1e-10;       ///< algebraic law residuals (idempotent, tracial, ...)
  double span_residual = 1e-9;    ///< span equality / word-closure acceptance
  double reconstruction = 1e-8;   ///< module reconstruction identities
  double cluster = 1e-8;          ///< eigenvalue clustering and distinctness
  double rank_rel = 1e-9;         ///< nominal relative rank threshold on singular values
  double rank_band_lo = 1e-11;    ///< undetermined band, lower edge (relative singular value)
  double rank_band_hi = 1e-7;     ///< undetermined band, upper edge
  double pinv_rel_cutoff = 1e-11; ///< pseudo-inverse cutoff relative to the largest singular value
  double index_bracket_rel = 1e-6;///< certificate width for index brackets
  double normalization = 1e-12;   ///< trace-weight normalization check
  double unitary = 1e-10;         ///< unitarity / projection checks on inputs

  /// Returns a copy with the residual-style tolerances multiplied by `s`.
  Tolerances scaled(double s) const {
    Tolerances t = *this;
    t.invariant *= s;
    t.span_residual *= s;
    t.reconstruction *= s;
    t.cluster *= s;
    t.unitary *= s;
    return t;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace opalg
