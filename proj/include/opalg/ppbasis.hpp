#pragma once

#include <optional>
#include <vector>

#include "opalg/expectation.hpp"

namespace opalg {

/// An orthonormal basis of M over the target of E: elements m_j with
/// E(m_i* m_j) = delta_ij f_j for projections f_j in the target, and
/// x = sum_j m_j E(m_j* x) for every x.
struct PPBasis {
  ConditionalExpectation expectation;
  std::vector<AlgebraElement> elements;
  std::vector<AlgebraElement> supports;

  int size() const { return static_cast<int>(elements.size()); }

  /// |x - sum_j m_j E(m_j* x)| / |x|.
  double reconstruction_residual(const AlgebraElement& x) const;
  /// Worst reconstruction residual over the trace basis.
  double worst_reconstruction_residual() const;
  /// Worst residual of E(m_i* m_j) - delta_ij f_j over all pairs.
  double orthogonality_residual() const;
  /// Worst residual of f = f* = f^2 over the supports.
  double support_projection_residual() const;
};

/// Gram-Schmidt over the target-valued inner product <x, y> = E(y* x):
/// iterates over the candidate spanning set (the ambient trace basis by
/// default), subtracts the components along the accepted elements,
/// discards numerically null remainders and normalizes each survivor by
/// functional calculus on E(r* r) so its self-inner-product becomes a
/// projection.  Throws DegenerateNormalization when the spectrum of an
/// E(r* r) straddles the tolerance band.
PPBasis pp_basis(const ConditionalExpectation& e,
                 const std::optional<std::vector<AlgebraElement>>& candidates =
                     std::nullopt,
                 const Tolerances& tol = default_tolerances());

}  // namespace opalg
