#pragma once

#include <vector>

#include "opalg/angles.hpp"
#include "opalg/automorphism.hpp"
#include "opalg/expectation.hpp"
#include "opalg/index.hpp"

namespace opalg {

/// The locally-trivial pair built from a finite family of automorphisms
/// of a base algebra N: the ambient algebra is the direct sum of one copy
/// of N per automorphism (each summand weighted 1/|family|), P is the
/// untwisted diagonal {x + x + ...} and Q the twisted diagonal
/// {alpha_1(x) + alpha_2(x) + ...}.  On the P-copy the sandwich
/// E_P E_Q E_P acts, up to the factor 1/|family|^2, as the coordinate
/// operator T = sum over pairs of alpha beta^{-1} on N.
struct DirectSumModel {
  MultiMatrixAlgebra base;
  std::vector<StarAutomorphism> autos;
  MultiMatrixAlgebra big;
  Subalgebra p;
  Subalgebra q;
  Matrix t_matrix;       ///< sum of alpha beta^{-1} on base coordinates
  Matrix embed_isometry; ///< coordinate isometry of the diagonal embedding

  int family_size() const { return static_cast<int>(autos.size()); }

  /// Diagonal embedding x -> x + x + ... into the big algebra.
  AlgebraElement embed(const AlgebraElement& x) const;
  /// Twisted embedding x -> alpha_1(x) + alpha_2(x) + ...
  AlgebraElement embed_twisted(const AlgebraElement& x) const;
  /// Summand a of a big-algebra element, as a base element.
  AlgebraElement summand(const AlgebraElement& x, int a) const;
};

/// Builds the model; throws DuplicateAutomorphism when two family members
/// coincide as maps (difference norm below 1e-8).
DirectSumModel build_direct_sum_model(const MultiMatrixAlgebra& base,
                                      const std::vector<StarAutomorphism>& autos,
                                      const Tolerances& tol = default_tolerances());

struct DirectSumModelReport {
  std::vector<double> t_eigenvalues;  ///< ascending, with multiplicity
  int t_spectrum_points = 0;          ///< distinct after clustering
  double proportionality_residual = 0.0;  ///< E_P E_Q E_P vs T / |family|^2
  double ep_formula_residual = 0.0;  ///< E_P against the summand average
  double eq_formula_residual = 0.0;  ///< E_Q against the twisted average
  double fixed_point_index = 0.0;    ///< Ind of E onto the diagonal fixed-point copy
  int fixed_point_dim = 0;
};

/// Spectrum of T, the proportionality identity
/// E_P E_Q E_P = (1/|family|^2) iota T pi E_P, the closed-form expectation
/// formulas, and the index onto the diagonally embedded fixed-point
/// algebra.
DirectSumModelReport direct_sum_model_spectrum(
    const DirectSumModel& model, const IndexOptions& index_options = {},
    const Tolerances& tol = default_tolerances());

}  // namespace opalg
