#pragma once

#include <vector>

#include "opalg/expectation.hpp"
#include "opalg/gns.hpp"
#include "opalg/index.hpp"

namespace opalg {

/// Spectrum of e_P e_Q e_P on L^2(M).  Eigenvalues within the cluster
/// tolerance of 0 or 1 are trivial; the remaining ones in (0, 1) give the
/// angles arccos(sqrt(lambda)) between the subalgebras.  The eigenvalue-1
/// eigenspace is exactly (P cap Q) Omega, so its multiplicity is the
/// intersection rank.
struct AngleSpectrum {
  std::vector<double> raw_eigenvalues;  ///< ascending
  std::vector<double> angles;           ///< ascending, strictly inside (0, pi/2)
  int intersection_rank = 0;
};

AngleSpectrum angle_spectrum(const Subalgebra& p, const Subalgebra& q,
                             const Tolerances& tol = default_tolerances());

/// Orthogonal projection onto the intersection of the ranges, computed
/// from the kernel of the stacked complements (never by iterative
/// limits).  Throws NotProjection unless every input is a projection.
RepresentedOperator wedge(const std::vector<RepresentedOperator>& projections,
                          const Tolerances& tol = default_tolerances());

/// Joint block decomposition of two projections: the four corner types
/// plus 2x2 generic blocks carrying cos^2(theta).
struct HalmosDecomposition {
  struct GenericBlock {
    Vector u;      ///< unit vector in range p
    Vector w;      ///< unit companion in ker p
    double cos2;   ///< <q u, u>
  };
  Matrix both;     ///< range p cap range q
  Matrix p_only;   ///< range p cap ker q
  Matrix q_only;   ///< ker p cap range q
  Matrix neither;  ///< ker p cap ker q
  std::vector<GenericBlock> blocks;
  std::vector<double> distinct_cos2;  ///< clustered generic values
  double reconstruction_residual = 0.0;
};

HalmosDecomposition halmos_decompose(const RepresentedOperator& p,
                                     const RepresentedOperator& q,
                                     const Tolerances& tol = default_tolerances());

/// The algebra generated by a family of projections, with its word
/// bookkeeping: greedy length-lex basis, the longest accepted word and a
/// stabilization certificate (one full round added no dimension).
struct GeneratedAlgebra {
  std::vector<RepresentedOperator> generators;
  std::vector<std::vector<int>> basis_words;  ///< generator-index words; empty word = unit
  OperatorSpan span;
  int dim = 0;
  int ell = 0;
  bool unit_adjoined = false;
  bool stabilized = false;
};

GeneratedAlgebra generated_projection_algebra(
    const std::vector<RepresentedOperator>& projections, bool adjoin_unit,
    const Tolerances& tol = default_tolerances());

/// Empirical check of the word-length index bound for a family of
/// subalgebras: with N the intersection, L the largest member index, A
/// the algebra generated by the Jones projections (unit adjoined) and ell
/// its longest basis word, compares Ind(E_N) against L^ell * dim A.  The
/// outcome is reported, never asserted; the factor-4 improvement for
/// two-member families is tracked observationally.
struct BoundReport {
  std::vector<double> member_indices;
  double max_index = 0.0;  ///< L
  int ell = 0;             ///< unit-adjoined basis
  int dim_algebra = 0;     ///< unit-adjoined
  int ell_no_unit = 0;
  int dim_no_unit = 0;
  double intersection_index = 0.0;
  int intersection_dim = 0;
  double bound = 0.0;
  bool satisfied = false;
  bool has_improved = false;       ///< family of exactly two
  double improved_bound = 0.0;     ///< bound / 4
  bool improved_satisfied = false;
  double wedge_vs_intersection_residual = 0.0;  ///< |wedge(e_i) - e_N|
  double e_n_in_span_residual = 0.0;  ///< projection of e_N onto span(A)
  bool stabilized = false;
};

BoundReport bound_check(const MultiMatrixAlgebra& m,
                        const std::vector<Subalgebra>& family,
                        const IndexOptions& index_options = {},
                        const Tolerances& tol = default_tolerances());

/// Side-by-side report contrasting the algebra generated by the relative
/// inner automorphisms Ad(u v*) with the spectra of their sum and of the
/// plain element sum: dim alg{Ad(u_i u_j*)}, #spec(sum Ad(u_i u_j*)) and
/// #spec(sum u_i u_j*).  The second is always at most the first; the
/// third obeys no such comparison.
struct InnerSpectrumProbe {
  int map_algebra_dim = 0;
  int map_sum_spectrum_points = 0;
  int element_sum_spectrum_points = 0;
  std::vector<double> map_sum_eigenvalues;
  std::vector<double> element_sum_eigenvalues;
  bool consistent = false;  ///< map_sum_spectrum_points <= map_algebra_dim
};

InnerSpectrumProbe counterexample_probe(const std::vector<AlgebraElement>& unitaries,
                                        const Tolerances& tol = default_tolerances());

}  // namespace opalg
