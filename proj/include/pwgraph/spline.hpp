#pragma once

#include <span>
#include <vector>

#include "pwgraph/graph.hpp"
#include "pwgraph/linalg.hpp"
#include "pwgraph/spectral.hpp"

namespace pwgraph {

/// Gram condition numbers above this are refused as IllConditioned.
inline constexpr double kMaxGramCondition = 1e12;

/// Fundamental solutions E^w = (εI + L)^{-t} δ_w for every w in a constraint
/// set, together with their Gram matrix K[i][j] = E^{w_j}(w_i).
struct FundamentalSystem {
  std::vector<Vertex> constraint_set;  // sorted
  double order = 0.0;
  double eps = 0.0;
  Matrix columns;  // n × |W|
  Matrix gram;     // |W| × |W|, symmetric positive definite
  double gram_condition = 0.0;
  // Extended-precision copies used for the solve.
  ExtendedMatrix extended_columns;
  ExtendedMatrix gram_factor;  // lower Cholesky factor of gram
};

/// Errors: EmptyConstraintSet, DuplicateVertex, IndexOutOfRange,
/// OutOfRange (t <= 0), SingularOperator (ε + λ_0 not positive),
/// IllConditioned (Gram matrix not numerically positive definite).
FundamentalSystem fundamental_system(const SpectralDecomposition& d, std::vector<Vertex> w,
                                     double t, double eps);

/// Minimal-energy interpolant of y on W in the norm ‖(εI + L)^{t/2} ·‖.
struct SplineModel {
  std::vector<Vertex> constraint_set;  // sorted
  double order = 0.0;
  double eps = 0.0;
  std::vector<double> targets;  // aligned with constraint_set
  std::vector<double> alpha;    // coefficients on the fundamental solutions
  Signal solution;
  double sobolev_energy = 0.0;
  double gram_condition = 0.0;
};

/// Solves gram·α = y by Cholesky. `y` is aligned with fs.constraint_set.
/// Throws IllConditioned when the Gram condition exceeds `max_condition`.
SplineModel fit_spline(const SpectralDecomposition& d, const FundamentalSystem& fs,
                       std::span<const double> y, double max_condition = kMaxGramCondition);

/// `w` need not be sorted; `y` is aligned with `w` as given.
SplineModel fit_spline(const SpectralDecomposition& d, std::vector<Vertex> w,
                       std::span<const double> y, double t, double eps,
                       double max_condition = kMaxGramCondition);

/// One spline per constraint vertex, interpolating Kronecker data on W
/// (in sorted-W order).
std::vector<SplineModel> lagrangian_splines(const SpectralDecomposition& d, std::vector<Vertex> w,
                                            double t, double eps);

/// ‖(εI+L)^{t/2} g‖² − ‖(εI+L)^{t/2} Y‖² for a competing interpolant g.
/// Throws NotAnInterpolant if g misses the data on W by more than 1e-8.
double optimality_margin(const SpectralDecomposition& d, const SplineModel& model, const Signal& g);

}  // namespace pwgraph
