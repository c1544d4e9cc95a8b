#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "pwgraph/graph.hpp"
#include "pwgraph/linalg.hpp"

namespace pwgraph {

/// Eigenvalues closer than this to zero are stored and treated as exactly 0.
inline constexpr double kZeroEigenvalueTol = 1e-10;

/// Sorted eigenvalues and orthonormal eigenvectors of the normalized
/// Laplacian of a graph. Immutable once built by decompose().
class SpectralDecomposition {
 public:
  const Graph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  /// Column j is the eigenvector for eigenvalues()[j].
  const Matrix& basis() const noexcept { return basis_; }
  /// Largest ‖L u_j − λ_j u_j‖ over all eigenpairs.
  double residual() const noexcept { return residual_; }

  /// The same eigenpairs carried in extended precision; basis() and
  /// eigenvalues() are these rounded to double.
  const std::vector<extended>& extended_eigenvalues() const noexcept { return eigenvalues_ext_; }
  const ExtendedMatrix& extended_basis() const noexcept { return basis_ext_; }

  double smallest() const noexcept { return eigenvalues_.front(); }
  double largest() const noexcept { return eigenvalues_.back(); }
  /// Number of eigenvalues inside the band [0, omega].
  std::size_t band_size(double omega) const noexcept;

 private:
  friend SpectralDecomposition decompose(const Graph& g, std::size_t cap);

  explicit SpectralDecomposition(Graph g) : graph_(std::move(g)) {}

  Graph graph_;
  std::vector<double> eigenvalues_;
  Matrix basis_;
  std::vector<extended> eigenvalues_ext_;
  ExtendedMatrix basis_ext_;
  double residual_ = 0.0;
};

/// Dense deterministic decomposition. The first entry of each eigenvector
/// whose magnitude exceeds 1e-12 is made positive.
/// Errors: TooLarge above `cap` vertices, ConvergenceFailure.
SpectralDecomposition decompose(const Graph& g, std::size_t cap = kDefaultDenseCap);

/// Coefficients Uᵀf.
std::vector<double> fourier(const SpectralDecomposition& d, const Signal& f);
/// Synthesis U c.
Signal inverse_fourier(const SpectralDecomposition& d, std::span<const double> coefficients);

/// (εI + L)^t f by spectral calculus. Negative t needs ε + λ_0 > 0
/// (SingularPower otherwise).
Signal operator_power(const SpectralDecomposition& d, double eps, double t, const Signal& f);

/// Columns `cols` of the dense operator (εI + L)^t, as an n × |cols| matrix.
Matrix operator_power_columns(const SpectralDecomposition& d, double eps, double t,
                              std::span<const Vertex> cols);
ExtendedMatrix operator_power_columns_extended(const SpectralDecomposition& d, double eps, double t,
                                               std::span<const Vertex> cols);

/// ‖(εI + L)^{t/2} f‖.
double sobolev_norm(const SpectralDecomposition& d, double eps, double t, const Signal& f);

/// Orthogonal projection onto PW_ω: drops coefficients with λ_j > ω.
Signal pw_project(const SpectralDecomposition& d, double omega, const Signal& f);

/// ‖L^s f‖ / ‖f‖.
double bernstein_ratio(const SpectralDecomposition& d, const Signal& f, double s);

/// Largest λ_j carrying a coefficient above tol·‖f‖.
double min_bandwidth(const SpectralDecomposition& d, const Signal& f, double tol = 1e-10);

/// Debug dump: {"eigenvalues":[...],"basis":[[row-major]]}.
void write_json(std::ostream& out, const SpectralDecomposition& d);

}  // namespace pwgraph
