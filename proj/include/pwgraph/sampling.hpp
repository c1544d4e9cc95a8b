#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pwgraph/graph.hpp"
#include "pwgraph/spectral.hpp"

namespace pwgraph {

/// A vertex subset S together with its graph boundary bS.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts members. Throws DuplicateVertex or IndexOutOfRange.
  static VertexSet make(const Graph& g, std::vector<Vertex> members);

  const std::vector<Vertex>& members() const noexcept { return members_; }
  const std::vector<Vertex>& boundary() const noexcept { return boundary_; }
  /// members ∪ boundary, sorted.
  std::vector<Vertex> closure() const;
  /// V(G) \ members, sorted.
  std::vector<Vertex> complement() const;

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const;
  std::size_t universe() const noexcept { return universe_; }

 private:
  std::vector<Vertex> members_;
  std::vector<Vertex> boundary_;
  std::size_t universe_ = 0;
};

/// Exact Λ(S) = sup ‖φ‖ / ‖(εI + L)φ‖ over nonzero φ supported on S,
/// i.e. 1/√λ_min of the S×S block of (εI + L)². ε = 0 gives the
/// Poincaré constant of S. Errors: EmptySet, NoFiniteConstant.
double poincare_constant(const SpectralDecomposition& d, const VertexSet& s, double eps = 0.0);

struct PoincareExtremal {
  double lambda = 0.0;
  Signal minimizer;  // unit norm, supported on S, attains ‖φ‖ = Λ‖(εI+L)φ‖
};
PoincareExtremal poincare_extremal(const SpectralDecomposition& d, const VertexSet& s,
                                   double eps = 0.0);

/// ½·sin⁻²(π/(2N+2)) for N successive vertices of a line.
double segment_bound(std::size_t n);

/// 1 / (4·min_i sin(π/(2N_i+2))), the rectangular-solid constant as it is
/// usually printed. Not guaranteed to dominate the exact constant.
double rectangular_bound(std::span<const std::size_t> dims);

enum class LambdaMethod { BruteForce, SegmentFormula, UnionComposition };
std::string_view to_string(LambdaMethod m) noexcept;

struct LambdaReport {
  VertexSet set;
  double lambda = 0.0;
  double uniqueness_threshold = 0.0;
  std::optional<double> closed_form_bound;
  LambdaMethod method = LambdaMethod::BruteForce;
};

/// Brute-force report; `closed_form` is attached when S has a recognized
/// shape with a certified upper bound.
LambdaReport lambda_report(const SpectralDecomposition& d, const VertexSet& s,
                           std::optional<double> closed_form = std::nullopt);

/// Λ of a union of parts with pairwise-disjoint closures is the max Λ_j.
/// Errors: OverlappingClosures, LengthMismatch, InvalidLambda.
LambdaReport union_lambda(const Graph& g, std::span<const VertexSet> parts,
                          std::span<const double> lambdas);

/// 1/Λ; PW_ω has U = V \ S as a uniqueness set for every ω strictly below it.
double uniqueness_threshold(double lambda);

/// √(1 + 1/d(G)).
double omega_star(const Graph& g);

struct UniquenessResult {
  bool unique = false;
  double margin = 0.0;  // smallest singular value of the sampled band basis
};

/// Exact finite-dimensional test: PW_ω signals are determined by their
/// values on U iff the rows U of the band eigenvectors have full column rank.
UniquenessResult verify_uniqueness(const SpectralDecomposition& d, const VertexSet& u, double omega);

/// Largest N with ω < 2·sin²(π/(2N+2)), i.e. the longest segment whose
/// segment_bound keeps Λω < 1. Domain 0 < ω < 3/2 (OutOfRange otherwise).
std::size_t segment_count_limit(double omega);

struct PowerCheckEntry {
  std::size_t trial = 0;
  std::uint64_t k = 1;
  double lhs = 0.0;  // ‖φ‖
  double rhs = 0.0;  // a^k ‖(εI+L)^k φ‖
  bool holds = false;
  bool operator==(const PowerCheckEntry&) const = default;
};

/// Checks ‖φ‖ ≤ a^k‖(εI+L)^k φ‖ for k = 2^l, l = 0..l_max. Each φ must be
/// supported on S and satisfy the k = 1 inequality (PreconditionViolated).
std::vector<PowerCheckEntry> power_inequality_check(const SpectralDecomposition& d,
                                                    const VertexSet& s, double eps, double a,
                                                    unsigned l_max,
                                                    std::span<const Signal> phis);

/// Same, on `trials` pseudo-random φ supported on S drawn from `seed`.
std::vector<PowerCheckEntry> power_inequality_check(const SpectralDecomposition& d,
                                                    const VertexSet& s, double eps, double a,
                                                    unsigned l_max, std::uint64_t seed,
                                                    std::size_t trials);

}  // namespace pwgraph
