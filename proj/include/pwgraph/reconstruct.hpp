#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pwgraph/sampling.hpp"
#include "pwgraph/spectral.hpp"
#include "pwgraph/spline.hpp"

namespace pwgraph {

enum class StopReason { BudgetExhausted, IllConditioned, ErrorFloor };
std::string_view to_string(StopReason r) noexcept;

struct TraceEntry {
  unsigned l = 0;
  std::uint64_t k = 1;          // spline minimizes ‖(εI+L)^k ·‖, Sobolev order 2k
  std::optional<double> error;  // ‖f − Y_k‖, only with ground truth
  double bound = 0.0;           // 2γ^k‖f‖ (or 2γ^k when ‖f‖ is unknown)
  double gram_condition = 0.0;
};

struct ReconstructionTrace {
  double omega = 0.0;
  double lambda = 0.0;
  double eps = 0.0;
  double gamma = 0.0;
  /// True when no ground truth was given and bounds are per unit ‖f‖.
  bool bound_is_relative = true;
  std::vector<TraceEntry> entries;
  StopReason stop_reason = StopReason::BudgetExhausted;

  /// error ≤ bound + 1e-9·‖f‖ at every entry carrying an error.
  bool bound_holds(double f_norm) const;
};

struct ReconstructOptions {
  double omega = 0.0;
  double eps = 0.0;
  unsigned l_max = 6;
  /// Certified upper bound on Λ(S); computed exactly when absent.
  std::optional<double> lambda;
  std::optional<Signal> ground_truth;
  double max_condition = kMaxGramCondition;
  double error_floor = 1e-12;
};

struct Reconstruction {
  Signal signal;
  ReconstructionTrace trace;
};

/// ε = min(floor, (1/Λ − ω)/2), so γ = Λ(ω+ε) ≤ (1+Λω)/2 < 1.
/// A zero result requires `smallest_eigenvalue` > tolerance (L invertible),
/// else SingularOperator. Errors: InfeasibleBandwidth when Λω ≥ 1.
double choose_epsilon(double lambda, double omega, double floor, double smallest_eigenvalue = 0.0);

/// Recovers a PW_ω signal from `samples` on U = V \ S (ordered as
/// S.complement()) by interpolating splines with k = 1, 2, 4, ... 2^l_max.
/// Errors: EmptySampleSet, LengthMismatch, GammaNotLessThanOne, plus any
/// spline error on the first iterate.
Reconstruction reconstruct(const SpectralDecomposition& d, const VertexSet& s,
                           std::span<const double> samples, const ReconstructOptions& options);

/// Unit-norm signal with pseudo-random coefficients on the eigenvectors
/// with λ_j ≤ ω. Deterministic in `seed`. Errors: EmptyBand.
Signal synthesize_pw_signal(const SpectralDecomposition& d, double omega, std::uint64_t seed);

}  // namespace pwgraph
