#include "pwgraph/reconstruct.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pwgraph/error.hpp"

namespace pwgraph {

namespace {
constexpr std::string_view kModule = "reconstruct";
}

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::BudgetExhausted: return "BudgetExhausted";
    case StopReason::IllConditioned: return "IllConditioned";
    case StopReason::ErrorFloor: return "ErrorFloor";
  }
  return "Unknown";
}

bool ReconstructionTrace::bound_holds(double f_norm) const {
  for (const auto& e : entries)
    if (e.error && *e.error > e.bound + 1e-9 * f_norm) return false;
  return true;
}

double choose_epsilon(double lambda, double omega, double floor, double smallest_eigenvalue) {
  if (!(lambda > 0.0) || !(omega >= 0.0) || !(lambda * omega < 1.0))
    throw Error(kModule, Errc::InfeasibleBandwidth,
                "Lambda*omega = " + std::to_string(lambda * omega) + " must be < 1");
  const double eps = std::min(floor, (1.0 / lambda - omega) / 2.0);
  if (!(eps > 0.0)) {
    if (!(smallest_eigenvalue > kZeroEigenvalueTol))
      throw Error(kModule, Errc::SingularOperator,
                  "eps = 0 needs an invertible Laplacian (lambda_0 > 0)");
    return 0.0;
  }
  return eps;
}

Reconstruction reconstruct(const SpectralDecomposition& d, const VertexSet& s,
                           std::span<const double> samples, const ReconstructOptions& options) {
  const auto u = s.complement();
  if (u.empty()) throw Error(kModule, Errc::EmptySampleSet, "S covers every vertex");
  if (samples.size() != u.size())
    throw Error(kModule, Errc::LengthMismatch,
                std::to_string(samples.size()) + " samples for " + std::to_string(u.size()) +
                    " sampling vertices");
  if (options.ground_truth && options.ground_truth->size() != d.size())
    throw Error(kModule, Errc::LengthMismatch, "ground truth length");

  ReconstructionTrace trace;
  trace.omega = options.omega;
  trace.eps = options.eps;
  trace.lambda = options.lambda ? *options.lambda : poincare_constant(d, s);
  trace.gamma = trace.lambda * (options.omega + options.eps);
  if (!(trace.gamma < 1.0))
    throw Error(kModule, Errc::GammaNotLessThanOne,
                "gamma = Lambda*(omega+eps) = " + std::to_string(trace.gamma));

  const double f_norm = options.ground_truth ? options.ground_truth->norm() : 1.0;
  trace.bound_is_relative = !options.ground_truth;

  Reconstruction out;
  std::uint64_t k = 1;
  for (unsigned l = 0; l <= options.l_max; ++l, k *= 2) {
    SplineModel model;
    try {
      const auto fs = fundamental_system(d, u, 2.0 * static_cast<double>(k), options.eps);
      model = fit_spline(d, fs, samples, options.max_condition);
    } catch (const Error& e) {
      if (e.code() != Errc::IllConditioned || l == 0) throw;
      trace.stop_reason = StopReason::IllConditioned;
      out.trace = std::move(trace);
      return out;
    }

    TraceEntry entry;
    entry.l = l;
    entry.k = k;
    entry.bound = 2.0 * std::pow(trace.gamma, static_cast<double>(k)) * f_norm;
    entry.gram_condition = model.gram_condition;
    if (options.ground_truth) entry.error = (*options.ground_truth - model.solution).norm();
    trace.entries.push_back(entry);
    out.signal = std::move(model.solution);

    if (entry.error && *entry.error < options.error_floor * f_norm) {
      trace.stop_reason = StopReason::ErrorFloor;
      out.trace = std::move(trace);
      return out;
    }
  }
  trace.stop_reason = StopReason::BudgetExhausted;
  out.trace = std::move(trace);
  return out;
}

Signal synthesize_pw_signal(const SpectralDecomposition& d, double omega, std::uint64_t seed) {
  const std::size_t band = d.band_size(omega);
  if (band == 0 || !(omega >= 0.0))
    throw Error(kModule, Errc::EmptyBand, "no eigenvalue at or below omega");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(d.size(), 0.0);
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    for (std::size_t j = 0; j < band; ++j) {
      c[j] = normal(rng);
      norm2 += c[j] * c[j];
    }
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : c) x *= inv;
  return inverse_fourier(d, c);
}

}  // namespace pwgraph
