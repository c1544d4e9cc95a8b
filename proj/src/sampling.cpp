#include "pwgraph/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "pwgraph/error.hpp"

namespace pwgraph {

namespace {

constexpr std::string_view kModule = "sampling";

// Relative floor below which the restricted quadratic form counts as singular.
constexpr double kSingularFormTol = 1e-12;

// Slack allowed on the power inequality, relative to ‖φ‖.
constexpr double kPowerSlack = 1e-10;

// S×S block of (εI + L)², built from the sparse columns (εI + L)δ_s.
Matrix restricted_square_form(const Graph& g, const VertexSet& s, double eps) {
  const auto& members = s.members();
  const std::size_t n = g.vertex_count();
  std::vector<Signal> cols;
  cols.reserve(members.size());
  for (Vertex v : members) {
    Signal c = apply_laplacian(g, Signal::delta(n, v));
    c[v] += eps;
    cols.push_back(std::move(c));
  }
  Matrix q(members.size(), members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) q(i, j) = q(j, i) = cols[i].dot(cols[j]);
  return q;
}

}  // namespace

VertexSet VertexSet::make(const Graph& g, std::vector<Vertex> members) {
  const std::size_t n = g.vertex_count();
  std::sort(members.begin(), members.end());
  if (auto dup = std::adjacent_find(members.begin(), members.end()); dup != members.end())
    throw Error(kModule, Errc::DuplicateVertex, "vertex " + std::to_string(*dup));
  if (!members.empty() && members.back() >= n)
    throw Error(kModule, Errc::IndexOutOfRange, "vertex " + std::to_string(members.back()));

  std::vector<char> in(n, 0);
  for (Vertex v : members) in[v] = 1;
  std::vector<char> edge(n, 0);
  for (Vertex v : members)
    for (Vertex u : g.neighbors(v))
      if (!in[u]) edge[u] = 1;

  VertexSet s;
  s.universe_ = n;
  s.members_ = std::move(members);
  for (Vertex v = 0; v < n; ++v)
    if (edge[v]) s.boundary_.push_back(v);
  return s;
}

std::vector<Vertex> VertexSet::closure() const {
  std::vector<Vertex> out;
  out.reserve(members_.size() + boundary_.size());
  std::merge(members_.begin(), members_.end(), boundary_.begin(), boundary_.end(),
             std::back_inserter(out));
  return out;
}

std::vector<Vertex> VertexSet::complement() const {
  std::vector<Vertex> out;
  out.reserve(universe_ - members_.size());
  auto it = members_.begin();
  for (Vertex v = 0; v < universe_; ++v) {
    if (it != members_.end() && *it == v) {
      ++it;
      continue;
    }
    out.push_back(v);
  }
  return out;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

PoincareExtremal poincare_extremal(const SpectralDecomposition& d, const VertexSet& s, double eps) {
  if (s.empty()) throw Error(kModule, Errc::EmptySet, "Poincare constant of empty set");
  const Matrix q = restricted_square_form(d.graph(), s, eps);
  const auto eig = symmetric_eigen(q);
  const double smallest = eig.values.front();
  if (!(smallest > kSingularFormTol * std::max(1.0, eig.values.back())))
    throw Error(kModule, Errc::NoFiniteConstant,
                "restricted form has eigenvalue " + std::to_string(smallest) +
                    "; a kernel vector is supported on S");

  PoincareExtremal out;
  out.lambda = 1.0 / std::sqrt(smallest);
  out.minimizer = Signal(d.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.minimizer[s.members()[i]] = eig.vectors(i, 0);
  return out;
}

double poincare_constant(const SpectralDecomposition& d, const VertexSet& s, double eps) {
  return poincare_extremal(d, s, eps).lambda;
}

double segment_bound(std::size_t n) {
  if (n < 1) throw Error(kModule, Errc::InvalidSize, "segment length must be >= 1");
  const double sine = std::sin(std::numbers::pi / (2.0 * static_cast<double>(n) + 2.0));
  return 0.5 / (sine * sine);
}

double rectangular_bound(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(kModule, Errc::InvalidSize, "solid needs at least one dimension");
  double smallest = 1.0;
  for (std::size_t n : dims) {
    if (n < 1) throw Error(kModule, Errc::InvalidSize, "solid side must be >= 1");
    smallest = std::min(smallest, std::sin(std::numbers::pi / (2.0 * static_cast<double>(n) + 2.0)));
  }
  return 1.0 / (4.0 * smallest);
}

std::string_view to_string(LambdaMethod m) noexcept {
  switch (m) {
    case LambdaMethod::BruteForce: return "BruteForce";
    case LambdaMethod::SegmentFormula: return "SegmentFormula";
    case LambdaMethod::UnionComposition: return "UnionComposition";
  }
  return "Unknown";
}

LambdaReport lambda_report(const SpectralDecomposition& d, const VertexSet& s,
                           std::optional<double> closed_form) {
  LambdaReport r;
  r.set = s;
  r.lambda = poincare_constant(d, s);
  r.uniqueness_threshold = uniqueness_threshold(r.lambda);
  r.closed_form_bound = closed_form;
  r.method = LambdaMethod::BruteForce;
  return r;
}

LambdaReport union_lambda(const Graph& g, std::span<const VertexSet> parts,
                          std::span<const double> lambdas) {
  if (parts.size() != lambdas.size())
    throw Error(kModule, Errc::LengthMismatch,
                std::to_string(parts.size()) + " parts, " + std::to_string(lambdas.size()) +
                    " constants");
  if (parts.empty()) throw Error(kModule, Errc::EmptySet, "union of no parts");

  std::vector<int> owner(g.vertex_count(), -1);
  std::vector<Vertex> all;
  double worst = 0.0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!(lambdas[j] > 0.0) || !std::isfinite(lambdas[j]))
      throw Error(kModule, Errc::InvalidLambda, "part " + std::to_string(j));
    for (Vertex v : parts[j].closure()) {
      if (owner[v] >= 0)
        throw Error(kModule, Errc::OverlappingClosures,
                    "parts " + std::to_string(owner[v]) + " and " + std::to_string(j) +
                        " share vertex " + std::to_string(v));
      owner[v] = static_cast<int>(j);
    }
    all.insert(all.end(), parts[j].members().begin(), parts[j].members().end());
    worst = std::max(worst, lambdas[j]);
  }

  LambdaReport r;
  r.set = VertexSet::make(g, std::move(all));
  r.lambda = worst;
  r.uniqueness_threshold = uniqueness_threshold(worst);
  r.method = LambdaMethod::UnionComposition;
  return r;
}

double uniqueness_threshold(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(kModule, Errc::InvalidLambda, "lambda must be positive and finite");
  return 1.0 / lambda;
}

double omega_star(const Graph& g) {
  return std::sqrt(1.0 + 1.0 / static_cast<double>(g.max_degree()));
}

UniquenessResult verify_uniqueness(const SpectralDecomposition& d, const VertexSet& u, double omega) {
  if (u.empty()) throw Error(kModule, Errc::EmptySet, "sampling set is empty");
  std::vector<std::size_t> band(d.band_size(omega));
  std::iota(band.begin(), band.end(), std::size_t{0});
  const auto sv = singular_values(d.basis().submatrix(u.members(), band));
  UniquenessResult r;
  // More band functions than samples means a nontrivial kernel.
  r.margin = band.size() > u.size() ? 0.0 : sv.back();
  r.unique = r.margin > 1e-8;
  return r;
}

std::size_t segment_count_limit(double omega) {
  if (!(omega > 0.0 && omega < 1.5))
    throw Error(kModule, Errc::OutOfRange, "omega must lie in (0, 3/2)");
  auto admissible = [&](std::size_t n) { return segment_bound(n) * omega < 1.0; };
  const double limit =
      std::numbers::pi / (2.0 * std::asin(std::sqrt(omega / 2.0))) - 1.0;
  auto n = static_cast<std::size_t>(std::max(0.0, std::floor(limit)));
  while (n >= 1 && !admissible(n)) --n;
  while (admissible(n + 1)) ++n;
  return n;
}

std::vector<PowerCheckEntry> power_inequality_check(const SpectralDecomposition& d,
                                                    const VertexSet& s, double eps, double a,
                                                    unsigned l_max,
                                                    std::span<const Signal> phis) {
  std::vector<PowerCheckEntry> out;
  for (std::size_t trial = 0; trial < phis.size(); ++trial) {
    const Signal& phi = phis[trial];
    if (phi.size() != d.size())
      throw Error(kModule, Errc::LengthMismatch, "trial " + std::to_string(trial));
    for (Vertex v = 0; v < phi.size(); ++v)
      if (phi[v] != 0.0 && !s.contains(v))
        throw Error(kModule, Errc::PreconditionViolated,
                    "trial " + std::to_string(trial) + " not supported on S at vertex " +
                        std::to_string(v));
    const double lhs = phi.norm();
    std::uint64_t k = 1;
    for (unsigned l = 0; l <= l_max; ++l) {
      const Signal power = operator_power(d, eps, static_cast<double>(k), phi);
      const double rhs = std::pow(a, static_cast<double>(k)) * power.norm();
      if (l == 0 && lhs > rhs * (1.0 + kPowerSlack))
        throw Error(kModule, Errc::PreconditionViolated,
                    "trial " + std::to_string(trial) + ": ‖phi‖ > a‖(eps I + L)phi‖");
      out.push_back({trial, k, lhs, rhs, lhs <= rhs + kPowerSlack * lhs});
      k *= 2;
    }
  }
  return out;
}

std::vector<PowerCheckEntry> power_inequality_check(const SpectralDecomposition& d,
                                                    const VertexSet& s, double eps, double a,
                                                    unsigned l_max, std::uint64_t seed,
                                                    std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Signal> phis;
  phis.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Signal phi(d.size());
    for (Vertex v : s.members()) phi[v] = normal(rng);
    phis.push_back(std::move(phi));
  }
  return power_inequality_check(d, s, eps, a, l_max, phis);
}

}  // namespace pwgraph
