#include "pwgraph/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pwgraph/error.hpp"

namespace pwgraph {

namespace {

constexpr std::string_view kModule = "spline";

// Sorts w, returning the permutation applied so data can follow it.
std::vector<std::size_t> sort_constraints(std::vector<Vertex>& w, std::size_t n) {
  if (w.empty()) throw Error(kModule, Errc::EmptyConstraintSet, "W is empty");
  for (Vertex v : w)
    if (v >= n) throw Error(kModule, Errc::IndexOutOfRange, "vertex " + std::to_string(v));
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return w[a] < w[b]; });
  std::vector<Vertex> sorted(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sorted[i] = w[perm[i]];
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    throw Error(kModule, Errc::DuplicateVertex, "vertex " + std::to_string(*dup));
  w = std::move(sorted);
  return perm;
}

}  // namespace

FundamentalSystem fundamental_system(const SpectralDecomposition& d, std::vector<Vertex> w,
                                     double t, double eps) {
  sort_constraints(w, d.size());
  if (!(t > 0.0)) throw Error(kModule, Errc::OutOfRange, "order t must be positive");
  if (!(eps >= 0.0)) throw Error(kModule, Errc::OutOfRange, "eps must be non-negative");
  if (!(eps + d.smallest() > kZeroEigenvalueTol))
    throw Error(kModule, Errc::SingularOperator,
                "eps + lambda_0 = " + std::to_string(eps + d.smallest()) +
                    "; (eps I + L) is not invertible");

  FundamentalSystem fs;
  fs.order = t;
  fs.eps = eps;
  fs.extended_columns = operator_power_columns_extended(d, eps, -t, w);
  const auto& cols = fs.extended_columns;
  ExtendedMatrix gram(w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      gram(i, j) = gram(j, i) = 0.5L * (cols(w[i], j) + cols(w[j], i));
  fs.constraint_set = std::move(w);

  const auto spectrum = symmetric_eigen(gram).values;
  auto factor = cholesky_factor(gram);
  if (!factor || !(spectrum.front() > 0.0L))
    throw Error(kModule, Errc::IllConditioned, "Gram matrix is not numerically positive definite");
  fs.gram_factor = std::move(*factor);
  fs.gram_condition = static_cast<double>(spectrum.back() / spectrum.front());
  fs.columns = Matrix::cast(cols);
  fs.gram = Matrix::cast(gram);
  return fs;
}

SplineModel fit_spline(const SpectralDecomposition& d, const FundamentalSystem& fs,
                       std::span<const double> y, double max_condition) {
  if (y.size() != fs.constraint_set.size())
    throw Error(kModule, Errc::LengthMismatch,
                std::to_string(y.size()) + " values for " +
                    std::to_string(fs.constraint_set.size()) + " constraints");
  if (fs.gram_condition > max_condition)
    throw Error(kModule, Errc::IllConditioned,
                "Gram condition " + std::to_string(fs.gram_condition) + " exceeds " +
                    std::to_string(max_condition));

  SplineModel m;
  m.constraint_set = fs.constraint_set;
  m.order = fs.order;
  m.eps = fs.eps;
  m.targets.assign(y.begin(), y.end());
  const std::vector<extended> rhs(y.begin(), y.end());
  const auto alpha = cholesky_solve(fs.gram_factor, rhs);
  const auto values = fs.extended_columns * alpha;
  m.alpha.assign(alpha.begin(), alpha.end());
  m.solution = Signal(std::vector<double>(values.begin(), values.end()));
  m.sobolev_energy = sobolev_norm(d, fs.eps, fs.order, m.solution);
  m.gram_condition = fs.gram_condition;
  return m;
}

SplineModel fit_spline(const SpectralDecomposition& d, std::vector<Vertex> w,
                       std::span<const double> y, double t, double eps, double max_condition) {
  if (y.size() != w.size())
    throw Error(kModule, Errc::LengthMismatch,
                std::to_string(y.size()) + " values for " + std::to_string(w.size()) +
                    " constraints");
  std::vector<Vertex> sorted = w;
  const auto perm = sort_constraints(sorted, d.size());
  std::vector<double> aligned(y.size());
  for (std::size_t i = 0; i < perm.size(); ++i) aligned[i] = y[perm[i]];
  return fit_spline(d, fundamental_system(d, std::move(sorted), t, eps), aligned, max_condition);
}

std::vector<SplineModel> lagrangian_splines(const SpectralDecomposition& d, std::vector<Vertex> w,
                                            double t, double eps) {
  const auto fs = fundamental_system(d, std::move(w), t, eps);
  std::vector<SplineModel> out;
  out.reserve(fs.constraint_set.size());
  std::vector<double> kronecker(fs.constraint_set.size(), 0.0);
  for (std::size_t j = 0; j < kronecker.size(); ++j) {
    kronecker[j] = 1.0;
    out.push_back(fit_spline(d, fs, kronecker));
    kronecker[j] = 0.0;
  }
  return out;
}

double optimality_margin(const SpectralDecomposition& d, const SplineModel& model, const Signal& g) {
  if (g.size() != d.size())
    throw Error(kModule, Errc::LengthMismatch, "competitor length " + std::to_string(g.size()));
  double scale = 1.0;
  for (double y : model.targets) scale = std::max(scale, std::abs(y));
  for (std::size_t i = 0; i < model.constraint_set.size(); ++i) {
    const double miss = std::abs(g[model.constraint_set[i]] - model.targets[i]);
    if (miss > 1e-8 * scale)
      throw Error(kModule, Errc::NotAnInterpolant,
                  "misses vertex " + std::to_string(model.constraint_set[i]) + " by " +
                      std::to_string(miss));
  }
  const double eg = sobolev_norm(d, model.eps, model.order, g);
  return eg * eg - model.sobolev_energy * model.sobolev_energy;
}

}  // namespace pwgraph
