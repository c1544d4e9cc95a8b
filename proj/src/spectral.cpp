#include "pwgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "pwgraph/error.hpp"

namespace pwgraph {

namespace {

constexpr std::string_view kModule = "spectral";

void require_length(const SpectralDecomposition& d, std::size_t len) {
  if (len != d.size())
    throw Error(kModule, Errc::LengthMismatch,
                "length " + std::to_string(len) + " != " + std::to_string(d.size()));
}

// (eps + λ)^t with the base clamped at zero so round-off never yields NaN.
extended power_of(double eps, extended lambda, double t) {
  return std::pow(std::max(extended(eps) + lambda, extended(0)), extended(t));
}

void require_invertible(const SpectralDecomposition& d, double eps, double t) {
  if (t < 0.0 && !(eps + d.smallest() > kZeroEigenvalueTol))
    throw Error(kModule, Errc::SingularPower,
                "negative power with eps + lambda_0 = " + std::to_string(eps + d.smallest()));
}

ExtendedMatrix extended_laplacian(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap)
    throw Error(kModule, Errc::TooLarge,
                std::to_string(n) + " vertices exceeds dense cap " + std::to_string(cap));
  ExtendedMatrix l = ExtendedMatrix::identity(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v))
      l(v, u) = -1.0L / std::sqrt(static_cast<extended>(g.degree(v) * g.degree(u)));
  return l;
}

std::vector<extended> analyze(const SpectralDecomposition& d, const Signal& f) {
  require_length(d, f.size());
  const ExtendedMatrix& u = d.extended_basis();
  const std::size_t n = d.size();
  std::vector<extended> c(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    const extended fi = f[i];
    if (fi == 0.0L) continue;
    auto row = u.row(i);
    for (std::size_t j = 0; j < n; ++j) c[j] += row[j] * fi;
  }
  return c;
}

Signal synthesize(const SpectralDecomposition& d, std::span<const extended> c) {
  const auto values = d.extended_basis() * c;
  return Signal(std::vector<double>(values.begin(), values.end()));
}

}  // namespace

std::size_t SpectralDecomposition::band_size(double omega) const noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), omega + kZeroEigenvalueTol) -
      eigenvalues_.begin());
}

SpectralDecomposition decompose(const Graph& g, std::size_t cap) {
  auto eig = symmetric_eigen(extended_laplacian(g, cap));
  const std::size_t n = g.vertex_count();

  for (extended& lambda : eig.values)
    if (std::abs(lambda) < kZeroEigenvalueTol) lambda = 0.0L;

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const extended x = eig.vectors(i, j);
      if (std::abs(x) > 1e-12L) {
        if (x < 0)
          for (std::size_t r = 0; r < n; ++r) eig.vectors(r, j) = -eig.vectors(r, j);
        break;
      }
    }
  }

  SpectralDecomposition d(g);
  d.eigenvalues_.assign(eig.values.begin(), eig.values.end());
  d.basis_ = Matrix::cast(eig.vectors);

  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Signal u(d.basis_.column(j));
    Signal r = apply_laplacian(g, u);
    r -= d.eigenvalues_[j] * u;
    worst = std::max(worst, r.norm());
  }
  if (worst > 1e-9)
    throw Error(kModule, Errc::ConvergenceFailure,
                "eigenpair residual " + std::to_string(worst) + " above 1e-9");

  d.eigenvalues_ext_ = std::move(eig.values);
  d.basis_ext_ = std::move(eig.vectors);
  d.residual_ = worst;
  return d;
}

std::vector<double> fourier(const SpectralDecomposition& d, const Signal& f) {
  const auto c = analyze(d, f);
  return {c.begin(), c.end()};
}

Signal inverse_fourier(const SpectralDecomposition& d, std::span<const double> coefficients) {
  require_length(d, coefficients.size());
  const std::vector<extended> c(coefficients.begin(), coefficients.end());
  return synthesize(d, c);
}

Signal operator_power(const SpectralDecomposition& d, double eps, double t, const Signal& f) {
  require_length(d, f.size());
  require_invertible(d, eps, t);
  if (t == 0.0) return f;
  auto c = analyze(d, f);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= power_of(eps, d.extended_eigenvalues()[j], t);
  return synthesize(d, c);
}

ExtendedMatrix operator_power_columns_extended(const SpectralDecomposition& d, double eps, double t,
                                               std::span<const Vertex> cols) {
  require_invertible(d, eps, t);
  const std::size_t n = d.size();
  const ExtendedMatrix& u = d.extended_basis();
  std::vector<extended> scale(n);
  for (std::size_t j = 0; j < n; ++j) scale[j] = power_of(eps, d.extended_eigenvalues()[j], t);

  ExtendedMatrix out(n, cols.size());
  std::vector<extended> weights(n);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] >= n)
      throw Error(kModule, Errc::IndexOutOfRange, "vertex " + std::to_string(cols[c]));
    auto urow = u.row(cols[c]);
    for (std::size_t j = 0; j < n; ++j) weights[j] = scale[j] * urow[j];
    for (std::size_t i = 0; i < n; ++i) {
      auto ui = u.row(i);
      extended acc = 0.0L;
      for (std::size_t j = 0; j < n; ++j) acc += ui[j] * weights[j];
      out(i, c) = acc;
    }
  }
  return out;
}

Matrix operator_power_columns(const SpectralDecomposition& d, double eps, double t,
                              std::span<const Vertex> cols) {
  return Matrix::cast(operator_power_columns_extended(d, eps, t, cols));
}

double sobolev_norm(const SpectralDecomposition& d, double eps, double t, const Signal& f) {
  require_length(d, f.size());
  require_invertible(d, eps, t / 2.0);
  const auto c = analyze(d, f);
  extended sum = 0.0L;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const extended x = c[j] * power_of(eps, d.extended_eigenvalues()[j], t / 2.0);
    sum += x * x;
  }
  return static_cast<double>(std::sqrt(sum));
}

Signal pw_project(const SpectralDecomposition& d, double omega, const Signal& f) {
  auto c = analyze(d, f);
  for (std::size_t j = d.band_size(omega); j < c.size(); ++j) c[j] = 0.0L;
  return synthesize(d, c);
}

double bernstein_ratio(const SpectralDecomposition& d, const Signal& f, double s) {
  if (!(s > 0.0)) throw Error(kModule, Errc::OutOfRange, "exponent must be positive");
  const double base = f.norm();
  if (base == 0.0) throw Error(kModule, Errc::ZeroSignal, "bernstein_ratio of zero signal");
  return sobolev_norm(d, 0.0, 2.0 * s, f) / base;
}

double min_bandwidth(const SpectralDecomposition& d, const Signal& f, double tol) {
  const double base = f.norm();
  if (base == 0.0) throw Error(kModule, Errc::ZeroSignal, "min_bandwidth of zero signal");
  const auto c = analyze(d, f);
  for (std::size_t j = c.size(); j-- > 0;)
    if (std::abs(c[j]) > tol * base) return d.eigenvalues()[j];
  return d.eigenvalues().front();
}

void write_json(std::ostream& out, const SpectralDecomposition& d) {
  nlohmann::json doc;
  doc["eigenvalues"] = d.eigenvalues();
  auto& rows = doc["basis"] = nlohmann::json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto r = d.basis().row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  out << doc.dump() << '\n';
}

}  // namespace pwgraph
