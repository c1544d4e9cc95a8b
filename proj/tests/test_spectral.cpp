#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "pwgraph/spectral.hpp"
#include "test_util.hpp"

using namespace pwgraph;

namespace {

Signal eigenvector(const SpectralDecomposition& d, std::size_t j) {
  return Signal(d.basis().column(j));
}

std::vector<std::size_t> torus_dims(std::size_t a, std::size_t b) { return {a, b}; }

void check_invariants(const SpectralDecomposition& d) {
  const std::size_t n = d.size();
  const Matrix& u = d.basis();
  CHECK(max_abs_diff(u.transpose() * u, Matrix::identity(n)) < 1e-10);
  for (std::size_t j = 0; j < n; ++j) {
    Signal r = apply_laplacian(d.graph(), eigenvector(d, j));
    r -= d.eigenvalues()[j] * eigenvector(d, j);
    CHECK(r.norm() < 1e-9);
    CHECK(d.eigenvalues()[j] >= -1e-10);
    CHECK(d.eigenvalues()[j] <= 2.0 + 1e-10);
  }
  CHECK(std::abs(d.smallest()) < 1e-10);
  CHECK(std::is_sorted(d.eigenvalues().begin(), d.eigenvalues().end()));
}

}  // namespace

TEST_CASE("decompose examples") {
  const auto c6 = decompose(cycle_graph(6));
  const std::vector<double> expect{0.0, 0.5, 0.5, 1.5, 1.5, 2.0};
  CHECK(oracle::max_abs_diff(c6.eigenvalues(), expect) < 1e-12);
  check_invariants(c6);

  const std::vector<Edge> e{{0, 1}};
  const auto k2 = decompose(Graph::from_edges(2, e));
  CHECK(oracle::max_abs_diff(k2.eigenvalues(), {0.0, 2.0}) < 1e-14);

  // 2-D torus: tensor sums of cycle eigenvalues, halved; cross-checked with
  // the Jacobi oracle on the brute-force matrix.
  const auto dims = torus_dims(4, 4);
  const Graph t = torus_graph(dims);
  const auto td = decompose(t);
  std::vector<double> sums;
  for (double a : oracle::cycle_spectrum(4))
    for (double b : oracle::cycle_spectrum(4)) sums.push_back((a + b) / 2.0);
  std::sort(sums.begin(), sums.end());
  CHECK(oracle::max_abs_diff(td.eigenvalues(), sums) < 1e-10);
  CHECK(oracle::max_abs_diff(td.eigenvalues(), oracle::jacobi_eigenvalues(oracle::laplacian(t))) <
        1e-10);
  check_invariants(td);
}

TEST_CASE("cycle spectrum closed form for m in 3..64") {
  for (std::size_t m = 3; m <= 64; ++m) {
    const auto d = decompose(cycle_graph(m));
    CHECK(oracle::max_abs_diff(d.eigenvalues(), oracle::cycle_spectrum(m)) < 1e-10);
  }
}

TEST_CASE("reconstructed operator matches the brute-force Laplacian") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 50);
    const std::size_t n = size(rng);
    const Graph g = oracle::random_connected_graph(n, n, rng);
    const auto d = decompose(g);
    check_invariants(d);
    Matrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = d.eigenvalues()[i];
    CHECK(max_abs_diff(d.basis() * lam * d.basis().transpose(), oracle::laplacian(g)) < 1e-9);
  }
}

TEST_CASE("degenerate eigenspaces are compared through projectors") {
  // On C_m the eigenspace of 1 − cos(2πj/m) (0 < j < m/2) has projector
  // P[a][b] = (2/m) cos(2πj(a−b)/m).
  const std::size_t m = 10;
  const auto d = decompose(cycle_graph(m));
  for (std::size_t j = 1; j < m / 2; ++j) {
    const double lambda = 1.0 - std::cos(2.0 * M_PI * j / m);
    Matrix p(m, m);
    for (std::size_t k = 0; k < m; ++k) {
      if (std::abs(d.eigenvalues()[k] - lambda) > 1e-8) continue;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) p(a, b) += d.basis()(a, k) * d.basis()(b, k);
    }
    Matrix expect(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        expect(a, b) = 2.0 / m * std::cos(2.0 * M_PI * j * (double(a) - double(b)) / m);
    CHECK(max_abs_diff(p, expect) < 1e-10);
  }
}

TEST_CASE("decompose is deterministic and sign-normalized") {
  const auto dims = torus_dims(5, 6);
  const Graph g = torus_graph(dims);
  const auto a = decompose(g);
  const auto b = decompose(g);
  CHECK(a.eigenvalues() == b.eigenvalues());
  CHECK(a.basis() == b.basis());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto col = a.basis().column(j);
    const auto first = std::find_if(col.begin(), col.end(), [](double x) { return std::abs(x) > 1e-12; });
    REQUIRE(first != col.end());
    CHECK(*first > 0.0);
  }
  // ψ_0 is the normalized √d direction.
  Signal k = sqrt_degrees(g);
  k *= 1.0 / k.norm();
  CHECK(oracle::max_abs_diff(a.basis().column(0), k.vector()) < 1e-12);
}

TEST_CASE("decompose errors") {
  CHECK(error_of([] { decompose(cycle_graph(20), 10); }) == Errc::TooLarge);
}

TEST_CASE("fourier transform") {
  std::mt19937_64 rng(3);
  const std::size_t m = 16;
  const auto d = decompose(cycle_graph(m));
  for (std::size_t j = 0; j < m; ++j) {
    auto c = fourier(d, eigenvector(d, j));
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(c[i] - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Signal f = oracle::random_signal(m, rng);
    const auto c = fourier(d, f);
    CHECK(std::abs(Signal(c).norm() - f.norm()) < 1e-10);
    CHECK((inverse_fourier(d, c) - f).norm() < 1e-10);

    // The Laplacian acts on coefficients by its symbol 1 − cos(2πj/m).
    const auto lc = fourier(d, apply_laplacian(d.graph(), f));
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(lc[i] - d.eigenvalues()[i] * c[i]) < 1e-10);
  }
  CHECK(error_of([&] { fourier(d, Signal(3)); }) == Errc::LengthMismatch);
  const std::vector<double> short_c(3);
  CHECK(error_of([&] { inverse_fourier(d, short_c); }) == Errc::LengthMismatch);
}

TEST_CASE("operator_power") {
  std::mt19937_64 rng(8);
  const Graph g = oracle::random_connected_graph(30, 20, rng);
  const auto d = decompose(g);
  const Signal f = oracle::random_signal(30, rng);

  CHECK(operator_power(d, 0.3, 0.0, f) == f);
  for (std::size_t j : {0u, 7u, 29u}) {
    const Signal psi = eigenvector(d, j);
    const Signal out = operator_power(d, 0.2, 1.7, psi);
    CHECK((out - std::pow(0.2 + d.eigenvalues()[j], 1.7) * psi).norm() < 1e-10);
  }
  CHECK((operator_power(d, 0.0, 1.0, f) - apply_laplacian(g, f)).norm() < 1e-9);

  // (I + L)^{-1} against a dense Gaussian-elimination solve.
  const Signal h = oracle::random_signal(30, rng);
  const Signal rhs = h + apply_laplacian(g, h);
  CHECK((operator_power(d, 1.0, -1.0, rhs) - h).norm() < 1e-8);
  const auto dense = oracle::solve(oracle::shifted(oracle::laplacian(g), 1.0), rhs.vector());
  CHECK(oracle::max_abs_diff(operator_power(d, 1.0, -1.0, rhs).vector(), dense) < 1e-10);

  // Semigroup law.
  for (auto [t1, t2] : {std::pair{0.5, 1.5}, {2.0, -1.0}, {-0.7, 3.0}}) {
    const Signal lhs = operator_power(d, 0.5, t1, operator_power(d, 0.5, t2, f));
    CHECK((lhs - operator_power(d, 0.5, t1 + t2, f)).norm() < 1e-8 * f.norm());
  }

  CHECK(error_of([&] { operator_power(d, 0.0, -1.0, f); }) == Errc::SingularPower);
  CHECK(error_of([&] { operator_power(d, 1.0, 1.0, Signal(4)); }) == Errc::LengthMismatch);
  // Non-negative powers of the singular operator are fine.
  CHECK_NOTHROW(operator_power(d, 0.0, 0.5, f));
}

TEST_CASE("operator_power_columns matches operator_power on deltas") {
  const auto d = decompose(cycle_graph(11));
  const std::vector<Vertex> cols{0, 4, 10};
  const Matrix c = operator_power_columns(d, 0.1, -2.0, cols);
  for (std::size_t i = 0; i < cols.size(); ++i)
    CHECK(oracle::max_abs_diff(c.column(i), operator_power(d, 0.1, -2.0, Signal::delta(11, cols[i])).vector()) <
          1e-10);
}

TEST_CASE("sobolev_norm") {
  std::mt19937_64 rng(9);
  const auto d = decompose(cycle_graph(20));
  const Signal f = oracle::random_signal(20, rng);
  CHECK(sobolev_norm(d, 0.4, 0.0, f) == doctest::Approx(f.norm()).epsilon(1e-14));
  const Signal psi = eigenvector(d, 5);
  CHECK(sobolev_norm(d, 0.4, 3.0, psi) ==
        doctest::Approx(std::pow(0.4 + d.eigenvalues()[5], 1.5)).epsilon(1e-12));
  CHECK(std::abs(sobolev_norm(d, 0.0, 2.0, f) - apply_laplacian(d.graph(), f).norm()) < 1e-9);
  CHECK(error_of([&] { sobolev_norm(d, 0.0, -2.0, f); }) == Errc::SingularPower);
}

TEST_CASE("pw_project") {
  std::mt19937_64 rng(10);
  const Graph g = oracle::random_connected_graph(25, 15, rng);
  const auto d = decompose(g);
  const Signal f = oracle::random_signal(25, rng);

  CHECK((pw_project(d, d.largest(), f) - f).norm() < 1e-10);
  CHECK((pw_project(d, 2.0, f) - f).norm() < 1e-10);

  Signal psi0 = sqrt_degrees(g);
  psi0 *= 1.0 / psi0.norm();
  CHECK((pw_project(d, 0.0, f) - f.dot(psi0) * psi0).norm() < 1e-10);

  const std::size_t j = 12;
  CHECK(pw_project(d, d.eigenvalues()[j] * 0.999, eigenvector(d, j)).norm() < 1e-10);

  // Eigenvalues equal to ω are kept.
  const auto c6 = decompose(cycle_graph(6));
  CHECK(c6.band_size(0.5) == 3);
  CHECK(c6.band_size(1.5) == 5);

  for (auto [w1, w2] : {std::pair{0.3, 1.1}, {1.7, 0.9}, {0.0, 2.0}}) {
    const Signal a = pw_project(d, w1, pw_project(d, w2, f));
    CHECK((a - pw_project(d, std::min(w1, w2), f)).norm() < 1e-10);
  }
  const Signal p = pw_project(d, 0.8, f);
  CHECK((pw_project(d, 0.8, p) - p).norm() < 1e-10);
  const Signal h = oracle::random_signal(25, rng);
  CHECK(std::abs(pw_project(d, 0.8, h).dot(f) - h.dot(p)) < 1e-10);
}

TEST_CASE("bernstein_ratio and min_bandwidth") {
  std::mt19937_64 rng(12);
  const auto d = decompose(cycle_graph(24));
  for (std::size_t j : {3u, 10u, 23u}) {
    const Signal psi = eigenvector(d, j);
    for (double s : {0.5, 1.0, 3.0})
      CHECK(bernstein_ratio(d, psi, s) ==
            doctest::Approx(std::pow(d.eigenvalues()[j], s)).epsilon(1e-10));
    CHECK(min_bandwidth(d, psi) == doctest::Approx(d.eigenvalues()[j]));
  }

  // Coefficients on λ = 1/2 and λ = 3/2 (C_6).
  const auto c6 = decompose(cycle_graph(6));
  std::vector<double> c(6, 0.0);
  c[1] = 0.6;
  c[4] = -0.8;
  CHECK(min_bandwidth(c6, inverse_fourier(c6, c)) == doctest::Approx(1.5));

  // ‖L^s f‖^{1/s} climbs toward the band edge.
  const Signal f = pw_project(d, 1.2, oracle::random_signal(24, rng));
  const double edge = min_bandwidth(d, f);
  double previous = 0.0;
  for (double s : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double root = std::pow(bernstein_ratio(d, f, s), 1.0 / s);
    CHECK(root >= previous - 1e-12);
    CHECK(root <= edge + 1e-12);
    previous = root;
  }
  CHECK(edge - previous < 0.15 * edge);

  CHECK(error_of([&] { bernstein_ratio(d, Signal(24), 1.0); }) == Errc::ZeroSignal);
  CHECK(error_of([&] { min_bandwidth(d, Signal(24)); }) == Errc::ZeroSignal);
}

TEST_CASE("Bernstein characterization holds in both directions") {
  std::mt19937_64 rng(13);
  const std::vector<Graph> graphs{cycle_graph(20), torus_graph(torus_dims(4, 5)),
                                  oracle::random_connected_graph(30, 25, rng)};
  for (const Graph& g : graphs) {
    const auto d = decompose(g);
    const auto& ev = d.eigenvalues();
    for (std::size_t j = 0; j + 1 < ev.size(); ++j) {
      if (ev[j + 1] - ev[j] < 1e-6) continue;
      const double omega = 0.5 * (ev[j] + ev[j + 1]);
      const Signal inside = pw_project(d, omega, oracle::random_signal(d.size(), rng));
      for (double s : {1.0, 2.0, 4.0, 8.0})
        CHECK(bernstein_ratio(d, inside, s) <= std::pow(omega + 1e-9, s));

      // Any weight beyond ω eventually dominates ‖L^s f‖ as s grows.
      Signal outside = inside + 0.1 * inside.norm() * Signal(d.basis().column(j + 1));
      bool violated = false;
      for (double s = 1.0; !violated && std::pow(omega, s) > 1e-250; s *= 2.0)
        violated = bernstein_ratio(d, outside, s) > std::pow(omega + 1e-9, s);
      CHECK(violated);
    }
  }
}

TEST_CASE("JSON export") {
  const auto d = decompose(cycle_graph(4));
  std::ostringstream out;
  write_json(out, d);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["eigenvalues"].size() == 4);
  CHECK(doc["basis"].size() == 4);
  CHECK(doc["basis"][0].size() == 4);
  CHECK(doc["eigenvalues"][3].get<double>() == doctest::Approx(2.0));
}
