#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pwgraph/reconstruct.hpp"
#include "test_util.hpp"

using namespace pwgraph;

namespace {

std::vector<double> samples_of(const Signal& f, const VertexSet& s) {
  std::vector<double> out;
  for (Vertex v : s.complement()) out.push_back(f[v]);
  return out;
}

VertexSet spaced_singletons(const Graph& g, std::size_t count, std::size_t step) {
  std::vector<Vertex> m;
  for (std::size_t i = 0; i < count; ++i) m.push_back(i * step);
  return VertexSet::make(g, m);
}

}  // namespace

TEST_CASE("choose_epsilon") {
  CHECK(choose_epsilon(1.0, 0.5, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(1.0 * (0.5 + choose_epsilon(1.0, 0.5, 1.0)) == doctest::Approx(0.75));
  CHECK(choose_epsilon(1.0, 0.1, 0.01) == 0.01);
  CHECK(choose_epsilon(0.5, 0.0, 5.0) == doctest::Approx(1.0));
  CHECK(error_of([] { choose_epsilon(1.0, 1.0, 1.0); }) == Errc::InfeasibleBandwidth);
  CHECK(error_of([] { choose_epsilon(2.0, 0.6, 1.0); }) == Errc::InfeasibleBandwidth);
  CHECK(error_of([] { choose_epsilon(1.0, 0.5, 0.0); }) == Errc::SingularOperator);
  CHECK(choose_epsilon(1.0, 0.5, 0.0, 0.3) == 0.0);
}

TEST_CASE("gamma stays below one for the chosen epsilon") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lam(0.1, 10.0), frac(0.0, 0.999), floor(0.001, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double l = lam(rng), w = frac(rng) / l;
    const double eps = choose_epsilon(l, w, floor(rng));
    CHECK(eps > 0.0);
    CHECK(l * (w + eps) <= (1.0 + l * w) / 2.0 + 1e-15);
    CHECK(l * (w + eps) < 1.0);
  }
}

TEST_CASE("StopReason names") {
  CHECK(to_string(StopReason::BudgetExhausted) == "BudgetExhausted");
  CHECK(to_string(StopReason::IllConditioned) == "IllConditioned");
  CHECK(to_string(StopReason::ErrorFloor) == "ErrorFloor");
}

TEST_CASE("constant band: first iterate tends to f as eps shrinks") {
  // ψ_0 has energy ε‖ψ_0‖ under εI + L, so Y_1 = f only in the limit; the
  // defect is O(ε²).
  const Graph g = cycle_graph(32);
  const auto d = decompose(g);
  const auto s = VertexSet::make(g, {3, 10, 11});
  const Signal f = -2.5 * Signal(d.basis().column(0));
  ReconstructOptions opt;
  opt.omega = 0.0;
  opt.l_max = 0;
  opt.ground_truth = f;

  opt.eps = choose_epsilon(poincare_constant(d, s), 0.0, 1.0);
  CHECK(reconstruct(d, s, samples_of(f, s), opt).trace.bound_holds(f.norm()));

  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    opt.eps = eps;
    const double err = *reconstruct(d, s, samples_of(f, s), opt).trace.entries[0].error;
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(100.0).epsilon(0.05));
    prev = err;
  }
  opt.eps = 1e-5;
  const auto r = reconstruct(d, s, samples_of(f, s), opt);
  CHECK((r.signal - f).norm() <= 1e-8);
}

TEST_CASE("eight singletons on a 64-cycle") {
  const Graph g = cycle_graph(64);
  const auto d = decompose(g);
  const auto s = spaced_singletons(g, 8, 8);
  const double lambda = poincare_constant(d, s);
  CHECK(lambda == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));

  std::mt19937_64 rng(64);
  const Signal f = pw_project(d, 0.5, oracle::random_signal(64, rng));
  ReconstructOptions opt;
  opt.omega = 0.5;
  opt.eps = choose_epsilon(lambda, 0.5, 1.0);
  opt.ground_truth = f;
  const auto r = reconstruct(d, s, samples_of(f, s), opt);

  CHECK(r.trace.gamma == doctest::Approx(lambda * (0.5 + opt.eps)));
  CHECK(r.trace.gamma < 1.0);
  CHECK_FALSE(r.trace.bound_is_relative);
  REQUIRE(r.trace.entries.size() >= 2);
  CHECK(r.trace.bound_holds(f.norm()));
  for (std::size_t i = 0; i < r.trace.entries.size(); ++i) {
    const auto& e = r.trace.entries[i];
    CHECK(e.k == (std::uint64_t{1} << e.l));
    CHECK(*e.error <= e.bound + 1e-9 * f.norm());
    if (i > 0) {
      CHECK(e.bound < r.trace.entries[i - 1].bound);
      CHECK(*e.error < *r.trace.entries[i - 1].error);
    }
  }
  MESSAGE("stop=" << to_string(r.trace.stop_reason) << " iterates=" << r.trace.entries.size()
                  << " last error=" << *r.trace.entries.back().error);
}

TEST_CASE("reconstruct errors") {
  const Graph g = cycle_graph(16);
  const auto d = decompose(g);
  const auto s = VertexSet::make(g, {4});
  const std::vector<double> good(15, 1.0);
  ReconstructOptions opt;
  opt.omega = 0.5;
  opt.eps = 0.1;

  std::vector<Vertex> all(16);
  std::iota(all.begin(), all.end(), Vertex{0});
  CHECK(error_of([&] { reconstruct(d, VertexSet::make(g, all), {}, opt); }) == Errc::EmptySampleSet);
  CHECK(error_of([&] { reconstruct(d, s, std::vector<double>(14), opt); }) == Errc::LengthMismatch);

  ReconstructOptions wide = opt;
  wide.omega = 1.2;
  CHECK(error_of([&] { reconstruct(d, s, good, wide); }) == Errc::GammaNotLessThanOne);

  // ε = 0 needs an invertible Laplacian, which a connected graph never has.
  ReconstructOptions flat = opt;
  flat.eps = 0.0;
  CHECK(error_of([&] { reconstruct(d, s, good, flat); }) == Errc::SingularOperator);
}

TEST_CASE("trace without ground truth carries relative bounds") {
  const Graph g = cycle_graph(24);
  const auto d = decompose(g);
  const auto s = spaced_singletons(g, 3, 8);
  const Signal f = synthesize_pw_signal(d, 0.4, 9);
  ReconstructOptions opt;
  opt.omega = 0.4;
  opt.eps = choose_epsilon(poincare_constant(d, s), 0.4, 1.0);
  opt.l_max = 3;
  const auto r = reconstruct(d, s, samples_of(f, s), opt);
  CHECK(r.trace.bound_is_relative);
  for (const auto& e : r.trace.entries) {
    CHECK_FALSE(e.error.has_value());
    CHECK(e.bound == doctest::Approx(2.0 * std::pow(r.trace.gamma, double(e.k))));
  }
  CHECK(r.trace.stop_reason == StopReason::BudgetExhausted);
  CHECK(r.trace.entries.size() == 4);
}

TEST_CASE("caller-supplied Lambda bound is used for gamma") {
  const Graph g = cycle_graph(64);
  const auto d = decompose(g);
  const auto s = VertexSet::make(g, oracle::arc(64, 30, 3));
  const Signal f = synthesize_pw_signal(d, 0.2, 4);
  ReconstructOptions opt;
  opt.omega = 0.2;
  opt.lambda = segment_bound(3);
  opt.eps = choose_epsilon(*opt.lambda, 0.2, 1.0);
  opt.ground_truth = f;
  const auto r = reconstruct(d, s, samples_of(f, s), opt);
  CHECK(r.trace.lambda == segment_bound(3));
  CHECK(r.trace.gamma == doctest::Approx(segment_bound(3) * (0.2 + opt.eps)));
  CHECK(r.trace.bound_holds(1.0));
}

TEST_CASE("every iterate interpolates the samples") {
  const Graph g = torus_graph(std::vector<std::size_t>{8, 8});
  const auto d = decompose(g);
  const auto s = VertexSet::make(g, {9, 10, 18, 19, 45});
  const double lambda = poincare_constant(d, s);
  const Signal f = synthesize_pw_signal(d, 0.6 / lambda, 17);
  const auto y = samples_of(f, s);
  ReconstructOptions opt;
  opt.omega = 0.6 / lambda;
  opt.eps = choose_epsilon(lambda, opt.omega, 1.0);
  opt.ground_truth = f;
  opt.error_floor = 0.0;
  const auto u = s.complement();
  for (unsigned l = 0; l <= 4; ++l) {
    opt.l_max = l;
    const auto r = reconstruct(d, s, y, opt);
    if (r.trace.entries.size() != l + 1) break;  // stopped on conditioning
    for (std::size_t i = 0; i < u.size(); ++i)
      CHECK(std::abs(r.signal[u[i]] - y[i]) <= 1e-8 * std::max(1.0, std::abs(y[i])));
  }
}

TEST_CASE("conditioning stop returns the last good iterate") {
  const Graph g = cycle_graph(40);
  const auto d = decompose(g);
  const auto s = spaced_singletons(g, 4, 10);
  const double lambda = poincare_constant(d, s);
  const Signal f = synthesize_pw_signal(d, 0.3, 2);
  ReconstructOptions opt;
  opt.omega = 0.3;
  opt.eps = 0.01;
  opt.l_max = 12;
  opt.ground_truth = f;
  opt.error_floor = 0.0;
  opt.lambda = lambda;
  const auto r = reconstruct(d, s, samples_of(f, s), opt);
  CHECK(r.trace.stop_reason == StopReason::IllConditioned);
  REQUIRE_FALSE(r.trace.entries.empty());
  CHECK(r.trace.entries.size() < 13);
  for (const auto& e : r.trace.entries) CHECK(e.gram_condition <= kMaxGramCondition);
  CHECK((r.signal - f).norm() == doctest::Approx(*r.trace.entries.back().error));
  CHECK(r.trace.bound_holds(f.norm()));
}

TEST_CASE("synthesize_pw_signal") {
  const Graph g = cycle_graph(20);
  const auto d = decompose(g);
  const Signal a = synthesize_pw_signal(d, 0.7, 42);
  CHECK(a == synthesize_pw_signal(d, 0.7, 42));
  CHECK_FALSE(a == synthesize_pw_signal(d, 0.7, 43));
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(min_bandwidth(d, a) <= 0.7);

  const Signal full = synthesize_pw_signal(d, 2.0, 1);
  CHECK(full.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(min_bandwidth(d, full) > 1.9);

  const Signal flat = synthesize_pw_signal(d, 0.0, 5);
  const Signal psi0(d.basis().column(0));
  CHECK(std::abs(std::abs(flat.dot(psi0)) - 1.0) <= 1e-12);

  CHECK(error_of([&] { synthesize_pw_signal(d, -0.5, 1); }) == Errc::EmptyBand);
}

TEST_CASE("error bound on randomized cycles and tori") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> frac(0.2, 0.9);
  int trials = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const bool torus = trial % 2 == 1;
    const Graph g = torus ? torus_graph(std::vector<std::size_t>{8 + 2 * std::size_t(trial / 4),
                                                                 8 + 2 * std::size_t(trial / 4)})
                          : cycle_graph(32 + 24 * std::size_t(trial / 2));
    const auto d = decompose(g);
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> members;
    if (torus) {
      const std::size_t side = 8 + 2 * std::size_t(trial / 4);
      for (std::size_t r = 0; r + 4 < side; r += 4)
        for (std::size_t c = 0; c + 4 < side; c += 4) {
          members.push_back(r * side + c);
          members.push_back(r * side + c + 1);
        }
    } else {
      for (Vertex start = 0; start + 6 < n; start += 6) {
        const auto seg = oracle::arc(n, start, 2);
        members.insert(members.end(), seg.begin(), seg.end());
      }
    }
    const auto s = VertexSet::make(g, members);
    const double lambda = poincare_constant(d, s);
    const double omega = frac(rng) / lambda;
    if (d.band_size(omega) == 0) continue;
    const Signal f = synthesize_pw_signal(d, omega, rng());
    ReconstructOptions opt;
    opt.omega = omega;
    opt.eps = choose_epsilon(lambda, omega, 1.0);
    opt.lambda = lambda;
    opt.ground_truth = f;
    const auto r = reconstruct(d, s, samples_of(f, s), opt);
    CHECK(r.trace.bound_holds(f.norm()));

    // Once an iterate is essentially exact, later ones stay there.
    bool exact = false;
    for (const auto& e : r.trace.entries) {
      if (exact) CHECK(*e.error < 1e-8 * f.norm());
      exact = exact || *e.error < 1e-10 * f.norm();
    }
    ++trials;
  }
  CHECK(trials >= 8);
}
