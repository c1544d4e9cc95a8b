#include "pwgraph/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "pwgraph/error.hpp"

namespace pwgraph {

template <class T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  assert(a.cols() == b.rows());
  BasicMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T(0)) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

template <class T>
std::vector<T> operator*(const BasicMatrix<T>& a, std::span<const std::type_identity_t<T>> x) {
  assert(a.cols() == x.size());
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), T(0));
  }
  return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

namespace {

// Reduces symmetric v (in place) to tridiagonal form; on exit v holds the
// accumulated orthogonal transform, d the diagonal and e the subdiagonal
// (e[0] unused).
template <class T>
void householder_tridiagonalize(BasicMatrix<T>& v, std::vector<T>& d, std::vector<T>& e) {
  using std::abs, std::sqrt;
  const int n = static_cast<int>(v.rows());
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    T scale = 0.0;
    T h = 0.0;
    for (int k = 0; k < i; ++k) scale += abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      T f = d[i - 1];
      T g = sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const T hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const T h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        T g = 0.0;
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e). `z` holds eigenvectors as
// rows so each Givens rotation touches two contiguous rows.
template <class T>
void tridiagonal_ql(std::vector<T>& d, std::vector<T>& e, BasicMatrix<T>& z, int max_sweeps) {
  using std::abs, std::hypot;
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  T f = 0.0;
  T tst1 = 0.0;
  const T eps = std::numeric_limits<T>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, abs(d[l]) + abs(e[l]));
    int m = l;
    while (m < n) {
      if (abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps)
          throw Error("spectral", Errc::ConvergenceFailure,
                      "QL iteration did not converge for eigenvalue " + std::to_string(l));
        T g = d[l];
        T p = (d[l + 1] - g) / (2.0 * e[l]);
        T r = hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const T dl1 = d[l + 1];
        T h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        T c = 1.0, c2 = 1.0, c3 = 1.0;
        const T el1 = e[l + 1];
        T s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          auto zi = z.row(i);
          auto zi1 = z.row(i + 1);
          for (int k = 0; k < n; ++k) {
            h = zi1[k];
            zi1[k] = s * zi[k] + c * h;
            zi[k] = c * zi[k] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

template <class T>
SymmetricEigen<T> symmetric_eigen(const BasicMatrix<T>& a, int max_sweeps) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return {};

  BasicMatrix<T> v(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) v(i, j) = v(j, i) = a(i, j);

  std::vector<T> d(n), e(n);
  householder_tridiagonalize(v, d, e);
  BasicMatrix<T> z = v.transpose();
  tridiagonal_ql(d, e, z, max_sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  SymmetricEigen<T> out{std::vector<T>(n), BasicMatrix<T>(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    auto src = z.row(order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = src[i];
  }
  return out;
}

template <class T>
std::optional<BasicMatrix<T>> cholesky_factor(const BasicMatrix<T>& a) {
  using std::sqrt;
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  BasicMatrix<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > T(0))) return std::nullopt;
    const T ljj = sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

template <class T>
std::vector<T> cholesky_solve(const BasicMatrix<T>& lower, std::span<const std::type_identity_t<T>> b) {
  const std::size_t n = lower.rows();
  assert(b.size() == n);
  std::vector<T> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= lower(i, k) * x[k];
    x[i] /= lower(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= lower(k, i) * x[k];
    x[i] /= lower(i, i);
  }
  return x;
}


#define PWGRAPH_INSTANTIATE(T)                                                          \
  template BasicMatrix<T> operator*(const BasicMatrix<T>&, const BasicMatrix<T>&);      \
  template std::vector<T> operator*(const BasicMatrix<T>&, std::span<const std::type_identity_t<T>>);         \
  template SymmetricEigen<T> symmetric_eigen(const BasicMatrix<T>&, int);               \
  template std::optional<BasicMatrix<T>> cholesky_factor(const BasicMatrix<T>&);        \
  template std::vector<T> cholesky_solve(const BasicMatrix<T>&, std::span<const std::type_identity_t<T>>);

PWGRAPH_INSTANTIATE(double)
PWGRAPH_INSTANTIATE(extended)
#undef PWGRAPH_INSTANTIATE

std::vector<double> singular_values(const Matrix& a) {
  // Work on columns stored as rows of the transpose.
  Matrix w = a.transpose();
  const std::size_t p = w.rows();
  const std::size_t m = w.cols();
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        auto ci = w.row(i);
        auto cj = w.row(j);
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += ci[k] * ci[k];
          beta += cj[k] * cj[k];
          gamma += ci[k] * cj[k];
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double x = ci[k];
          const double y = cj[k];
          ci[k] = c * x - s * y;
          cj[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(p);
  for (std::size_t i = 0; i < p; ++i) {
    auto ci = w.row(i);
    sv[i] = std::sqrt(std::inner_product(ci.begin(), ci.end(), ci.begin(), 0.0));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace pwgraph
