#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solvers, so they can be used to check it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(Rows a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("gauss_solve: singular");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// OLS with intercept via the normal equations on centered data.
/// Returns {coefficients..., intercept}.
inline std::vector<double> ols_normal_equations(const Rows& x, const std::vector<double>& y) {
  const std::size_t n = x.size(), p = x.front().size();
  std::vector<double> mx(p, 0.0);
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) mx[j] += x[i][j] / static_cast<double>(n);
    my += y[i] / static_cast<double>(n);
  }
  Rows xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double xj = x[i][j] - mx[j];
      xty[j] += xj * (y[i] - my);
      for (std::size_t k = 0; k < p; ++k) xtx[j][k] += xj * (x[i][k] - mx[k]);
    }
  auto beta = gauss_solve(xtx, xty);
  double b0 = my;
  for (std::size_t j = 0; j < p; ++j) b0 -= beta[j] * mx[j];
  beta.push_back(b0);
  return beta;
}

inline double r2(const std::vector<double>& y, const std::vector<double>& pred) {
  double mean = 0.0;
  for (double v : y) mean += v / static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - pred[i]) * (y[i] - pred[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return 1.0 - ss_res / ss_tot;
}

inline double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

/// Exact Shapley values of one sample by enumerating every coalition. The
/// value of a coalition evaluates the linear predictor with the absent
/// features set to their baseline (mean) values.
inline std::vector<double> brute_force_shapley(const std::vector<double>& coef, double intercept,
                                               const std::vector<double>& baseline,
                                               const std::vector<double>& sample) {
  const std::size_t n = coef.size();
  auto value = [&](std::uint32_t mask) {
    double v = intercept;
    for (std::size_t j = 0; j < n; ++j) v += coef[j] * ((mask >> j) & 1u ? sample[j] : baseline[j]);
    return v;
  };
  std::vector<double> phi(n, 0.0);
  const std::uint32_t full = 1u << n;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      if ((mask >> j) & 1u) continue;
      const auto s = static_cast<std::size_t>(__builtin_popcount(mask));
      const double w = factorial(s) * factorial(n - s - 1) / factorial(n);
      phi[j] += w * (value(mask | (1u << j)) - value(mask));
    }
  }
  return phi;
}

}  // namespace oracle
