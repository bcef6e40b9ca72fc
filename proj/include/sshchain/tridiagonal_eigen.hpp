#pragma once

// Symmetric tridiagonal eigensolver: QL iteration with implicit Wilkinson
// shifts, accumulating the Givens rotations into the eigenvector matrix.
// Cost O(N^2) for eigenvalues plus O(N^3) worst case for vectors; for the
// chain sizes used here (N ~ 10^2) this is well under a millisecond.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sshchain/error.hpp"

namespace sshchain {

template <typename Scalar>
struct TridiagonalEigenResult {
  std::vector<Scalar> values;                                    // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // column n <-> values[n]
  int max_iterations_used = 0;
};

/// Eigenpairs of the symmetric tridiagonal matrix with diagonal `diag` and
/// sub/super-diagonal `offdiag` (length diag.size() - 1).
///
/// Throws SolverError when one eigenvalue fails to deflate within
/// `max_iterations` sweeps. Output is sorted ascending (ties keep the solver's
/// order) and is a deterministic function of the input.
template <typename Scalar>
TridiagonalEigenResult<Scalar> tridiagonal_eigen(std::span<const Scalar> diag,
                                                 std::span<const Scalar> offdiag,
                                                 int max_iterations = 60) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (static_cast<int>(offdiag.size()) != n - 1)
    throw ConfigError("tridiagonal_eigen: offdiag must have length N-1");

  std::vector<Scalar> d(diag.begin(), diag.end());
  // e[i] couples rows i and i+1; e[n-1] is scratch.
  std::vector<Scalar> e(static_cast<std::size_t>(n), Scalar(0));
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  Matrix z = Matrix::Identity(n, n);

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  int worst = 0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const Scalar dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;

      if (iter++ == max_iterations)
        throw SolverError("tridiagonal QL failed to converge for eigenvalue " + std::to_string(l) +
                              " after " + std::to_string(max_iterations) + " iterations",
                          l, max_iterations);

      Scalar g = (d[l + 1] - d[l]) / (Scalar(2) * e[l]);
      Scalar r = std::hypot(g, Scalar(1));
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      Scalar s = 1, c = 1, p = 0;
      int i;
      bool underflow = false;
      for (i = m - 1; i >= l; --i) {
        const Scalar f = s * e[i];
        const Scalar b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == Scalar(0)) {
          d[i + 1] -= p;
          e[m] = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Scalar(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          const Scalar zf = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * zf;
          z(k, i) = c * z(k, i) - s * zf;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    } while (m != l);
    worst = std::max(worst, iter);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  TridiagonalEigenResult<Scalar> out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    out.vectors.col(k) = z.col(order[k]);
  }
  out.max_iterations_used = worst;
  return out;
}

}  // namespace sshchain
