// Copyright 2026 The circring Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "circring/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "circring/errors.hpp"

namespace circring {

void fix_gauge(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    // Only a strictly larger magnitude (beyond round-off) moves the pivot,
    // so near-ties resolve to the lowest index.
    if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::conj(v(best)) / best_abs;
  v(best) = best_abs;
}

EigenPairs lowest_eigenpairs(const Eigen::MatrixXcd& hermitian, int count) {
  const auto n = static_cast<lapack_int>(hermitian.rows());
  if (hermitian.cols() != n || n == 0) throw EigenSolveError("eigensolver: matrix must be square and non-empty");
  if (count < 1 || count > n) {
    throw EigenSolveError("eigensolver: requested " + std::to_string(count) + " eigenpairs of a " +
                          std::to_string(n) + "-dimensional matrix");
  }

  Eigen::MatrixXcd work = hermitian;  // zheevr destroys its input
  Eigen::MatrixXcd z(n, count);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, reinterpret_cast<lapack_complex_double*>(work.data()), n, 0.0, 0.0, 1,
      count, 0.0, &found, w.data(), reinterpret_cast<lapack_complex_double*>(z.data()), n, support.data());
  if (info != 0 || found != count) {
    throw EigenSolveError("eigensolver: zheevr failed (info=" + std::to_string(info) + ", found " +
                          std::to_string(found) + " of " + std::to_string(count) + ")");
  }

  for (int k = 0; k < count; ++k) fix_gauge(z.col(k));

  // zheevr returns ascending values; reorder clusters of exact degeneracy.
  std::vector<int> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  const double tol = 1e-12 * std::max(1.0, std::abs(w[0]) + std::abs(w[count - 1]));
  for (int begin = 0; begin < count;) {
    int end = begin + 1;
    while (end < count && w[end] - w[end - 1] <= tol) ++end;
    std::stable_sort(order.begin() + begin, order.begin() + end,
                     [&](int a, int b) { return z(0, a).real() > z(0, b).real(); });
    begin = end;
  }

  EigenPairs out{Eigen::VectorXd(count), Eigen::MatrixXcd(n, count)};
  for (int k = 0; k < count; ++k) {
    out.values(k) = w[order[k]];
    out.vectors.col(k) = z.col(order[k]);
  }
  return out;
}

}  // namespace circring
