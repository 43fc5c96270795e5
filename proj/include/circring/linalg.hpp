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

#pragma once

#include <Eigen/Dense>

namespace circring {

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

/// Lowest `count` eigenpairs of a dense Hermitian matrix (lower triangle is read).
/// Each eigenvector is gauge-fixed so that its largest-magnitude component is
/// real and positive; ties go to the lowest basis index. Exactly degenerate
/// eigenvalues are ordered by the real part of their first component.
EigenPairs lowest_eigenpairs(const Eigen::MatrixXcd& hermitian, int count);

/// Rotates `v` in place so its largest-magnitude entry is real positive.
void fix_gauge(Eigen::Ref<Eigen::VectorXcd> v);

}  // namespace circring
