// beamscan - phased-array channel sounding simulator and tensor analysis tools
// Copyright (C) 2026 beamscan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMSCAN_NUMERICS_HPP
#define BEAMSCAN_NUMERICS_HPP

#include <Eigen/Dense>

namespace beamscan {

/// Thin SVD X = U * diag(S) * V^H.
///
/// Columns of U and V are orthonormal; S is sorted descending. The
/// largest-magnitude entry of every U column is made real nonnegative
/// (the matching phase is pushed into V) so results are deterministic.
struct SvdFactors {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
};

SvdFactors svd(const Eigen::MatrixXcd &x);

/// argmin_X ||a*X - b||_F. For rank-deficient a the minimum-norm
/// solution is returned.
Eigen::MatrixXcd lstsq(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

} // namespace beamscan

#endif // BEAMSCAN_NUMERICS_HPP
