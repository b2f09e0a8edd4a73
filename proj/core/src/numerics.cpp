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

#include "beamscan/numerics.hpp"

#include <stdexcept>

namespace beamscan {

namespace {

/// Rotate the phase of each U column so its largest-magnitude entry is
/// real nonnegative; V gets the same rotation so U*S*V^H is unchanged.
void normalize_phases(Eigen::MatrixXcd &u, Eigen::MatrixXcd &v) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Eigen::Index imax = 0;
    u.col(c).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = u(imax, c);
    const double mag = std::abs(pivot);
    if (mag > 0.0) {
      const std::complex<double> rot = std::conj(pivot) / mag;
      u.col(c) *= rot;
      if (c < v.cols())
        v.col(c) *= rot;
    }
  }
}

} // namespace

SvdFactors svd(const Eigen::MatrixXcd &x) {
  if (!x.allFinite())
    throw std::invalid_argument("svd: input has non-finite entries");

  SvdFactors f;
  // Jacobi is the more accurate kernel; divide-and-conquer takes over
  // for sizes where Jacobi becomes impractical.
  if (x.rows() <= 64 && x.cols() <= 64) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(x, Eigen::ComputeThinU |
                                                  Eigen::ComputeThinV);
    f.u = dec.matrixU();
    f.s = dec.singularValues();
    f.v = dec.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> dec(x, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
    f.u = dec.matrixU();
    f.s = dec.singularValues();
    f.v = dec.matrixV();
  }
  normalize_phases(f.u, f.v);
  return f;
}

Eigen::MatrixXcd lstsq(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("lstsq: row counts of a and b differ");
  // Complete orthogonal decomposition yields the minimum-norm least
  // squares solution for any rank, so no damping fallback is needed.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
  return cod.solve(b);
}

} // namespace beamscan
