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

#ifndef BEAMSCAN_TENSOR_HPP
#define BEAMSCAN_TENSOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace beamscan {

using cplx = std::complex<double>;

/// One factor matrix of a CP model: mode length x rank.
using FactorMatrix = Eigen::MatrixXcd;

/// Dense complex three-way tensor holding one sounding measurement.
///
/// Axis order is (delay, direction, scan). Storage is delay-fastest
/// column major, which makes the flat buffer identical to the mode-1
/// unfolding laid out column by column. All unfolding column orders in
/// this library derive from that single convention.
class ChannelTensor {
public:
  ChannelTensor() = default;

  ChannelTensor(Eigen::Index n_dly, Eigen::Index n_dir, Eigen::Index n_scan);

  ChannelTensor(Eigen::Index n_dly, Eigen::Index n_dir, Eigen::Index n_scan,
                std::vector<cplx> data);

  Eigen::Index n_dly() const { return n_dly_; }
  Eigen::Index n_dir() const { return n_dir_; }
  Eigen::Index n_scan() const { return n_scan_; }
  Eigen::Index size() const { return n_dly_ * n_dir_ * n_scan_; }

  cplx &operator()(Eigen::Index tau, Eigen::Index dir, Eigen::Index scan) {
    return data_[tau + n_dly_ * (dir + n_dir_ * scan)];
  }
  const cplx &operator()(Eigen::Index tau, Eigen::Index dir,
                         Eigen::Index scan) const {
    return data_[tau + n_dly_ * (dir + n_dir_ * scan)];
  }

  const std::vector<cplx> &data() const { return data_; }
  std::vector<cplx> &data() { return data_; }

  /// View of one scan as an n_dly x n_dir matrix (contiguous block).
  Eigen::Map<const Eigen::MatrixXcd> scan_slice(Eigen::Index scan) const {
    return {data_.data() + n_dly_ * n_dir_ * scan, n_dly_, n_dir_};
  }
  Eigen::Map<Eigen::MatrixXcd> scan_slice(Eigen::Index scan) {
    return {data_.data() + n_dly_ * n_dir_ * scan, n_dly_, n_dir_};
  }

  double frobenius_norm() const;

  bool all_finite() const;

private:
  Eigen::Index n_dly_ = 0;
  Eigen::Index n_dir_ = 0;
  Eigen::Index n_scan_ = 0;
  std::vector<cplx> data_;
};

/// Matricization of t along the given mode (1, 2 or 3).
///
/// Column orders (1-based index arithmetic):
///   mode 1: n_dly  x (n_dir*n_scan), column j + (k-1)*n_dir
///   mode 2: n_dir  x (n_dly*n_scan), column tau + (k-1)*n_dly
///   mode 3: n_scan x (n_dly*n_dir), column tau + (j-1)*n_dly
Eigen::MatrixXcd unfold(const ChannelTensor &t, int mode);

/// Inverse of unfold for the stated column orders.
ChannelTensor refold(const Eigen::MatrixXcd &m, int mode, Eigen::Index n_dly,
                     Eigen::Index n_dir, Eigen::Index n_scan);

/// Column-wise Kronecker product: column l is kron(a_l, b_l) with the
/// second argument's index varying fastest.
Eigen::MatrixXcd khatri_rao(const Eigen::MatrixXcd &a,
                            const Eigen::MatrixXcd &b);

/// Sum of rank-one outer products: x[tau,j,k] = sum_l d[tau,l]*s[j,l]*g[k,l].
ChannelTensor cp_reconstruct(const FactorMatrix &d, const FactorMatrix &s,
                             const FactorMatrix &g);

double frobenius_norm(const ChannelTensor &t);

} // namespace beamscan

#endif // BEAMSCAN_TENSOR_HPP
