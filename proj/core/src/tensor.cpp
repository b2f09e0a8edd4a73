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

#include "beamscan/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace beamscan {

ChannelTensor::ChannelTensor(Eigen::Index n_dly, Eigen::Index n_dir,
                             Eigen::Index n_scan)
    : n_dly_(n_dly), n_dir_(n_dir), n_scan_(n_scan),
      data_(static_cast<std::size_t>(n_dly * n_dir * n_scan)) {
  if (n_dly < 1 || n_dir < 1 || n_scan < 1)
    throw std::invalid_argument("ChannelTensor: all dimensions must be >= 1");
}

ChannelTensor::ChannelTensor(Eigen::Index n_dly, Eigen::Index n_dir,
                             Eigen::Index n_scan, std::vector<cplx> data)
    : n_dly_(n_dly), n_dir_(n_dir), n_scan_(n_scan), data_(std::move(data)) {
  if (n_dly < 1 || n_dir < 1 || n_scan < 1)
    throw std::invalid_argument("ChannelTensor: all dimensions must be >= 1");
  if (static_cast<Eigen::Index>(data_.size()) != n_dly * n_dir * n_scan)
    throw std::invalid_argument("ChannelTensor: data length does not match dims");
}

double ChannelTensor::frobenius_norm() const {
  // Two-pass scaling is unnecessary here; measurement magnitudes are
  // bounded well away from overflow.
  double acc = 0.0;
  for (const cplx &v : data_)
    acc += std::norm(v);
  return std::sqrt(acc);
}

bool ChannelTensor::all_finite() const {
  for (const cplx &v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      return false;
  return true;
}

double frobenius_norm(const ChannelTensor &t) { return t.frobenius_norm(); }

Eigen::MatrixXcd unfold(const ChannelTensor &t, int mode) {
  const Eigen::Index nd = t.n_dly(), nj = t.n_dir(), nk = t.n_scan();
  switch (mode) {
  case 1: {
    // Storage already is the mode-1 unfolding.
    return Eigen::Map<const Eigen::MatrixXcd>(t.data().data(), nd, nj * nk);
  }
  case 2: {
    Eigen::MatrixXcd m(nj, nd * nk);
    for (Eigen::Index k = 0; k < nk; ++k)
      for (Eigen::Index j = 0; j < nj; ++j)
        for (Eigen::Index tau = 0; tau < nd; ++tau)
          m(j, tau + k * nd) = t(tau, j, k);
    return m;
  }
  case 3: {
    Eigen::MatrixXcd m(nk, nd * nj);
    for (Eigen::Index k = 0; k < nk; ++k)
      for (Eigen::Index j = 0; j < nj; ++j)
        for (Eigen::Index tau = 0; tau < nd; ++tau)
          m(k, tau + j * nd) = t(tau, j, k);
    return m;
  }
  default:
    throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
  }
}

ChannelTensor refold(const Eigen::MatrixXcd &m, int mode, Eigen::Index n_dly,
                     Eigen::Index n_dir, Eigen::Index n_scan) {
  ChannelTensor t(n_dly, n_dir, n_scan);
  switch (mode) {
  case 1:
    if (m.rows() != n_dly || m.cols() != n_dir * n_scan)
      throw std::invalid_argument("refold: shape mismatch for mode 1");
    for (Eigen::Index k = 0; k < n_scan; ++k)
      for (Eigen::Index j = 0; j < n_dir; ++j)
        for (Eigen::Index tau = 0; tau < n_dly; ++tau)
          t(tau, j, k) = m(tau, j + k * n_dir);
    break;
  case 2:
    if (m.rows() != n_dir || m.cols() != n_dly * n_scan)
      throw std::invalid_argument("refold: shape mismatch for mode 2");
    for (Eigen::Index k = 0; k < n_scan; ++k)
      for (Eigen::Index j = 0; j < n_dir; ++j)
        for (Eigen::Index tau = 0; tau < n_dly; ++tau)
          t(tau, j, k) = m(j, tau + k * n_dly);
    break;
  case 3:
    if (m.rows() != n_scan || m.cols() != n_dly * n_dir)
      throw std::invalid_argument("refold: shape mismatch for mode 3");
    for (Eigen::Index k = 0; k < n_scan; ++k)
      for (Eigen::Index j = 0; j < n_dir; ++j)
        for (Eigen::Index tau = 0; tau < n_dly; ++tau)
          t(tau, j, k) = m(k, tau + j * n_dly);
    break;
  default:
    throw std::invalid_argument("refold: mode must be 1, 2 or 3");
  }
  return t;
}

Eigen::MatrixXcd khatri_rao(const Eigen::MatrixXcd &a,
                            const Eigen::MatrixXcd &b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("khatri_rao: column counts differ");
  const Eigen::Index ra = a.rows(), rb = b.rows(), L = a.cols();
  Eigen::MatrixXcd out(ra * rb, L);
  for (Eigen::Index l = 0; l < L; ++l)
    for (Eigen::Index i = 0; i < ra; ++i)
      out.col(l).segment(i * rb, rb) = a(i, l) * b.col(l);
  return out;
}

ChannelTensor cp_reconstruct(const FactorMatrix &d, const FactorMatrix &s,
                             const FactorMatrix &g) {
  if (d.cols() != s.cols() || d.cols() != g.cols())
    throw std::invalid_argument("cp_reconstruct: factor ranks differ");
  const Eigen::Index nd = d.rows(), nj = s.rows(), nk = g.rows();
  ChannelTensor t(nd, nj, nk);
  for (Eigen::Index k = 0; k < nk; ++k) {
    // slice_k = D * diag(g_k) * S^T
    auto slice = t.scan_slice(k);
    slice.noalias() = d * g.row(k).asDiagonal() * s.transpose();
  }
  return t;
}

} // namespace beamscan
