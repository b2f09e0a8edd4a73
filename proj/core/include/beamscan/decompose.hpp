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

#ifndef BEAMSCAN_DECOMPOSE_HPP
#define BEAMSCAN_DECOMPOSE_HPP

#include "beamscan/numerics.hpp"
#include "beamscan/tensor.hpp"

#include <cstdint>
#include <vector>

namespace beamscan {

/// p[j,k] = sum_tau |x[tau,j,k]|^2: received power per pointing-angle
/// combination and scan (the PDP integrated over delay).
Eigen::MatrixXd power_matrix(const ChannelTensor &t);

/// Stack all CIRs of a scan into one column: (n_dly*n_dir) x n_scan,
/// row index tau + (j-1)*n_dly. Equals unfold(t, 3) transposed.
Eigen::MatrixXcd interleave(const ChannelTensor &t);

/// Two-way PCA of the interleaved matrix (no mean centering: components
/// keep their interpretation as physical paths).
struct PcaModel {
  SvdFactors factors;            // thin SVD of the interleaved matrix
  Eigen::VectorXd scree;         // singular values / largest, descending
  Eigen::MatrixXcd trajectories; // n_scan x n_components, col c = V_c * s_c
  Eigen::Index n_components = 0;
};

PcaModel pca(const ChannelTensor &t, Eigen::Index n_components);

struct AlsOptions {
  double tol = 1e-8; // stop when |fit change| drops below this
  int max_iter = 500;
  int n_init = 4; // random initializations, plus one SVD-based
  std::uint64_t seed = 0;
  double degeneracy_corr = 0.999; // |g-corr| above this ...
  int degeneracy_patience = 10;   // ... for this many iterations restarts
  int max_restarts = 3;
};

/// CP model of rank L. Columns of d and s have unit norm with the
/// largest-magnitude d entry real nonnegative; magnitude and phase live
/// in g. Components are sorted by ||g_l|| descending.
struct CpModel {
  FactorMatrix d;
  FactorMatrix s;
  FactorMatrix g;
  double fit = 0.0; // 1 - ||residual||_F / ||X||_F
  int iterations = 0;
  std::vector<double> fit_trace; // per-iteration fit of the winning run
};

/// Alternating least squares, update order d -> s -> g, best of
/// opts.n_init random starts plus one seeded from the leading singular
/// vectors of each unfolding.
CpModel parafac(const ChannelTensor &t, Eigen::Index rank,
                const AlsOptions &opts = {});

/// Matching of estimated components to planted ones on the g factors
/// (greedy on |normalized inner product|). scale[l] maps truth column
/// perm[l] onto estimated column l in least-squares sense.
struct Alignment {
  std::vector<Eigen::Index> permutation; // est component l <- truth perm[l]
  std::vector<cplx> scales;
  std::vector<double> correlations; // in [0, 1]
};

Alignment align_components(const CpModel &est, const FactorMatrix &true_g);

enum class ModelKind { pca, parafac };

/// Free-parameter count of an L-component model of an I x J x K tensor:
/// L(I + JK) for two-way PCA on the interleaved matrix, L(I + J + K)
/// for the trilinear model.
long long free_parameters(long long i, long long j, long long k, long long l,
                          ModelKind model);

/// Fit-versus-rank helper for choosing L by inspection.
std::vector<double> fit_by_rank(const ChannelTensor &t, Eigen::Index max_rank,
                                const AlsOptions &opts = {});

} // namespace beamscan

#endif // BEAMSCAN_DECOMPOSE_HPP
