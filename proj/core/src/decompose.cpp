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

#include "beamscan/decompose.hpp"
#include "beamscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beamscan {

Eigen::MatrixXd power_matrix(const ChannelTensor &t) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(t.n_dir(), t.n_scan());
  for (Eigen::Index k = 0; k < t.n_scan(); ++k)
    p.col(k) = t.scan_slice(k).colwise().squaredNorm().transpose();
  return p;
}

Eigen::MatrixXcd interleave(const ChannelTensor &t) {
  // Scans are stored contiguously, so each column is a straight copy.
  return Eigen::Map<const Eigen::MatrixXcd>(
      t.data().data(), t.n_dly() * t.n_dir(), t.n_scan());
}

PcaModel pca(const ChannelTensor &t, Eigen::Index n_components) {
  const Eigen::Index max_comp = std::min(t.n_dly() * t.n_dir(), t.n_scan());
  if (n_components < 1 || n_components > max_comp)
    throw std::invalid_argument("pca: n_components out of range");

  PcaModel m;
  m.factors = svd(interleave(t));
  m.n_components = n_components;
  m.scree = m.factors.s;
  if (m.scree.size() > 0 && m.scree(0) > 0.0)
    m.scree /= m.scree(0);
  m.trajectories.resize(t.n_scan(), n_components);
  for (Eigen::Index c = 0; c < n_components; ++c)
    m.trajectories.col(c) = m.factors.v.col(c) * m.factors.s(c);
  return m;
}

namespace {

/// result = unfold(t, mode) * conj(khatri_rao(A, B)) without forming
/// either matrix; (A, B) are the two factors whose Khatri-Rao product
/// matches that mode's column order.
Eigen::MatrixXcd mttkrp(const ChannelTensor &t, int mode,
                        const FactorMatrix &d, const FactorMatrix &s,
                        const FactorMatrix &g) {
  const Eigen::Index L = d.cols();
  switch (mode) {
  case 1: {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(t.n_dly(), L);
    for (Eigen::Index k = 0; k < t.n_scan(); ++k) {
      const Eigen::MatrixXcd tmp = t.scan_slice(k) * s.conjugate();
      out.noalias() += tmp * g.row(k).conjugate().asDiagonal();
    }
    return out;
  }
  case 2: {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(t.n_dir(), L);
    for (Eigen::Index k = 0; k < t.n_scan(); ++k) {
      const Eigen::MatrixXcd tmp = t.scan_slice(k).transpose() * d.conjugate();
      out.noalias() += tmp * g.row(k).conjugate().asDiagonal();
    }
    return out;
  }
  case 3: {
    Eigen::MatrixXcd out(t.n_scan(), L);
    const Eigen::MatrixXcd s_conj_t = s.transpose().conjugate();
    for (Eigen::Index k = 0; k < t.n_scan(); ++k) {
      const Eigen::MatrixXcd tmp = d.adjoint() * t.scan_slice(k); // L x n_dir
      out.row(k) = tmp.cwiseProduct(s_conj_t).rowwise().sum().transpose();
    }
    return out;
  }
  default:
    throw std::logic_error("mttkrp: bad mode");
  }
}

double residual_norm(const ChannelTensor &t, const FactorMatrix &d,
                     const FactorMatrix &s, const FactorMatrix &g) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < t.n_scan(); ++k) {
    const Eigen::MatrixXcd r =
        t.scan_slice(k) - d * g.row(k).asDiagonal() * s.transpose();
    acc += r.squaredNorm();
  }
  return std::sqrt(acc);
}

double max_offdiag_g_correlation(const FactorMatrix &g) {
  const Eigen::Index L = g.cols();
  if (L < 2)
    return 0.0;
  Eigen::MatrixXcd gn = g;
  for (Eigen::Index l = 0; l < L; ++l) {
    const double n = gn.col(l).norm();
    if (n > 0.0)
      gn.col(l) /= n;
  }
  const Eigen::MatrixXcd c = gn.adjoint() * gn;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < L; ++i)
    for (Eigen::Index j = i + 1; j < L; ++j)
      worst = std::max(worst, std::abs(c(i, j)));
  return worst;
}

FactorMatrix random_factor(Eigen::Index rows, Eigen::Index cols,
                           SplitMix64 &rng) {
  FactorMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r)
      m(r, c) = rng.next_cgaussian(1.0);
  return m;
}

struct AlsRun {
  FactorMatrix d, s, g;
  double fit = 0.0;
  int iterations = 0;
  std::vector<double> fit_trace;
};

/// One ALS descent from the given starting point. Restarts randomly if
/// two gain trajectories stay nearly collinear for several iterations
/// (a degenerate swamp), up to opts.max_restarts times.
AlsRun run_als(const ChannelTensor &t, FactorMatrix d, FactorMatrix s,
               FactorMatrix g, const AlsOptions &opts, SplitMix64 &restart_rng,
               double norm_x) {
  AlsRun run;
  int degen_streak = 0;
  int restarts = 0;
  double prev_fit = -std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // d -> s -> g, each an exact least-squares update via the Gram
    // Hadamard identity (Z^H Z for Z = khatri_rao(A, B)).
    const Eigen::MatrixXcd gram_g = g.adjoint() * g;
    const Eigen::MatrixXcd gram_s = s.adjoint() * s;
    d = lstsq(gram_g.cwiseProduct(gram_s), mttkrp(t, 1, d, s, g).transpose())
            .transpose();

    const Eigen::MatrixXcd gram_d = d.adjoint() * d;
    s = lstsq(gram_g.cwiseProduct(gram_d), mttkrp(t, 2, d, s, g).transpose())
            .transpose();

    const Eigen::MatrixXcd gram_s2 = s.adjoint() * s;
    g = lstsq(gram_s2.cwiseProduct(gram_d), mttkrp(t, 3, d, s, g).transpose())
            .transpose();

    const double fit =
        (norm_x > 0.0) ? 1.0 - residual_norm(t, d, s, g) / norm_x : 1.0;
    run.fit_trace.push_back(fit);
    run.iterations = iter + 1;

    if (max_offdiag_g_correlation(g) > opts.degeneracy_corr)
      ++degen_streak;
    else
      degen_streak = 0;

    if (degen_streak >= opts.degeneracy_patience &&
        restarts < opts.max_restarts) {
      d = random_factor(t.n_dly(), d.cols(), restart_rng);
      s = random_factor(t.n_dir(), d.cols(), restart_rng);
      g = random_factor(t.n_scan(), d.cols(), restart_rng);
      run.fit_trace.clear();
      degen_streak = 0;
      prev_fit = -std::numeric_limits<double>::infinity();
      ++restarts;
      continue;
    }

    if (std::abs(fit - prev_fit) < opts.tol) {
      prev_fit = fit;
      break;
    }
    prev_fit = fit;
  }

  run.d = std::move(d);
  run.s = std::move(s);
  run.g = std::move(g);
  run.fit = prev_fit;
  return run;
}

/// Pull scale and phase into g, anchor d and s phases, sort components
/// by trajectory energy.
void normalize_model(CpModel &m) {
  const Eigen::Index L = m.d.cols();
  for (Eigen::Index l = 0; l < L; ++l) {
    const double nd = m.d.col(l).norm();
    const double ns = m.s.col(l).norm();
    if (nd > 0.0)
      m.d.col(l) /= nd;
    if (ns > 0.0)
      m.s.col(l) /= ns;
    m.g.col(l) *= nd * ns;

    for (FactorMatrix *f : {&m.d, &m.s}) {
      Eigen::Index imax = 0;
      const double mag = f->col(l).cwiseAbs().maxCoeff(&imax);
      if (mag > 0.0) {
        const cplx rot = std::conj((*f)(imax, l)) / mag;
        f->col(l) *= rot;
        m.g.col(l) *= std::conj(rot);
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(L));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return m.g.col(a).norm() > m.g.col(b).norm();
                   });
  CpModel sorted = m;
  for (Eigen::Index l = 0; l < L; ++l) {
    sorted.d.col(l) = m.d.col(order[size_t(l)]);
    sorted.s.col(l) = m.s.col(order[size_t(l)]);
    sorted.g.col(l) = m.g.col(order[size_t(l)]);
  }
  m = std::move(sorted);
}

} // namespace

CpModel parafac(const ChannelTensor &t, Eigen::Index rank,
                const AlsOptions &opts) {
  if (rank < 1 || rank > t.n_dly() || rank > t.n_dir() || rank > t.n_scan())
    throw std::invalid_argument("parafac: rank out of range");
  if (!t.all_finite())
    throw std::invalid_argument("parafac: input has non-finite entries");

  const double norm_x = t.frobenius_norm();

  AlsRun best;
  best.fit = -std::numeric_limits<double>::infinity();

  for (int init = 0; init <= opts.n_init; ++init) {
    FactorMatrix d0, s0, g0;
    SplitMix64 rng = SplitMix64::substream(opts.seed, std::uint64_t(init));
    if (init == 0) {
      // Leading singular vectors of each unfolding.
      d0 = svd(unfold(t, 1)).u.leftCols(rank);
      s0 = svd(unfold(t, 2)).u.leftCols(rank);
      g0 = svd(unfold(t, 3)).u.leftCols(rank);
    } else {
      d0 = random_factor(t.n_dly(), rank, rng);
      s0 = random_factor(t.n_dir(), rank, rng);
      g0 = random_factor(t.n_scan(), rank, rng);
    }
    AlsRun run = run_als(t, std::move(d0), std::move(s0), std::move(g0), opts,
                         rng, norm_x);
    if (run.fit > best.fit)
      best = std::move(run);
  }

  CpModel m;
  m.d = std::move(best.d);
  m.s = std::move(best.s);
  m.g = std::move(best.g);
  m.fit = best.fit;
  m.iterations = best.iterations;
  m.fit_trace = std::move(best.fit_trace);
  normalize_model(m);
  return m;
}

Alignment align_components(const CpModel &est, const FactorMatrix &true_g) {
  const Eigen::Index L = est.g.cols();
  if (true_g.cols() != L)
    throw std::invalid_argument("align_components: rank mismatch");

  Eigen::MatrixXd corr(L, L); // (est, truth)
  for (Eigen::Index e = 0; e < L; ++e)
    for (Eigen::Index p = 0; p < L; ++p) {
      const double den = est.g.col(e).norm() * true_g.col(p).norm();
      corr(e, p) =
          den > 0.0 ? std::abs(true_g.col(p).dot(est.g.col(e))) / den : 0.0;
    }

  Alignment a;
  a.permutation.assign(size_t(L), -1);
  a.scales.assign(size_t(L), cplx(0.0));
  a.correlations.assign(size_t(L), 0.0);
  std::vector<bool> est_used(size_t(L), false), truth_used(size_t(L), false);

  for (Eigen::Index step = 0; step < L; ++step) {
    double bestv = -1.0;
    Eigen::Index be = 0, bp = 0;
    for (Eigen::Index e = 0; e < L; ++e)
      for (Eigen::Index p = 0; p < L; ++p)
        if (!est_used[size_t(e)] && !truth_used[size_t(p)] &&
            corr(e, p) > bestv) {
          bestv = corr(e, p);
          be = e;
          bp = p;
        }
    est_used[size_t(be)] = true;
    truth_used[size_t(bp)] = true;
    a.permutation[size_t(be)] = bp;
    a.correlations[size_t(be)] = bestv;
    const double tn2 = true_g.col(bp).squaredNorm();
    a.scales[size_t(be)] =
        tn2 > 0.0 ? true_g.col(bp).dot(est.g.col(be)) / tn2 : cplx(0.0);
  }
  return a;
}

long long free_parameters(long long i, long long j, long long k, long long l,
                          ModelKind model) {
  if (i < 0 || j < 0 || k < 0 || l < 0)
    throw std::invalid_argument("free_parameters: negative argument");
  return model == ModelKind::pca ? l * (i + j * k) : l * (i + j + k);
}

std::vector<double> fit_by_rank(const ChannelTensor &t, Eigen::Index max_rank,
                                const AlsOptions &opts) {
  std::vector<double> fits;
  for (Eigen::Index L = 1; L <= max_rank; ++L)
    fits.push_back(parafac(t, L, opts).fit);
  return fits;
}

} // namespace beamscan
