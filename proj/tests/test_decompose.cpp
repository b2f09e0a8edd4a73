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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beamscan/decompose.hpp"
#include "beamscan/rng.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <numeric>

using namespace beamscan;

namespace {

ChannelTensor random_tensor(Eigen::Index nd, Eigen::Index nj, Eigen::Index nk,
                            std::uint64_t seed) {
  ChannelTensor t(nd, nj, nk);
  SplitMix64 rng(seed);
  for (cplx &v : t.data())
    v = rng.next_cgaussian(1.0);
  return t;
}

FactorMatrix random_factor(Eigen::Index rows, Eigen::Index cols,
                           SplitMix64 &rng) {
  FactorMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r)
      m(r, c) = rng.next_cgaussian(1.0);
  return m;
}

double g_correlation(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

void check_model_invariants(const CpModel &m) {
  for (Eigen::Index l = 0; l < m.d.cols(); ++l) {
    CHECK(m.d.col(l).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.s.col(l).norm() == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::Index imax = 0;
    m.d.col(l).cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(m.d(imax, l).imag()) < 1e-10);
    CHECK(m.d(imax, l).real() >= 0.0);
    if (l + 1 < m.g.cols())
      CHECK(m.g.col(l).norm() >= m.g.col(l + 1).norm() - 1e-12);
  }
}

} // namespace

TEST_CASE("power matrix of a single entry") {
  ChannelTensor t(2, 2, 2);
  t(0, 0, 0) = cplx(3.0, 4.0);
  const Eigen::MatrixXd p = power_matrix(t);
  CHECK(p(0, 0) == doctest::Approx(25.0));
  CHECK(p.sum() == doctest::Approx(25.0));
}

TEST_CASE("power matrix of an all-ones tensor sums the delay bins") {
  ChannelTensor t(2, 3, 4);
  for (cplx &v : t.data())
    v = 1.0;
  const Eigen::MatrixXd p = power_matrix(t);
  CHECK((p.array() - 2.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("power matrix equals the triple-loop oracle bit for bit") {
  const ChannelTensor t = random_tensor(4, 3, 2, 99);
  const Eigen::MatrixXd p = power_matrix(t);
  const Eigen::MatrixXd ref = oracles::power_brute_force(t);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index k = 0; k < 2; ++k)
      REQUIRE(p(j, k) == ref(j, k));
}

TEST_CASE("total integrated power equals the squared Frobenius norm") {
  const ChannelTensor t = random_tensor(5, 4, 6, 100);
  const double n2 = t.frobenius_norm() * t.frobenius_norm();
  CHECK(power_matrix(t).sum() == doctest::Approx(n2).epsilon(1e-12));
}

TEST_CASE("interleave stacking order and norm preservation") {
  ChannelTensor t(2, 2, 1);
  t(0, 0, 0) = 1.0;
  t(1, 0, 0) = 2.0;
  t(0, 1, 0) = 3.0;
  t(1, 1, 0) = 4.0;
  const Eigen::MatrixXcd m = interleave(t);
  REQUIRE(m.rows() == 4);
  REQUIRE(m.cols() == 1);
  CHECK(m(0, 0) == cplx(1.0));
  CHECK(m(1, 0) == cplx(2.0));
  CHECK(m(2, 0) == cplx(3.0));
  CHECK(m(3, 0) == cplx(4.0));

  const ChannelTensor r = random_tensor(3, 4, 5, 101);
  CHECK(interleave(r).norm() ==
        doctest::Approx(r.frobenius_norm()).epsilon(1e-14));
  // Cross-check the two code paths.
  CHECK((interleave(r) - unfold(r, 3).transpose()).norm() == 0.0);
}

TEST_CASE("pca of an exactly rank-1 tensor has a single component") {
  SplitMix64 rng(5);
  const FactorMatrix d = random_factor(6, 1, rng);
  const FactorMatrix s = random_factor(5, 1, rng);
  const FactorMatrix g = random_factor(7, 1, rng);
  const PcaModel m = pca(cp_reconstruct(d, s, g), 3);
  CHECK(m.scree(0) == doctest::Approx(1.0));
  CHECK(m.scree(1) < 1e-12);
  // Trajectory k is V's k-th column scaled by the k-th singular value.
  CHECK(m.trajectories.col(0).norm() == doctest::Approx(m.factors.s(0)));
}

TEST_CASE("scaling the tensor scales trajectories, scree unchanged") {
  const ChannelTensor t = random_tensor(4, 3, 6, 107);
  ChannelTensor t10 = t;
  for (cplx &v : t10.data())
    v *= 10.0;
  const PcaModel a = pca(t, 2);
  const PcaModel b = pca(t10, 2);
  CHECK((a.scree - b.scree).norm() < 1e-10);
  CHECK((b.trajectories - 10.0 * a.trajectories).norm() <
        1e-9 * a.trajectories.norm());
}

TEST_CASE("pca with all components reconstructs the interleaved matrix") {
  const ChannelTensor t = random_tensor(6, 5, 7, 109);
  const PcaModel m = pca(t, 7);
  const Eigen::MatrixXcd recon =
      m.factors.u * m.factors.s.asDiagonal() * m.factors.v.adjoint();
  const Eigen::MatrixXcd x = interleave(t);
  CHECK((recon - x).norm() <= 1e-10 * x.norm());
}

TEST_CASE("pca rejects out-of-range component counts") {
  const ChannelTensor t = random_tensor(3, 3, 4, 113);
  CHECK_THROWS_AS(pca(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(pca(t, 5), std::invalid_argument);
}

TEST_CASE("parafac recovers a planted rank-1 tensor exactly") {
  SplitMix64 rng(21);
  const FactorMatrix d = random_factor(8, 1, rng);
  const FactorMatrix s = random_factor(6, 1, rng);
  const FactorMatrix g = random_factor(10, 1, rng);
  const ChannelTensor t = cp_reconstruct(d, s, g);
  const CpModel m = parafac(t, 1);
  CHECK(m.fit >= 1.0 - 1e-9);
  CHECK(g_correlation(m.g.col(0), g.col(0)) >= 1.0 - 1e-9);
  check_model_invariants(m);
}

TEST_CASE("parafac fit trace is monotone nondecreasing") {
  SplitMix64 rng(23);
  const ChannelTensor t = cp_reconstruct(random_factor(8, 2, rng),
                                         random_factor(7, 2, rng),
                                         random_factor(9, 2, rng));
  const CpModel m = parafac(t, 2);
  for (std::size_t i = 1; i < m.fit_trace.size(); ++i)
    CHECK(m.fit_trace[i] >= m.fit_trace[i - 1] - 1e-12);
  check_model_invariants(m);
}

TEST_CASE("parafac recovers planted rank-2 and rank-3 factors") {
  for (Eigen::Index L : {2, 3}) {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
      SplitMix64 rng(seed);
      const FactorMatrix d = random_factor(8, L, rng);
      const FactorMatrix s = random_factor(7, L, rng);
      const FactorMatrix g = random_factor(20, L, rng);
      const ChannelTensor t = cp_reconstruct(d, s, g);
      AlsOptions opts;
      opts.seed = seed;
      const CpModel m = parafac(t, L, opts);
      CHECK(m.fit >= 1.0 - 1e-6);
      const Alignment al = align_components(m, g);
      for (double c : al.correlations)
        CHECK(c >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("parafac fit on noisy data approaches the planted-factor bound") {
  SplitMix64 rng(41);
  FactorMatrix d = random_factor(16, 2, rng);
  FactorMatrix s = random_factor(12, 2, rng);
  FactorMatrix g = random_factor(50, 2, rng);
  ChannelTensor t = cp_reconstruct(d, s, g);
  // Noise 40 dB below the signal's rms level.
  const double sig_rms = t.frobenius_norm() / std::sqrt(double(t.size()));
  const double sd = sig_rms * 1e-2 / std::sqrt(2.0);
  for (cplx &v : t.data())
    v += rng.next_cgaussian(sd);

  // Oracle: keep the planted d and s, refit only g by exact least
  // squares, and use that model's fit as the noise-limited reference.
  const Eigen::MatrixXcd z = khatri_rao(s, d); // mode-3 column order
  const Eigen::MatrixXcd g_opt = lstsq(z, unfold(t, 3).transpose()).transpose();
  const double resid =
      (unfold(t, 3) - g_opt * z.transpose()).norm() / t.frobenius_norm();
  const double fit_oracle = 1.0 - resid;

  const CpModel m = parafac(t, 2);
  CHECK(m.fit >= fit_oracle - 1e-3);
  CHECK(m.fit <= 1.0);
}

TEST_CASE("parafac rejects bad rank and non-finite input") {
  ChannelTensor t = random_tensor(4, 4, 4, 127);
  CHECK_THROWS_AS(parafac(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(parafac(t, 5), std::invalid_argument);
  t(0, 0, 0) = cplx(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(parafac(t, 1), std::invalid_argument);
}

TEST_CASE("align_components on an exact copy is the identity") {
  SplitMix64 rng(43);
  CpModel est;
  est.d = random_factor(4, 2, rng);
  est.s = random_factor(4, 2, rng);
  est.g = random_factor(12, 2, rng);
  const Alignment al = align_components(est, est.g);
  CHECK(al.permutation == std::vector<Eigen::Index>{0, 1});
  for (double c : al.correlations)
    CHECK(c == doctest::Approx(1.0));
  for (const cplx &sc : al.scales)
    CHECK(std::abs(sc - cplx(1.0)) < 1e-12);
}

TEST_CASE("align_components undoes column swap and sign flip") {
  SplitMix64 rng(47);
  CpModel est;
  est.d = random_factor(4, 2, rng);
  est.s = random_factor(4, 2, rng);
  est.g = random_factor(12, 2, rng);
  FactorMatrix truth(12, 2);
  truth.col(0) = est.g.col(1);
  truth.col(1) = -est.g.col(0);
  const Alignment al = align_components(est, truth);
  CHECK(al.permutation == std::vector<Eigen::Index>{1, 0});
  CHECK(al.correlations[0] == doctest::Approx(1.0));
  CHECK(al.correlations[1] == doctest::Approx(1.0));
  CHECK(std::abs(al.scales[0] - cplx(-1.0)) < 1e-12);
}

TEST_CASE("greedy alignment matches exhaustive assignment for L=3") {
  // Orthogonal planted trajectories plus noise keep the assignment
  // unambiguous; the greedy match must equal the best of all L!
  // permutations.
  SplitMix64 rng(53);
  Eigen::MatrixXcd q =
      Eigen::HouseholderQR<Eigen::MatrixXcd>(random_factor(20, 20, rng))
          .householderQ();
  const FactorMatrix truth = q.leftCols(3);
  CpModel est;
  est.d = random_factor(4, 3, rng);
  est.s = random_factor(4, 3, rng);
  est.g = FactorMatrix(20, 3);
  est.g.col(0) = truth.col(2) * cplx(0.0, 2.0);
  est.g.col(1) = truth.col(0) * 1.5;
  est.g.col(2) = truth.col(1) * -0.5;
  for (Eigen::Index c = 0; c < 3; ++c)
    for (Eigen::Index r = 0; r < 20; ++r)
      est.g(r, c) += rng.next_cgaussian(0.01);

  const Alignment al = align_components(est, truth);

  std::vector<Eigen::Index> perm{0, 1, 2}, best_perm;
  double best_sum = -1.0;
  do {
    double sum = 0.0;
    for (Eigen::Index e = 0; e < 3; ++e)
      sum += g_correlation(est.g.col(e), truth.col(perm[size_t(e)]));
    if (sum > best_sum) {
      best_sum = sum;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  CHECK(al.permutation == best_perm);
  for (Eigen::Index e = 0; e < 3; ++e)
    CHECK(al.correlations[size_t(e)] ==
          doctest::Approx(
              g_correlation(est.g.col(e), truth.col(best_perm[size_t(e)]))));
}

TEST_CASE("align_components rejects rank mismatch") {
  CpModel est;
  est.g = FactorMatrix::Zero(5, 2);
  CHECK_THROWS_AS(align_components(est, FactorMatrix::Zero(5, 3)),
                  std::invalid_argument);
}

TEST_CASE("free parameter counts") {
  CHECK(free_parameters(192, 144, 1750, 2, ModelKind::pca) == 504384);
  CHECK(free_parameters(192, 144, 1750, 2, ModelKind::parafac) == 4172);
  CHECK(free_parameters(10, 10, 10, 0, ModelKind::pca) == 0);
  CHECK(free_parameters(10, 10, 10, 0, ModelKind::parafac) == 0);
  // Trilinear model is smaller whenever J*K > J + K.
  for (long long j : {3, 10})
    for (long long k : {2, 5, 100})
      CHECK(free_parameters(7, j, k, 3, ModelKind::parafac) <
            free_parameters(7, j, k, 3, ModelKind::pca));
}

TEST_CASE("fit_by_rank is nondecreasing on a rank-2 tensor") {
  SplitMix64 rng(61);
  const ChannelTensor t = cp_reconstruct(random_factor(6, 2, rng),
                                         random_factor(6, 2, rng),
                                         random_factor(8, 2, rng));
  const std::vector<double> fits = fit_by_rank(t, 2);
  REQUIRE(fits.size() == 2);
  CHECK(fits[1] >= fits[0] - 1e-9);
  CHECK(fits[1] >= 1.0 - 1e-6);
}
