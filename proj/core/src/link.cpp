// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/link.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oia {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw NumericalError(std::string("simulate_trial: structural check failed: ") + what);
}

// Slack for comparing rates that coincide in exact arithmetic: log-det noise
// grows with the rate magnitude and the interference conditioning, so a flat
// 1e-12 rejects valid draws at high SNR.  Any genuine dominance violation is
// orders of magnitude above this.
double rate_slack(double rate) { return 1e-9 * (1.0 + std::abs(rate)); }

double whitened_rate(const ComplexMatrix& k, const RealVector& p2) {
  if (k.cols() == 0) return 0.0;
  ComplexMatrix a = ComplexMatrix::Identity(k.rows(), k.rows());
  a += k * p2.asDiagonal() * k.adjoint();
  a = 0.5 * (a + a.adjoint()).eval();
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError("simulate_trial: whitened covariance not positive definite");
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    log_det += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  return log_det / std::numbers::ln2;
}

}  // namespace

TrialResult simulate_trial(const LinkConfig& config, RandomStream& rng) {
  const Dimensions& d = config.dims;
  const PowerNoiseConfig& pw = config.power;
  const ChannelSet ch = draw_channel_set(rng, d);

  TrialResult out;

  // primary link
  const PrimaryTransceiver trx = primary_transceiver(ch.h11);
  const WaterfillSolution wf =
      waterfill(trx.lambda_sq, pw.sigma1_sq, static_cast<double>(d.m1) * pw.p1_max);
  out.beta = wf.beta;
  out.m1 = wf.m1;
  out.s = transmit_opportunities(d.n1, wf.m1);
  const int n_min = std::min(d.n1, d.m1);
  check(out.m1 >= 1 && out.m1 <= n_min, "1 <= m1 <= min(n1, m1)");
  check(out.s >= d.n1 - n_min && out.s <= d.n1 - 1, "opportunity bounds");
  out.rate_primary = primary_rate(trx, wf, pw.sigma1_sq);

  // secondary precoders
  const ComplexMatrix u_h11 = trx.d1.adjoint();
  const EffectiveCrossChannel eff = effective_cross_channel(u_h11, ch.h12, wf.m1);
  const PrecoderSolution oia = oia_precoder(eff);
  const PrecoderSolution zfbf = zfbf_precoder(ch.h12);
  out.l2_oia = oia.l2;
  out.l2_zfbf = zfbf.l2;
  check(oia.l2 >= std::max(0, d.m2 - wf.m1), "null-space dimension lower bound");
  check(zfbf.l2 <= oia.l2, "zero-forcing kernel not larger than aligned kernel");
  if (zfbf.l2 > 0) {
    const double leak =
        (zfbf.v2 - oia.v2 * (oia.v2.adjoint() * zfbf.v2)).norm() / zfbf.v2.norm();
    check(leak <= 1e-8, "zero-forcing kernel nested in aligned kernel");
  }

  // secondary link rates through the common whitening receiver
  const ComplexMatrix q = cci_covariance(ch.h21, trx.v1, wf.powers, pw.sigma2_sq);
  const ComplexMatrix white = hermitian_inv_sqrt(q);
  const ComplexMatrix wh22 = white * ch.h22;

  auto rate_of = [&](const SecondaryPa& pa) {
    return whitened_rate(wh22 * pa.v2_effective, pa.p2);
  };

  auto run_scheme = [&](const PrecoderSolution& pre, double& rate_upa, double& rate_opa) {
    const SecondaryPa uniform = upa(pre.v2, pw.p2_max);
    rate_upa = rate_of(uniform);
    EquivalentChannel eq;
    eq.k = wh22 * pre.v2;
    if (pre.l2 > 0) {
      const SortedSvd svd = sorted_svd(eq.k);
      eq.u_k = svd.u;
      eq.v_k = svd.v;
      eq.lambda_khk = RealVector::Zero(pre.l2);
      for (int n = 0; n < svd.singular_values.size(); ++n)
        eq.lambda_khk(n) = svd.singular_values(n) * svd.singular_values(n);
    }
    const SecondaryPa optimal = opa(eq, pre.v2, pw.p2_max);
    rate_opa = rate_of(optimal);
    check(rate_opa >= rate_upa - rate_slack(rate_upa), "optimal allocation dominates uniform");
    return optimal;
  };

  const SecondaryPa oia_opa_pa = run_scheme(oia, out.rate_oia_upa, out.rate_oia_opa);
  run_scheme(zfbf, out.rate_zfbf_upa, out.rate_zfbf_opa);
  check(out.rate_oia_opa >= out.rate_zfbf_opa - rate_slack(out.rate_zfbf_opa),
        "aligned scheme dominates zero-forcing");
  check(out.rate_oia_upa >= -1e-12 && out.rate_zfbf_upa >= -1e-12, "rates non-negative");

  // primary-side interference with both allocations
  const SecondaryPa oia_upa_pa = upa(oia.v2, pw.p2_max);
  const ComplexMatrix r_upa =
      primary_interference_cov(u_h11, ch.h12, oia_upa_pa.v2_effective, oia_upa_pa.p2, pw.sigma1_sq);
  out.ia_residual_upa = verify_ia_condition(trx, wf, r_upa, pw.sigma1_sq);
  const ComplexMatrix r_opa =
      primary_interference_cov(u_h11, ch.h12, oia_opa_pa.v2_effective, oia_opa_pa.p2, pw.sigma1_sq);
  out.ia_residual_opa = verify_ia_condition(trx, wf, r_opa, pw.sigma1_sq);

  return out;
}

}  // namespace oia
