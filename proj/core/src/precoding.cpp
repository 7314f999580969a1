// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/precoding.hpp"

#include <algorithm>
#include <cmath>

namespace oia {

EffectiveCrossChannel effective_cross_channel(const ComplexMatrix& u_h11,
                                              const ComplexMatrix& h12, int m1) {
  if (u_h11.rows() != u_h11.cols())
    throw std::invalid_argument("effective_cross_channel: u_h11 must be square");
  if (u_h11.rows() != h12.rows())
    throw std::invalid_argument("effective_cross_channel: u_h11 and h12 row counts differ");
  const int n1 = static_cast<int>(u_h11.rows());
  if (m1 < 1 || m1 > n1)
    throw std::invalid_argument("effective_cross_channel: require 1 <= m1 <= n1");

  EffectiveCrossChannel out;
  out.full = u_h11.adjoint() * h12;
  out.top = out.full.topRows(m1);
  out.bottom = out.full.bottomRows(n1 - m1);
  out.m1 = m1;
  return out;
}

PrecoderSolution oia_precoder(const EffectiveCrossChannel& effective) {
  PrecoderSolution out;
  out.v2 = null_space_basis(effective.top);
  out.l2 = static_cast<int>(out.v2.cols());
  out.kind = PrecoderKind::Oia;
  return out;
}

PrecoderSolution zfbf_precoder(const ComplexMatrix& h12) {
  PrecoderSolution out;
  out.v2 = null_space_basis(h12);
  out.l2 = static_cast<int>(out.v2.cols());
  out.kind = PrecoderKind::Zfbf;
  return out;
}

ComplexMatrix primary_interference_cov(const ComplexMatrix& u_h11, const ComplexMatrix& h12,
                                       const ComplexMatrix& v2, const RealVector& p2,
                                       double sigma1_sq) {
  if (h12.cols() != v2.rows())
    throw std::invalid_argument("primary_interference_cov: h12 and v2 shapes mismatch");
  if (p2.size() != v2.cols())
    throw std::invalid_argument("primary_interference_cov: p2 length must equal v2 columns");
  if (!(sigma1_sq > 0.0))
    throw std::invalid_argument("primary_interference_cov: sigma1_sq must be > 0");

  const int n1 = static_cast<int>(u_h11.rows());
  ComplexMatrix r = sigma1_sq * ComplexMatrix::Identity(n1, n1);
  if (v2.cols() > 0) {
    const ComplexMatrix g = u_h11.adjoint() * h12 * v2;  // n1 x l2
    r += g * p2.asDiagonal() * g.adjoint();
    r = 0.5 * (r + r.adjoint()).eval();
  }
  return r;
}

double verify_ia_condition(const PrimaryTransceiver& transceiver,
                           const WaterfillSolution& solution, const ComplexMatrix& r,
                           double sigma1_sq) {
  const double single_user = primary_rate(transceiver, solution, sigma1_sq);
  const double with_interference = primary_rate(transceiver, solution, sigma1_sq, &r);
  return std::abs(single_user - with_interference) / std::max(single_user, 1e-12);
}

}  // namespace oia
