// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/secondary.hpp"

#include "oia/primary.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>

namespace oia {

ComplexMatrix cci_covariance(const ComplexMatrix& h21, const ComplexMatrix& v_h11,
                             const RealVector& p1, double sigma2_sq) {
  if (h21.cols() != v_h11.rows())
    throw std::invalid_argument("cci_covariance: h21 and v_h11 shapes mismatch");
  if (p1.size() != v_h11.cols())
    throw std::invalid_argument("cci_covariance: p1 length must equal v_h11 columns");
  if (!(sigma2_sq > 0.0)) throw std::invalid_argument("cci_covariance: sigma2_sq must be > 0");

  const ComplexMatrix g = h21 * v_h11;
  ComplexMatrix q = g * p1.asDiagonal() * g.adjoint();
  q.diagonal().array() += sigma2_sq;
  return 0.5 * (q + q.adjoint()).eval();
}

double secondary_rate(const ComplexMatrix& h22, const ComplexMatrix& v2, const RealVector& p2,
                      const ComplexMatrix& q) {
  if (p2.size() != v2.cols())
    throw std::invalid_argument("secondary_rate: p2 length must equal v2 columns");
  if (v2.cols() == 0) return 0.0;

  const ComplexMatrix white = hermitian_inv_sqrt(q);
  const ComplexMatrix k = white * h22 * v2;
  ComplexMatrix a = ComplexMatrix::Identity(k.rows(), k.rows());
  a += k * p2.asDiagonal() * k.adjoint();
  a = 0.5 * (a + a.adjoint()).eval();

  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError("secondary_rate: whitened covariance not positive definite");
  double log_det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < a.rows(); ++i) log_det += 2.0 * std::log(l(i, i).real());
  return log_det / std::numbers::ln2;
}

EquivalentChannel equivalent_channel(const ComplexMatrix& q, const ComplexMatrix& h22,
                                     const ComplexMatrix& v2) {
  EquivalentChannel eq;
  const int l2 = static_cast<int>(v2.cols());
  if (l2 == 0) {
    eq.k = ComplexMatrix(h22.rows(), 0);
    eq.v_k = ComplexMatrix(0, 0);
    eq.lambda_khk = RealVector(0);
    return eq;
  }
  eq.k = hermitian_inv_sqrt(q) * h22 * v2;
  const SortedSvd svd = sorted_svd(eq.k);
  eq.u_k = svd.u;
  eq.v_k = svd.v;
  eq.lambda_khk = RealVector::Zero(l2);
  for (int n = 0; n < svd.singular_values.size(); ++n)
    eq.lambda_khk(n) = svd.singular_values(n) * svd.singular_values(n);
  return eq;
}

SecondaryPa upa(const ComplexMatrix& v2, double p2_max) {
  SecondaryPa pa;
  const int l2 = static_cast<int>(v2.cols());
  pa.v2_effective = v2;
  if (l2 == 0) {
    pa.p2 = RealVector(0);
    return pa;
  }
  const double gamma = static_cast<double>(v2.rows()) * p2_max / l2;
  pa.p2 = RealVector::Constant(l2, gamma);
  return pa;
}

SecondaryPa opa(const EquivalentChannel& equivalent, const ComplexMatrix& v2, double p2_max) {
  SecondaryPa pa;
  const int l2 = static_cast<int>(v2.cols());
  if (l2 == 0) {
    pa.p2 = RealVector(0);
    pa.v2_effective = v2;
    return pa;
  }
  if (equivalent.lambda_khk.size() != l2)
    throw std::invalid_argument("opa: equivalent channel and v2 disagree on l2");

  // Same KKT structure as the primary water-filling with per-dimension noise
  // 1/lambda, so the same exact active-set solver applies with noise_var = 1.
  const double budget = static_cast<double>(v2.rows()) * p2_max;
  const WaterfillSolution wf = waterfill(equivalent.lambda_khk, 1.0, budget);
  pa.p2 = wf.powers;
  pa.beta2 = wf.beta;
  pa.v2_effective = v2 * equivalent.v_k;
  return pa;
}

}  // namespace oia
