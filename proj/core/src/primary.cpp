// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/primary.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace oia {

namespace {

double log_det_hermitian_pd(const ComplexMatrix& a, const char* op) {
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(op) + ": matrix not positive definite");
  double log_det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < a.rows(); ++i) log_det += 2.0 * std::log(l(i, i).real());
  return log_det;
}

}  // namespace

PrimaryTransceiver primary_transceiver(const ComplexMatrix& h11) {
  const SortedSvd svd = sorted_svd(h11);
  PrimaryTransceiver t;
  t.v1 = svd.v;
  t.d1 = svd.u.adjoint();
  t.lambda = svd.singular_values;

  const int m1 = static_cast<int>(h11.cols());
  const int rank = svd.rank();
  t.lambda_sq = RealVector::Zero(m1);
  for (int n = 0; n < rank; ++n) t.lambda_sq(n) = t.lambda(n) * t.lambda(n);
  return t;
}

WaterfillSolution waterfill(const RealVector& eigenvalues, double noise_var, double total_budget) {
  if (eigenvalues.size() == 0) throw std::invalid_argument("waterfill: empty eigenvalue list");
  if (!(noise_var > 0.0)) throw std::invalid_argument("waterfill: noise_var must be > 0");
  if (!(total_budget > 0.0)) throw std::invalid_argument("waterfill: total_budget must be > 0");

  std::vector<int> idx;
  for (int n = 0; n < eigenvalues.size(); ++n)
    if (eigenvalues(n) > 0.0) idx.push_back(n);
  if (idx.empty())
    throw NumericalError("waterfill: all eigenvalues are zero, no usable dimension");
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return eigenvalues(a) > eigenvalues(b); });

  // Candidate active sets are prefixes of the sorted spectrum; for each k the
  // saturating level is beta(k) = (budget + noise * sum_{i<=k} 1/lambda_i)/k.
  // The solution is the largest k whose weakest active dimension stays above
  // water, which makes every power non-negative by construction.
  double inv_sum = 0.0;
  double beta = 0.0;
  int active = 0;
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    inv_sum += 1.0 / eigenvalues(idx[k - 1]);
    const double candidate = (total_budget + noise_var * inv_sum) / static_cast<double>(k);
    if (candidate > noise_var / eigenvalues(idx[k - 1])) {
      beta = candidate;
      active = static_cast<int>(k);
    }
  }

  WaterfillSolution out;
  out.beta = beta;
  out.powers = RealVector::Zero(eigenvalues.size());
  for (int k = 0; k < active; ++k) {
    const int n = idx[k];
    out.powers(n) = beta - noise_var / eigenvalues(n);
  }
  const double zero_tol = 1e-12 * total_budget / static_cast<double>(eigenvalues.size());
  out.m1 = static_cast<int>((out.powers.array() > zero_tol).count());
  return out;
}

int used_dimensions(const WaterfillSolution& solution) { return solution.m1; }

int transmit_opportunities(int n1, int m1) {
  if (m1 < 1 || m1 > n1)
    throw std::invalid_argument("transmit_opportunities: require 1 <= m1 <= n1");
  return n1 - m1;
}

double primary_rate(const PrimaryTransceiver& transceiver, const WaterfillSolution& solution,
                    double noise_var, const ComplexMatrix* interference_cov) {
  const int n1 = static_cast<int>(transceiver.d1.rows());
  const int m1 = static_cast<int>(transceiver.lambda_sq.size());

  if (interference_cov == nullptr) {
    double rate = 0.0;
    for (int n = 0; n < m1; ++n)
      rate += std::log2(1.0 + transceiver.lambda_sq(n) * solution.powers(n) / noise_var);
    return rate;
  }

  const ComplexMatrix& r = *interference_cov;
  if (r.rows() != n1 || r.cols() != n1)
    throw std::invalid_argument("primary_rate: interference covariance has wrong shape");

  // log2|I + R^-1 S| = (logdet(R + S) - logdet(R)) / ln 2 with S the diagonal
  // received-signal covariance lambda^2 * p.
  RealVector signal = RealVector::Zero(n1);
  for (int n = 0; n < std::min(n1, m1); ++n)
    signal(n) = transceiver.lambda_sq(n) * solution.powers(n);
  ComplexMatrix r_plus_s = r;
  r_plus_s.diagonal() += signal.cast<Complex>();

  const double log_det_r = log_det_hermitian_pd(r, "primary_rate");
  const double log_det_rs = log_det_hermitian_pd(r_plus_s, "primary_rate");
  return (log_det_rs - log_det_r) / std::numbers::ln2;
}

}  // namespace oia
