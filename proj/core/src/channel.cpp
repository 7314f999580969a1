// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#include "oia/channel.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace oia {

ComplexMatrix draw_channel(RandomStream& rng, int n_rows, int n_cols) {
  if (n_rows < 1 || n_cols < 1)
    throw std::invalid_argument("draw_channel: dimensions must be >= 1");
  const double variance = 1.0 / n_cols;
  ComplexMatrix h(n_rows, n_cols);
  // column-major fill so the draw order is part of the format
  for (int j = 0; j < n_cols; ++j)
    for (int i = 0; i < n_rows; ++i) h(i, j) = rng.next_complex_gaussian(variance);
  return h;
}

ChannelSet draw_channel_set(RandomStream& rng, const Dimensions& d) {
  ChannelSet set;
  set.h11 = draw_channel(rng, d.n1, d.m1);
  set.h12 = draw_channel(rng, d.n1, d.m2);
  set.h21 = draw_channel(rng, d.n2, d.m1);
  set.h22 = draw_channel(rng, d.n2, d.m2);
  return set;
}

double default_rank_tol(int rows, int cols) {
  return std::max(rows, cols) * std::numeric_limits<double>::epsilon() * 64.0;
}

int SortedSvd::rank(double rank_tol) const {
  if (singular_values.size() == 0) return 0;
  if (rank_tol < 0.0) rank_tol = default_rank_tol(static_cast<int>(u.rows()), static_cast<int>(v.rows()));
  const double cutoff = rank_tol * singular_values(0);
  int r = 0;
  while (r < singular_values.size() && singular_values(r) > cutoff) ++r;
  return r;
}

SortedSvd sorted_svd(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("sorted_svd: empty matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("sorted_svd: decomposition failed to converge");
  SortedSvd out;
  out.u = svd.matrixU();
  out.singular_values = svd.singularValues();  // Eigen sorts non-increasing
  out.v = svd.matrixV();
  if (!out.singular_values.allFinite())
    throw NumericalError("sorted_svd: non-finite singular values");
  return out;
}

ComplexMatrix null_space_basis(const ComplexMatrix& a, double rank_tol) {
  const SortedSvd svd = sorted_svd(a);
  if (rank_tol < 0.0) rank_tol = default_rank_tol(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  const int r = svd.rank(rank_tol);
  return svd.v.rightCols(svd.v.cols() - r);
}

RealVector gram_channel_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("gram_channel_eigenvalues: empty matrix");
  const bool wide = a.cols() >= a.rows();
  const ComplexMatrix gram = wide ? ComplexMatrix(a * a.adjoint()) : ComplexMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw NumericalError("gram_channel_eigenvalues: eigendecomposition failed");

  RealVector out = RealVector::Zero(a.cols());
  const RealVector ascending = eig.eigenvalues();
  const int count = static_cast<int>(ascending.size());
  const double max_ev = std::max(ascending(count - 1), 0.0);
  const double rank_tol = default_rank_tol(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  const double cutoff = rank_tol * rank_tol * max_ev;
  for (int i = 0; i < count; ++i) {
    const double ev = ascending(count - 1 - i);
    out(i) = ev > cutoff ? ev : 0.0;
  }
  return out;
}

ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& q) {
  if (q.rows() != q.cols()) throw std::invalid_argument("hermitian_inv_sqrt: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(q);
  if (eig.info() != Eigen::Success)
    throw NumericalError("hermitian_inv_sqrt: eigendecomposition failed");
  const RealVector& ev = eig.eigenvalues();
  const double floor = ev(ev.size() - 1) * default_rank_tol(static_cast<int>(q.rows()),
                                                            static_cast<int>(q.cols()));
  if (ev(0) <= std::max(floor, 0.0)) {
    std::ostringstream msg;
    msg << "hermitian_inv_sqrt: matrix not positive definite (min eigenvalue " << ev(0) << ")";
    throw NumericalError(msg.str());
  }
  const RealVector inv_sqrt = ev.array().rsqrt();
  ComplexMatrix s = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
  // symmetrize away rounding in the triple product
  s = 0.5 * (s + s.adjoint()).eval();
  return s;
}

}  // namespace oia
