// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_SECONDARY_HPP
#define OIA_SECONDARY_HPP

#include "oia/channel.hpp"
#include "oia/types.hpp"

namespace oia {

/// Interference-plus-noise covariance at the secondary receiver:
/// Q = h21 v_h11 diag(p1) v_h11^H h21^H + sigma2_sq I.  Hermitian positive
/// definite with every eigenvalue >= sigma2_sq.
ComplexMatrix cci_covariance(const ComplexMatrix& h21, const ComplexMatrix& v_h11,
                             const RealVector& p1, double sigma2_sq);

/// Secondary rate in bits/s/Hz through a whitening receiver:
/// log2 det(I + Q^-1/2 h22 v2 diag(p2) v2^H h22^H Q^-1/2).
double secondary_rate(const ComplexMatrix& h22, const ComplexMatrix& v2, const RealVector& p2,
                      const ComplexMatrix& q);

/// Whitened equivalent channel K = Q^-1/2 h22 v2 and its spectrum.
struct EquivalentChannel {
  ComplexMatrix k;       // n2 x l2
  ComplexMatrix u_k;     // n2 x n2 left singular basis (empty when l2 = 0)
  ComplexMatrix v_k;     // l2 x l2 right singular basis
  RealVector lambda_khk; // length l2, squared singular values, zero-padded
};

EquivalentChannel equivalent_channel(const ComplexMatrix& q, const ComplexMatrix& h22,
                                     const ComplexMatrix& v2);

/// Secondary power allocation over the aligned dimensions.  An empty
/// allocation (l2 = 0) is the valid "no transmission" outcome.
struct SecondaryPa {
  RealVector p2;              // length l2, non-negative
  ComplexMatrix v2_effective; // m2 x l2 precoder actually applied
  double beta2 = 0.0;         // water level; 0 when uniform
};

/// Uniform allocation: every aligned dimension carries m2 p2_max / l2, which
/// saturates the transmit power constraint because v2 is an isometry.
SecondaryPa upa(const ComplexMatrix& v2, double p2_max);

/// Water-filling on the whitened equivalent channel; the right singular basis
/// of K folds into the effective precoder.
SecondaryPa opa(const EquivalentChannel& equivalent, const ComplexMatrix& v2, double p2_max);

}  // namespace oia

#endif  // OIA_SECONDARY_HPP
