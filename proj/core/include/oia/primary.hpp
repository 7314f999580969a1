// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_PRIMARY_HPP
#define OIA_PRIMARY_HPP

#include "oia/channel.hpp"
#include "oia/types.hpp"

namespace oia {

/// Capacity-achieving primary transceiver: transmit along the right singular
/// basis of the direct channel, receive through the left one, so the cascade
/// d1 * h11 * v1 is diagonal.
struct PrimaryTransceiver {
  ComplexMatrix v1;     // m1 x m1 precoder (right singular basis)
  ComplexMatrix d1;     // n1 x n1 post-processor (U^H)
  RealVector lambda;    // min(n1, m1) singular values, non-increasing
  RealVector lambda_sq; // length m1; squared singular values, zero-padded;
                        // entries below the rank cutoff clamped to exact zero
};

PrimaryTransceiver primary_transceiver(const ComplexMatrix& h11);

/// Water-filling allocation: powers[n] = (beta - noise_var / eigenvalue[n])+
/// with beta saturating sum(powers) = total_budget.
struct WaterfillSolution {
  double beta = 0.0;   // water level
  RealVector powers;   // same length as the eigenvalue input
  int m1 = 0;          // number of strictly positive powers
};

/// Exact active-set water-filling over non-negative channel eigenvalues.
/// Eigenvalues equal to zero never receive power.  Throws NumericalError when
/// no eigenvalue is positive.
WaterfillSolution waterfill(const RealVector& eigenvalues, double noise_var, double total_budget);

int used_dimensions(const WaterfillSolution& solution);

/// Receive dimensions the primary leaves unused: S = n1 - m1.
int transmit_opportunities(int n1, int m1);

/// Primary rate in bits/s/Hz.  Without an interference covariance this is the
/// single-user water-filling rate; with one it is the rate against colored
/// interference-plus-noise with covariance r (n1 x n1, Hermitian PD).
double primary_rate(const PrimaryTransceiver& transceiver, const WaterfillSolution& solution,
                    double noise_var, const ComplexMatrix* interference_cov = nullptr);

}  // namespace oia

#endif  // OIA_PRIMARY_HPP
