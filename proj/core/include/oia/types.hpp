// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_TYPES_HPP
#define OIA_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace oia {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Thrown when a numerical routine cannot deliver its contract
/// (decomposition failure, non-convergence, loss of positive definiteness).
/// The message always starts with the name of the failing operation so the
/// CLI can surface it on the diagnostic stream.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Antenna counts of the two links: receiver/transmitter of the primary
/// (n1/m1) and of the secondary (n2/m2).
struct Dimensions {
  int n1 = 1;  // primary receive antennas
  int m1 = 1;  // primary transmit antennas
  int n2 = 1;  // secondary receive antennas
  int m2 = 1;  // secondary transmit antennas

  Dimensions() = default;
  Dimensions(int n1_, int m1_, int n2_, int m2_) : n1(n1_), m1(m1_), n2(n2_), m2(m2_) {
    if (n1 < 1 || m1 < 1 || n2 < 1 || m2 < 1)
      throw std::invalid_argument("Dimensions: all antenna counts must be >= 1");
  }

  double alpha11() const { return static_cast<double>(m1) / n1; }
  double alpha12() const { return static_cast<double>(m2) / n1; }
  double alpha21() const { return static_cast<double>(m1) / n2; }
  double alpha22() const { return static_cast<double>(m2) / n2; }
};

/// Per-antenna transmit power budgets and receiver noise variances, all in
/// linear watts.  SNR of link i is p_i_max / sigma_i_sq.
struct PowerNoiseConfig {
  double p1_max = 1.0;
  double p2_max = 1.0;
  double sigma1_sq = 1.0;
  double sigma2_sq = 1.0;

  PowerNoiseConfig() = default;
  PowerNoiseConfig(double p1, double p2, double s1, double s2)
      : p1_max(p1), p2_max(p2), sigma1_sq(s1), sigma2_sq(s2) {
    if (!(p1_max > 0.0) || !(p2_max > 0.0) || !(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
      throw std::invalid_argument("PowerNoiseConfig: powers and noise variances must be > 0");
  }

  double snr1() const { return p1_max / sigma1_sq; }
  double snr2() const { return p2_max / sigma2_sq; }

  /// Unit noise variance, power set from the SNRs in dB.
  static PowerNoiseConfig from_snr_db(double snr1_db, double snr2_db) {
    return PowerNoiseConfig(std::pow(10.0, snr1_db / 10.0), std::pow(10.0, snr2_db / 10.0), 1.0,
                            1.0);
  }
};

}  // namespace oia

#endif  // OIA_TYPES_HPP
