#include "oia/channel.hpp"

#include <doctest.h>

#include <cmath>

using namespace oia;

TEST_SUITE("channel") {

TEST_CASE("draw_channel is deterministic per (seed, stream)") {
  RandomStream a(123, 5), b(123, 5);
  const ComplexMatrix ha = draw_channel(a, 2, 2);
  const ComplexMatrix hb = draw_channel(b, 2, 2);
  CHECK(ha == hb);  // bit-identical

  RandomStream c(123, 6);
  CHECK(draw_channel(c, 2, 2) != ha);
}

TEST_CASE("ensemble trace matches the receive antenna count") {
  // E[Trace(H H^H)] = rows for variance-1/cols entries
  RandomStream rng(11, 0);
  const int draws = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const ComplexMatrix h = draw_channel(rng, 4, 8);
    const double tr = h.squaredNorm();
    sum += tr;
    sum_sq += tr * tr;
  }
  const double mean = sum / draws;
  const double stderr_ =
      std::sqrt((sum_sq / draws - mean * mean) / (draws - 1));
  CHECK(std::abs(mean - 4.0) <= 3.0 * stderr_);
}

TEST_CASE("scalar entry variance is one") {
  RandomStream rng(12, 0);
  const int draws = 10000;
  double sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) sum_sq += std::norm(draw_channel(rng, 1, 1)(0, 0));
  CHECK(sum_sq / draws == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sorted_svd basics") {
  const SortedSvd id = sorted_svd(ComplexMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id.singular_values(i) == doctest::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const SortedSvd sd = sorted_svd(d);
  CHECK(sd.singular_values(0) == doctest::Approx(3.0));
  CHECK(sd.singular_values(1) == doctest::Approx(1.0));
}

TEST_CASE("sorted_svd reconstruction and unitarity") {
  RandomStream rng(13, 0);
  const ComplexMatrix a = draw_channel(rng, 3, 2);
  const SortedSvd svd = sorted_svd(a);

  ComplexMatrix lambda = ComplexMatrix::Zero(3, 2);
  for (int i = 0; i < 2; ++i) lambda(i, i) = svd.singular_values(i);
  CHECK((a - svd.u * lambda * svd.v.adjoint()).norm() <= 1e-12 * a.norm());
  CHECK((svd.u.adjoint() * svd.u - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((svd.v.adjoint() * svd.v - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(svd.singular_values(0) >= svd.singular_values(1));
}

TEST_CASE("null_space_basis") {
  SUBCASE("zero matrix has a full kernel") {
    const ComplexMatrix basis = null_space_basis(ComplexMatrix::Zero(2, 3));
    CHECK(basis.cols() == 3);
    CHECK((basis.adjoint() * basis - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("identity has an empty kernel") {
    const ComplexMatrix basis = null_space_basis(ComplexMatrix::Identity(2, 2));
    CHECK(basis.cols() == 0);
    CHECK(basis.rows() == 2);
  }
  SUBCASE("row vector") {
    ComplexMatrix a(1, 3);
    a << 1.0, 1.0, 0.0;
    const ComplexMatrix basis = null_space_basis(a);
    REQUIRE(basis.cols() == 2);
    CHECK((a * basis).norm() <= 1e-12 * a.norm() * std::sqrt(3.0));
    CHECK((basis.adjoint() * basis - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  }
  SUBCASE("random annihilation property") {
    RandomStream rng(14, 0);
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix a = draw_channel(rng, 2, 5);
      const ComplexMatrix basis = null_space_basis(a);
      CHECK(basis.cols() == 3);
      CHECK((a * basis).norm() <= default_rank_tol(2, 5) * a.norm() * std::sqrt(5.0));
      CHECK((basis.adjoint() * basis - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    }
  }
}

TEST_CASE("hermitian_inv_sqrt") {
  SUBCASE("scaled identity") {
    const ComplexMatrix s = hermitian_inv_sqrt(4.0 * ComplexMatrix::Identity(2, 2));
    CHECK((s - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-13);
  }
  SUBCASE("diagonal") {
    ComplexMatrix q = ComplexMatrix::Zero(2, 2);
    q(0, 0) = 1.0;
    q(1, 1) = 9.0;
    const ComplexMatrix s = hermitian_inv_sqrt(q);
    CHECK(std::abs(s(0, 0) - Complex(1.0, 0.0)) < 1e-13);
    CHECK(std::abs(s(1, 1) - Complex(1.0 / 3.0, 0.0)) < 1e-13);
  }
  SUBCASE("defining property on random SPD") {
    RandomStream rng(15, 0);
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix b = draw_channel(rng, 4, 4);
      const ComplexMatrix q = b * b.adjoint() + ComplexMatrix::Identity(4, 4);
      const ComplexMatrix s = hermitian_inv_sqrt(q);
      CHECK((s * q * s - ComplexMatrix::Identity(4, 4)).norm() <= 1e-10);
      CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * s.cwiseAbs().maxCoeff());
    }
  }
  SUBCASE("indefinite input is rejected") {
    ComplexMatrix q = ComplexMatrix::Zero(2, 2);
    q(0, 0) = 1.0;
    q(1, 1) = -1.0;
    CHECK_THROWS_AS(hermitian_inv_sqrt(q), NumericalError);
    CHECK_THROWS_AS(hermitian_inv_sqrt(ComplexMatrix::Zero(2, 2)), NumericalError);
  }
}

TEST_CASE("channel set dimensions") {
  RandomStream rng(16, 0);
  const Dimensions d(3, 4, 5, 6);
  const ChannelSet set = draw_channel_set(rng, d);
  CHECK(set.h11.rows() == 3);
  CHECK(set.h11.cols() == 4);
  CHECK(set.h12.rows() == 3);
  CHECK(set.h12.cols() == 6);
  CHECK(set.h21.rows() == 5);
  CHECK(set.h21.cols() == 4);
  CHECK(set.h22.rows() == 5);
  CHECK(set.h22.cols() == 6);
}

}  // TEST_SUITE
