// Copyright 2026 The qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "qlab/error.hpp"
#include "qlab/models.hpp"

using namespace qlab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qlab::Error");
  return ErrorKind::InvalidArgument;
}

Eigen::VectorXd spectrum(const DynamicalMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.entries()).eigenvalues();
}

}  // namespace

TEST_CASE("chain: single oscillator") {
  const auto m = build_chain(1, 1.0, 4.0, false);
  CHECK(m.n() == 1);
  CHECK(m(0, 0) == 4.0);
}

TEST_CASE("chain: two sites follow the Laplacian sign convention") {
  const auto m = build_chain(2, 1.0, 1.0, false);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(1, 1) == 2.0);
  CHECK(m(0, 1) == -1.0);
  CHECK(m(1, 0) == -1.0);
}

TEST_CASE("chain: periodic n=4 spectrum") {
  const double m2 = 0.7;
  const auto m = build_chain(4, 1.0, m2, true);
  for (int i = 0; i < 4; ++i) {
    CHECK(m(i, i) == doctest::Approx(m2 + 2.0));
    CHECK(m(i, (i + 1) % 4) == -1.0);
    CHECK(m(i, (i + 3) % 4) == -1.0);
    CHECK(m(i, (i + 2) % 4) == 0.0);
  }
  std::vector<double> expected;
  for (int k = 0; k < 4; ++k) expected.push_back(m2 + 4.0 * std::pow(std::sin(std::numbers::pi * k / 4.0), 2));
  std::sort(expected.begin(), expected.end());
  const auto ev = spectrum(m);
  for (int k = 0; k < 4; ++k) CHECK(ev(k) == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("chain: periodic commutes with the cyclic shift") {
  const auto m = build_chain(7, 0.8, 1.3, true);
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(7, 7);
  for (int i = 0; i < 7; ++i) shift((i + 1) % 7, i) = 1.0;
  CHECK((shift * m.entries() - m.entries() * shift).norm() < 1e-14);
}

TEST_CASE("chain: zero coupling is diagonal") {
  const auto m = build_chain(5, 0.0, 2.0, false);
  CHECK((m.entries() - 2.0 * Eigen::MatrixXd::Identity(5, 5)).norm() == 0.0);
}

TEST_CASE("chain: invalid arguments") {
  CHECK(kind_of([] { build_chain(0, 1.0, 1.0, false); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_chain(3, -1.0, 1.0, false); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_discrete_klein_gordon(1, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_discrete_klein_gordon(4, 0.0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_chain(4, 1.0, 0.0, true); }) == ErrorKind::NotPositiveDefinite);
}

TEST_CASE("klein-gordon: Dirichlet finite differences") {
  const auto m2 = build_discrete_klein_gordon(2, 1.0, 1.0);
  CHECK(m2(0, 0) == 3.0);
  CHECK(m2(0, 1) == -1.0);

  const auto m3 = build_discrete_klein_gordon(3, 1.0, 1.0);
  const auto ev = spectrum(m3);
  CHECK(ev(0) == doctest::Approx(3.0 - std::sqrt(2.0)).epsilon(1e-13));
  CHECK(ev(1) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(ev(2) == doctest::Approx(3.0 + std::sqrt(2.0)).epsilon(1e-13));

  const auto m8 = build_discrete_klein_gordon(8, 0.5, 0.5);
  const double expected = 0.25 + 4.0 * std::pow(std::sin(std::numbers::pi / 18.0), 2) / 0.25;
  CHECK(spectrum(m8)(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("custom: acceptance and rejection") {
  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, 4;
  CHECK(build_custom(d).entries() == d);

  Eigen::MatrixXd pair(2, 2);
  pair << 2, 1, 1, 2;
  CHECK(build_custom(pair).entries() == pair);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK(kind_of([&] { build_custom(indefinite); }) == ErrorKind::NotPositiveDefinite);

  Eigen::MatrixXd asym(2, 2);
  asym << 2, 1, 1.1, 2;
  CHECK(kind_of([&] { build_custom(asym); }) == ErrorKind::NotSymmetric);

  CHECK(kind_of([] { build_custom(Eigen::MatrixXd::Identity(2, 3)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("custom: tiny asymmetry is symmetrized") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1 + 1e-13, 2;
  const auto dm = build_custom(m);
  CHECK(dm(0, 1) == dm(1, 0));
}

TEST_CASE("scaled keeps validity") {
  const auto m = build_chain(3, 1.0, 1.0, false).scaled(2.5);
  CHECK(m(0, 0) == doctest::Approx(5.0));
  CHECK(kind_of([&] { m.scaled(0.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("region: normalization and set operations") {
  const Region b(5, {3, 1, 3});
  CHECK(b.members() == std::vector<Eigen::Index>{1, 3});
  CHECK(b.contains(3));
  CHECK_FALSE(b.contains(0));
  CHECK(b.complement().members() == std::vector<Eigen::Index>{0, 2, 4});
  CHECK(b.is_subset_of(Region(5, {0, 1, 3})));
  CHECK_FALSE(Region(5, {0, 1, 3}).is_subset_of(b));
  CHECK(kind_of([] { Region(3, {3}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { require_proper_region(Region(3, {})); }) == ErrorKind::EmptyRegion);
  CHECK(kind_of([] { require_proper_region(Region(2, {0, 1})); }) == ErrorKind::FullRegion);
}

TEST_CASE("property: every built chain and field is positive definite") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const bool periodic = (rng() & 1) != 0;
    const auto chain = build_chain(n, u(rng), u(rng), periodic);
    CHECK(spectrum(chain)(0) > 0.0);
    CHECK((chain.entries() - chain.entries().transpose()).norm() == 0.0);
    const auto kg = build_discrete_klein_gordon(n + 1, u(rng), u(rng));
    CHECK(spectrum(kg)(0) > 0.0);
  }
}
