// Copyright 2026 the qsc authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsc/divergence.hpp"

using namespace qsc;

TEST_CASE("diamond distance vanishes for equal channels") {
  Rng rng(401);
  Channel f = random_channel(2, 2, 2, rng);
  auto rep = diamond_distance(f, f);
  CHECK(rep.value < 1e-7);
}

TEST_CASE("diamond distance of replacement channels is the trace distance") {
  Rng rng(409);
  for (int t = 0; t < 4; ++t) {
    Rng child = rng.child(t);
    CMatrix r1 = child.density_matrix(2);
    CMatrix r2 = child.density_matrix(2);
    auto rep = diamond_distance(replacement_channel(2, r1),
                                replacement_channel(2, r2));
    CHECK(std::abs(rep.value - trace_norm_herm(r1 - r2)) < 1e-6);
    CHECK(std::abs(rep.input_state.trace().real() - 1.0) < 1e-6);
  }
}

TEST_CASE("diamond distance between identity and Z conjugation is 2") {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  auto rep = diamond_distance(identity_channel(2), unitary_channel(z));
  CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("contraction under superchannels never increases") {
  Rng rng(419);
  for (int t = 0; t < 2; ++t) {
    Rng child = rng.child(t);
    Channel f = random_channel(2, 2, 2, child);
    Channel g = random_channel(2, 2, 2, child);
    Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
    double before = contraction_trace(f, g);
    double after =
        contraction_trace(qsc::apply(theta, f), qsc::apply(theta, g));
    CHECK(after <= before + 1e-6);
  }
}

TEST_CASE("unitary superchannels preserve the contraction exactly") {
  Rng rng(421);
  Channel f = random_channel(2, 2, 2, rng);
  Channel g = random_channel(2, 2, 2, rng);
  Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  Superchannel theta = random_unitary_superchannel(
      one, {rng.unitary(2)}, {rng.unitary(2)}, DimSpec{2, 2, 2, 2});
  double before = contraction_trace(f, g);
  double after = contraction_trace(qsc::apply(theta, f), qsc::apply(theta, g));
  CHECK(std::abs(after - before) < 1e-7);
}

TEST_CASE("an identical ancilla channel leaves the contraction unchanged") {
  Rng rng(431);
  Channel f = random_channel(2, 2, 2, rng);
  Channel g = random_channel(2, 2, 2, rng);
  Channel anc = random_channel(2, 2, 2, rng);
  double base = contraction_trace(f, g);
  double lifted = contraction_trace(tensor(f, anc), tensor(g, anc));
  CHECK(std::abs(lifted - base) < 1e-6);
}

TEST_CASE("c_lambda reduces to the extended min-entropy for equal pairs") {
  Rng rng(433);
  Channel psi = random_channel(2, 2, 2, rng);
  Channel lam = random_channel(2, 2, 2, rng);
  double v = c_lambda(psi, psi, lam, lam);
  CHECK(std::abs(v - h_min_ext(lam)) < 1e-5);
}

TEST_CASE("c_lambda anchors for perfectly distinguishable preparations") {
  CVector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  Channel psi1 = preparation_channel(zero * zero.adjoint());
  Channel psi2 = preparation_channel(one * one.adjoint());

  // Classical reference: with orthogonal replacement references the index is
  // guessed with certainty, and the value is -log2 of that guess probability.
  Channel lam1 = replacement_channel(2, zero * zero.adjoint());
  Channel lam2 = replacement_channel(2, one * one.adjoint());
  double v = c_lambda(psi1, psi2, lam1, lam2);
  CHECK(std::abs(v) < 1e-5);

  // Quantum reference: identifying the index pins down a unitary reference
  // channel, whose extended min-entropy is -1.
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  double w = c_lambda(psi1, psi2, identity_channel(2), unitary_channel(x));
  CHECK(std::abs(w + 1.0) < 1e-5);
}

TEST_CASE("c_lambda is symmetric under a simultaneous swap") {
  Rng rng(439);
  Channel psi1 = random_channel(2, 2, 2, rng);
  Channel psi2 = random_channel(2, 2, 2, rng);
  Channel lam1 = random_channel(2, 2, 2, rng);
  Channel lam2 = random_channel(2, 2, 2, rng);
  double a = c_lambda(psi1, psi2, lam1, lam2);
  double b = c_lambda(psi2, psi1, lam2, lam1);
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("c_lambda never decreases under a superchannel on the psi pair") {
  Rng rng(443);
  for (int t = 0; t < 2; ++t) {
    Rng child = rng.child(t);
    Channel psi1 = random_channel(2, 2, 2, child);
    Channel psi2 = random_channel(2, 2, 2, child);
    Channel lam1 = random_channel(2, 2, 2, child);
    Channel lam2 = random_channel(2, 2, 2, child);
    Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
    double before = c_lambda(psi1, psi2, lam1, lam2);
    double after = c_lambda(qsc::apply(theta, psi1), qsc::apply(theta, psi2),
                            lam1, lam2);
    CHECK(after >= before - 1e-6);
  }
}
