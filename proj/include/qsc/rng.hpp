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

#pragma once

#include <cstdint>
#include <random>

#include "qsc/linalg.hpp"

namespace qsc {

/// Splittable seeded randomness. One user-visible seed fans out into
/// independent child streams indexed by a counter, so generated corpora are
/// reproducible regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  /// Child stream number `index`; deterministic in (seed, index).
  Rng child(std::uint64_t index) const;

  /// Standard complex Gaussian (Ginibre) matrix.
  CMatrix ginibre(Eigen::Index rows, Eigen::Index cols);

  /// Haar-random unitary via QR of a Ginibre matrix.
  CMatrix unitary(Eigen::Index d);

  /// Random isometry (rows >= cols) with V^dag V = I.
  CMatrix isometry(Eigen::Index rows, Eigen::Index cols);

  /// Random density matrix of full rank.
  CMatrix density_matrix(Eigen::Index d);

  /// Haar-random pure state vector.
  CVector pure_state(Eigen::Index d);

  /// Random probability vector of length n.
  Eigen::VectorXd probability_vector(Eigen::Index n);

  double uniform();
  std::uint64_t integer(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  bool engine_ready_ = false;
  std::mt19937_64 engine_;

  std::mt19937_64& engine();
};

}  // namespace qsc
