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

#include "qsc/rng.hpp"

namespace qsc {

namespace {

// splitmix64 finalizer; mixes (seed, index) into a child seed.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::child(std::uint64_t index) const {
  return Rng(mix(mix(seed_) ^ mix(index + 0x2545f4914f6cdd1dULL)));
}

std::mt19937_64& Rng::engine() {
  if (!engine_ready_) {
    engine_.seed(mix(seed_));
    engine_ready_ = true;
  }
  return engine_;
}

CMatrix Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  auto& g = engine();
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(g), n(g));
  return m;
}

CMatrix Rng::isometry(Eigen::Index rows, Eigen::Index cols) {
  if (rows < cols) throw std::invalid_argument("isometry: rows < cols");
  CMatrix g = ginibre(rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (Eigen::Index j = 0; j < cols; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

CMatrix Rng::unitary(Eigen::Index d) { return isometry(d, d); }

CMatrix Rng::density_matrix(Eigen::Index d) {
  CMatrix g = ginibre(d, d);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

CVector Rng::pure_state(Eigen::Index d) {
  CVector v = ginibre(d, 1).col(0);
  return v / v.norm();
}

Eigen::VectorXd Rng::probability_vector(Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto& g = engine();
  Eigen::VectorXd p(n);
  for (Eigen::Index i = 0; i < n; ++i) p(i) = -std::log(1.0 - u(g));
  return p / p.sum();
}

double Rng::uniform() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(engine());
}

std::uint64_t Rng::integer(std::uint64_t bound) {
  std::uniform_int_distribution<std::uint64_t> u(0, bound - 1);
  return u(engine());
}

}  // namespace qsc
