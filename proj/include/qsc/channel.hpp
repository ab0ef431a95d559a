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

#include <vector>

#include "qsc/linalg.hpp"
#include "qsc/rng.hpp"

namespace qsc {

/// Linear map d_in -> d_out stored as its unnormalized Choi matrix with leg
/// order (input, output); a CPTP map has a PSD Choi matrix of trace d_in
/// whose input marginal is the identity.
struct Channel {
  Eigen::Index d_in = 0;
  Eigen::Index d_out = 0;
  CMatrix choi;

  SystemShape shape() const { return SystemShape{d_in, d_out}; }
};

struct KrausSet {
  Eigen::Index d_in = 0;
  Eigen::Index d_out = 0;
  std::vector<CMatrix> operators;  // each d_out x d_in
};

struct ChannelVerdict {
  bool cp = false;
  bool tp = false;
  double cp_residual = 0.0;  // most negative eigenvalue, clipped at 0
  double tp_residual = 0.0;  // ||Tr_out[J] - I||_F
};

Channel choi_from_kraus(const KrausSet& k);

ChannelVerdict is_channel(const Channel& c, double tol = 1e-8);

/// Evaluate the map on a state: Tr_in[J (rho^T o I_out)].
CMatrix apply(const Channel& c, const CMatrix& rho);

/// compose(f, g) acts as rho -> f(g(rho)).
Channel compose(const Channel& f, const Channel& g);

Channel tensor(const Channel& f, const Channel& g);

/// Hilbert-Schmidt inner product of the Choi matrices.
cplx map_inner(const Channel& f, const Channel& g);

Channel identity_channel(Eigen::Index d);

/// Outputs the maximally mixed state on every input.
Channel uniform_channel(Eigen::Index d_in, Eigen::Index d_out);

/// Outputs sigma on every input.
Channel replacement_channel(Eigen::Index d_in, const CMatrix& sigma);

Channel unitary_channel(const CMatrix& u);

/// Channel preparing a fixed state from a trivial input (d_in = 1).
Channel preparation_channel(const CMatrix& sigma);

/// Stinespring sampling: a Haar isometry d_in -> d_out * kraus_rank split
/// into Kraus blocks. Deterministic in the rng state.
Channel random_channel(Eigen::Index d_in, Eigen::Index d_out,
                       Eigen::Index kraus_rank, Rng& rng);

KrausSet random_kraus(Eigen::Index d_in, Eigen::Index d_out,
                      Eigen::Index kraus_rank, Rng& rng);

/// Kraus decomposition of a CP map from the Choi eigendecomposition.
KrausSet kraus_from_choi(const Channel& c, double tol = 1e-10);

}  // namespace qsc
