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

#include <string>

#include "qsc/channel.hpp"

namespace qsc {

/// Leg dimensions of a supermap: channels A0 -> A1 go in, channels
/// B0 -> B1 come out.
struct DimSpec {
  Eigen::Index a0 = 0, a1 = 0, b0 = 0, b1 = 0;
  SystemShape shape() const { return SystemShape{a0, a1, b0, b1}; }
  Eigen::Index total() const { return a0 * a1 * b0 * b1; }
};

/// Supermap stored as its Choi matrix over A0 A1 B0 B1 (subsystem 0 most
/// significant). A superchannel has a PSD Choi matrix whose A1B0 marginal is
/// the identity and whose AB0 marginal factorizes as J^{A0B0} (x) u^{A1}.
struct Superchannel {
  DimSpec dims;
  CMatrix choi;
};

/// pre: B0 -> A0 E, post: A1 E -> B1; the supermap acts as
/// post o (Psi (x) id_E) o pre.
struct Realization {
  Channel pre;
  Channel post;
  Eigen::Index d_e = 0;
};

struct SuperchannelReport {
  bool ok = false;
  bool psd = false;
  double psd_residual = 0.0;    // most negative eigenvalue, clipped at 0
  double marg_a1b0 = 0.0;       // ||J^{A1B0} - I||_F
  double marg_ab0 = 0.0;        // ||J^{AB0} - J^{A0B0} (x) u^{A1}||_F
  std::string violation;        // empty when ok
};

/// Marginal of a superchannel Choi matrix; `keep` indexes (A0,A1,B0,B1).
CMatrix superchannel_marginal(const Superchannel& s,
                              const std::vector<Eigen::Index>& keep);

Superchannel choi_from_realization(const Realization& r, const DimSpec& dims);

SuperchannelReport is_superchannel(const Superchannel& s, double tol = 1e-8);

/// Theta[Psi] evaluated through the Choi calculus.
Channel apply(const Superchannel& s, const Channel& psi);

/// Extracts a pre/post realization with d_E = rank of the A0B0 marginal.
Realization realize(const Superchannel& s, double tol = 1e-8);

/// Adjoint supermap with respect to the map inner product (acts B -> A).
Superchannel dual(const Superchannel& s);

/// Transposition of the supermap: legs A and B swapped, no conjugation.
Superchannel transpose_supermap(const Superchannel& s);

Superchannel identity_superchannel(Eigen::Index d0, Eigen::Index d1);

Superchannel tensor_supermap(const Superchannel& s, const Superchannel& t);

/// Convex mixture of unitary pre/post conjugations (Choi form built
/// directly from the maximally entangled vectors of the unitaries).
Superchannel random_unitary_superchannel(const Eigen::VectorXd& probs,
                                         const std::vector<CMatrix>& pre_unitaries,
                                         const std::vector<CMatrix>& post_unitaries,
                                         const DimSpec& dims);

/// Both the supermap and its dual are superchannels.
bool is_doubly_stochastic(const Superchannel& s, double tol = 1e-8);

/// Maps marginally uniform bipartite channels to marginally uniform ones.
bool is_completely_uniformity_preserving(const Superchannel& s,
                                         double tol = 1e-8);

/// Maps unital channels to unital channels, also on one leg of a bipartite
/// channel. Requires square leg dimensions.
bool is_completely_unital_preserving(const Superchannel& s, double tol = 1e-8);

/// Seeded random superchannel built from a random realization.
Superchannel random_superchannel(const DimSpec& dims, Eigen::Index d_e, Rng& rng);

/// Seeded random-unitary superchannel with `terms` mixture components.
Superchannel sample_random_unitary_superchannel(const DimSpec& dims,
                                                Eigen::Index terms, Rng& rng);

}  // namespace qsc
