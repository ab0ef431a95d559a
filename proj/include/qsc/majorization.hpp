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

#include "qsc/entropy.hpp"

namespace qsc {

/// Finite list of channels sharing the same leg dimensions.
struct ChannelFamily {
  Eigen::Index d_in = 0;
  Eigen::Index d_out = 0;
  std::vector<Channel> channels;

  Eigen::Index n() const { return static_cast<Eigen::Index>(channels.size()); }
};

/// Shared measurement frame for reducing a quantum reference system to
/// classical indices: d0^2 normalized rank-one input states on the reference
/// input and a d1^2-element informationally complete POVM on its output.
struct FrameSpec {
  Eigen::Index d0 = 1;
  Eigen::Index d1 = 1;
  std::vector<CMatrix> inputs;
  std::vector<CMatrix> povm;
};

/// Deterministic frame: rank-one projectors onto {|i>}, {(|i>+|j>)/sqrt(2)},
/// {(|i>+i|j>)/sqrt(2)} as inputs, and the same family symmetrized into a
/// POVM via E_y = S^{-1/2} P_y S^{-1/2} with S = sum_y P_y.
FrameSpec make_frame(Eigen::Index d0, Eigen::Index d1);

/// Classical-quantum family of CP trace non-increasing maps indexed by an
/// input label x and an outcome label y (stored at x * d_y + y); for each x
/// the sum over y is trace preserving.
struct CqFamily {
  Eigen::Index d_x = 1;
  Eigen::Index d_y = 1;
  Eigen::Index d_in = 0;
  Eigen::Index d_out = 0;
  std::vector<Channel> maps;
};

/// Scans a bipartite channel with the frame on its A-side legs (the
/// reference) and returns the induced CP maps on the B-side legs.
CqFamily reduce_to_cq(const BipartiteChannel& phi, const FrameSpec& frame);

/// Inverts reduce_to_cq by linear frame inversion (the frame spans the
/// Hermitian operators on each reference leg).
BipartiteChannel cq_expand(const CqFamily& fam, const FrameSpec& frame);

/// Views a channel family as a classical-quantum family with a single input
/// label and uniformly weighted outcome maps.
CqFamily cq_from_family(const ChannelFamily& fam);

enum class MajorizationVerdict { Feasible, Infeasible, Boundary };

/// Separating family of CP maps on the destination legs, one per (x, y)
/// label pair, normalized so that for each x the sum over y is trace
/// preserving.
struct WitnessFamily {
  Eigen::Index d_x = 1;
  Eigen::Index d_y = 1;
  std::vector<Channel> maps;
  double repair = 0.0;  // magnitude of the PSD / marginal repair applied
  double mix = 1.0;     // retained weight of the raw ray after mixing
};

struct MajorizationCertificate {
  MajorizationVerdict verdict = MajorizationVerdict::Boundary;
  double margin = 0.0;  // phase-1 slack; negative or tiny when feasible

  // feasible case
  Superchannel theta;
  double residual = 0.0;  // max_j ||theta[src_j] - dst_j||_F

  // infeasible case
  WitnessFamily witness;
  double ecme_src_side = 0.0;  // conditional entropy against the sources
  double ecme_dst_side = 0.0;  // conditional entropy against the targets
  bool separated = false;      // ecme_src_side > ecme_dst_side held

  bool linear_consistent = true;
};

/// Decides whether a single superchannel maps every source channel to the
/// matching destination channel, by a feasibility SDP over the superchannel
/// Choi matrix.
MajorizationCertificate majorize_direct(const ChannelFamily& src,
                                        const ChannelFamily& dst,
                                        double tol = 1e-6,
                                        const SolverOptions& opts = {});

struct MinimaxResult {
  double f = 0.0;       // nonnegative exactly when the conversion exists
  CMatrix gamma;        // optimal conditioner over (A0, A1, B0)
  WitnessFamily lambda; // optimizing map family on the destination legs
  CqFamily src_cq;
  CqFamily dst_cq;
};

/// Single SDP deciding the same conversion through the sign of
///   f = min Tr[gamma] - <J_dst, J_Lambda>
/// over gamma and a constrained map family Lambda.
MinimaxResult majorize_minimax(const ChannelFamily& src,
                               const ChannelFamily& dst,
                               const SolverOptions& opts = {});

MinimaxResult majorize_minimax_cq(const CqFamily& src, const CqFamily& dst,
                                  const SolverOptions& opts = {});

struct WitnessReport {
  WitnessFamily lambda;
  double ecme_src_side = 0.0;
  double ecme_dst_side = 0.0;
  bool separated = false;
};

/// Evaluates the conditional-entropy pair that the optimizing family of a
/// negative minimax value separates.
WitnessReport extract_witness(const MinimaxResult& r,
                              const SolverOptions& opts = {});

/// Conditional entropy of the witness family correlated with a
/// classical-quantum family: ecme of (1/d_x) sum_{x,y} side_{y|x} (x)
/// transpose(lambda_{y|x}).
double witness_ecme(const CqFamily& side, const WitnessFamily& lambda,
                    const SolverOptions& opts = {});

/// Decides majorization between bipartite channels sharing the reference
/// legs by reducing both with one frame and delegating to the direct SDP.
MajorizationCertificate majorize_bipartite(const BipartiteChannel& phi,
                                           const BipartiteChannel& psi,
                                           double tol = 1e-6,
                                           const SolverOptions& opts = {});

/// Adds the pair of Gibbs replacement channels to both families and decides
/// conversion by a Gibbs-preserving superchannel.
MajorizationCertificate gibbs_majorize(const ChannelFamily& src,
                                       const ChannelFamily& dst,
                                       const CMatrix& gibbs_in,
                                       const CMatrix& gibbs_out,
                                       double tol = 1e-6,
                                       const SolverOptions& opts = {});

}  // namespace qsc
