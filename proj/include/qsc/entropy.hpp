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

#include "qsc/sdp.hpp"
#include "qsc/supermap.hpp"

namespace qsc {

/// Min-entropy -log2 of the top eigenvalue.
double h_min(const CMatrix& rho);

struct HminCondResult {
  double value = 0.0;       // bits, from the primal SDP
  double dual_value = 0.0;  // bits, from the dualized program
  CMatrix sigma;            // optimal conditioner marginal
};

/// Conditional min-entropy of the second subsystem given the first:
/// -log2 min { Tr sigma : sigma (x) I >= rho } for rho over (d_a0, d_a1).
HminCondResult h_min_cond(const CMatrix& rho, Eigen::Index d_a0,
                          Eigen::Index d_a1, const SolverOptions& opts = {});

/// Conditional min-entropy of the channel's normalized Choi matrix.
double h_min_ext(const Channel& c, const SolverOptions& opts = {});

/// Bipartite channel A0 B0 -> A1 B1 with Choi legs ordered (A0,A1,B0,B1);
/// the stored Choi matrix is unnormalized (trace d_A0 d_B0).
struct BipartiteChannel {
  DimSpec dims;
  CMatrix choi;
  bool b0_classical = false;  // diagonal in the B0 computational basis
  bool b1_classical = false;  // diagonal in the B1 computational basis

  CMatrix normalized() const {
    return choi / static_cast<double>(dims.a0 * dims.b0);
  }
};

/// Wraps a channel with input (A0,B0) and output (A1,B1) legs, verifying
/// CPTP and detecting classical B legs.
BipartiteChannel make_bipartite(const Channel& omega, const DimSpec& dims,
                                double tol = 1e-8);

/// The same map as a flat channel A0B0 -> A1B1.
Channel to_channel(const BipartiteChannel& w);

/// Tensor with leg grouping ((A0A0'),(A1A1'),(B0B0'),(B1B1')).
BipartiteChannel bipartite_tensor(const BipartiteChannel& w,
                                  const BipartiteChannel& v);

/// Acts a superchannel on the A side, leaving the B side untouched.
BipartiteChannel apply_on_a_side(const Superchannel& theta,
                                 const BipartiteChannel& omega);

struct EcmeResult {
  double value = 0.0;        // bits, from the primal program
  double primal_value = 0.0; // 2^{-value}
  double dual_value = 0.0;   // matching quantity from the dual program
  CMatrix gamma;             // optimal primal variable over (A0,A1,B0)
  Superchannel witness;      // optimal dual variable, a superchannel Choi
};

/// Extended conditional min-entropy of B given A:
///   2^{-H} = min Tr gamma  s.t.  gamma (x) I^{B1} >= omega,
///                                gamma^{A0B0} = u^{A0} (x) gamma^{B0},
/// together with its dual over superchannel Choi matrices.
EcmeResult ecme(const BipartiteChannel& omega, const SolverOptions& opts = {});

/// max over CPTP Lambda of <Lambda, Psi> for a Hermiticity-preserving Psi.
double support_function_channels(const Channel& psi,
                                 const SolverOptions& opts = {});

/// 2^{-ecme} for a channel whose B legs are classical.
double guess_probability_sdp(const BipartiteChannel& omega,
                             const SolverOptions& opts = {});

/// CP maps indexed by input symbol y and outcome x; for each y the sum over
/// x is trace preserving.
struct ClassicalInstrumentFamily {
  Eigen::Index d_a0 = 0, d_a1 = 0, d_b0 = 0, d_b1 = 0;
  std::vector<std::vector<Channel>> maps;  // maps[y][x], Choi form
};

/// The induced classical-B bipartite channel.
BipartiteChannel bipartite_from_instrument(const ClassicalInstrumentFamily& fam);

struct GuessOracleResult {
  double value = 0.0;
  bool exact = false;    // true when computed by exhaustive enumeration
  bool stalled = false;  // seesaw hit its iteration cap before converging
};

/// Guessing probability computed without the ECME machinery: exact
/// enumeration when every map is diagonal, otherwise a seesaw over input
/// states and measurement POVMs (a certified lower bound).
GuessOracleResult guess_probability_oracle(const ClassicalInstrumentFamily& fam,
                                           int restarts = 50,
                                           std::uint64_t seed = 0);

struct AxiomReport {
  bool monotone = false;
  bool additive = false;
  bool normalized = false;
  double monotone_margin = 0.0;       // min increase under sampled supermaps
  double additive_margin = 0.0;       // worst |f(a(x)b) - f(a) - f(b)|
  double normalization_margin = 0.0;  // worst deviation at the anchors
  bool ok() const { return monotone && additive && normalized; }
};

/// Checks the extended min-entropy against the entropy axioms on sampled
/// instances: monotone under doubly stochastic superchannels, additive under
/// tensor products, and normalized on the uniform and replacement channels.
AxiomReport entropy_axiom_suite(int instances, Rng& rng);

}  // namespace qsc
