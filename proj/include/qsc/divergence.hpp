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

#include "qsc/entropy.hpp"

namespace qsc {

struct DivergenceReport {
  double value = 0.0;
  CMatrix input_state;  // achieving reference-extended input marginal
};

/// Diamond-norm distance ||f - g||_diamond via the standard SDP
///   2 max { Tr[J W] : 0 <= W <= rho (x) I, rho a state },
/// where J is the Choi matrix of f - g.
DivergenceReport diamond_distance(const Channel& f, const Channel& g,
                                  const SolverOptions& opts = {});

/// Induced contraction of a divergence over reference-extended inputs; only
/// the trace distance is implemented, for which it equals the diamond
/// distance.
double contraction_trace(const Channel& f, const Channel& g,
                         const std::string& divergence = "trace",
                         const SolverOptions& opts = {});

/// Extended conditional min-entropy of the reference side of the mixture
/// (psi1 (x) lam1 + psi2 (x) lam2) / 2.
double c_lambda(const Channel& psi1, const Channel& psi2, const Channel& lam1,
                const Channel& lam2, const SolverOptions& opts = {});

}  // namespace qsc
