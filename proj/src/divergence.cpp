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

#include "qsc/divergence.hpp"

#include <stdexcept>

namespace qsc {

DivergenceReport diamond_distance(const Channel& f, const Channel& g,
                                  const SolverOptions& opts) {
  if (f.d_in != g.d_in || f.d_out != g.d_out)
    throw std::invalid_argument("diamond_distance: dimension mismatch");
  const Eigen::Index n = f.d_in * f.d_out;
  CMatrix j = hermitize(f.choi - g.choi);

  ConicProgram p;
  auto wb = p.add_block(n, BlockCone::PSD);
  auto sb = p.add_block(n, BlockCone::PSD);
  auto rb = p.add_block(f.d_in, BlockCone::PSD);
  p.set_maximize(true);
  p.set_objective(wb, 2.0 * j);
  // W + S - rho (x) I = 0
  auto basis = hermitian_basis(n);
  auto fr = p.add_matrix_rows(CMatrix::Zero(n, n));
  p.add_matrix_coeff(fr, wb, basis);
  p.add_matrix_coeff(fr, sb, basis);
  std::vector<CMatrix> rc(basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    rc[k] = -partial_trace(basis[k], f.shape(), {0});
  p.add_matrix_coeff(fr, rb, rc);
  auto row = p.add_row(1.0);
  p.add_coeff(row, rb, identity(f.d_in));

  auto sol = solve(p, opts);
  if (sol.status == SolveStatus::NumericalFailure)
    throw std::runtime_error("diamond_distance: SDP solve failed");
  DivergenceReport rep;
  rep.value = std::max(0.0, sol.value);
  rep.input_state = sol.x[rb];
  return rep;
}

double contraction_trace(const Channel& f, const Channel& g,
                         const std::string& divergence,
                         const SolverOptions& opts) {
  if (divergence != "trace")
    throw std::invalid_argument("contraction_trace: unsupported divergence '" +
                                divergence + "'");
  return diamond_distance(f, g, opts).value;
}

double c_lambda(const Channel& psi1, const Channel& psi2, const Channel& lam1,
                const Channel& lam2, const SolverOptions& opts) {
  if (psi1.d_in != psi2.d_in || psi1.d_out != psi2.d_out ||
      lam1.d_in != lam2.d_in || lam1.d_out != lam2.d_out)
    throw std::invalid_argument("c_lambda: dimension mismatch");
  Channel t1 = tensor(psi1, lam1);
  Channel t2 = tensor(psi2, lam2);
  Channel mix{t1.d_in, t1.d_out, 0.5 * (t1.choi + t2.choi)};
  DimSpec dims{psi1.d_in, psi1.d_out, lam1.d_in, lam1.d_out};
  return ecme(make_bipartite(mix, dims), opts).value;
}

}  // namespace qsc
