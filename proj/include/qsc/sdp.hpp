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

#include <optional>
#include <vector>

#include "qsc/linalg.hpp"

namespace qsc {

enum class BlockCone { PSD, Free };

enum class SolveStatus { Optimal, IterationLimit, NumericalFailure };

struct SolverOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-7;
  int max_iters = 200;  // overridden by QSC_MAX_ITERS when set
  bool verbose = false;
};

/// Conic linear program over Hermitian matrix blocks:
///   optimize  sum_k <C_k, X_k> + offset
///   s.t.      sum_k <A_{i,k}, X_k> = b_i   for each scalar row i,
///             X_k PSD or unconstrained Hermitian per block tag.
/// Matrix-valued equalities and PSD inequalities are entered through the
/// helpers below (inequalities receive an explicit PSD slack block).
class ConicProgram {
 public:
  struct Entry {
    Eigen::Index row;
    Eigen::Index block;
    CMatrix coeff;  // Hermitian, side = block dim
  };

  Eigen::Index add_block(Eigen::Index dim, BlockCone cone);
  void set_objective(Eigen::Index block, const CMatrix& c);
  void set_offset(double v) { offset_ = v; }
  void set_maximize(bool m) { maximize_ = m; }

  /// One scalar equality row; returns its index.
  Eigen::Index add_row(double b);
  void add_coeff(Eigen::Index row, Eigen::Index block, const CMatrix& a);

  /// Matrix equality sum_k L_k(X_k) = R expanded over an orthonormal
  /// Hermitian basis of the target side. `terms` pairs a block with a linear
  /// map given by its action on that basis: coeff(j) must equal the
  /// Hermitian coefficient matrix of row j for that block.
  Eigen::Index add_matrix_rows(const CMatrix& rhs);  // returns first row
  void add_matrix_coeff(Eigen::Index first_row, Eigen::Index block,
                        const std::vector<CMatrix>& per_row_coeffs);

  Eigen::Index num_blocks() const { return static_cast<Eigen::Index>(dims_.size()); }
  Eigen::Index num_rows() const { return static_cast<Eigen::Index>(rhs_.size()); }
  Eigen::Index block_dim(Eigen::Index k) const { return dims_[k]; }
  BlockCone cone(Eigen::Index k) const { return cones_[k]; }
  const CMatrix& objective(Eigen::Index k) const { return obj_[k]; }
  double offset() const { return offset_; }
  bool maximize() const { return maximize_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<double>& rhs() const { return rhs_; }

 private:
  std::vector<Eigen::Index> dims_;
  std::vector<BlockCone> cones_;
  std::vector<CMatrix> obj_;
  std::vector<Entry> entries_;
  std::vector<double> rhs_;
  double offset_ = 0.0;
  bool maximize_ = false;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  double value = 0.0;       // objective in the program's own sense
  double dual_value = 0.0;  // matching bound from the dual iterate
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<CMatrix> x;  // per block
  Eigen::VectorXd y;       // per scalar row
  std::vector<CMatrix> z;  // dual slack per block (zero for free blocks)
};

ConicSolution solve(const ConicProgram& p, const SolverOptions& opts = {});

/// Lagrangian dual as a ConicProgram (opposite optimization sense); under
/// strong duality its optimal value equals the primal's.
ConicProgram dualize(const ConicProgram& p);

struct FeasibilityResult {
  bool feasible = false;
  double margin = 0.0;  // minimal slack t*: feasible iff t* <= tol
  std::vector<CMatrix> point;    // per block, when feasible
  Eigen::VectorXd witness;       // separating row multipliers, when not
  bool linear_consistent = true;
};

/// Phase-1 feasibility for a program's constraint system (objective
/// ignored): minimizes the uniform slack t with X_k + t I in every PSD
/// block. Reports infeasibility with a separating dual vector.
FeasibilityResult solve_feasibility(const ConicProgram& p,
                                    const SolverOptions& opts = {});

}  // namespace qsc
