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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qsc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Ordered list of subsystem dimensions. Subsystem 0 is the most
/// significant index (row-major multi-index convention, matching the
/// Kronecker product order).
struct SystemShape {
  std::vector<Eigen::Index> dims;

  SystemShape() = default;
  SystemShape(std::initializer_list<Eigen::Index> d) : dims(d) {}
  explicit SystemShape(std::vector<Eigen::Index> d) : dims(std::move(d)) {}

  Eigen::Index total() const;
  Eigen::Index size() const { return static_cast<Eigen::Index>(dims.size()); }
  Eigen::Index operator[](Eigen::Index i) const { return dims[i]; }
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Trace over every subsystem not listed in `keep`. `keep` must be strictly
/// increasing; the kept systems retain their relative order.
CMatrix partial_trace(const CMatrix& m, const SystemShape& shape,
                      const std::vector<Eigen::Index>& keep);

/// Transpose the listed subsystems in place (index relabeling; involutive).
CMatrix partial_transpose(const CMatrix& m, const SystemShape& shape,
                          const std::vector<Eigen::Index>& sys);

/// Reorder subsystems: output position i holds input subsystem perm[i].
CMatrix permute_systems(const CMatrix& m, const SystemShape& shape,
                        const std::vector<Eigen::Index>& perm);

struct EighResult {
  Eigen::VectorXd eigenvalues;  // descending
  CMatrix eigenvectors;         // columns match eigenvalues
};

/// Hermitian eigendecomposition. Throws std::invalid_argument if the input
/// deviates from Hermitian by more than 1e-9 * max(1, ||m||_F).
EighResult eigh(const CMatrix& m);

bool is_psd(const CMatrix& m, double tol = 1e-9);

/// Hilbert-Schmidt inner product Tr[x^dag y].
cplx hs_inner(const CMatrix& x, const CMatrix& y);

double fro_norm(const CMatrix& m);

CMatrix identity(Eigen::Index d);

/// Unnormalized maximally entangled vector sum_i |i>|i> on d x d.
CVector phi_plus_vec(Eigen::Index d);

/// Unnormalized maximally entangled projector (trace d).
CMatrix phi_plus(Eigen::Index d);

/// Hermitian part (m + m^dag)/2.
CMatrix hermitize(const CMatrix& m);

/// PSD part: clip negative eigenvalues at zero.
CMatrix psd_projection(const CMatrix& m);

/// Orthonormal Hermitian basis of the d x d matrices, d^2 elements.
std::vector<CMatrix> hermitian_basis(Eigen::Index d);

/// Real coordinates of a Hermitian matrix in the hermitian_basis order.
Eigen::VectorXd hvec(const CMatrix& m);
CMatrix hvec_inverse(const Eigen::VectorXd& v, Eigen::Index d);

/// Principal square root of a PSD matrix (negative eigenvalues clipped).
CMatrix psd_sqrt(const CMatrix& m);

/// Trace norm ||m||_1 of a Hermitian matrix.
double trace_norm_herm(const CMatrix& m);

}  // namespace qsc
