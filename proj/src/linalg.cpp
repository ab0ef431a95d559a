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

#include "qsc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsc {

namespace {

void check_shape(const CMatrix& m, const SystemShape& shape) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("expected a square matrix");
  if (m.rows() != shape.total())
    throw std::invalid_argument("matrix side does not match system shape");
}

// Digits of flat index under the shape, most significant first.
void to_digits(Eigen::Index flat, const SystemShape& shape,
               std::vector<Eigen::Index>& out) {
  const auto n = shape.size();
  out.resize(n);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    out[k] = flat % shape[k];
    flat /= shape[k];
  }
}

Eigen::Index from_digits(const std::vector<Eigen::Index>& digits,
                         const SystemShape& shape) {
  Eigen::Index flat = 0;
  for (Eigen::Index k = 0; k < shape.size(); ++k) flat = flat * shape[k] + digits[k];
  return flat;
}

}  // namespace

Eigen::Index SystemShape::total() const {
  Eigen::Index p = 1;
  for (auto d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, const SystemShape& shape,
                      const std::vector<Eigen::Index>& keep) {
  check_shape(m, shape);
  std::vector<Eigen::Index> discard;
  for (Eigen::Index k = 0; k < shape.size(); ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) discard.push_back(k);

  SystemShape kshape, dshape;
  for (auto k : keep) kshape.dims.push_back(shape[k]);
  for (auto k : discard) dshape.dims.push_back(shape[k]);
  const Eigen::Index nk = kshape.total(), nd = dshape.total();

  CMatrix out = CMatrix::Zero(nk, nk);
  std::vector<Eigen::Index> kr, kc, dd, full(shape.size());
  for (Eigen::Index r = 0; r < nk; ++r) {
    to_digits(r, kshape, kr);
    for (Eigen::Index c = 0; c < nk; ++c) {
      to_digits(c, kshape, kc);
      cplx acc = 0;
      for (Eigen::Index t = 0; t < nd; ++t) {
        to_digits(t, dshape, dd);
        for (size_t i = 0; i < keep.size(); ++i) full[keep[i]] = kr[i];
        for (size_t i = 0; i < discard.size(); ++i) full[discard[i]] = dd[i];
        const Eigen::Index row = from_digits(full, shape);
        for (size_t i = 0; i < keep.size(); ++i) full[keep[i]] = kc[i];
        const Eigen::Index col = from_digits(full, shape);
        acc += m(row, col);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const SystemShape& shape,
                          const std::vector<Eigen::Index>& sys) {
  check_shape(m, shape);
  const Eigen::Index n = shape.total();
  CMatrix out(n, n);
  std::vector<Eigen::Index> dr, dc;
  for (Eigen::Index r = 0; r < n; ++r) {
    to_digits(r, shape, dr);
    for (Eigen::Index c = 0; c < n; ++c) {
      to_digits(c, shape, dc);
      auto tr = dr, tc = dc;
      for (auto s : sys) std::swap(tr[s], tc[s]);
      out(from_digits(tr, shape), from_digits(tc, shape)) = m(r, c);
    }
  }
  return out;
}

CMatrix permute_systems(const CMatrix& m, const SystemShape& shape,
                        const std::vector<Eigen::Index>& perm) {
  check_shape(m, shape);
  if (static_cast<Eigen::Index>(perm.size()) != shape.size())
    throw std::invalid_argument("permutation length mismatch");
  SystemShape oshape;
  for (auto p : perm) oshape.dims.push_back(shape[p]);
  const Eigen::Index n = shape.total();
  // map[out index] = in index
  std::vector<Eigen::Index> map(n), od, id(shape.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    to_digits(r, oshape, od);
    for (size_t k = 0; k < perm.size(); ++k) id[perm[k]] = od[k];
    map[r] = from_digits(id, shape);
  }
  CMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

EighResult eigh(const CMatrix& m) {
  const double tau = 1e-9 * std::max(1.0, fro_norm(m));
  if (fro_norm(m - m.adjoint()) > tau)
    throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed");
  const Eigen::Index n = m.rows();
  EighResult r;
  r.eigenvalues.resize(n);
  r.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    r.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return r;
}

bool is_psd(const CMatrix& m, double tol) {
  auto r = eigh(m);
  const double floor = -tol * std::max(1.0, fro_norm(m));
  return r.eigenvalues.minCoeff() >= floor;
}

cplx hs_inner(const CMatrix& x, const CMatrix& y) {
  return (x.adjoint() * y).trace();
}

double fro_norm(const CMatrix& m) { return m.norm(); }

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

CVector phi_plus_vec(Eigen::Index d) {
  CVector v = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

CMatrix phi_plus(Eigen::Index d) {
  const CVector v = phi_plus_vec(d);
  return v * v.adjoint();
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix psd_projection(const CMatrix& m) {
  auto r = eigh(m);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (r.eigenvalues(i) <= 0) continue;
    out += r.eigenvalues(i) * r.eigenvectors.col(i) * r.eigenvectors.col(i).adjoint();
  }
  return out;
}

std::vector<CMatrix> hermitian_basis(Eigen::Index d) {
  std::vector<CMatrix> basis;
  basis.reserve(d * d);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    CMatrix e = CMatrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = s;
      e(j, i) = s;
      basis.push_back(e);
      CMatrix f = CMatrix::Zero(d, d);
      f(i, j) = cplx(0, -s);
      f(j, i) = cplx(0, s);
      basis.push_back(f);
    }
  return basis;
}

Eigen::VectorXd hvec(const CMatrix& m) {
  const Eigen::Index d = m.rows();
  Eigen::VectorXd v(d * d);
  Eigen::Index idx = 0;
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) v(idx++) = m(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(idx++) = s * m(i, j).real();
      v(idx++) = -s * m(i, j).imag();
    }
  return v;
}

CMatrix hvec_inverse(const Eigen::VectorXd& v, Eigen::Index d) {
  CMatrix m = CMatrix::Zero(d, d);
  Eigen::Index idx = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = v(idx++);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double re = v(idx++) * s;
      const double im = -v(idx++) * s;
      m(i, j) = cplx(re, im);
      m(j, i) = cplx(re, -im);
    }
  return m;
}

CMatrix psd_sqrt(const CMatrix& m) {
  auto r = eigh(m);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (r.eigenvalues(i) <= 0) continue;
    out += std::sqrt(r.eigenvalues(i)) * r.eigenvectors.col(i) *
           r.eigenvectors.col(i).adjoint();
  }
  return out;
}

double trace_norm_herm(const CMatrix& m) {
  return eigh(m).eigenvalues.cwiseAbs().sum();
}

}  // namespace qsc
