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

#include "qsc/supermap.hpp"

#include <stdexcept>

namespace qsc {

namespace {

double rel_tol(double tol, const CMatrix& m) {
  return tol * std::max(1.0, fro_norm(m));
}

// permutation matrix sending |a1,a0,e> to |a0,a1,e>
CMatrix swap_first_two(Eigen::Index d1, Eigen::Index d0, Eigen::Index de) {
  const Eigen::Index n = d0 * d1 * de;
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index x1 = 0; x1 < d1; ++x1)
    for (Eigen::Index x0 = 0; x0 < d0; ++x0)
      for (Eigen::Index e = 0; e < de; ++e)
        p((x0 * d1 + x1) * de + e, (x1 * d0 + x0) * de + e) = 1.0;
  return p;
}

}  // namespace

CMatrix superchannel_marginal(const Superchannel& s,
                              const std::vector<Eigen::Index>& keep) {
  return partial_trace(s.choi, s.dims.shape(), keep);
}

Superchannel choi_from_realization(const Realization& r, const DimSpec& dims) {
  if (r.pre.d_in != dims.b0 || r.pre.d_out != dims.a0 * r.d_e ||
      r.post.d_in != dims.a1 * r.d_e || r.post.d_out != dims.b1)
    throw std::invalid_argument("realization dimensions are inconsistent");
  // Gamma_Theta: (A1~, B0~) -> (A0, B1), then its Choi matrix reordered.
  Channel step1 = tensor(identity_channel(dims.a1), r.pre);
  Channel perm = unitary_channel(swap_first_two(dims.a1, dims.a0, r.d_e));
  Channel gamma = compose(tensor(identity_channel(dims.a0), r.post),
                          compose(perm, step1));
  SystemShape gshape{dims.a1, dims.b0, dims.a0, dims.b1};
  Superchannel s;
  s.dims = dims;
  s.choi = permute_systems(gamma.choi, gshape, {2, 0, 1, 3});
  return s;
}

SuperchannelReport is_superchannel(const Superchannel& s, double tol) {
  SuperchannelReport rep;
  const double te = rel_tol(tol, s.choi);
  CMatrix h = hermitize(s.choi);
  auto eg = eigh(h);
  rep.psd_residual = std::max(0.0, -eg.eigenvalues.minCoeff());
  rep.psd = fro_norm(s.choi - h) <= te && rep.psd_residual <= te;

  CMatrix m_a1b0 = superchannel_marginal(s, {1, 2});
  rep.marg_a1b0 = fro_norm(m_a1b0 - identity(s.dims.a1 * s.dims.b0));

  CMatrix m_ab0 = superchannel_marginal(s, {0, 1, 2});
  CMatrix m_a0b0 = superchannel_marginal(s, {0, 2});
  CMatrix want = permute_systems(
      kron(m_a0b0, identity(s.dims.a1) / static_cast<double>(s.dims.a1)),
      SystemShape{s.dims.a0, s.dims.b0, s.dims.a1}, {0, 2, 1});
  rep.marg_ab0 = fro_norm(m_ab0 - want);

  rep.ok = rep.psd && rep.marg_a1b0 <= te && rep.marg_ab0 <= te;
  if (!rep.psd)
    rep.violation = "choi matrix is not PSD";
  else if (rep.marg_a1b0 > te)
    rep.violation = "A1B0 marginal differs from the identity";
  else if (rep.marg_ab0 > te)
    rep.violation = "AB0 marginal does not factor as J^{A0B0} (x) u^{A1}";
  return rep;
}

Channel apply(const Superchannel& s, const Channel& psi) {
  if (psi.d_in != s.dims.a0 || psi.d_out != s.dims.a1)
    throw std::invalid_argument("apply: channel legs do not match the supermap");
  CMatrix lifted = kron(psi.choi.transpose(), identity(s.dims.b0 * s.dims.b1));
  Channel out;
  out.d_in = s.dims.b0;
  out.d_out = s.dims.b1;
  out.choi = partial_trace(s.choi * lifted, s.dims.shape(), {2, 3});
  return out;
}

Realization realize(const Superchannel& s, double tol) {
  auto rep = is_superchannel(s, tol);
  if (!rep.ok)
    throw std::invalid_argument("realize: input is not a superchannel (" +
                                rep.violation + ")");
  const Eigen::Index a0 = s.dims.a0, a1 = s.dims.a1, b0 = s.dims.b0,
                     b1 = s.dims.b1;
  CMatrix m = superchannel_marginal(s, {0, 2}) / static_cast<double>(a1);
  auto eg = eigh(m);
  const double cutoff = 1e-9 * std::max(eg.eigenvalues.maxCoeff(), 0.0);
  Eigen::Index d_e = 0;
  while (d_e < eg.eigenvalues.size() && eg.eigenvalues(d_e) > cutoff) ++d_e;
  if (d_e == 0) throw std::runtime_error("realize: zero A0B0 marginal");

  // pre isometry columns are the B0 components of the purification of m
  CMatrix v = CMatrix::Zero(a0 * d_e, b0);
  for (Eigen::Index j = 0; j < d_e; ++j) {
    const double r = std::sqrt(eg.eigenvalues(j));
    for (Eigen::Index a = 0; a < a0; ++a)
      for (Eigen::Index i = 0; i < b0; ++i)
        v(a * d_e + j, i) += r * eg.eigenvectors(a * b0 + i, j);
  }
  KrausSet pre_k{b0, a0 * d_e, {v}};
  Channel pre = choi_from_kraus(pre_k);

  // post Choi entries from partial inner products of J with the purification
  // eigenvectors over the A0B0 legs
  CMatrix jp = permute_systems(s.choi, s.dims.shape(), {0, 2, 1, 3});
  const Eigen::Index dd = a1 * b1;
  const Eigen::Index dpost = a1 * d_e * b1;
  CMatrix jpost = CMatrix::Zero(dpost, dpost);
  for (Eigen::Index j = 0; j < d_e; ++j) {
    const double rj = std::sqrt(eg.eigenvalues(j));
    for (Eigen::Index k = 0; k < d_e; ++k) {
      const double rk = std::sqrt(eg.eigenvalues(k));
      CMatrix g = CMatrix::Zero(dd, dd);
      for (Eigen::Index mrow = 0; mrow < a0 * b0; ++mrow) {
        const cplx cj = std::conj(eg.eigenvectors(mrow, j));
        if (cj == cplx(0, 0)) continue;
        for (Eigen::Index ncol = 0; ncol < a0 * b0; ++ncol) {
          const cplx ck = eg.eigenvectors(ncol, k);
          if (ck == cplx(0, 0)) continue;
          g += (cj * ck) * jp.block(mrow * dd, ncol * dd, dd, dd);
        }
      }
      g /= rj * rk;
      // g indexes (A1,B1) on both sides; scatter into ((A1,E),B1) legs
      for (Eigen::Index a = 0; a < a1; ++a)
        for (Eigen::Index be = 0; be < b1; ++be)
          for (Eigen::Index b = 0; b < a1; ++b)
            for (Eigen::Index bf = 0; bf < b1; ++bf)
              jpost((a * d_e + j) * b1 + be, (b * d_e + k) * b1 + bf) =
                  g(a * b1 + be, b * b1 + bf);
    }
  }
  Channel post;
  post.d_in = a1 * d_e;
  post.d_out = b1;
  post.choi = hermitize(jpost);
  return Realization{pre, post, d_e};
}

Superchannel dual(const Superchannel& s) {
  Superchannel t = transpose_supermap(s);
  t.choi = t.choi.conjugate();
  return t;
}

Superchannel transpose_supermap(const Superchannel& s) {
  Superchannel t;
  t.dims = DimSpec{s.dims.b0, s.dims.b1, s.dims.a0, s.dims.a1};
  t.choi = permute_systems(s.choi, s.dims.shape(), {2, 3, 0, 1});
  return t;
}

Superchannel identity_superchannel(Eigen::Index d0, Eigen::Index d1) {
  Superchannel s;
  s.dims = DimSpec{d0, d1, d0, d1};
  s.choi = permute_systems(kron(phi_plus(d0), phi_plus(d1)),
                           SystemShape{d0, d0, d1, d1}, {0, 2, 1, 3});
  return s;
}

Superchannel tensor_supermap(const Superchannel& s, const Superchannel& t) {
  Superchannel out;
  out.dims = DimSpec{s.dims.a0 * t.dims.a0, s.dims.a1 * t.dims.a1,
                     s.dims.b0 * t.dims.b0, s.dims.b1 * t.dims.b1};
  SystemShape shape{s.dims.a0, s.dims.a1, s.dims.b0, s.dims.b1,
                    t.dims.a0, t.dims.a1, t.dims.b0, t.dims.b1};
  out.choi = permute_systems(kron(s.choi, t.choi), shape,
                             {0, 4, 1, 5, 2, 6, 3, 7});
  return out;
}

Superchannel random_unitary_superchannel(const Eigen::VectorXd& probs,
                                         const std::vector<CMatrix>& pre_unitaries,
                                         const std::vector<CMatrix>& post_unitaries,
                                         const DimSpec& dims) {
  if (dims.a0 != dims.b0 || dims.a1 != dims.b1)
    throw std::invalid_argument("random unitary supermap needs square legs");
  const auto m = static_cast<size_t>(probs.size());
  if (pre_unitaries.size() != m || post_unitaries.size() != m)
    throw std::invalid_argument("mixture component count mismatch");
  if (probs.minCoeff() < -1e-12 || std::abs(probs.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("probs is not a probability vector");
  const Eigen::Index n = dims.total();
  CMatrix j = CMatrix::Zero(n, n);
  for (size_t x = 0; x < m; ++x) {
    CVector alpha =
        kron(identity(dims.a0), pre_unitaries[x].transpose()) * phi_plus_vec(dims.a0);
    CVector beta =
        kron(identity(dims.a1), post_unitaries[x]) * phi_plus_vec(dims.a1);
    CMatrix term = kron(alpha * alpha.adjoint(), beta * beta.adjoint());
    j += probs(x) * term;
  }
  Superchannel s;
  s.dims = dims;
  s.choi = permute_systems(
      j, SystemShape{dims.a0, dims.b0, dims.a1, dims.b1}, {0, 2, 1, 3});
  return s;
}

bool is_doubly_stochastic(const Superchannel& s, double tol) {
  if (s.dims.a0 * s.dims.b1 != s.dims.a1 * s.dims.b0) return false;
  if (!is_superchannel(s, tol).ok) return false;
  const double te = rel_tol(tol, s.choi);
  CMatrix m_a0b1 = superchannel_marginal(s, {0, 3});
  if (fro_norm(m_a0b1 - identity(s.dims.a0 * s.dims.b1)) > te) return false;
  CMatrix m_a0b = superchannel_marginal(s, {0, 2, 3});
  CMatrix want = kron(superchannel_marginal(s, {0, 2}),
                      identity(s.dims.b1) / static_cast<double>(s.dims.b1));
  return fro_norm(m_a0b - want) <= te;
}

bool is_completely_uniformity_preserving(const Superchannel& s, double tol) {
  if (!is_superchannel(s, tol).ok) return false;
  const double te = rel_tol(tol, s.choi);
  CMatrix m_a0b = superchannel_marginal(s, {0, 2, 3});
  CMatrix want = kron(superchannel_marginal(s, {0, 2}),
                      identity(s.dims.b1) / static_cast<double>(s.dims.b1));
  return fro_norm(m_a0b - want) <= te;
}

bool is_completely_unital_preserving(const Superchannel& s, double tol) {
  if (s.dims.a0 != s.dims.a1 || s.dims.b0 != s.dims.b1)
    throw std::invalid_argument(
        "unital-preservation check needs square leg dimensions");
  if (!is_superchannel(s, tol).ok) return false;
  const double te = rel_tol(tol, s.choi);
  CMatrix m_a0b1 = superchannel_marginal(s, {0, 3});
  if (fro_norm(m_a0b1 - identity(s.dims.a0 * s.dims.b1)) > te) return false;
  CMatrix m_ab1 = superchannel_marginal(s, {0, 1, 3});
  CMatrix want = kron(identity(s.dims.a0) / static_cast<double>(s.dims.a0),
                      superchannel_marginal(s, {1, 3}));
  return fro_norm(m_ab1 - want) <= te;
}

Superchannel random_superchannel(const DimSpec& dims, Eigen::Index d_e, Rng& rng) {
  Realization r;
  r.d_e = d_e;
  const Eigen::Index pre_out = dims.a0 * d_e;
  const Eigen::Index post_in = dims.a1 * d_e;
  const Eigen::Index rank_pre =
      std::max<Eigen::Index>(2, (dims.b0 + pre_out - 1) / pre_out);
  const Eigen::Index rank_post =
      std::max<Eigen::Index>(2, (post_in + dims.b1 - 1) / dims.b1);
  r.pre = random_channel(dims.b0, pre_out, rank_pre, rng);
  r.post = random_channel(post_in, dims.b1, rank_post, rng);
  return choi_from_realization(r, dims);
}

Superchannel sample_random_unitary_superchannel(const DimSpec& dims,
                                                Eigen::Index terms, Rng& rng) {
  Eigen::VectorXd p = rng.probability_vector(terms);
  std::vector<CMatrix> pre, post;
  for (Eigen::Index x = 0; x < terms; ++x) {
    pre.push_back(rng.unitary(dims.b0));
    post.push_back(rng.unitary(dims.a1));
  }
  return random_unitary_superchannel(p, pre, post, dims);
}

}  // namespace qsc
