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

#include "qsc/channel.hpp"

#include <stdexcept>

namespace qsc {

Channel choi_from_kraus(const KrausSet& k) {
  if (k.operators.empty()) throw std::invalid_argument("empty Kraus set");
  for (const auto& op : k.operators)
    if (op.rows() != k.d_out || op.cols() != k.d_in)
      throw std::invalid_argument("Kraus operator shape mismatch");
  Channel c;
  c.d_in = k.d_in;
  c.d_out = k.d_out;
  c.choi = CMatrix::Zero(k.d_in * k.d_out, k.d_in * k.d_out);
  // J = sum_K (I o K) phi+ (I o K)^dag; vec form: column of (I o K) phi+ is
  // sum_i |i> o K|i>.
  for (const auto& op : k.operators) {
    CVector v(k.d_in * k.d_out);
    for (Eigen::Index i = 0; i < k.d_in; ++i)
      v.segment(i * k.d_out, k.d_out) = op.col(i);
    c.choi += v * v.adjoint();
  }
  return c;
}

ChannelVerdict is_channel(const Channel& c, double tol) {
  ChannelVerdict v;
  const double tol_eff = tol * std::max(1.0, fro_norm(c.choi));
  CMatrix h = hermitize(c.choi);
  auto r = eigh(h);
  const double lam_min = r.eigenvalues.minCoeff();
  v.cp_residual = std::max(0.0, -lam_min);
  v.cp = fro_norm(c.choi - h) <= tol_eff && lam_min >= -tol_eff;
  CMatrix marg = partial_trace(c.choi, c.shape(), {0});
  v.tp_residual = fro_norm(marg - identity(c.d_in));
  v.tp = v.tp_residual <= tol_eff;
  return v;
}

CMatrix apply(const Channel& c, const CMatrix& rho) {
  if (rho.rows() != c.d_in || rho.cols() != c.d_in)
    throw std::invalid_argument("apply: state dimension mismatch");
  CMatrix lifted = kron(rho.transpose(), identity(c.d_out));
  return partial_trace(c.choi * lifted, c.shape(), {1});
}

Channel compose(const Channel& f, const Channel& g) {
  if (g.d_out != f.d_in) throw std::invalid_argument("compose: dim mismatch");
  Channel c;
  c.d_in = g.d_in;
  c.d_out = f.d_out;
  // Link product contracted over the middle legs:
  // J[(i,o),(i',o')] = sum_{m,m'} J_g[(i,m),(i',m')] J_f[(m,o),(m',o')].
  const Eigen::Index di = g.d_in, dm = f.d_in, do_ = f.d_out;
  c.choi = CMatrix::Zero(di * do_, di * do_);
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index ip = 0; ip < di; ++ip)
      for (Eigen::Index m = 0; m < dm; ++m)
        for (Eigen::Index mp = 0; mp < dm; ++mp) {
          const cplx gv = g.choi(i * dm + m, ip * dm + mp);
          if (gv == cplx(0, 0)) continue;
          c.choi.block(i * do_, ip * do_, do_, do_) +=
              gv * f.choi.block(m * do_, mp * do_, do_, do_);
        }
  return c;
}

Channel tensor(const Channel& f, const Channel& g) {
  Channel c;
  c.d_in = f.d_in * g.d_in;
  c.d_out = f.d_out * g.d_out;
  // kron gives leg order (in_f, out_f, in_g, out_g); regroup to
  // (in_f, in_g, out_f, out_g).
  SystemShape shape{f.d_in, f.d_out, g.d_in, g.d_out};
  c.choi = permute_systems(kron(f.choi, g.choi), shape, {0, 2, 1, 3});
  return c;
}

cplx map_inner(const Channel& f, const Channel& g) {
  return hs_inner(f.choi, g.choi);
}

Channel identity_channel(Eigen::Index d) {
  Channel c;
  c.d_in = d;
  c.d_out = d;
  c.choi = phi_plus(d);
  return c;
}

Channel uniform_channel(Eigen::Index d_in, Eigen::Index d_out) {
  Channel c;
  c.d_in = d_in;
  c.d_out = d_out;
  c.choi = kron(identity(d_in), identity(d_out) / static_cast<double>(d_out));
  return c;
}

Channel replacement_channel(Eigen::Index d_in, const CMatrix& sigma) {
  Channel c;
  c.d_in = d_in;
  c.d_out = sigma.rows();
  c.choi = kron(identity(d_in), sigma);
  return c;
}

Channel unitary_channel(const CMatrix& u) {
  KrausSet k;
  k.d_in = u.cols();
  k.d_out = u.rows();
  k.operators = {u};
  return choi_from_kraus(k);
}

Channel preparation_channel(const CMatrix& sigma) {
  return replacement_channel(1, sigma);
}

KrausSet random_kraus(Eigen::Index d_in, Eigen::Index d_out,
                      Eigen::Index kraus_rank, Rng& rng) {
  if (kraus_rank * d_out < d_in)
    throw std::invalid_argument("random_kraus: no isometry exists");
  CMatrix v = rng.isometry(d_out * kraus_rank, d_in);
  KrausSet k;
  k.d_in = d_in;
  k.d_out = d_out;
  for (Eigen::Index r = 0; r < kraus_rank; ++r)
    k.operators.push_back(v.middleRows(r * d_out, d_out));
  return k;
}

Channel random_channel(Eigen::Index d_in, Eigen::Index d_out,
                       Eigen::Index kraus_rank, Rng& rng) {
  return choi_from_kraus(random_kraus(d_in, d_out, kraus_rank, rng));
}

KrausSet kraus_from_choi(const Channel& c, double tol) {
  auto r = eigh(c.choi);
  const double cutoff = tol * std::max(1.0, r.eigenvalues.cwiseAbs().maxCoeff());
  KrausSet k;
  k.d_in = c.d_in;
  k.d_out = c.d_out;
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (r.eigenvalues(i) <= cutoff) continue;
    CVector v = std::sqrt(r.eigenvalues(i)) * r.eigenvectors.col(i);
    CMatrix op(c.d_out, c.d_in);
    for (Eigen::Index col = 0; col < c.d_in; ++col)
      op.col(col) = v.segment(col * c.d_out, c.d_out);
    k.operators.push_back(op);
  }
  if (k.operators.empty())
    k.operators.push_back(CMatrix::Zero(c.d_out, c.d_in));
  return k;
}

}  // namespace qsc
