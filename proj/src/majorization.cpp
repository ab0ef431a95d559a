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

#include "qsc/majorization.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsc {

namespace {

// d^2 rank-one projectors spanning the Hermitian d x d matrices.
std::vector<CMatrix> rank_one_frame(Eigen::Index d) {
  std::vector<CMatrix> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    CVector v = CVector::Zero(d);
    v(i) = 1.0;
    out.push_back(v * v.adjoint());
  }
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      CVector v = CVector::Zero(d);
      v(i) = s;
      v(j) = s;
      out.push_back(v * v.adjoint());
    }
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      CVector v = CVector::Zero(d);
      v(i) = s;
      v(j) = cplx(0.0, 1.0) * s;
      out.push_back(v * v.adjoint());
    }
  return out;
}

CMatrix inv_sqrt_pd(const CMatrix& m) {
  auto e = eigh(m);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
    if (e.eigenvalues(i) <= 0.0)
      throw std::runtime_error("inv_sqrt_pd: matrix is not positive definite");
    out += e.eigenvectors.col(i) * e.eigenvectors.col(i).adjoint() /
           std::sqrt(e.eigenvalues(i));
  }
  return out;
}

void check_cq_pair(const CqFamily& src, const CqFamily& dst) {
  if (src.d_x != dst.d_x || src.d_y != dst.d_y)
    throw std::invalid_argument("majorize: family label counts differ");
  if (static_cast<Eigen::Index>(src.maps.size()) != src.d_x * src.d_y ||
      static_cast<Eigen::Index>(dst.maps.size()) != dst.d_x * dst.d_y)
    throw std::invalid_argument("majorize: family size mismatch");
}

// Feasibility program for a superchannel Choi over (A0,A1,B0,B1) mapping
// every source block to the matching destination block.
ConicProgram direct_program(const CqFamily& src, const CqFamily& dst) {
  const Eigen::Index a0 = src.d_in, a1 = src.d_out;
  const Eigen::Index b0 = dst.d_in, b1 = dst.d_out;
  const Eigen::Index n = a0 * a1 * b0 * b1;

  ConicProgram p;
  auto tb = p.add_block(n, BlockCone::PSD);
  {
    // J^{A1B0} = I
    auto basis = hermitian_basis(a1 * b0);
    auto fr = p.add_matrix_rows(identity(a1 * b0));
    std::vector<CMatrix> lifts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      lifts[j] = permute_systems(kron(basis[j], identity(a0 * b1)),
                                 SystemShape{a1, b0, a0, b1}, {2, 0, 1, 3});
    p.add_matrix_coeff(fr, tb, lifts);
  }
  {
    // J^{AB0} = J^{A0B0} (x) u^{A1}
    auto basis = hermitian_basis(a0 * a1 * b0);
    auto fr =
        p.add_matrix_rows(CMatrix::Zero(a0 * a1 * b0, a0 * a1 * b0));
    std::vector<CMatrix> lifts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
      CMatrix lift1 = kron(basis[j], identity(b1));
      CMatrix tr_a1 = partial_trace(basis[j], SystemShape{a0, a1, b0}, {0, 2});
      CMatrix lift2 =
          permute_systems(kron(tr_a1, identity(a1 * b1)),
                          SystemShape{a0, b0, a1, b1}, {0, 2, 1, 3}) /
          static_cast<double>(a1);
      lifts[j] = lift1 - lift2;
    }
    p.add_matrix_coeff(fr, tb, lifts);
  }
  for (size_t k = 0; k < src.maps.size(); ++k) {
    // Tr_A[J ((J_src)^T (x) I^B)] = J_dst
    auto basis = hermitian_basis(b0 * b1);
    auto fr = p.add_matrix_rows(hermitize(dst.maps[k].choi));
    CMatrix jt = hermitize(src.maps[k].choi).transpose();
    std::vector<CMatrix> lifts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      lifts[j] = hermitize(kron(jt, basis[j]));
    p.add_matrix_coeff(fr, tb, lifts);
  }
  return p;
}

// Mixes raw Hermitian ray blocks into a valid witness family: nonnegative
// blocks whose per-x output marginals sum to the identity.
WitnessFamily repair_witness(std::vector<CMatrix> raw, Eigen::Index d_x,
                             Eigen::Index d_y, Eigen::Index b0,
                             Eigen::Index b1) {
  WitnessFamily fam;
  fam.d_x = d_x;
  fam.d_y = d_y;

  double scale = 0.0;
  for (auto& m : raw) scale = std::max(scale, fro_norm(m));
  if (scale > 0.0)
    for (auto& m : raw) m /= scale;

  const double c = 1.0 / static_cast<double>(d_y * b1);
  std::vector<CMatrix> shifted(raw.size());
  double lmin = 0.0;
  for (Eigen::Index x = 0; x < d_x; ++x) {
    CMatrix t = identity(b0);
    for (Eigen::Index y = 0; y < d_y; ++y)
      t -= partial_trace(raw[x * d_y + y], SystemShape{b0, b1}, {0});
    for (Eigen::Index y = 0; y < d_y; ++y) {
      const Eigen::Index k = x * d_y + y;
      shifted[k] = hermitize(raw[k] + kron(t, identity(b1)) * c);
      auto e = eigh(shifted[k]);
      lmin = std::min(lmin, e.eigenvalues(e.eigenvalues.size() - 1));
    }
  }
  double eps = 1.0;
  if (lmin < 0.0) eps = c / (c - lmin) * (1.0 - 1e-9);
  fam.mix = eps;

  double repair = 0.0;
  std::vector<CMatrix> blocks(raw.size());
  for (size_t k = 0; k < raw.size(); ++k) {
    CMatrix b = (1.0 - eps) * c * identity(b0 * b1) + eps * shifted[k];
    CMatrix proj = psd_projection(hermitize(b));
    repair = std::max(repair, fro_norm(proj - b));
    blocks[k] = proj;
  }
  // trace correction: restore the exact per-x output marginal
  for (Eigen::Index x = 0; x < d_x; ++x) {
    CMatrix s = CMatrix::Zero(b0, b0);
    for (Eigen::Index y = 0; y < d_y; ++y)
      s += partial_trace(blocks[x * d_y + y], SystemShape{b0, b1}, {0});
    CMatrix w = kron(inv_sqrt_pd(hermitize(s)), identity(b1));
    for (Eigen::Index y = 0; y < d_y; ++y) {
      const Eigen::Index k = x * d_y + y;
      repair = std::max(repair, fro_norm(w * blocks[k] * w.adjoint() -
                                         blocks[k]));
      blocks[k] = w * blocks[k] * w.adjoint();
    }
  }
  fam.repair = repair;
  fam.maps.resize(raw.size());
  for (size_t k = 0; k < raw.size(); ++k)
    fam.maps[k] = Channel{b0, b1, blocks[k]};
  return fam;
}

}  // namespace

FrameSpec make_frame(Eigen::Index d0, Eigen::Index d1) {
  FrameSpec f;
  f.d0 = d0;
  f.d1 = d1;
  f.inputs = rank_one_frame(d0);
  auto proj = rank_one_frame(d1);
  CMatrix s = CMatrix::Zero(d1, d1);
  for (const auto& p : proj) s += p;
  CMatrix w = inv_sqrt_pd(s);
  f.povm.reserve(proj.size());
  for (const auto& p : proj) f.povm.push_back(hermitize(w * p * w));
  return f;
}

CqFamily reduce_to_cq(const BipartiteChannel& phi, const FrameSpec& frame) {
  if (frame.d0 != phi.dims.a0 || frame.d1 != phi.dims.a1)
    throw std::invalid_argument("reduce_to_cq: frame does not match the "
                                "reference legs");
  const Eigen::Index r0 = phi.dims.a0, r1 = phi.dims.a1;
  const Eigen::Index b0 = phi.dims.b0, b1 = phi.dims.b1;
  CqFamily fam;
  fam.d_x = r0 * r0;
  fam.d_y = r1 * r1;
  fam.d_in = b0;
  fam.d_out = b1;
  CMatrix jc = to_channel(phi).choi;  // legs (R0, B0, R1, B1)
  SystemShape shape{r0, b0, r1, b1};
  fam.maps.reserve(fam.d_x * fam.d_y);
  for (Eigen::Index x = 0; x < fam.d_x; ++x)
    for (Eigen::Index y = 0; y < fam.d_y; ++y) {
      CMatrix sandwich =
          jc * kron(kron(frame.inputs[x].transpose(), identity(b0)),
                    kron(frame.povm[y], identity(b1)));
      fam.maps.push_back(
          Channel{b0, b1,
                  hermitize(partial_trace(sandwich, shape, {1, 3}))});
    }
  return fam;
}

BipartiteChannel cq_expand(const CqFamily& fam, const FrameSpec& frame) {
  const Eigen::Index r0 = frame.d0, r1 = frame.d1;
  const Eigen::Index b0 = fam.d_in, b1 = fam.d_out;
  if (fam.d_x != r0 * r0 || fam.d_y != r1 * r1)
    throw std::invalid_argument("cq_expand: frame does not match the family");
  const Eigen::Index nf = fam.d_x * fam.d_y;
  std::vector<CMatrix> f(nf);
  for (Eigen::Index x = 0; x < fam.d_x; ++x)
    for (Eigen::Index y = 0; y < fam.d_y; ++y)
      f[x * fam.d_y + y] =
          kron(frame.inputs[x].transpose(), frame.povm[y]);
  Eigen::MatrixXd gram(nf, nf);
  for (Eigen::Index k = 0; k < nf; ++k)
    for (Eigen::Index l = 0; l < nf; ++l)
      gram(k, l) = (f[k] * f[l]).trace().real();
  Eigen::MatrixXd gi = gram.inverse();

  CMatrix jc = CMatrix::Zero(r0 * b0 * r1 * b1, r0 * b0 * r1 * b1);
  for (Eigen::Index l = 0; l < nf; ++l) {
    CMatrix a = CMatrix::Zero(b0 * b1, b0 * b1);
    for (Eigen::Index k = 0; k < nf; ++k)
      a += gi(l, k) * fam.maps[k].choi;
    jc += permute_systems(kron(f[l], a), SystemShape{r0, r1, b0, b1},
                          {0, 2, 1, 3});
  }
  BipartiteChannel out;
  out.dims = DimSpec{r0, r1, b0, b1};
  out.choi = hermitize(permute_systems(jc, SystemShape{r0, b0, r1, b1},
                                       {0, 2, 1, 3}));
  return out;
}

CqFamily cq_from_family(const ChannelFamily& fam) {
  CqFamily cq;
  cq.d_x = 1;
  cq.d_y = std::max<Eigen::Index>(fam.n(), 1);
  cq.d_in = fam.d_in;
  cq.d_out = fam.d_out;
  if (fam.n() == 0) {
    // empty family: a single uniform block keeps the label set nonempty
    cq.maps.push_back(uniform_channel(fam.d_in, fam.d_out));
    return cq;
  }
  const double w = 1.0 / static_cast<double>(fam.n());
  for (const auto& c : fam.channels) {
    if (c.d_in != fam.d_in || c.d_out != fam.d_out)
      throw std::invalid_argument("family: member dimension mismatch");
    cq.maps.push_back(Channel{c.d_in, c.d_out, w * c.choi});
  }
  return cq;
}

double witness_ecme(const CqFamily& side, const WitnessFamily& lambda,
                    const SolverOptions& opts) {
  if (side.d_x != lambda.d_x || side.d_y != lambda.d_y)
    throw std::invalid_argument("witness_ecme: label counts differ");
  const Eigen::Index a0 = side.d_in, a1 = side.d_out;
  const Eigen::Index b0 = lambda.maps[0].d_in, b1 = lambda.maps[0].d_out;
  const Eigen::Index n = a0 * a1 * b0 * b1;
  CMatrix j = CMatrix::Zero(n, n);
  for (size_t k = 0; k < side.maps.size(); ++k)
    j += kron(side.maps[k].choi, lambda.maps[k].choi.transpose());
  j /= static_cast<double>(side.d_x);
  BipartiteChannel bip;
  bip.dims = DimSpec{a0, a1, b0, b1};
  bip.choi = psd_projection(hermitize(j));
  return ecme(bip, opts).value;
}

namespace {

MajorizationCertificate decide_cq(const CqFamily& src, const CqFamily& dst,
                                  double tol, const SolverOptions& opts) {
  check_cq_pair(src, dst);
  const Eigen::Index b0 = dst.d_in, b1 = dst.d_out;
  double scale = 1.0;
  for (const auto& c : dst.maps) scale = std::max(scale, fro_norm(c.choi));
  const double eps = tol * scale;

  ConicProgram p = direct_program(src, dst);
  auto res = solve_feasibility(p, opts);

  MajorizationCertificate cert;
  cert.margin = res.margin;
  cert.linear_consistent = res.linear_consistent;

  if (res.margin <= eps && !res.point.empty()) {
    cert.theta = Superchannel{DimSpec{src.d_in, src.d_out, b0, b1},
                              psd_projection(hermitize(res.point[0]))};
    cert.residual = 0.0;
    for (size_t k = 0; k < src.maps.size(); ++k) {
      Channel mapped = apply(cert.theta, src.maps[k]);
      cert.residual =
          std::max(cert.residual, fro_norm(mapped.choi - dst.maps[k].choi));
    }
    if (cert.residual <= eps) {
      cert.verdict = MajorizationVerdict::Feasible;
      return cert;
    }
  }

  // infeasible or ambiguous: build a witness family from the separating ray
  const Eigen::Index head =
      (src.d_out * b0) * (src.d_out * b0) +
      (src.d_in * src.d_out * b0) * (src.d_in * src.d_out * b0);
  const Eigen::Index bs = (b0 * b1) * (b0 * b1);
  for (double sign : {1.0, -1.0}) {
    std::vector<CMatrix> raw(src.maps.size());
    for (size_t k = 0; k < src.maps.size(); ++k)
      raw[k] = sign * hvec_inverse(res.witness.segment(
                          head + static_cast<Eigen::Index>(k) * bs, bs),
                                   b0 * b1);
    WitnessFamily fam = repair_witness(std::move(raw), src.d_x, src.d_y,
                                       b0, b1);
    double hs = witness_ecme(src, fam, opts);
    double hd = witness_ecme(dst, fam, opts);
    if (hs > hd || sign < 0.0) {
      cert.witness = std::move(fam);
      cert.ecme_src_side = hs;
      cert.ecme_dst_side = hd;
      cert.separated = hs > hd;
      break;
    }
  }
  cert.verdict = (res.margin > eps && cert.separated)
                     ? MajorizationVerdict::Infeasible
                     : MajorizationVerdict::Boundary;
  if (!res.linear_consistent && cert.separated)
    cert.verdict = MajorizationVerdict::Infeasible;
  return cert;
}

}  // namespace

MajorizationCertificate majorize_direct(const ChannelFamily& src,
                                        const ChannelFamily& dst,
                                        double tol, const SolverOptions& opts) {
  if (src.n() != dst.n())
    throw std::invalid_argument("majorize_direct: family lengths differ");
  return decide_cq(cq_from_family(src), cq_from_family(dst), tol, opts);
}

MinimaxResult majorize_minimax_cq(const CqFamily& src, const CqFamily& dst,
                                  const SolverOptions& opts) {
  check_cq_pair(src, dst);
  const Eigen::Index a0 = src.d_in, a1 = src.d_out;
  const Eigen::Index b0 = dst.d_in, b1 = dst.d_out;
  const Eigen::Index n = a0 * a1 * b0 * b1;
  const Eigen::Index ga = a0 * a1 * b0;
  const Eigen::Index npair = src.d_x * src.d_y;
  const double dx = static_cast<double>(src.d_x);

  ConicProgram p;
  auto gb = p.add_block(ga, BlockCone::PSD);
  auto sb = p.add_block(n, BlockCone::PSD);
  std::vector<Eigen::Index> lb(npair);
  for (Eigen::Index k = 0; k < npair; ++k)
    lb[k] = p.add_block(b0 * b1, BlockCone::PSD);

  p.set_objective(gb, identity(ga));
  for (Eigen::Index k = 0; k < npair; ++k)
    p.set_objective(lb[k], -hermitize(dst.maps[k].choi) / (dx * dx));

  {
    // gamma (x) I^{B1} - w * sum (J_src)^T (x) J_Lambda - slack = 0
    const double w = 1.0 / (static_cast<double>(a0) * dx * dx);
    auto basis = hermitian_basis(n);
    auto fr = p.add_matrix_rows(CMatrix::Zero(n, n));
    std::vector<CMatrix> gc(basis.size()), sc(basis.size());
    std::vector<std::vector<CMatrix>> lc(npair,
                                         std::vector<CMatrix>(basis.size()));
    std::vector<CMatrix> lifted(npair);
    for (Eigen::Index k = 0; k < npair; ++k)
      lifted[k] = kron(hermitize(src.maps[k].choi).transpose(),
                       identity(b0 * b1));
    for (size_t j = 0; j < basis.size(); ++j) {
      gc[j] = partial_trace(basis[j], SystemShape{ga, b1}, {0});
      sc[j] = -basis[j];
      for (Eigen::Index k = 0; k < npair; ++k)
        lc[k][j] = -w * hermitize(partial_trace(lifted[k] * basis[j],
                                                SystemShape{a0 * a1, b0 * b1},
                                                {1}));
    }
    p.add_matrix_coeff(fr, gb, gc);
    p.add_matrix_coeff(fr, sb, sc);
    for (Eigen::Index k = 0; k < npair; ++k)
      p.add_matrix_coeff(fr, lb[k], lc[k]);
  }
  {
    // gamma^{A0B0} = u^{A0} (x) gamma^{B0}
    auto basis = hermitian_basis(a0 * b0);
    auto fr = p.add_matrix_rows(CMatrix::Zero(a0 * b0, a0 * b0));
    std::vector<CMatrix> gc(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
      CMatrix lift1 = permute_systems(kron(basis[j], identity(a1)),
                                      SystemShape{a0, b0, a1}, {0, 2, 1});
      CMatrix tr_a0 = partial_trace(basis[j], SystemShape{a0, b0}, {1});
      CMatrix lift2 = kron(identity(a0 * a1), tr_a0) / static_cast<double>(a0);
      gc[j] = lift1 - lift2;
    }
    p.add_matrix_coeff(fr, gb, gc);
  }
  for (Eigen::Index x = 0; x < src.d_x; ++x) {
    // sum_y Tr_{B1} J_Lambda_{y|x} = I^{B0}
    auto basis = hermitian_basis(b0);
    auto fr = p.add_matrix_rows(identity(b0));
    std::vector<CMatrix> lc(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      lc[j] = kron(basis[j], identity(b1));
    for (Eigen::Index y = 0; y < src.d_y; ++y)
      p.add_matrix_coeff(fr, lb[x * src.d_y + y], lc);
  }

  auto sol = solve(p, opts);
  if (sol.status == SolveStatus::NumericalFailure)
    throw std::runtime_error("majorize_minimax: SDP solve failed");

  MinimaxResult r;
  r.f = sol.value;
  r.gamma = sol.x[gb];
  r.lambda.d_x = src.d_x;
  r.lambda.d_y = src.d_y;
  r.lambda.maps.resize(npair);
  for (Eigen::Index k = 0; k < npair; ++k)
    r.lambda.maps[k] = Channel{b0, b1, sol.x[lb[k]]};
  r.src_cq = src;
  r.dst_cq = dst;
  return r;
}

MinimaxResult majorize_minimax(const ChannelFamily& src,
                               const ChannelFamily& dst,
                               const SolverOptions& opts) {
  if (src.n() != dst.n())
    throw std::invalid_argument("majorize_minimax: family lengths differ");
  return majorize_minimax_cq(cq_from_family(src), cq_from_family(dst), opts);
}

WitnessReport extract_witness(const MinimaxResult& r,
                              const SolverOptions& opts) {
  WitnessReport rep;
  std::vector<CMatrix> raw(r.lambda.maps.size());
  for (size_t k = 0; k < raw.size(); ++k)
    raw[k] = hermitize(r.lambda.maps[k].choi);
  rep.lambda = repair_witness(std::move(raw), r.lambda.d_x, r.lambda.d_y,
                              r.dst_cq.d_in, r.dst_cq.d_out);
  rep.ecme_src_side = witness_ecme(r.src_cq, rep.lambda, opts);
  rep.ecme_dst_side = witness_ecme(r.dst_cq, rep.lambda, opts);
  rep.separated = rep.ecme_src_side > rep.ecme_dst_side;
  return rep;
}

MajorizationCertificate majorize_bipartite(const BipartiteChannel& phi,
                                           const BipartiteChannel& psi,
                                           double tol,
                                           const SolverOptions& opts) {
  if (phi.dims.a0 != psi.dims.a0 || phi.dims.a1 != psi.dims.a1)
    throw std::invalid_argument(
        "majorize_bipartite: reference legs must agree");
  FrameSpec frame = make_frame(phi.dims.a0, phi.dims.a1);
  return decide_cq(reduce_to_cq(phi, frame), reduce_to_cq(psi, frame), tol,
                   opts);
}

MajorizationCertificate gibbs_majorize(const ChannelFamily& src,
                                       const ChannelFamily& dst,
                                       const CMatrix& gibbs_in,
                                       const CMatrix& gibbs_out, double tol,
                                       const SolverOptions& opts) {
  if (gibbs_in.rows() != src.d_out || gibbs_out.rows() != dst.d_out)
    throw std::invalid_argument("gibbs_majorize: state dimension mismatch");
  for (const CMatrix& g : {gibbs_in, gibbs_out})
    if (!is_psd(hermitize(g)) || std::abs(g.trace().real() - 1.0) > 1e-8)
      throw std::invalid_argument("gibbs_majorize: not a density matrix");
  ChannelFamily s = src, d = dst;
  s.channels.push_back(replacement_channel(src.d_in, gibbs_in));
  d.channels.push_back(replacement_channel(dst.d_in, gibbs_out));
  return majorize_direct(s, d, tol, opts);
}

}  // namespace qsc
