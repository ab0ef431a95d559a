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

#include "qsc/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qsc {

namespace {

double log2_safe(double v) {
  if (v <= 0.0)
    throw std::runtime_error("entropy: nonpositive optimal value " +
                             std::to_string(v));
  return std::log2(v);
}

void require_optimal(const ConicSolution& sol, const char* what) {
  if (sol.status == SolveStatus::NumericalFailure)
    throw std::runtime_error(std::string(what) + ": SDP solve failed");
}

// Off-diagonal mass of the Choi matrix in one leg's computational basis.
double leg_coherence(const CMatrix& choi, const SystemShape& shape,
                     size_t leg) {
  const Eigen::Index n = choi.rows();
  Eigen::Index block = 1;
  for (size_t s = leg + 1; s < shape.size(); ++s) block *= shape[s];
  const Eigen::Index d = shape[leg];
  double mass = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index rl = (r / block) % d;
    for (Eigen::Index c = 0; c < n; ++c) {
      const Eigen::Index cl = (c / block) % d;
      if (rl != cl) mass += std::norm(choi(r, c));
    }
  }
  return std::sqrt(mass);
}

}  // namespace

double h_min(const CMatrix& rho) {
  auto eg = eigh(rho);
  return -log2_safe(eg.eigenvalues.maxCoeff());
}

HminCondResult h_min_cond(const CMatrix& rho, Eigen::Index d_a0,
                          Eigen::Index d_a1, const SolverOptions& opts) {
  const Eigen::Index n = d_a0 * d_a1;
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("h_min_cond: dimension mismatch");
  ConicProgram p;
  auto sigma = p.add_block(d_a0, BlockCone::PSD);
  auto slack = p.add_block(n, BlockCone::PSD);
  p.set_objective(sigma, identity(d_a0));
  auto basis = hermitian_basis(n);
  auto fr = p.add_matrix_rows(-hermitize(rho));
  p.add_matrix_coeff(fr, slack, basis);
  std::vector<CMatrix> sc(basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    sc[j] = -partial_trace(basis[j], SystemShape{d_a0, d_a1}, {0});
  p.add_matrix_coeff(fr, sigma, sc);

  auto sol = solve(p, opts);
  require_optimal(sol, "h_min_cond");
  auto dsol = solve(dualize(p), opts);
  require_optimal(dsol, "h_min_cond dual");
  HminCondResult r;
  r.value = -log2_safe(sol.value);
  r.dual_value = -log2_safe(dsol.value);
  r.sigma = sol.x[sigma];
  return r;
}

double h_min_ext(const Channel& c, const SolverOptions& opts) {
  return h_min_cond(c.choi / static_cast<double>(c.d_in), c.d_in, c.d_out, opts)
      .value;
}

BipartiteChannel make_bipartite(const Channel& omega, const DimSpec& dims,
                                double tol) {
  if (omega.d_in != dims.a0 * dims.b0 || omega.d_out != dims.a1 * dims.b1)
    throw std::invalid_argument("make_bipartite: dimension mismatch");
  auto verdict = is_channel(omega, tol);
  if (!verdict.cp || !verdict.tp)
    throw std::invalid_argument("make_bipartite: map is not CPTP");
  BipartiteChannel w;
  w.dims = dims;
  // channel legs (A0,B0,A1,B1) -> stored order (A0,A1,B0,B1)
  w.choi = permute_systems(
      omega.choi, SystemShape{dims.a0, dims.b0, dims.a1, dims.b1},
      {0, 2, 1, 3});
  const double scale = std::max(1.0, fro_norm(w.choi));
  w.b0_classical = leg_coherence(w.choi, w.dims.shape(), 2) <= 1e-10 * scale;
  w.b1_classical = leg_coherence(w.choi, w.dims.shape(), 3) <= 1e-10 * scale;
  return w;
}

Channel to_channel(const BipartiteChannel& w) {
  Channel c;
  c.d_in = w.dims.a0 * w.dims.b0;
  c.d_out = w.dims.a1 * w.dims.b1;
  c.choi = permute_systems(w.choi, w.dims.shape(), {0, 2, 1, 3});
  return c;
}

BipartiteChannel bipartite_tensor(const BipartiteChannel& w,
                                  const BipartiteChannel& v) {
  BipartiteChannel out;
  out.dims = DimSpec{w.dims.a0 * v.dims.a0, w.dims.a1 * v.dims.a1,
                     w.dims.b0 * v.dims.b0, w.dims.b1 * v.dims.b1};
  SystemShape shape{w.dims.a0, w.dims.a1, w.dims.b0, w.dims.b1,
                    v.dims.a0, v.dims.a1, v.dims.b0, v.dims.b1};
  out.choi = permute_systems(kron(w.choi, v.choi), shape,
                             {0, 4, 1, 5, 2, 6, 3, 7});
  out.b0_classical = w.b0_classical && v.b0_classical;
  out.b1_classical = w.b1_classical && v.b1_classical;
  return out;
}

BipartiteChannel apply_on_a_side(const Superchannel& theta,
                                 const BipartiteChannel& omega) {
  if (theta.dims.a0 != omega.dims.a0 || theta.dims.a1 != omega.dims.a1)
    throw std::invalid_argument("apply_on_a_side: A legs do not match");
  Superchannel lifted = tensor_supermap(
      theta, identity_superchannel(omega.dims.b0, omega.dims.b1));
  Channel moved = qsc::apply(lifted, to_channel(omega));
  DimSpec dims{theta.dims.b0, theta.dims.b1, omega.dims.b0, omega.dims.b1};
  return make_bipartite(moved, dims);
}

EcmeResult ecme(const BipartiteChannel& omega, const SolverOptions& opts) {
  const Eigen::Index a0 = omega.dims.a0, a1 = omega.dims.a1,
                     b0 = omega.dims.b0, b1 = omega.dims.b1;
  const Eigen::Index n = omega.dims.total();
  // Trace preservation is not required: the quantity is well defined for any
  // completely positive bipartite map.
  auto verdict = is_channel(to_channel(omega));
  if (!verdict.cp)
    throw std::invalid_argument("ecme: input map is not completely positive");
  CMatrix w = hermitize(omega.normalized());

  // primal: min Tr gamma, gamma over (A0,A1,B0)
  const Eigen::Index ga = a0 * a1 * b0;
  ConicProgram p;
  auto gb = p.add_block(ga, BlockCone::PSD);
  auto sb = p.add_block(n, BlockCone::PSD);
  p.set_objective(gb, identity(ga));
  {
    auto basis = hermitian_basis(n);
    auto fr = p.add_matrix_rows(-w);
    p.add_matrix_coeff(fr, sb, basis);
    std::vector<CMatrix> gc(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      gc[j] = -partial_trace(basis[j], SystemShape{ga, b1}, {0});
    p.add_matrix_coeff(fr, gb, gc);
  }
  {
    // gamma^{A0B0} - u^{A0} (x) gamma^{B0} = 0
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
  auto psol = solve(p, opts);
  require_optimal(psol, "ecme primal");

  // dual: d_A0 max Tr[alpha w] over superchannel Choi matrices alpha
  ConicProgram d;
  auto ab = d.add_block(n, BlockCone::PSD);
  d.set_maximize(true);
  d.set_objective(ab, static_cast<double>(a0) * w);
  {
    // alpha^{AB0} = alpha^{A0B0} (x) u^{A1}
    auto basis = hermitian_basis(a0 * a1 * b0);
    auto fr = d.add_matrix_rows(CMatrix::Zero(a0 * a1 * b0, a0 * a1 * b0));
    std::vector<CMatrix> ac(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
      CMatrix lift1 = kron(basis[j], identity(b1));
      CMatrix tr_a1 = partial_trace(basis[j], SystemShape{a0, a1, b0}, {0, 2});
      CMatrix lift2 =
          permute_systems(kron(tr_a1, identity(a1 * b1)),
                          SystemShape{a0, b0, a1, b1}, {0, 2, 1, 3}) /
          static_cast<double>(a1);
      ac[j] = lift1 - lift2;
    }
    d.add_matrix_coeff(fr, ab, ac);
  }
  {
    // alpha^{A1B0} = I
    auto basis = hermitian_basis(a1 * b0);
    auto fr = d.add_matrix_rows(identity(a1 * b0));
    std::vector<CMatrix> ac(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      ac[j] = permute_systems(kron(basis[j], identity(a0 * b1)),
                              SystemShape{a1, b0, a0, b1}, {2, 0, 1, 3});
    d.add_matrix_coeff(fr, ab, ac);
  }
  auto dsol = solve(d, opts);
  require_optimal(dsol, "ecme dual");

  EcmeResult r;
  r.primal_value = psol.value;
  r.dual_value = dsol.value;
  r.value = -log2_safe(psol.value);
  r.gamma = psol.x[gb];
  r.witness = Superchannel{omega.dims, dsol.x[ab]};
  return r;
}

double support_function_channels(const Channel& psi,
                                 const SolverOptions& opts) {
  const Eigen::Index n = psi.d_in * psi.d_out;
  ConicProgram p;
  auto lb = p.add_block(n, BlockCone::PSD);
  p.set_maximize(true);
  p.set_objective(lb, hermitize(psi.choi));
  auto basis = hermitian_basis(psi.d_in);
  auto fr = p.add_matrix_rows(identity(psi.d_in));
  std::vector<CMatrix> lc(basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    lc[j] = kron(basis[j], identity(psi.d_out));
  p.add_matrix_coeff(fr, lb, lc);
  auto sol = solve(p, opts);
  require_optimal(sol, "support_function_channels");
  return sol.value;
}

double guess_probability_sdp(const BipartiteChannel& omega,
                             const SolverOptions& opts) {
  if (!omega.b0_classical || !omega.b1_classical)
    throw std::invalid_argument(
        "guess_probability_sdp: B legs must be classical");
  return ecme(omega, opts).primal_value;
}

BipartiteChannel bipartite_from_instrument(
    const ClassicalInstrumentFamily& fam) {
  if (static_cast<Eigen::Index>(fam.maps.size()) != fam.d_b0)
    throw std::invalid_argument("instrument: wrong number of input symbols");
  const Eigen::Index n = fam.d_a0 * fam.d_a1 * fam.d_b0 * fam.d_b1;
  CMatrix j = CMatrix::Zero(n, n);
  for (Eigen::Index y = 0; y < fam.d_b0; ++y) {
    if (static_cast<Eigen::Index>(fam.maps[y].size()) != fam.d_b1)
      throw std::invalid_argument("instrument: wrong number of outcomes");
    CMatrix total = CMatrix::Zero(fam.d_a0, fam.d_a0);
    for (Eigen::Index x = 0; x < fam.d_b1; ++x) {
      const Channel& m = fam.maps[y][x];
      if (m.d_in != fam.d_a0 || m.d_out != fam.d_a1)
        throw std::invalid_argument("instrument: map dimension mismatch");
      if (!is_psd(hermitize(m.choi),
                  1e-8 * std::max(1.0, fro_norm(m.choi))))
        throw std::invalid_argument("instrument: map is not CP");
      total += partial_trace(m.choi, m.shape(), {0});
      CMatrix eyy = CMatrix::Zero(fam.d_b0, fam.d_b0);
      eyy(y, y) = 1.0;
      CMatrix exx = CMatrix::Zero(fam.d_b1, fam.d_b1);
      exx(x, x) = 1.0;
      j += kron(m.choi, kron(eyy, exx));
    }
    if (fro_norm(total - identity(fam.d_a0)) > 1e-8 * std::max(1.0, fro_norm(total)))
      throw std::invalid_argument("instrument: sum over outcomes is not TP");
  }
  BipartiteChannel w;
  w.dims = DimSpec{fam.d_a0, fam.d_a1, fam.d_b0, fam.d_b1};
  w.choi = j;
  w.b0_classical = true;
  w.b1_classical = true;
  return w;
}

namespace {

bool instrument_is_diagonal(const ClassicalInstrumentFamily& fam) {
  for (const auto& row : fam.maps)
    for (const Channel& m : row) {
      CMatrix off = m.choi;
      off.diagonal().setZero();
      if (fro_norm(off) > 1e-10 * std::max(1.0, fro_norm(m.choi)))
        return false;
    }
  return true;
}

double guess_exact_classical(const ClassicalInstrumentFamily& fam) {
  double total = 0.0;
  for (Eigen::Index y = 0; y < fam.d_b0; ++y) {
    double best = 0.0;
    for (Eigen::Index a0 = 0; a0 < fam.d_a0; ++a0) {
      double acc = 0.0;
      for (Eigen::Index a1 = 0; a1 < fam.d_a1; ++a1) {
        double top = 0.0;
        for (Eigen::Index x = 0; x < fam.d_b1; ++x) {
          const Eigen::Index i = a0 * fam.d_a1 + a1;
          top = std::max(top, fam.maps[y][x].choi(i, i).real());
        }
        acc += top;
      }
      best = std::max(best, acc);
    }
    total += best;
  }
  return total / static_cast<double>(fam.d_b0);
}

// optimal discrimination POVM for fixed (subnormalized) output states
double povm_step(const std::vector<CMatrix>& states, std::vector<CMatrix>* povm) {
  const Eigen::Index m = states[0].rows();
  ConicProgram p;
  std::vector<Eigen::Index> blocks;
  for (const CMatrix& s : states) {
    auto b = p.add_block(m, BlockCone::PSD);
    p.set_objective(b, hermitize(s));
    blocks.push_back(b);
  }
  p.set_maximize(true);
  auto basis = hermitian_basis(m);
  auto fr = p.add_matrix_rows(identity(m));
  for (auto b : blocks) p.add_matrix_coeff(fr, b, basis);
  auto sol = solve(p);
  require_optimal(sol, "guess oracle POVM step");
  povm->clear();
  for (auto b : blocks) povm->push_back(sol.x[b]);
  return sol.value;
}

CMatrix apply_adjoint(const Channel& c, const CMatrix& x) {
  CMatrix lifted = kron(identity(c.d_in), x);
  return partial_trace(c.choi * lifted, c.shape(), {0}).transpose();
}

}  // namespace

GuessOracleResult guess_probability_oracle(const ClassicalInstrumentFamily& fam,
                                           int restarts, std::uint64_t seed) {
  bipartite_from_instrument(fam);  // validates the instrument
  GuessOracleResult res;
  if (instrument_is_diagonal(fam)) {
    res.value = guess_exact_classical(fam);
    res.exact = true;
    return res;
  }

  const Eigen::Index a0 = fam.d_a0, a2 = fam.d_a0;
  Rng rng(seed);
  double total = 0.0;
  for (Eigen::Index y = 0; y < fam.d_b0; ++y) {
    std::vector<Channel> lifted;
    for (Eigen::Index x = 0; x < fam.d_b1; ++x)
      lifted.push_back(tensor(fam.maps[y][x], identity_channel(a2)));

    double best = 0.0;
    int stale = 0;
    for (int r = 0; r < restarts; ++r) {
      CVector v;
      if (r == 0)
        v = phi_plus_vec(a0) / std::sqrt(static_cast<double>(a0));
      else
        v = rng.child(1000 * y + r).pure_state(a0 * a2);
      CMatrix eta = v * v.adjoint();

      double prev = -1.0;
      bool converged = false;
      for (int it = 0; it < 100; ++it) {
        std::vector<CMatrix> states;
        for (const Channel& c : lifted) states.push_back(qsc::apply(c, eta));
        std::vector<CMatrix> povm;
        double val = povm_step(states, &povm);
        CMatrix k = CMatrix::Zero(a0 * a2, a0 * a2);
        for (size_t x = 0; x < povm.size(); ++x)
          k += apply_adjoint(lifted[x], povm[x]);
        auto eg = eigh(hermitize(k));
        double val2 = eg.eigenvalues(0);
        CVector top = eg.eigenvectors.col(0);
        eta = top * top.adjoint();
        double cur = std::max(val, val2);
        if (cur - prev < 1e-9) {
          prev = std::max(prev, cur);
          converged = true;
          break;
        }
        prev = cur;
      }
      if (!converged) res.stalled = true;
      if (prev > best + 1e-9) {
        best = prev;
        stale = 0;
      } else {
        best = std::max(best, prev);
        if (++stale >= 6) break;
      }
    }
    total += best;
  }
  res.value = total / static_cast<double>(fam.d_b0);
  return res;
}

AxiomReport entropy_axiom_suite(int instances, Rng& rng) {
  AxiomReport rep;
  double mono = 1e300;
  double add = 0.0;
  for (int t = 0; t < instances; ++t) {
    Rng child = rng.child(t);
    Channel phi = random_channel(2, 2, 2, child);
    Superchannel theta =
        sample_random_unitary_superchannel({2, 2, 2, 2}, 3, child);
    mono = std::min(mono, h_min_ext(qsc::apply(theta, phi)) - h_min_ext(phi));

    Channel psi = random_channel(2, 2, 2, child);
    add = std::max(add, std::abs(h_min_ext(tensor(phi, psi)) -
                                 h_min_ext(phi) - h_min_ext(psi)));
  }
  rep.monotone_margin = mono;
  rep.additive_margin = add;
  rep.monotone = mono >= -1e-6;
  rep.additive = add <= 1e-5;

  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  double n1 = std::abs(h_min_ext(uniform_channel(2, 2)) - 1.0);
  double n2 = std::abs(h_min_ext(replacement_channel(2, pure)));
  rep.normalization_margin = std::max(n1, n2);
  rep.normalized = rep.normalization_margin <= 1e-6;
  return rep;
}

}  // namespace qsc
