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

#include "qsc/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace qsc {

Eigen::Index ConicProgram::add_block(Eigen::Index dim, BlockCone cone) {
  if (dim < 1) throw std::invalid_argument("block dimension must be >= 1");
  dims_.push_back(dim);
  cones_.push_back(cone);
  obj_.push_back(CMatrix::Zero(dim, dim));
  return static_cast<Eigen::Index>(dims_.size()) - 1;
}

void ConicProgram::set_objective(Eigen::Index block, const CMatrix& c) {
  if (c.rows() != dims_[block] || c.cols() != dims_[block])
    throw std::invalid_argument("objective dimension mismatch");
  obj_[block] = hermitize(c);
}

Eigen::Index ConicProgram::add_row(double b) {
  rhs_.push_back(b);
  return static_cast<Eigen::Index>(rhs_.size()) - 1;
}

void ConicProgram::add_coeff(Eigen::Index row, Eigen::Index block,
                             const CMatrix& a) {
  if (a.rows() != dims_[block] || a.cols() != dims_[block])
    throw std::invalid_argument("coefficient dimension mismatch");
  entries_.push_back({row, block, hermitize(a)});
}

Eigen::Index ConicProgram::add_matrix_rows(const CMatrix& rhs) {
  const Eigen::Index d = rhs.rows();
  auto basis = hermitian_basis(d);
  Eigen::Index first = num_rows();
  for (Eigen::Index j = 0; j < d * d; ++j)
    add_row(hs_inner(basis[j], hermitize(rhs)).real());
  return first;
}

void ConicProgram::add_matrix_coeff(Eigen::Index first_row, Eigen::Index block,
                                    const std::vector<CMatrix>& per_row_coeffs) {
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(per_row_coeffs.size());
       ++j) {
    const CMatrix& a = per_row_coeffs[j];
    if (fro_norm(a) == 0.0) continue;
    add_coeff(first_row + j, block, a);
  }
}

namespace {

// Sparse entry of a Hermitian coefficient matrix.
struct Trip {
  Eigen::Index r, c;
  cplx v;
};

std::vector<Trip> to_triplets(const CMatrix& a) {
  std::vector<Trip> out;
  const double mx = a.cwiseAbs().maxCoeff();
  const double thr = 1e-14 * mx;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      if (std::abs(a(r, c)) > thr) out.push_back({r, c, a(r, c)});
  return out;
}

// Re <A, X> for triplet-form Hermitian A.
double trip_inner(const std::vector<Trip>& nz, const CMatrix& x) {
  double acc = 0.0;
  for (const auto& t : nz) acc += (std::conj(t.v) * x(t.r, t.c)).real();
  return acc;
}

void trip_axpy(double s, const std::vector<Trip>& nz, CMatrix& out) {
  for (const auto& t : nz) out(t.r, t.c) += s * t.v;
}

struct RowCoeff {
  Eigen::Index row;
  std::vector<Trip> nz;
};

struct Compiled {
  // PSD part
  std::vector<Eigen::Index> psd_blocks;  // original block index per PSD slot
  std::vector<Eigen::Index> psd_dims;
  std::vector<CMatrix> c;  // objective per PSD slot
  // rows touching each PSD slot, coefficients in triplet form
  std::vector<std::vector<RowCoeff>> rows_on;

  // free part flattened to real coordinates via hvec
  std::vector<Eigen::Index> free_blocks;
  std::vector<Eigen::Index> free_dims;
  std::vector<Eigen::Index> free_offsets;
  Eigen::Index nf = 0;
  Eigen::MatrixXd f;       // m x nf
  Eigen::VectorXd cf;      // nf

  Eigen::VectorXd b;       // m
  Eigen::Index m = 0;
  double sign = 1.0;       // -1 when the program maximizes
  double offset = 0.0;
  std::vector<Eigen::Index> orig_row;  // reduced row -> original row
  Eigen::Index m_orig = 0;
  bool consistent = true;
};

Compiled compile(const ConicProgram& p) {
  Compiled cp;
  cp.sign = p.maximize() ? -1.0 : 1.0;
  cp.offset = p.offset();
  cp.m = p.num_rows();
  cp.b = Eigen::Map<const Eigen::VectorXd>(p.rhs().data(), cp.m);

  std::vector<Eigen::Index> psd_slot(p.num_blocks(), -1);
  for (Eigen::Index k = 0; k < p.num_blocks(); ++k) {
    if (p.cone(k) == BlockCone::PSD) {
      psd_slot[k] = static_cast<Eigen::Index>(cp.psd_blocks.size());
      cp.psd_blocks.push_back(k);
      cp.psd_dims.push_back(p.block_dim(k));
      cp.c.push_back(cp.sign * p.objective(k));
    } else {
      cp.free_offsets.push_back(cp.nf);
      cp.free_blocks.push_back(k);
      cp.free_dims.push_back(p.block_dim(k));
      cp.nf += p.block_dim(k) * p.block_dim(k);
    }
  }
  cp.rows_on.resize(cp.psd_blocks.size());
  cp.f = Eigen::MatrixXd::Zero(cp.m, cp.nf);
  cp.cf = Eigen::VectorXd::Zero(cp.nf);

  std::vector<Eigen::Index> free_slot(p.num_blocks(), -1);
  for (size_t s = 0; s < cp.free_blocks.size(); ++s)
    free_slot[cp.free_blocks[s]] = static_cast<Eigen::Index>(s);

  for (size_t s = 0; s < cp.free_blocks.size(); ++s) {
    const Eigen::Index k = cp.free_blocks[s];
    const Eigen::Index d = cp.free_dims[s];
    cp.cf.segment(cp.free_offsets[s], d * d) = cp.sign * hvec(p.objective(k));
  }

  for (const auto& e : p.entries()) {
    if (psd_slot[e.block] >= 0) {
      cp.rows_on[psd_slot[e.block]].push_back({e.row, to_triplets(e.coeff)});
    } else {
      const Eigen::Index s = free_slot[e.block];
      const Eigen::Index d = cp.free_dims[s];
      cp.f.row(e.row).segment(cp.free_offsets[s], d * d) += hvec(e.coeff);
    }
  }

  // Matrix-constraint expansions routinely contain linearly dependent rows
  // (tracing one marginal condition can reproduce another); keep a maximal
  // independent subset so the Schur complement stays nonsingular. Rows that
  // own a coordinate no other remaining row touches are independent and are
  // peeled off first, so the dense rank computation only ever sees the small
  // residual set.
  cp.m_orig = cp.m;
  Eigen::Index npsd_coords = 0;
  std::vector<Eigen::Index> pcol0(cp.psd_dims.size());
  for (size_t k = 0; k < cp.psd_dims.size(); ++k) {
    pcol0[k] = npsd_coords;
    npsd_coords += cp.psd_dims[k] * cp.psd_dims[k];
  }
  const Eigen::Index ncoords = 2 * (npsd_coords + cp.nf);

  // real sparse coordinates per row (upper triangle, re/im split)
  std::vector<std::vector<std::pair<Eigen::Index, double>>> srows(cp.m);
  for (size_t k = 0; k < cp.psd_dims.size(); ++k) {
    const Eigen::Index d = cp.psd_dims[k];
    for (const auto& rc : cp.rows_on[k]) {
      auto& sr = srows[rc.row];
      for (const auto& t : rc.nz) {
        if (t.r > t.c) continue;
        const Eigen::Index base = 2 * (pcol0[k] + t.r * d + t.c);
        if (t.v.real() != 0.0) sr.push_back({base, t.v.real()});
        if (t.r != t.c && t.v.imag() != 0.0) sr.push_back({base + 1, t.v.imag()});
      }
    }
  }
  for (Eigen::Index i = 0; i < cp.m; ++i)
    for (Eigen::Index j = 0; j < cp.nf; ++j)
      if (cp.f(i, j) != 0.0)
        srows[i].push_back({2 * (npsd_coords + j), cp.f(i, j)});
  for (auto& sr : srows) {
    std::sort(sr.begin(), sr.end());
    std::vector<std::pair<Eigen::Index, double>> merged;
    for (const auto& e : sr) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    double mx = 0.0;
    for (const auto& e : merged) mx = std::max(mx, std::abs(e.second));
    sr.clear();
    for (const auto& e : merged)
      if (std::abs(e.second) > 1e-12 * mx) sr.push_back(e);
  }

  std::vector<int> col_count(ncoords, 0);
  std::vector<std::vector<Eigen::Index>> col_rows(ncoords);
  for (Eigen::Index i = 0; i < cp.m; ++i)
    for (const auto& e : srows[i]) {
      ++col_count[e.first];
      col_rows[e.first].push_back(i);
    }
  std::vector<char> peeled(cp.m, 0);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index c = 0; c < ncoords; ++c)
    if (col_count[c] == 1) stack.push_back(c);
  while (!stack.empty()) {
    const Eigen::Index c = stack.back();
    stack.pop_back();
    if (col_count[c] != 1) continue;
    Eigen::Index owner = -1;
    for (Eigen::Index i : col_rows[c])
      if (!peeled[i]) owner = i;
    if (owner < 0) continue;
    peeled[owner] = 1;
    for (const auto& e : srows[owner]) {
      if (--col_count[e.first] == 1) stack.push_back(e.first);
    }
  }

  std::vector<Eigen::Index> residual;
  for (Eigen::Index i = 0; i < cp.m; ++i)
    if (!peeled[i]) residual.push_back(i);

  std::vector<char> kept(cp.m, 0);
  for (Eigen::Index i = 0; i < cp.m; ++i) kept[i] = peeled[i];
  if (!residual.empty()) {
    // dense rank analysis on the residual rows over their own coordinates
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i : residual)
      for (const auto& e : srows[i]) cols.push_back(e.first);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<Eigen::Index> colpos(ncoords, -1);
    for (size_t j = 0; j < cols.size(); ++j) colpos[cols[j]] = j;
    const Eigen::Index ns = static_cast<Eigen::Index>(residual.size());
    Eigen::MatrixXd gs = Eigen::MatrixXd::Zero(
        ns, std::max<Eigen::Index>(1, static_cast<Eigen::Index>(cols.size())));
    Eigen::VectorXd bs(ns);
    for (Eigen::Index i = 0; i < ns; ++i) {
      bs(i) = cp.b(residual[i]);
      for (const auto& e : srows[residual[i]])
        gs(i, colpos[e.first]) = e.second;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gs.transpose());
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    if (rank < ns) {
      Eigen::VectorXd ls = gs.colPivHouseholderQr().solve(bs);
      if ((bs - gs * ls).norm() > 1e-7 * (1.0 + cp.b.norm())) {
        cp.consistent = false;
        return cp;
      }
    }
    const auto& piv = qr.colsPermutation().indices();
    for (Eigen::Index i = 0; i < rank; ++i) kept[residual[piv(i)]] = 1;
  }

  Eigen::Index nkept = 0;
  for (Eigen::Index i = 0; i < cp.m; ++i)
    if (kept[i]) ++nkept;
  if (nkept < cp.m) {
    cp.orig_row.clear();
    std::vector<Eigen::Index> newrow(cp.m, -1);
    for (Eigen::Index i = 0; i < cp.m; ++i) {
      if (!kept[i]) continue;
      newrow[i] = static_cast<Eigen::Index>(cp.orig_row.size());
      cp.orig_row.push_back(i);
    }
    Eigen::VectorXd b2(nkept);
    Eigen::MatrixXd f2(nkept, cp.nf);
    for (Eigen::Index i = 0; i < nkept; ++i) {
      b2(i) = cp.b(cp.orig_row[i]);
      f2.row(i) = cp.f.row(cp.orig_row[i]);
    }
    for (auto& rows : cp.rows_on) {
      std::vector<RowCoeff> out;
      for (auto& rc : rows)
        if (kept[rc.row]) out.push_back({newrow[rc.row], std::move(rc.nz)});
      rows = std::move(out);
    }
    cp.b = b2;
    cp.f = f2;
    cp.m = nkept;
  } else {
    cp.orig_row.resize(cp.m);
    for (Eigen::Index i = 0; i < cp.m; ++i) cp.orig_row[i] = i;
  }
  return cp;
}

double max_step(const CMatrix& x, const CMatrix& dx) {
  Eigen::LLT<CMatrix> llt(x);
  CMatrix s;
  if (llt.info() == Eigen::Success) {
    CMatrix l = llt.matrixL();
    CMatrix li = l.triangularView<Eigen::Lower>().solve(
        CMatrix::Identity(x.rows(), x.cols()));
    s = li * dx * li.adjoint();
  } else {
    auto r = eigh(hermitize(x));
    Eigen::VectorXd ev = r.eigenvalues.cwiseMax(1e-14);
    CMatrix xi = r.eigenvectors *
                 ev.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() *
                 r.eigenvectors.adjoint();
    s = xi * dx * xi.adjoint();
  }
  const double lam_min = eigh(hermitize(s)).eigenvalues.minCoeff();
  if (lam_min >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

CMatrix nt_scaling(const CMatrix& x, const CMatrix& z) {
  CMatrix xs = psd_sqrt(hermitize(x));
  auto r = eigh(hermitize(xs * z * xs));
  Eigen::VectorXd ev = r.eigenvalues.cwiseMax(1e-16);
  CMatrix mid = r.eigenvectors *
                ev.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() *
                r.eigenvectors.adjoint();
  return hermitize(xs * mid * xs);
}

CMatrix psd_inverse(const CMatrix& x) {
  auto r = eigh(hermitize(x));
  Eigen::VectorXd ev = r.eigenvalues.cwiseMax(1e-16);
  return r.eigenvectors * ev.cwiseInverse().cast<cplx>().asDiagonal() *
         r.eigenvectors.adjoint();
}

int iteration_cap(const SolverOptions& opts) {
  if (const char* env = std::getenv("QSC_MAX_ITERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return opts.max_iters;
}

}  // namespace

ConicSolution solve(const ConicProgram& p, const SolverOptions& opts) {
  Compiled cp = compile(p);
  const Eigen::Index nb = static_cast<Eigen::Index>(cp.psd_blocks.size());
  if (nb == 0) throw std::invalid_argument("solve: program has no PSD blocks");
  if (!cp.consistent) {
    ConicSolution fail;
    fail.status = SolveStatus::NumericalFailure;
    return fail;
  }
  const Eigen::Index m = cp.m;
  const Eigen::Index nf = cp.nf;
  Eigen::Index ntot = 0;
  for (auto d : cp.psd_dims) ntot += d;

  double data_scale = std::max(1.0, cp.b.norm());
  for (const auto& c : cp.c) data_scale = std::max(data_scale, fro_norm(c));
  const double eta = std::sqrt(data_scale);

  std::vector<CMatrix> x(nb), z(nb);
  for (Eigen::Index k = 0; k < nb; ++k) {
    x[k] = eta * identity(cp.psd_dims[k]);
    z[k] = eta * identity(cp.psd_dims[k]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(nf);

  ConicSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  const int cap = iteration_cap(opts);

  auto record = [&](double score, SolveStatus st, int iter, double pv, double dv,
                    double rpn, double rdn) {
    if (score < best_score) {
      best_score = score;
      best.status = st;
      best.value = cp.sign * pv + cp.offset;
      best.dual_value = cp.sign * dv + cp.offset;
      best.gap = std::abs(pv - dv);
      best.primal_residual = rpn;
      best.dual_residual = rdn;
      best.iterations = iter;
      best.x.assign(p.num_blocks(), CMatrix());
      best.z.assign(p.num_blocks(), CMatrix());
      for (Eigen::Index k = 0; k < nb; ++k) {
        best.x[cp.psd_blocks[k]] = x[k];
        best.z[cp.psd_blocks[k]] = cp.sign * z[k];
      }
      for (size_t s = 0; s < cp.free_blocks.size(); ++s) {
        const Eigen::Index d = cp.free_dims[s];
        best.x[cp.free_blocks[s]] =
            hvec_inverse(u.segment(cp.free_offsets[s], d * d), d);
        best.z[cp.free_blocks[s]] = CMatrix::Zero(d, d);
      }
      best.y = Eigen::VectorXd::Zero(cp.m_orig);
      for (Eigen::Index i = 0; i < cp.m; ++i)
        best.y(cp.orig_row[i]) = cp.sign * y(i);
    }
  };

  for (int iter = 0; iter < cap; ++iter) {
    // residuals
    Eigen::VectorXd ax = Eigen::VectorXd::Zero(m);
    for (Eigen::Index k = 0; k < nb; ++k)
      for (const auto& rc : cp.rows_on[k])
        ax(rc.row) += trip_inner(rc.nz, x[k]);
    Eigen::VectorXd rp = cp.b - ax - cp.f * u;
    Eigen::VectorXd rf = cp.cf - cp.f.transpose() * y;
    std::vector<CMatrix> rd(nb);
    double rd_norm = 0.0, c_norm = 0.0;
    for (Eigen::Index k = 0; k < nb; ++k) {
      CMatrix asty = CMatrix::Zero(cp.psd_dims[k], cp.psd_dims[k]);
      for (const auto& rc : cp.rows_on[k]) trip_axpy(y(rc.row), rc.nz, asty);
      rd[k] = cp.c[k] - asty - z[k];
      rd_norm = std::hypot(rd_norm, fro_norm(rd[k]));
      c_norm = std::hypot(c_norm, fro_norm(cp.c[k]));
    }
    double pv = cp.cf.dot(u), dv = cp.b.dot(y), xz_total = 0.0;
    for (Eigen::Index k = 0; k < nb; ++k) {
      pv += hs_inner(cp.c[k], x[k]).real();
      xz_total += hs_inner(x[k], z[k]).real();
    }
    const double mu = xz_total / static_cast<double>(ntot);

    const double rp_rel = rp.norm() / (1.0 + cp.b.norm());
    const double rd_rel = std::hypot(rd_norm, rf.norm()) / (1.0 + std::hypot(c_norm, cp.cf.norm()));
    const double gap_rel = std::abs(pv - dv) / std::max(1.0, std::abs(pv));
    const double score = std::max({rp_rel, rd_rel, gap_rel});
    record(score, SolveStatus::IterationLimit, iter, pv, dv, rp.norm(), rd_norm);

    if (rp_rel <= opts.feas_tol && rd_rel <= opts.feas_tol &&
        gap_rel <= opts.gap_tol &&
        xz_total <= std::max(5e-7, 0.1 * opts.gap_tol * std::abs(pv))) {
      record(-1.0, SolveStatus::Optimal, iter, pv, dv, rp.norm(), rd_norm);
      return best;
    }
    if (mu < 1e-15 && score > 1e-4) break;  // stalled at the boundary

    // NT scaling and Schur complement
    std::vector<CMatrix> w(nb), zinv(nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
      w[k] = nt_scaling(x[k], z[k]);
      zinv[k] = psd_inverse(z[k]);
    }
    Eigen::MatrixXd mm = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index k = 0; k < nb; ++k) {
      const auto& rows = cp.rows_on[k];
      const Eigen::Index d = cp.psd_dims[k];
      for (size_t i = 0; i < rows.size(); ++i) {
        // t = W A W, exploiting sparsity of A when available
        CMatrix t;
        const auto& nz = rows[i].nz;
        if (static_cast<Eigen::Index>(nz.size()) < d) {
          CMatrix bmat = CMatrix::Zero(d, d);  // A W
          std::vector<Eigen::Index> touched;
          for (const auto& tr : nz) {
            bmat.row(tr.r) += tr.v * w[k].row(tr.c);
            touched.push_back(tr.r);
          }
          std::sort(touched.begin(), touched.end());
          touched.erase(std::unique(touched.begin(), touched.end()),
                        touched.end());
          t = CMatrix::Zero(d, d);
          for (Eigen::Index r : touched) t += w[k].col(r) * bmat.row(r);
        } else {
          CMatrix a = CMatrix::Zero(d, d);
          trip_axpy(1.0, nz, a);
          t = w[k] * a * w[k];
        }
        for (size_t j = 0; j <= i; ++j) {
          double v = 0.0;
          for (const auto& tr : rows[j].nz)
            v += (std::conj(t(tr.r, tr.c)) * tr.v).real();
          mm(rows[i].row, rows[j].row) += v;
          if (rows[i].row != rows[j].row) mm(rows[j].row, rows[i].row) += v;
        }
      }
    }
    Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(m + nf, m + nf);
    saddle.topLeftCorner(m, m) = mm;
    saddle.topRightCorner(m, nf) = cp.f;
    saddle.bottomLeftCorner(nf, m) = cp.f.transpose();
    // tiny regularization keeps the factorization nonsingular
    saddle.topLeftCorner(m, m).diagonal().array() += 1e-12 * (1.0 + mm.trace() / std::max<Eigen::Index>(m, 1));
    saddle.bottomRightCorner(nf, nf).diagonal().array() -= 1e-12;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(saddle);

    auto direction = [&](const std::vector<CMatrix>& rc,
                         std::vector<CMatrix>& dx, std::vector<CMatrix>& dz,
                         Eigen::VectorXd& dy, Eigen::VectorXd& du) {
      Eigen::VectorXd h = rp;
      for (Eigen::Index k = 0; k < nb; ++k) {
        CMatrix e = rc[k] - w[k] * rd[k] * w[k];
        for (const auto& row : cp.rows_on[k]) h(row.row) -= trip_inner(row.nz, e);
      }
      Eigen::VectorXd rhs(m + nf);
      rhs.head(m) = h;
      rhs.tail(nf) = rf;
      Eigen::VectorXd sol = lu.solve(rhs);
      dy = sol.head(m);
      du = sol.tail(nf);
      dx.resize(nb);
      dz.resize(nb);
      for (Eigen::Index k = 0; k < nb; ++k) {
        CMatrix asty = CMatrix::Zero(cp.psd_dims[k], cp.psd_dims[k]);
        for (const auto& row : cp.rows_on[k]) trip_axpy(dy(row.row), row.nz, asty);
        dz[k] = hermitize(rd[k] - asty);
        dx[k] = hermitize(rc[k] - w[k] * dz[k] * w[k]);
      }
    };

    // predictor
    std::vector<CMatrix> rc(nb), dx, dz;
    Eigen::VectorXd dy, du;
    for (Eigen::Index k = 0; k < nb; ++k) rc[k] = -x[k];
    direction(rc, dx, dz, dy, du);
    double ap = 1.0, ad = 1.0;
    for (Eigen::Index k = 0; k < nb; ++k) {
      ap = std::min(ap, 0.98 * max_step(x[k], dx[k]));
      ad = std::min(ad, 0.98 * max_step(z[k], dz[k]));
    }
    double mu_aff = 0.0;
    for (Eigen::Index k = 0; k < nb; ++k)
      mu_aff += hs_inner(x[k] + ap * dx[k], z[k] + ad * dz[k]).real();
    mu_aff = std::max(mu_aff / static_cast<double>(ntot), 0.0);
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::clamp(sigma, 1e-8, 0.99);

    // corrector
    for (Eigen::Index k = 0; k < nb; ++k)
      rc[k] = hermitize(sigma * mu * zinv[k] - x[k]);
    direction(rc, dx, dz, dy, du);
    ap = 1.0;
    ad = 1.0;
    for (Eigen::Index k = 0; k < nb; ++k) {
      ap = std::min(ap, 0.98 * max_step(x[k], dx[k]));
      ad = std::min(ad, 0.98 * max_step(z[k], dz[k]));
    }
    for (Eigen::Index k = 0; k < nb; ++k) {
      x[k] = hermitize(x[k] + ap * dx[k]);
      z[k] = hermitize(z[k] + ad * dz[k]);
    }
    y += ad * dy;
    u += ap * du;
  }

  if (best.status != SolveStatus::Optimal && best_score > 1e-2)
    best.status = SolveStatus::NumericalFailure;
  return best;
}

ConicProgram dualize(const ConicProgram& p) {
  // Treat a maximize program as min of the negated objective first.
  const double sg = p.maximize() ? -1.0 : 1.0;
  ConicProgram d;
  d.set_maximize(!p.maximize());
  d.set_offset(p.offset());

  const Eigen::Index m = p.num_rows();
  std::vector<Eigen::Index> yblk(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    yblk[i] = d.add_block(1, BlockCone::Free);
    CMatrix bi(1, 1);
    bi(0, 0) = sg * p.rhs()[i];
    d.set_objective(yblk[i], bi);
  }
  // slack Z_k >= 0 per primal PSD block; rows: Z_k + sum_i y_i A_ik = C_k
  // and sum_i y_i A_ik = C_k exactly for primal free blocks.
  std::vector<Eigen::Index> first_row(p.num_blocks());
  std::vector<Eigen::Index> zblk(p.num_blocks(), -1);
  for (Eigen::Index k = 0; k < p.num_blocks(); ++k) {
    first_row[k] = d.add_matrix_rows(sg * p.objective(k));
    if (p.cone(k) == BlockCone::PSD) {
      zblk[k] = d.add_block(p.block_dim(k), BlockCone::PSD);
      auto basis = hermitian_basis(p.block_dim(k));
      d.add_matrix_coeff(first_row[k], zblk[k], basis);
    }
  }
  for (const auto& e : p.entries()) {
    const Eigen::Index dk = p.block_dim(e.block);
    auto basis = hermitian_basis(dk);
    for (Eigen::Index j = 0; j < dk * dk; ++j) {
      const double c = hs_inner(basis[j], e.coeff).real();
      if (c == 0.0) continue;
      CMatrix cm(1, 1);
      cm(0, 0) = c;
      d.add_coeff(first_row[e.block] + j, yblk[e.row], cm);
    }
  }
  return d;
}

FeasibilityResult solve_feasibility(const ConicProgram& p,
                                    const SolverOptions& opts) {
  FeasibilityResult res;
  const Eigen::Index m = p.num_rows();

  // linear-consistency pre-check over unconstrained Hermitian blocks
  Eigen::Index ncols = 0;
  std::vector<Eigen::Index> col0(p.num_blocks());
  for (Eigen::Index k = 0; k < p.num_blocks(); ++k) {
    col0[k] = ncols;
    ncols += p.block_dim(k) * p.block_dim(k);
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, ncols);
  for (const auto& e : p.entries())
    g.row(e.row).segment(col0[e.block],
                         p.block_dim(e.block) * p.block_dim(e.block)) +=
        hvec(e.coeff);
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(p.rhs().data(), m);
  Eigen::VectorXd ls = g.colPivHouseholderQr().solve(b);
  Eigen::VectorXd resid = b - g * ls;
  if (resid.norm() > 1e-8 * (1.0 + b.norm())) {
    res.feasible = false;
    res.linear_consistent = false;
    res.margin = std::numeric_limits<double>::infinity();
    res.witness = resid / resid.norm();
    return res;
  }

  // phase 1: min t with S_k = X_k + t I >= 0 per PSD block, t >= -1
  ConicProgram ph;
  std::vector<Eigen::Index> xblk(p.num_blocks());
  for (Eigen::Index k = 0; k < p.num_blocks(); ++k)
    xblk[k] = ph.add_block(p.block_dim(k), BlockCone::Free);
  const Eigen::Index tblk = ph.add_block(1, BlockCone::Free);
  const Eigen::Index sbound = ph.add_block(1, BlockCone::PSD);
  CMatrix one(1, 1);
  one(0, 0) = 1.0;
  ph.set_objective(tblk, one);

  for (Eigen::Index i = 0; i < m; ++i) ph.add_row(p.rhs()[i]);
  for (const auto& e : p.entries()) ph.add_coeff(e.row, xblk[e.block], e.coeff);

  for (Eigen::Index k = 0; k < p.num_blocks(); ++k) {
    if (p.cone(k) != BlockCone::PSD) continue;
    const Eigen::Index dk = p.block_dim(k);
    auto basis = hermitian_basis(dk);
    const Eigen::Index sk = ph.add_block(dk, BlockCone::PSD);
    const Eigen::Index fr = ph.add_matrix_rows(CMatrix::Zero(dk, dk));
    ph.add_matrix_coeff(fr, xblk[k], basis);
    std::vector<CMatrix> tcoef(dk * dk), scoef(dk * dk);
    for (Eigen::Index j = 0; j < dk * dk; ++j) {
      CMatrix tc(1, 1);
      tc(0, 0) = basis[j].trace().real();
      tcoef[j] = tc;
      scoef[j] = -basis[j];
    }
    ph.add_matrix_coeff(fr, tblk, tcoef);
    ph.add_matrix_coeff(fr, sk, scoef);
  }
  {
    // t - s = -1 keeps the phase-1 objective bounded below
    const Eigen::Index r = ph.add_row(-1.0);
    ph.add_coeff(r, tblk, one);
    CMatrix neg(1, 1);
    neg(0, 0) = -1.0;
    ph.add_coeff(r, sbound, neg);
  }

  SolverOptions phopts = opts;
  ConicSolution sol = solve(ph, phopts);
  res.margin = sol.value;
  res.feasible = sol.status != SolveStatus::NumericalFailure &&
                 sol.value <= opts.feas_tol;
  if (sol.status != SolveStatus::NumericalFailure) {
    res.point.resize(p.num_blocks());
    for (Eigen::Index k = 0; k < p.num_blocks(); ++k) res.point[k] = sol.x[xblk[k]];
  }
  res.witness = sol.y.head(m);
  const double n = res.witness.norm();
  if (n > 0) res.witness /= n;
  return res;
}

}  // namespace qsc
