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

// Release gate: one self-contained check per numbered criterion, each printed
// as a single PASS/FAIL line. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qsc/divergence.hpp"
#include "qsc/majorization.hpp"

using namespace qsc;

namespace {

struct Scope {
  bool ok = true;
  int id = 0;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      std::printf("  criterion %d check failed: %s\n", id, what.c_str());
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

CMatrix ketbra(const CVector& v) { return v * v.adjoint(); }

BipartiteChannel local_b(const Channel& phi) {
  BipartiteChannel w;
  w.dims = DimSpec{1, 1, phi.d_in, phi.d_out};
  w.choi = phi.choi;
  return w;
}

ChannelFamily prep_family(const std::vector<CMatrix>& states) {
  ChannelFamily fam;
  fam.d_in = 1;
  fam.d_out = states[0].rows();
  for (const CMatrix& s : states) fam.channels.push_back(preparation_channel(s));
  return fam;
}

// Independent oracle for the d_in = 1 specialization: a single CPTP map
// taking every source state to the matching destination state.
bool cptp_state_oracle(const std::vector<CMatrix>& src,
                       const std::vector<CMatrix>& dst) {
  const Eigen::Index d = src[0].rows(), e = dst[0].rows();
  ConicProgram p;
  auto jb = p.add_block(d * e, BlockCone::PSD);
  {
    auto basis = hermitian_basis(d);
    auto fr = p.add_matrix_rows(identity(d));
    std::vector<CMatrix> lifts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      lifts[j] = kron(basis[j], identity(e));
    p.add_matrix_coeff(fr, jb, lifts);
  }
  for (size_t k = 0; k < src.size(); ++k) {
    auto basis = hermitian_basis(e);
    auto fr = p.add_matrix_rows(hermitize(dst[k]));
    std::vector<CMatrix> lifts(basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
      lifts[j] = hermitize(kron(src[k].transpose(), basis[j]));
    p.add_matrix_coeff(fr, jb, lifts);
  }
  auto res = solve_feasibility(p);
  return res.feasible;
}

// Random classical instrument: all maps diagonal, each (y, a0) column summing
// to one so the totals are trace preserving.
ClassicalInstrumentFamily random_classical_instrument(Eigen::Index d_a,
                                                      Eigen::Index d_b0,
                                                      Eigen::Index d_b1,
                                                      Rng& rng) {
  ClassicalInstrumentFamily fam;
  fam.d_a0 = fam.d_a1 = d_a;
  fam.d_b0 = d_b0;
  fam.d_b1 = d_b1;
  fam.maps.resize(d_b0);
  for (Eigen::Index y = 0; y < d_b0; ++y)
    for (Eigen::Index x = 0; x < d_b1; ++x)
      fam.maps[y].push_back(Channel{d_a, d_a, CMatrix::Zero(d_a * d_a, d_a * d_a)});
  for (Eigen::Index y = 0; y < d_b0; ++y)
    for (Eigen::Index a0 = 0; a0 < d_a; ++a0) {
      Rng child = rng.child(100 * y + a0);
      Eigen::VectorXd q = child.probability_vector(d_b1 * d_a);
      Eigen::Index i = 0;
      for (Eigen::Index x = 0; x < d_b1; ++x)
        for (Eigen::Index a1 = 0; a1 < d_a; ++a1)
          fam.maps[y][x].choi(a0 * d_a + a1, a0 * d_a + a1) = q(i++);
    }
  return fam;
}

// Normalization anchors of the extended min-entropy.
bool criterion_1() {
  Scope s{true, 1};
  auto t0 = std::chrono::steady_clock::now();
  s.expect(std::abs(h_min_ext(uniform_channel(2, 2)) - 1.0) <= 1e-7,
           "h_min_ext(uniform qubit channel) != 1");
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  s.expect(std::abs(h_min_ext(replacement_channel(2, pure))) <= 1e-7,
           "h_min_ext(pure replacement) != 0");
  s.expect(seconds_since(t0) < 1.0, "runtime exceeded 1 s");
  return s.ok;
}

// No duality gap on random instances with every leg of dimension 2.
bool criterion_2() {
  Scope s{true, 2};
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(9002);
  for (int t = 0; t < 100 && s.ok; ++t) {
    Rng child = rng.child(t);
    Channel omega = random_channel(4, 4, 1 + (t % 4), child);
    auto r = ecme(make_bipartite(omega, DimSpec{2, 2, 2, 2}));
    s.expect(std::abs(r.primal_value - r.dual_value) <= 1e-6,
             "duality gap above 1e-6 at instance " + std::to_string(t));
  }
  s.expect(seconds_since(t0) < 300.0, "runtime exceeded 5 min");
  return s.ok;
}

// Entropy property suite: exact reductions, additivity, monotonicity,
// conditioning, and the two-sided conditional min-entropy bounds.
bool criterion_3() {
  Scope s{true, 3};
  Rng rng(9003);

  // replacement channels reduce to the conditional min-entropy
  for (int t = 0; t < 10; ++t) {
    Rng child = rng.child(t);
    CMatrix sigma = child.density_matrix(4);
    auto r = ecme(make_bipartite(replacement_channel(4, sigma),
                                 DimSpec{2, 2, 2, 2}));
    s.expect(std::abs(r.value - h_min_cond(sigma, 2, 2).value) <= 1e-6,
             "replacement reduction off at instance " + std::to_string(t));
  }

  // product channels ignore the side factor
  for (int t = 0; t < 10; ++t) {
    Rng child = rng.child(100 + t);
    Channel phi = random_channel(2, 2, 2, child);
    Channel psi = random_channel(2, 2, 2, child);
    auto r = ecme(make_bipartite(tensor(psi, phi), DimSpec{2, 2, 2, 2}));
    s.expect(std::abs(r.value - h_min_ext(phi)) <= 1e-6,
             "product reduction off at instance " + std::to_string(t));
  }

  // additivity with one trivially-conditioned factor
  for (int t = 0; t < 30; ++t) {
    Rng child = rng.child(200 + t);
    Channel omega = random_channel(4, 4, 2 + (t % 2), child);
    BipartiteChannel w = make_bipartite(omega, DimSpec{2, 2, 2, 2});
    CMatrix sigma = child.density_matrix(2);
    BipartiteChannel g = local_b(preparation_channel(sigma));
    double joint = ecme(bipartite_tensor(w, g)).value;
    double expect = ecme(w).value + h_min(sigma);
    s.expect(std::abs(joint - expect) <= 1e-5,
             "additivity off at instance " + std::to_string(t));
  }

  // monotonicity under superchannels on the conditioning side
  std::vector<Superchannel> pool;
  for (int k = 0; k < 20; ++k) {
    Rng child = rng.child(300 + k);
    pool.push_back(random_superchannel({2, 2, 2, 2}, 2, child));
  }
  for (int t = 0; t < 30; ++t) {
    Rng child = rng.child(400 + t);
    Channel omega = random_channel(4, 4, 3, child);
    BipartiteChannel w = make_bipartite(omega, DimSpec{2, 2, 2, 2});
    double before = ecme(w).value;
    double after = ecme(apply_on_a_side(pool[t % 20], w)).value;
    s.expect(before <= after + 1e-5,
             "monotonicity violated at instance " + std::to_string(t));
  }

  // conditioning on an extra input never increases the entropy
  for (int base = 0; base < 3; ++base) {
    Rng child = rng.child(500 + base);
    Channel tri = random_channel(8, 4, 3, child);  // (a0,b0,c0) -> (a1,b1)
    Channel flat;
    flat.d_in = 8;
    flat.d_out = 4;
    flat.choi = permute_systems(tri.choi, SystemShape{2, 2, 2, 2, 2},
                                {0, 2, 1, 3, 4});  // (a0,c0,b0,a1,b1)
    double cond_ac = ecme(make_bipartite(flat, DimSpec{4, 2, 2, 2})).value;
    for (int g = 0; g < 10; ++g) {
      Rng gc = child.child(g);
      CMatrix gamma = gc.density_matrix(2);
      Channel lift = tensor(identity_channel(4), preparation_channel(gamma));
      Channel marg = compose(tri, lift);
      double cond_a = ecme(make_bipartite(marg, DimSpec{2, 2, 2, 2})).value;
      s.expect(cond_ac <= cond_a + 1e-5,
               "conditioning violated at base " + std::to_string(base) +
                   " gamma " + std::to_string(g));
    }
  }

  // conditional min-entropy bounds on the extended quantity
  for (int t = 0; t < 10; ++t) {
    Rng child = rng.child(600 + t);
    Channel omega = random_channel(4, 4, 3, child);
    BipartiteChannel w = make_bipartite(omega, DimSpec{2, 2, 2, 2});
    double v = ecme(w).value;
    CMatrix wn = w.normalized();
    double upper = h_min_cond(partial_trace(wn, w.dims.shape(), {1, 3}), 2, 2).value;
    CMatrix re = permute_systems(wn, w.dims.shape(), {2, 0, 1, 3});
    double lower = h_min_cond(re, 2, 8).value - std::log2(4.0);
    s.expect(v <= upper + 1e-6, "upper bound violated at " + std::to_string(t));
    s.expect(v >= lower - 1e-6, "lower bound violated at " + std::to_string(t));
  }
  return s.ok;
}

// Guessing probability: the SDP matches exhaustive enumeration on classical
// instruments and upper-bounds the seesaw on quantum ones.
bool criterion_4() {
  Scope s{true, 4};
  Rng rng(9004);
  for (int t = 0; t < 50; ++t) {
    Rng child = rng.child(t);
    const Eigen::Index d_a = 1 + (t % 2);
    const Eigen::Index d_b0 = 2 + (t % 2);
    const Eigen::Index d_b1 = 2 + ((t / 2) % 2);
    auto fam = random_classical_instrument(d_a, d_b0, d_b1, child);
    auto oracle = guess_probability_oracle(fam);
    s.expect(oracle.exact, "classical oracle not exact at " + std::to_string(t));
    double sdp = guess_probability_sdp(bipartite_from_instrument(fam));
    s.expect(std::abs(oracle.value - sdp) <= 1e-5,
             "classical oracle/SDP gap at instance " + std::to_string(t));
  }
  for (int t = 0; t < 20; ++t) {
    Rng child = rng.child(1000 + t);
    ClassicalInstrumentFamily fam;
    fam.d_a0 = fam.d_a1 = 2;
    fam.d_b0 = 1 + (t % 2);
    fam.d_b1 = 2;
    fam.maps.resize(fam.d_b0);
    for (Eigen::Index y = 0; y < fam.d_b0; ++y)
      for (Eigen::Index x = 0; x < fam.d_b1; ++x) {
        Rng mc = child.child(10 * y + x);
        Channel c = random_channel(2, 2, 2, mc);
        c.choi *= 1.0 / static_cast<double>(fam.d_b1);
        fam.maps[y].push_back(c);
      }
    auto oracle = guess_probability_oracle(fam, 50, 17 + t);
    double sdp = guess_probability_sdp(bipartite_from_instrument(fam));
    s.expect(oracle.value <= sdp + 1e-6,
             "seesaw exceeded the SDP at instance " + std::to_string(t));
    s.expect(std::abs(oracle.value - sdp) < 1e-3,
             "seesaw not tight at instance " + std::to_string(t));
  }
  return s.ok;
}

// Realization round-trip on random superchannels.
bool criterion_5() {
  Scope s{true, 5};
  Rng rng(9005);
  for (int t = 0; t < 50; ++t) {
    Rng child = rng.child(t);
    Superchannel sc = random_superchannel({2, 2, 2, 2}, 1 + (t % 3), child);
    Superchannel back = choi_from_realization(realize(sc), sc.dims);
    s.expect(fro_norm(back.choi - sc.choi) <= 1e-8,
             "round-trip error above 1e-8 at instance " + std::to_string(t));
  }
  return s.ok;
}

// Noise-model implications between the stochasticity classes.
bool criterion_6() {
  Scope s{true, 6};
  Rng rng(9006);
  for (int t = 0; t < 50; ++t) {
    Rng child = rng.child(t);
    Superchannel sc =
        sample_random_unitary_superchannel({2, 2, 2, 2}, 2 + (t % 3), child);
    bool ds = is_doubly_stochastic(sc);
    s.expect(ds, "random-unitary instance not DS at " + std::to_string(t));
    s.expect(is_completely_uniformity_preserving(sc),
             "random-unitary instance not CUP at " + std::to_string(t));
    s.expect(is_completely_unital_preserving(sc),
             "random-unitary instance not CUCP at " + std::to_string(t));
    if (ds)
      s.expect(is_completely_uniformity_preserving(sc),
               "DS without CUP at " + std::to_string(t));
  }
  // generic superchannels: double stochasticity still implies CUP
  for (int t = 0; t < 20; ++t) {
    Rng child = rng.child(1000 + t);
    Superchannel sc = random_superchannel({2, 2, 2, 2}, 2, child);
    if (is_doubly_stochastic(sc))
      s.expect(is_completely_uniformity_preserving(sc),
               "generic DS without CUP at " + std::to_string(t));
  }
  // uniformity preserving but not doubly stochastic: replace the input with a
  // pure state, then erase the output to the maximally mixed state
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  Realization r;
  r.d_e = 1;
  r.pre = replacement_channel(2, pure);
  r.post = uniform_channel(2, 2);
  Superchannel cup_only = choi_from_realization(r, DimSpec{2, 2, 2, 2});
  s.expect(is_superchannel(cup_only).ok, "CUP-only instance not a superchannel");
  s.expect(is_completely_uniformity_preserving(cup_only),
           "CUP-only instance fails the CUP test");
  s.expect(!is_doubly_stochastic(cup_only),
           "CUP-only instance unexpectedly doubly stochastic");
  return s.ok;
}

// Extended min-entropy never decreases under doubly stochastic superchannels.
bool criterion_7() {
  Scope s{true, 7};
  Rng rng(9007);
  for (int t = 0; t < 100; ++t) {
    Rng child = rng.child(t);
    Superchannel theta =
        sample_random_unitary_superchannel({2, 2, 2, 2}, 2 + (t % 4), child);
    Channel phi = random_channel(2, 2, 1 + (t % 3), child);
    double before = h_min_ext(phi);
    double after = h_min_ext(qsc::apply(theta, phi));
    s.expect(after >= before - 1e-6,
             "entropy decreased at instance " + std::to_string(t));
  }
  return s.ok;
}

// Majorization decisions: the anchor instances, agreement between the two
// formulations, and separating witnesses on every infeasible case.
bool criterion_8() {
  Scope s{true, 8};
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(9008);

  // a family always majorizes itself
  ChannelFamily fam;
  fam.d_in = fam.d_out = 2;
  fam.channels = {random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng)};
  s.expect(majorize_direct(fam, fam).verdict == MajorizationVerdict::Feasible,
           "self conversion not feasible");

  // single channels are always convertible
  ChannelFamily one_src, one_dst;
  one_src.d_in = 2;
  one_src.d_out = 3;
  one_src.channels = {random_channel(2, 3, 2, rng)};
  one_dst.d_in = 3;
  one_dst.d_out = 2;
  one_dst.channels = {random_channel(3, 2, 2, rng)};
  s.expect(majorize_direct(one_src, one_dst).verdict ==
               MajorizationVerdict::Feasible,
           "single-channel conversion not feasible");

  // identical sources cannot split into distinct targets
  ChannelFamily ids, split;
  ids.d_in = ids.d_out = 2;
  ids.channels = {identity_channel(2), identity_channel(2)};
  split.d_in = split.d_out = 2;
  split.channels = {random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng)};
  {
    auto cert = majorize_direct(ids, split);
    s.expect(cert.verdict == MajorizationVerdict::Infeasible,
             "identical-source split not refused");
    s.expect(cert.separated && cert.ecme_src_side - cert.ecme_dst_side > 1e-4,
             "identical-source witness gap too small");
  }

  // distinguishability cannot be created
  CVector zero(2), one(2), plus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  ChannelFamily psrc = prep_family({ketbra(zero), ketbra(plus)});
  ChannelFamily pdst = prep_family({ketbra(zero), ketbra(one)});
  {
    auto cert = majorize_direct(psrc, pdst);
    s.expect(cert.verdict == MajorizationVerdict::Infeasible,
             "distinguishability creation not refused");
    s.expect(cert.separated && cert.ecme_src_side - cert.ecme_dst_side > 1e-4,
             "preparation witness gap too small");
  }

  // post-processing both members by one channel is always allowed
  {
    Channel e = random_channel(2, 2, 2, rng);
    ChannelFamily post;
    post.d_in = post.d_out = 2;
    post.channels = {compose(e, fam.channels[0]), compose(e, fam.channels[1])};
    s.expect(majorize_direct(fam, post).verdict == MajorizationVerdict::Feasible,
             "post-processing conversion not feasible");
  }

  // the direct and minimax formulations agree on random instances
  int feasible_seen = 0, infeasible_seen = 0;
  for (int t = 0; t < 30; ++t) {
    Rng child = rng.child(100 + t);
    ChannelFamily src;
    src.d_in = src.d_out = 2;
    src.channels = {random_channel(2, 2, 2, child),
                    random_channel(2, 2, 2, child)};
    ChannelFamily dst;
    dst.d_in = dst.d_out = 2;
    if (t % 2 == 0) {
      Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
      dst.channels = {qsc::apply(theta, src.channels[0]),
                      qsc::apply(theta, src.channels[1])};
    } else {
      dst.channels = {random_channel(2, 2, 2, child),
                      random_channel(2, 2, 2, child)};
    }
    auto cert = majorize_direct(src, dst);
    if (cert.verdict == MajorizationVerdict::Boundary) continue;
    double f = majorize_minimax(src, dst).f;
    if (cert.verdict == MajorizationVerdict::Feasible) {
      ++feasible_seen;
      s.expect(f >= -1e-7, "minimax negative on feasible instance " +
                               std::to_string(t));
    } else {
      ++infeasible_seen;
      s.expect(f < -1e-7, "minimax nonnegative on infeasible instance " +
                              std::to_string(t));
      s.expect(cert.separated &&
                   cert.ecme_src_side - cert.ecme_dst_side > 1e-4,
               "witness gap below 1e-4 at instance " + std::to_string(t));
    }
  }
  s.expect(feasible_seen > 0 && infeasible_seen > 0,
           "random instances did not cover both verdicts");
  s.expect(seconds_since(t0) < 600.0, "runtime exceeded 10 min");
  return s.ok;
}

// Divergence data processing and the replacement-channel anchor.
bool criterion_9() {
  Scope s{true, 9};
  Rng rng(9009);
  for (int t = 0; t < 20; ++t) {
    Rng child = rng.child(t);
    Channel f = random_channel(2, 2, 2, child);
    Channel g = random_channel(2, 2, 2, child);
    Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
    double before = contraction_trace(f, g);
    double after = contraction_trace(qsc::apply(theta, f), qsc::apply(theta, g));
    s.expect(after <= before + 1e-6,
             "contraction increased at instance " + std::to_string(t));
  }
  for (int t = 0; t < 5; ++t) {
    Rng child = rng.child(100 + t);
    const Eigen::Index d = 2 + (t % 2);
    CMatrix rho = child.density_matrix(d);
    CMatrix sigma = child.density_matrix(d);
    double dd = diamond_distance(replacement_channel(d, rho),
                                 replacement_channel(d, sigma))
                    .value;
    s.expect(std::abs(dd - trace_norm_herm(rho - sigma)) <= 1e-7,
             "replacement diamond distance off at " + std::to_string(t));
  }
  return s.ok;
}

// State specialization agrees with an independent CPTP feasibility SDP.
bool criterion_10() {
  Scope s{true, 10};
  Rng rng(9010);
  for (int t = 0; t < 20; ++t) {
    Rng child = rng.child(t);
    const int n = 2 + (t % 2);
    std::vector<CMatrix> src, dst;
    for (int k = 0; k < n; ++k) src.push_back(child.density_matrix(2));
    if (t % 2 == 0) {
      Channel f = random_channel(2, 2, 2, child);
      for (int k = 0; k < n; ++k) dst.push_back(qsc::apply(f, src[k]));
    } else {
      for (int k = 0; k < n; ++k) dst.push_back(child.density_matrix(2));
    }
    bool oracle = cptp_state_oracle(src, dst);
    auto cert = majorize_direct(prep_family(src), prep_family(dst));
    bool agreed =
        (oracle && cert.verdict == MajorizationVerdict::Feasible) ||
        (!oracle && cert.verdict == MajorizationVerdict::Infeasible);
    s.expect(agreed, "verdict disagreement at instance " + std::to_string(t));
  }
  return s.ok;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    bool (*run)();
  };
  const Entry entries[] = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
      {9, criterion_9}, {10, criterion_10},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    bool ok = e.run();
    std::printf("criterion %d: %s\n", e.id, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
