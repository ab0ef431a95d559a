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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsc/divergence.hpp"
#include "qsc/majorization.hpp"

using namespace qsc;

namespace {

BipartiteChannel random_bipartite(Eigen::Index a0, Eigen::Index a1,
                                  Eigen::Index b0, Eigen::Index b1, Rng& rng) {
  Channel c = random_channel(a0 * b0, a1 * b1, 2, rng);
  return make_bipartite(c, DimSpec{a0, a1, b0, b1});
}

BipartiteChannel apply_on_b_side(const Superchannel& theta,
                                 const BipartiteChannel& omega) {
  Superchannel lifted = tensor_supermap(
      identity_superchannel(omega.dims.a0, omega.dims.a1), theta);
  Channel mapped = qsc::apply(lifted, to_channel(omega));
  return make_bipartite(mapped, DimSpec{omega.dims.a0, omega.dims.a1,
                                        theta.dims.b0, theta.dims.b1});
}

ChannelFamily random_family(Eigen::Index n, Eigen::Index d_in,
                            Eigen::Index d_out, Rng& rng) {
  ChannelFamily fam;
  fam.d_in = d_in;
  fam.d_out = d_out;
  for (Eigen::Index j = 0; j < n; ++j)
    fam.channels.push_back(random_channel(d_in, d_out, 2, rng));
  return fam;
}

ChannelFamily prep_family(const std::vector<CMatrix>& states) {
  ChannelFamily fam;
  fam.d_in = 1;
  fam.d_out = states[0].rows();
  for (const auto& s : states) fam.channels.push_back(preparation_channel(s));
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

WitnessFamily random_witness(Eigen::Index d_x, Eigen::Index d_y,
                             Eigen::Index b0, Eigen::Index b1, Rng& rng) {
  WitnessFamily fam;
  fam.d_x = d_x;
  fam.d_y = d_y;
  const double w = 1.0 / static_cast<double>(d_y);
  for (Eigen::Index k = 0; k < d_x * d_y; ++k) {
    Channel c = random_channel(b0, b1, 2, rng);
    fam.maps.push_back(Channel{b0, b1, w * c.choi});
  }
  return fam;
}

CMatrix qubit_state(double p) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return m;
}

}  // namespace

TEST_CASE("frame elements form a POVM spanning the Hermitian matrices") {
  for (Eigen::Index d : {1, 2, 3}) {
    FrameSpec f = make_frame(d, d);
    CMatrix s = CMatrix::Zero(d, d);
    for (const auto& e : f.povm) {
      CHECK(is_psd(e, 1e-10));
      s += e;
    }
    CHECK(fro_norm(s - identity(d)) < 1e-10);
    CHECK(static_cast<Eigen::Index>(f.inputs.size()) == d * d);
    for (const auto& st : f.inputs)
      CHECK(std::abs(st.trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("trivial reference reduces to the marginal channel") {
  Rng rng(601);
  Channel c = random_channel(2, 2, 2, rng);
  BipartiteChannel bip;
  bip.dims = DimSpec{1, 1, 2, 2};
  bip.choi = c.choi;
  CqFamily fam = reduce_to_cq(bip, make_frame(1, 1));
  REQUIRE(fam.maps.size() == 1);
  CHECK(fro_norm(fam.maps[0].choi - c.choi) < 1e-10);
}

TEST_CASE("classical diagonal reference recovers the instrument") {
  Rng rng(607);
  // R0 trivial, R1 = 2 classical: Phi = sum_j |j><j| (x) Phi_j
  std::vector<Channel> parts = {random_channel(2, 2, 2, rng),
                                random_channel(2, 2, 2, rng)};
  Eigen::VectorXd w = rng.probability_vector(2);
  BipartiteChannel bip;
  bip.dims = DimSpec{1, 2, 2, 2};
  bip.choi = CMatrix::Zero(8, 8);
  for (Eigen::Index j = 0; j < 2; ++j) {
    CMatrix ejj = CMatrix::Zero(2, 2);
    ejj(j, j) = 1.0;
    // legs (A0=1, A1=R1, B0, B1)
    bip.choi += w(j) * kron(ejj, parts[j].choi);
  }
  FrameSpec frame = make_frame(1, 2);
  CqFamily fam = reduce_to_cq(bip, frame);
  REQUIRE(fam.maps.size() == 4);
  for (Eigen::Index y = 0; y < 4; ++y) {
    CMatrix expect = CMatrix::Zero(4, 4);
    for (Eigen::Index j = 0; j < 2; ++j)
      expect += frame.povm[y](j, j).real() * w(j) * parts[j].choi;
    CHECK(fro_norm(fam.maps[y].choi - expect) < 1e-10);
  }
}

TEST_CASE("frame inversion reconstructs the bipartite channel") {
  Rng rng(613);
  for (auto dims : {DimSpec{2, 2, 2, 2}, DimSpec{1, 2, 2, 3}}) {
    Rng child = rng.child(dims.a1 + dims.b1);
    BipartiteChannel bip =
        random_bipartite(dims.a0, dims.a1, dims.b0, dims.b1, child);
    FrameSpec frame = make_frame(dims.a0, dims.a1);
    BipartiteChannel back = cq_expand(reduce_to_cq(bip, frame), frame);
    CHECK(fro_norm(back.choi - bip.choi) < 1e-9);
  }
}

TEST_CASE("a family majorizes itself") {
  Rng rng(617);
  ChannelFamily fam = random_family(2, 2, 2, rng);
  auto cert = majorize_direct(fam, fam);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(is_superchannel(cert.theta, 1e-6).ok);
  CHECK(cert.residual < 1e-6);
}

TEST_CASE("single-channel conversions are always feasible") {
  Rng rng(619);
  ChannelFamily src = random_family(1, 2, 3, rng);
  ChannelFamily dst = random_family(1, 3, 2, rng);
  auto cert = majorize_direct(src, dst);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(is_superchannel(cert.theta, 1e-6).ok);
  CHECK(cert.residual < 1e-6);
}

TEST_CASE("one superchannel cannot send one channel to two targets") {
  Rng rng(631);
  ChannelFamily src;
  src.d_in = src.d_out = 2;
  src.channels = {identity_channel(2), identity_channel(2)};
  ChannelFamily dst = random_family(2, 2, 2, rng);
  auto cert = majorize_direct(src, dst);
  CHECK(cert.verdict == MajorizationVerdict::Infeasible);
  CHECK(cert.separated);
  CHECK(cert.ecme_src_side > cert.ecme_dst_side);
}

TEST_CASE("distinguishability cannot be created from scratch") {
  CVector zero(2), one(2), plus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> src_states = {zero * zero.adjoint(),
                                     plus * plus.adjoint()};
  std::vector<CMatrix> dst_states = {zero * zero.adjoint(),
                                     one * one.adjoint()};
  ChannelFamily src = prep_family(src_states);
  ChannelFamily dst = prep_family(dst_states);
  auto cert = majorize_direct(src, dst);
  CHECK(cert.verdict == MajorizationVerdict::Infeasible);
  CHECK(cert.separated);
  // cross-check: the conversion would have to increase the diamond distance
  double d_src = diamond_distance(src.channels[0], src.channels[1]).value;
  double d_dst = diamond_distance(dst.channels[0], dst.channels[1]).value;
  CHECK(d_dst > d_src + 0.1);
}

TEST_CASE("post-processing by a fixed channel is feasible") {
  Rng rng(641);
  ChannelFamily src = random_family(2, 2, 2, rng);
  Channel post = random_channel(2, 2, 2, rng);
  ChannelFamily dst;
  dst.d_in = 2;
  dst.d_out = 2;
  for (const auto& c : src.channels) dst.channels.push_back(compose(post, c));
  auto cert = majorize_direct(src, dst);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(is_superchannel(cert.theta, 1e-6).ok);
  CHECK(cert.residual < 1e-6);
}

TEST_CASE("minimax value is nonnegative exactly on feasible instances") {
  Rng rng(643);
  ChannelFamily fam = random_family(2, 2, 2, rng);
  auto self_r = majorize_minimax(fam, fam);
  CHECK(self_r.f >= -1e-7);

  ChannelFamily src;
  src.d_in = src.d_out = 2;
  src.channels = {identity_channel(2), identity_channel(2)};
  ChannelFamily two = random_family(2, 2, 2, rng);
  auto bad = majorize_minimax(src, two);
  CHECK(bad.f < -1e-4);
  auto wit = extract_witness(bad);
  CHECK(wit.separated);
  CHECK(wit.ecme_src_side > wit.ecme_dst_side);

  CVector zero(2), one(2), plus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto bad2 = majorize_minimax(
      prep_family({zero * zero.adjoint(), plus * plus.adjoint()}),
      prep_family({zero * zero.adjoint(), one * one.adjoint()}));
  CHECK(bad2.f < -1e-4);
  CHECK(extract_witness(bad2).separated);
}

TEST_CASE("minimax sign agrees with the direct verdict on random instances") {
  Rng rng(647);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int t = 0; t < 30; ++t) {
    Rng child = rng.child(t);
    ChannelFamily src = random_family(2, 2, 2, child);
    ChannelFamily dst;
    dst.d_in = dst.d_out = 2;
    if (t % 2 == 0) {
      Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
      for (const auto& c : src.channels)
        dst.channels.push_back(qsc::apply(theta, c));
    } else {
      dst = random_family(2, 2, 2, child);
    }
    auto cert = majorize_direct(src, dst);
    auto mm = majorize_minimax(src, dst);
    if (cert.verdict == MajorizationVerdict::Boundary) continue;
    bool direct_ok = cert.verdict == MajorizationVerdict::Feasible;
    bool minimax_ok = mm.f >= -1e-6;
    CHECK(direct_ok == minimax_ok);
    (direct_ok ? feasible_seen : infeasible_seen)++;
  }
  CHECK(feasible_seen > 0);
  CHECK(infeasible_seen > 0);
}

TEST_CASE("feasible conversions respect every witness inequality") {
  Rng rng(653);
  ChannelFamily src = random_family(2, 2, 2, rng);
  Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, rng);
  ChannelFamily dst;
  dst.d_in = dst.d_out = 2;
  for (const auto& c : src.channels)
    dst.channels.push_back(qsc::apply(theta, c));
  CqFamily src_cq = cq_from_family(src);
  CqFamily dst_cq = cq_from_family(dst);
  for (int t = 0; t < 50; ++t) {
    Rng child = rng.child(100 + t);
    WitnessFamily lam = random_witness(1, 2, 2, 2, child);
    double hs = witness_ecme(src_cq, lam);
    double hd = witness_ecme(dst_cq, lam);
    CHECK(hs <= hd + 1e-6);
  }
}

TEST_CASE("feasible conversions never increase the diamond distance") {
  Rng rng(659);
  for (int t = 0; t < 2; ++t) {
    Rng child = rng.child(t);
    ChannelFamily src = random_family(2, 2, 2, child);
    Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, child);
    ChannelFamily dst;
    dst.d_in = dst.d_out = 2;
    for (const auto& c : src.channels)
      dst.channels.push_back(qsc::apply(theta, c));
    double before = diamond_distance(src.channels[0], src.channels[1]).value;
    double after = diamond_distance(dst.channels[0], dst.channels[1]).value;
    CHECK(after <= before + 1e-6);
  }
}

TEST_CASE("state specialization matches a direct channel-feasibility oracle") {
  Rng rng(661);
  CVector zero(2), one(2), plus(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

  // infeasible pair
  std::vector<CMatrix> s1 = {zero * zero.adjoint(), plus * plus.adjoint()};
  std::vector<CMatrix> d1 = {zero * zero.adjoint(), one * one.adjoint()};
  CHECK_FALSE(cptp_state_oracle(s1, d1));
  CHECK(majorize_direct(prep_family(s1), prep_family(d1)).verdict ==
        MajorizationVerdict::Infeasible);

  // feasible pair: push both states through one random channel
  Channel f = random_channel(2, 2, 2, rng);
  std::vector<CMatrix> s2 = {rng.density_matrix(2), rng.density_matrix(2)};
  std::vector<CMatrix> d2 = {qsc::apply(f, s2[0]), qsc::apply(f, s2[1])};
  CHECK(cptp_state_oracle(s2, d2));
  auto cert = majorize_direct(prep_family(s2), prep_family(d2));
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(cert.residual < 1e-6);
}

TEST_CASE("bipartite majorization with a shared frame") {
  Rng rng(673);
  BipartiteChannel phi = random_bipartite(2, 2, 2, 2, rng);
  auto self_cert = majorize_bipartite(phi, phi);
  CHECK(self_cert.verdict == MajorizationVerdict::Feasible);
  CHECK(self_cert.residual < 1e-6);

  Superchannel theta = random_superchannel({2, 2, 2, 2}, 2, rng);
  BipartiteChannel psi = apply_on_b_side(theta, phi);
  auto cert = majorize_bipartite(phi, psi);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(is_superchannel(cert.theta, 1e-6).ok);
  CHECK(cert.residual < 1e-6);

  BipartiteChannel other = random_bipartite(2, 2, 2, 2, rng);
  auto bad = majorize_bipartite(phi, other);
  CHECK(bad.verdict == MajorizationVerdict::Infeasible);
  CHECK(bad.separated);
}

TEST_CASE("gibbs constraint keeps self-conversion feasible for uniform gibbs") {
  Rng rng(677);
  ChannelFamily fam = random_family(2, 2, 2, rng);
  CMatrix u = identity(2) / 2.0;
  auto cert = gibbs_majorize(fam, fam, u, u);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(cert.residual < 1e-6);
}

TEST_CASE("gibbs pair alone is feasible for empty families") {
  ChannelFamily empty_src, empty_dst;
  empty_src.d_in = empty_src.d_out = 2;
  empty_dst.d_in = empty_dst.d_out = 2;
  CMatrix gin = qubit_state(0.7);
  CMatrix u = identity(2) / 2.0;
  auto cert = gibbs_majorize(empty_src, empty_dst, gin, u);
  CHECK(cert.verdict == MajorizationVerdict::Feasible);
  CHECK(cert.residual < 1e-6);

  auto cert2 = gibbs_majorize(empty_src, empty_dst, gin, qubit_state(0.6));
  CHECK(cert2.verdict == MajorizationVerdict::Feasible);
  CHECK(cert2.residual < 1e-6);
}

TEST_CASE("gibbs constraint can forbid an otherwise feasible conversion") {
  // Preparing the excited state from the uniform state while fixing the
  // Gibbs state diag(0.9, 0.1) would force a non-positive map: by linearity
  // it sends the state 2u - g to 2|1><1| - g, which has a negative
  // eigenvalue.
  ChannelFamily src = prep_family({qubit_state(0.5)});
  ChannelFamily dst = prep_family({qubit_state(0.0)});
  CHECK(majorize_direct(src, dst).verdict == MajorizationVerdict::Feasible);
  CMatrix g = qubit_state(0.9);
  auto cert = gibbs_majorize(src, dst, g, g);
  CHECK(cert.verdict == MajorizationVerdict::Infeasible);
}
