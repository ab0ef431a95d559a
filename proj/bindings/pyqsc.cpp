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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsc/divergence.hpp"
#include "qsc/json_io.hpp"
#include "qsc/majorization.hpp"

namespace py = pybind11;
using namespace qsc;

namespace {

SystemShape shape_from_list(const std::vector<Eigen::Index>& dims) {
  return SystemShape{dims};
}

const char* verdict_name(MajorizationVerdict v) {
  switch (v) {
    case MajorizationVerdict::Feasible:
      return "feasible";
    case MajorizationVerdict::Infeasible:
      return "infeasible";
    default:
      return "boundary";
  }
}

}  // namespace

PYBIND11_MODULE(_qsc, m) {
  m.doc() = "quantum channel majorization toolkit";

  // linear algebra on multipartite systems
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const CMatrix& x, const std::vector<Eigen::Index>& dims,
         const std::vector<Eigen::Index>& keep) {
        return partial_trace(x, shape_from_list(dims), keep);
      },
      py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const CMatrix& x, const std::vector<Eigen::Index>& dims,
         const std::vector<Eigen::Index>& sys) {
        return partial_transpose(x, shape_from_list(dims), sys);
      },
      py::arg("m"), py::arg("dims"), py::arg("sys"));
  m.def(
      "permute_systems",
      [](const CMatrix& x, const std::vector<Eigen::Index>& dims,
         const std::vector<Eigen::Index>& perm) {
        return permute_systems(x, shape_from_list(dims), perm);
      },
      py::arg("m"), py::arg("dims"), py::arg("perm"));

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("child", &Rng::child, py::arg("index"))
      .def("unitary", &Rng::unitary, py::arg("d"))
      .def("density_matrix", &Rng::density_matrix, py::arg("d"));

  // channels
  py::class_<Channel>(m, "Channel")
      .def(py::init([](Eigen::Index d_in, Eigen::Index d_out,
                       const CMatrix& choi) {
             return Channel{d_in, d_out, choi};
           }),
           py::arg("d_in"), py::arg("d_out"), py::arg("choi"))
      .def_readonly("d_in", &Channel::d_in)
      .def_readonly("d_out", &Channel::d_out)
      .def_readonly("choi", &Channel::choi);

  py::class_<ChannelVerdict>(m, "ChannelVerdict")
      .def_readonly("cp", &ChannelVerdict::cp)
      .def_readonly("tp", &ChannelVerdict::tp)
      .def_readonly("cp_residual", &ChannelVerdict::cp_residual)
      .def_readonly("tp_residual", &ChannelVerdict::tp_residual);

  m.def("is_channel", &is_channel, py::arg("c"), py::arg("tol") = 1e-8);
  m.def("apply_channel",
        [](const Channel& c, const CMatrix& rho) { return apply(c, rho); },
        py::arg("c"), py::arg("rho"));
  m.def("compose", &compose, py::arg("f"), py::arg("g"));
  m.def("tensor", &tensor, py::arg("f"), py::arg("g"));
  m.def("identity_channel", &identity_channel, py::arg("d"));
  m.def("uniform_channel", &uniform_channel, py::arg("d_in"),
        py::arg("d_out"));
  m.def("replacement_channel", &replacement_channel, py::arg("d_in"),
        py::arg("sigma"));
  m.def("unitary_channel", &unitary_channel, py::arg("u"));
  m.def("preparation_channel", &preparation_channel, py::arg("sigma"));
  m.def("random_channel", &random_channel, py::arg("d_in"), py::arg("d_out"),
        py::arg("kraus_rank"), py::arg("rng"));
  m.def(
      "kraus_operators",
      [](const Channel& c) { return kraus_from_choi(c).operators; },
      py::arg("c"));

  // superchannels
  py::class_<DimSpec>(m, "DimSpec")
      .def(py::init([](Eigen::Index a0, Eigen::Index a1, Eigen::Index b0,
                       Eigen::Index b1) {
             return DimSpec{a0, a1, b0, b1};
           }),
           py::arg("a0"), py::arg("a1"), py::arg("b0"), py::arg("b1"))
      .def_readonly("a0", &DimSpec::a0)
      .def_readonly("a1", &DimSpec::a1)
      .def_readonly("b0", &DimSpec::b0)
      .def_readonly("b1", &DimSpec::b1);

  py::class_<Superchannel>(m, "Superchannel")
      .def(py::init([](const DimSpec& dims, const CMatrix& choi) {
             return Superchannel{dims, choi};
           }),
           py::arg("dims"), py::arg("choi"))
      .def_readonly("dims", &Superchannel::dims)
      .def_readonly("choi", &Superchannel::choi);

  py::class_<SuperchannelReport>(m, "SuperchannelReport")
      .def_readonly("ok", &SuperchannelReport::ok)
      .def_readonly("psd", &SuperchannelReport::psd)
      .def_readonly("psd_residual", &SuperchannelReport::psd_residual)
      .def_readonly("marg_a1b0", &SuperchannelReport::marg_a1b0)
      .def_readonly("marg_ab0", &SuperchannelReport::marg_ab0)
      .def_readonly("violation", &SuperchannelReport::violation);

  py::class_<Realization>(m, "Realization")
      .def_readonly("pre", &Realization::pre)
      .def_readonly("post", &Realization::post)
      .def_readonly("d_e", &Realization::d_e);

  m.def("is_superchannel", &is_superchannel, py::arg("s"),
        py::arg("tol") = 1e-8);
  m.def("apply_superchannel",
        [](const Superchannel& s, const Channel& c) { return apply(s, c); },
        py::arg("s"), py::arg("c"));
  m.def("realize", &realize, py::arg("s"), py::arg("tol") = 1e-8);
  m.def("identity_superchannel", &identity_superchannel, py::arg("d0"),
        py::arg("d1"));
  m.def("random_superchannel", &random_superchannel, py::arg("dims"),
        py::arg("d_e"), py::arg("rng"));
  m.def("is_doubly_stochastic", &is_doubly_stochastic, py::arg("s"),
        py::arg("tol") = 1e-8);
  m.def("is_completely_uniformity_preserving",
        &is_completely_uniformity_preserving, py::arg("s"),
        py::arg("tol") = 1e-8);
  m.def("is_completely_unital_preserving", &is_completely_unital_preserving,
        py::arg("s"), py::arg("tol") = 1e-8);

  // entropies
  py::class_<BipartiteChannel>(m, "BipartiteChannel")
      .def_readonly("dims", &BipartiteChannel::dims)
      .def_readonly("choi", &BipartiteChannel::choi)
      .def_readonly("b0_classical", &BipartiteChannel::b0_classical)
      .def_readonly("b1_classical", &BipartiteChannel::b1_classical);

  m.def("make_bipartite", &make_bipartite, py::arg("omega"), py::arg("dims"),
        py::arg("tol") = 1e-8);
  m.def("h_min", &h_min, py::arg("rho"));
  m.def(
      "h_min_cond",
      [](const CMatrix& rho, Eigen::Index d_a0, Eigen::Index d_a1) {
        return h_min_cond(rho, d_a0, d_a1).value;
      },
      py::arg("rho"), py::arg("d_a0"), py::arg("d_a1"));
  m.def("h_min_ext",
        [](const Channel& c) { return h_min_ext(c); }, py::arg("c"));

  py::class_<EcmeResult>(m, "EcmeResult")
      .def_readonly("value", &EcmeResult::value)
      .def_readonly("primal_value", &EcmeResult::primal_value)
      .def_readonly("dual_value", &EcmeResult::dual_value)
      .def_readonly("gamma", &EcmeResult::gamma)
      .def_readonly("witness", &EcmeResult::witness);

  m.def("ecme",
        [](const BipartiteChannel& w) { return ecme(w); }, py::arg("omega"));
  m.def("guess_probability",
        [](const BipartiteChannel& w) { return guess_probability_sdp(w); },
        py::arg("omega"));

  // divergences
  py::class_<DivergenceReport>(m, "DivergenceReport")
      .def_readonly("value", &DivergenceReport::value)
      .def_readonly("input_state", &DivergenceReport::input_state);

  m.def("diamond_distance",
        [](const Channel& f, const Channel& g) {
          return diamond_distance(f, g);
        },
        py::arg("f"), py::arg("g"));
  m.def("contraction_trace",
        [](const Channel& f, const Channel& g) {
          return contraction_trace(f, g);
        },
        py::arg("f"), py::arg("g"));
  m.def("c_lambda",
        [](const Channel& p1, const Channel& p2, const Channel& l1,
           const Channel& l2) { return c_lambda(p1, p2, l1, l2); },
        py::arg("psi1"), py::arg("psi2"), py::arg("lam1"), py::arg("lam2"));

  // majorization
  py::class_<ChannelFamily>(m, "ChannelFamily")
      .def(py::init([](Eigen::Index d_in, Eigen::Index d_out,
                       const std::vector<Channel>& channels) {
             return ChannelFamily{d_in, d_out, channels};
           }),
           py::arg("d_in"), py::arg("d_out"), py::arg("channels"))
      .def_readonly("d_in", &ChannelFamily::d_in)
      .def_readonly("d_out", &ChannelFamily::d_out)
      .def_readonly("channels", &ChannelFamily::channels);

  py::class_<WitnessFamily>(m, "WitnessFamily")
      .def_readonly("d_x", &WitnessFamily::d_x)
      .def_readonly("d_y", &WitnessFamily::d_y)
      .def_readonly("maps", &WitnessFamily::maps)
      .def_readonly("repair", &WitnessFamily::repair)
      .def_readonly("mix", &WitnessFamily::mix);

  py::class_<MajorizationCertificate>(m, "MajorizationCertificate")
      .def_property_readonly(
          "verdict",
          [](const MajorizationCertificate& c) {
            return verdict_name(c.verdict);
          })
      .def_readonly("margin", &MajorizationCertificate::margin)
      .def_readonly("theta", &MajorizationCertificate::theta)
      .def_readonly("residual", &MajorizationCertificate::residual)
      .def_readonly("witness", &MajorizationCertificate::witness)
      .def_readonly("ecme_src_side", &MajorizationCertificate::ecme_src_side)
      .def_readonly("ecme_dst_side", &MajorizationCertificate::ecme_dst_side)
      .def_readonly("separated", &MajorizationCertificate::separated);

  m.def("majorize",
        [](const ChannelFamily& src, const ChannelFamily& dst, double tol) {
          return majorize_direct(src, dst, tol);
        },
        py::arg("src"), py::arg("dst"), py::arg("tol") = 1e-6);
  m.def("majorize_minimax_value",
        [](const ChannelFamily& src, const ChannelFamily& dst) {
          return majorize_minimax(src, dst).f;
        },
        py::arg("src"), py::arg("dst"));
  m.def("majorize_bipartite",
        [](const BipartiteChannel& phi, const BipartiteChannel& psi,
           double tol) { return majorize_bipartite(phi, psi, tol); },
        py::arg("phi"), py::arg("psi"), py::arg("tol") = 1e-6);
  m.def("gibbs_majorize",
        [](const ChannelFamily& src, const ChannelFamily& dst,
           const CMatrix& gin, const CMatrix& gout, double tol) {
          return gibbs_majorize(src, dst, gin, gout, tol);
        },
        py::arg("src"), py::arg("dst"), py::arg("gibbs_in"),
        py::arg("gibbs_out"), py::arg("tol") = 1e-6);

  // JSON bridge
  m.def("channel_to_json",
        [](const Channel& c) { return channel_to_json(c).dump(); },
        py::arg("c"));
  m.def("channel_from_json",
        [](const std::string& text) {
          return channel_from_json(parse_json_text(text));
        },
        py::arg("text"));
  m.def("superchannel_to_json",
        [](const Superchannel& s) { return superchannel_to_json(s).dump(); },
        py::arg("s"));
  m.def("superchannel_from_json",
        [](const std::string& text) {
          return superchannel_from_json(parse_json_text(text));
        },
        py::arg("text"));
}
