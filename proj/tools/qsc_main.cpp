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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsc/divergence.hpp"
#include "qsc/json_io.hpp"

namespace {

using namespace qsc;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNo = 3;
constexpr int kExitBoundary = 4;

std::string bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

struct Common {
  double tol = 1e-8;
  bool json = false;
  std::string certificate;

  void attach(CLI::App* cmd, double default_tol = 1e-8) {
    tol = default_tol;
    cmd->add_option("--tol", tol, "numerical tolerance")
        ->check(CLI::Range(1e-300, 1e-2));
    cmd->add_flag("--json", json, "machine-readable output");
    cmd->add_option("--certificate", certificate,
                    "write the optimizing certificate to this file");
  }
};

void emit(const Common& c, const Json& machine, const std::string& human) {
  if (c.json)
    std::cout << machine.dump() << "\n";
  else
    std::cout << human << "\n";
}

int cmd_check_channel(const std::string& path, const Common& c) {
  Channel ch = channel_from_json(parse_json_file(path));
  ChannelVerdict v = is_channel(ch, c.tol);
  Json out{{"cp", v.cp},
           {"tp", v.tp},
           {"cp_residual", v.cp_residual},
           {"tp_residual", v.tp_residual}};
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cp: %s (residual %.3e); tp: %s (residual %.3e)",
                yesno(v.cp), v.cp_residual, yesno(v.tp), v.tp_residual);
  emit(c, out, buf);
  return v.cp && v.tp ? kExitOk : kExitNo;
}

int cmd_check_superchannel(const std::string& path, const std::string& prop,
                           const Common& c) {
  Superchannel s = superchannel_from_json(parse_json_file(path));
  SuperchannelReport rep = is_superchannel(s, c.tol);
  Json out{{"superchannel", rep.ok}};
  std::string human = std::string("superchannel: ") + yesno(rep.ok);
  if (!rep.ok && !rep.violation.empty()) {
    out["violation"] = rep.violation;
    out["psd_residual"] = rep.psd_residual;
    out["marginal_a1b0_residual"] = rep.marg_a1b0;
    out["marginal_ab0_residual"] = rep.marg_ab0;
    human += " (" + rep.violation + ")";
  }
  bool pass = rep.ok;
  const bool square = s.dims.a0 == s.dims.a1 && s.dims.b0 == s.dims.b1;
  if (prop.empty() || prop == "ds") {
    bool ds = rep.ok && is_doubly_stochastic(s, c.tol);
    out["ds"] = ds;
    human += std::string("; ds: ") + yesno(ds);
    if (prop == "ds") pass = ds;
  }
  if (prop.empty() || prop == "cup") {
    bool cup = rep.ok && is_completely_uniformity_preserving(s, c.tol);
    out["cup"] = cup;
    human += std::string("; cup: ") + yesno(cup);
    if (prop == "cup") pass = cup;
  }
  if (prop == "cucp") {
    if (!square) throw ParseError("cucp requires square leg dimensions");
    bool cucp = rep.ok && is_completely_unital_preserving(s, c.tol);
    out["cucp"] = cucp;
    human += std::string("; cucp: ") + yesno(cucp);
    pass = cucp;
  }
  emit(c, out, human);
  return pass ? kExitOk : kExitNo;
}

int cmd_hmin_ext(const std::string& path, const Common& c) {
  Channel ch = channel_from_json(parse_json_file(path));
  double v = h_min_ext(ch);
  emit(c, Json{{"value", v}}, "hmin-ext: " + bits(v) + " bits");
  return kExitOk;
}

int cmd_ecme(const std::string& path, const Common& c) {
  BipartiteChannel w = bipartite_from_json(parse_json_file(path), c.tol);
  EcmeResult r = ecme(w);
  Json out{{"value", r.value},
           {"primal_value", r.primal_value},
           {"dual_value", r.dual_value}};
  if (!c.certificate.empty())
    write_json_file(c.certificate,
                    Json{{"gamma", matrix_to_json(r.gamma)},
                         {"witness", superchannel_to_json(r.witness)}});
  emit(c, out, "ecme: " + bits(r.value) + " bits");
  return kExitOk;
}

int cmd_guess(const std::string& path, const Common& c) {
  BipartiteChannel w = bipartite_from_json(parse_json_file(path), c.tol);
  if (!w.b0_classical || !w.b1_classical)
    throw ParseError("guess requires classical B legs (diagonal blocks)");
  double p = guess_probability_sdp(w);
  emit(c, Json{{"value", p}}, "guess probability: " + bits(p));
  return kExitOk;
}

int cmd_diamond(const std::string& a, const std::string& b, const Common& c) {
  Channel f = channel_from_json(parse_json_file(a));
  Channel g = channel_from_json(parse_json_file(b));
  DivergenceReport rep = diamond_distance(f, g);
  Json out{{"value", rep.value},
           {"input_state", matrix_to_json(rep.input_state)}};
  if (!c.certificate.empty()) write_json_file(c.certificate, out);
  emit(c, out,
       "diamond distance: " + bits(rep.value) + "\ninput state:\n" +
           matrix_to_json(rep.input_state).dump());
  return kExitOk;
}

Json witness_to_json(const WitnessFamily& w) {
  Json maps = Json::array();
  for (const auto& m : w.maps) maps.push_back(channel_to_json(m));
  return Json{{"d_x", static_cast<long long>(w.d_x)},
              {"d_y", static_cast<long long>(w.d_y)},
              {"maps", std::move(maps)},
              {"repair", w.repair},
              {"mix", w.mix}};
}

int cmd_majorize(const std::string& from, const std::string& to,
                 const std::string& gibbs_in, const std::string& gibbs_out,
                 const Common& c) {
  ChannelFamily src = family_from_json(parse_json_file(from));
  ChannelFamily dst = family_from_json(parse_json_file(to));
  if (gibbs_in.empty() != gibbs_out.empty())
    throw ParseError("--gibbs-in and --gibbs-out must be given together");
  MajorizationCertificate cert;
  if (gibbs_in.empty()) {
    cert = majorize_direct(src, dst, c.tol);
  } else {
    cert = gibbs_majorize(src, dst,
                          density_from_json(parse_json_file(gibbs_in)),
                          density_from_json(parse_json_file(gibbs_out)),
                          c.tol);
  }
  Json out{{"margin", cert.margin},
           {"linear_consistent", cert.linear_consistent}};
  std::string human;
  int code = kExitBoundary;
  switch (cert.verdict) {
    case MajorizationVerdict::Feasible: {
      out["verdict"] = "feasible";
      out["residual"] = cert.residual;
      human = "feasible (residual " + bits(cert.residual) + ")";
      code = kExitOk;
      if (!c.certificate.empty())
        write_json_file(c.certificate,
                        Json{{"verdict", "feasible"},
                             {"superchannel",
                              superchannel_to_json(cert.theta)},
                             {"residual", cert.residual}});
      break;
    }
    case MajorizationVerdict::Infeasible: {
      out["verdict"] = "infeasible";
      out["ecme_src_side"] = cert.ecme_src_side;
      out["ecme_dst_side"] = cert.ecme_dst_side;
      human = "infeasible (witness entropies: source side " +
              bits(cert.ecme_src_side) + " > destination side " +
              bits(cert.ecme_dst_side) + ")";
      code = kExitNo;
      if (!c.certificate.empty())
        write_json_file(c.certificate,
                        Json{{"verdict", "infeasible"},
                             {"witness", witness_to_json(cert.witness)},
                             {"ecme_src_side", cert.ecme_src_side},
                             {"ecme_dst_side", cert.ecme_dst_side}});
      break;
    }
    case MajorizationVerdict::Boundary: {
      out["verdict"] = "boundary";
      human = "boundary (numerically ambiguous at tolerance " +
              std::to_string(c.tol) + ")";
      code = kExitBoundary;
      break;
    }
  }
  emit(c, out, human);
  return code;
}

int cmd_realize(const std::string& path, const Common& c) {
  Superchannel s = superchannel_from_json(parse_json_file(path));
  SuperchannelReport rep = is_superchannel(s, c.tol);
  if (!rep.ok) throw ParseError("input is not a superchannel: " + rep.violation);
  Realization r = realize(s, c.tol);
  Json out{{"d_E", static_cast<long long>(r.d_e)},
           {"pre", channel_to_json(r.pre)},
           {"post", channel_to_json(r.post)}};
  if (!c.certificate.empty()) write_json_file(c.certificate, out);
  emit(c, out, "realization with d_E = " + std::to_string(r.d_e));
  return kExitOk;
}

int cmd_gen(const std::string& kind, std::uint64_t seed, Eigen::Index d_in,
            Eigen::Index d_out, Eigen::Index rank, Eigen::Index n,
            Eigen::Index d_env, const std::vector<Eigen::Index>& dims) {
  Rng rng(seed);
  Json out;
  if (kind == "channel") {
    out = channel_to_json(random_channel(d_in, d_out, rank, rng));
  } else if (kind == "superchannel") {
    if (dims.size() != 4)
      throw ParseError("gen superchannel needs --dims dA0 dA1 dB0 dB1");
    out = superchannel_to_json(random_superchannel(
        DimSpec{dims[0], dims[1], dims[2], dims[3]}, d_env, rng));
  } else if (kind == "family") {
    ChannelFamily fam;
    fam.d_in = d_in;
    fam.d_out = d_out;
    for (Eigen::Index j = 0; j < n; ++j) {
      Rng child = rng.child(static_cast<std::uint64_t>(j));
      fam.channels.push_back(random_channel(d_in, d_out, rank, child));
    }
    out = family_to_json(fam);
  } else {
    throw ParseError("gen kind must be channel, superchannel, or family");
  }
  std::cout << out.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum channel majorization toolkit"};
  app.require_subcommand(1);

  std::string file_a, file_b, prop, from, to, gibbs_in, gibbs_out, kind;
  std::uint64_t seed = 0;
  Eigen::Index d_in = 2, d_out = 2, rank = 2, n = 2, d_env = 2;
  std::vector<Eigen::Index> dims;
  Common common[9];

  auto* cc = app.add_subcommand("check-channel", "verify CP and TP");
  cc->add_option("file", file_a)->required();
  common[0].attach(cc);

  auto* cs = app.add_subcommand("check-superchannel",
                                "verify superchannel conditions");
  cs->add_option("file", file_a)->required();
  cs->add_option("--property", prop, "one of sc, ds, cup, cucp")
      ->check(CLI::IsMember({"sc", "ds", "cup", "cucp"}));
  common[1].attach(cs);

  auto* hm = app.add_subcommand("hmin-ext", "extended min-entropy of a channel");
  hm->add_option("file", file_a)->required();
  common[2].attach(hm);

  auto* ec = app.add_subcommand(
      "ecme", "extended conditional min-entropy of a bipartite channel");
  ec->add_option("file", file_a)->required();
  common[3].attach(ec);

  auto* gp = app.add_subcommand(
      "guess", "guessing probability for classical B legs");
  gp->add_option("file", file_a)->required();
  common[4].attach(gp);

  auto* dd = app.add_subcommand("diamond", "diamond distance of two channels");
  dd->add_option("file_a", file_a)->required();
  dd->add_option("file_b", file_b)->required();
  common[5].attach(dd);

  auto* mj = app.add_subcommand("majorize",
                                "decide conversion by one superchannel");
  mj->add_option("--from", from, "source family JSON")->required();
  mj->add_option("--to", to, "destination family JSON")->required();
  mj->add_option("--gibbs-in", gibbs_in, "fixed state on the source output");
  mj->add_option("--gibbs-out", gibbs_out,
                 "fixed state on the destination output");
  common[6].attach(mj, 1e-6);

  auto* rl = app.add_subcommand("realize",
                                "pre/post realization of a superchannel");
  rl->add_option("file", file_a)->required();
  common[7].attach(rl);

  auto* gn = app.add_subcommand("gen", "seeded random instances");
  gn->add_option("kind", kind, "channel | superchannel | family")->required();
  gn->add_option("--seed", seed, "64-bit seed");
  gn->add_option("--d-in", d_in);
  gn->add_option("--d-out", d_out);
  gn->add_option("--rank", rank, "Kraus rank");
  gn->add_option("--n", n, "family size");
  gn->add_option("--d-env", d_env, "environment dimension");
  gn->add_option("--dims", dims, "superchannel leg dimensions")->expected(4);
  common[8].attach(gn);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cc->parsed()) return cmd_check_channel(file_a, common[0]);
    if (cs->parsed())
      return cmd_check_superchannel(file_a, prop == "sc" ? "" : prop,
                                    common[1]);
    if (hm->parsed()) return cmd_hmin_ext(file_a, common[2]);
    if (ec->parsed()) return cmd_ecme(file_a, common[3]);
    if (gp->parsed()) return cmd_guess(file_a, common[4]);
    if (dd->parsed()) return cmd_diamond(file_a, file_b, common[5]);
    if (mj->parsed())
      return cmd_majorize(from, to, gibbs_in, gibbs_out, common[6]);
    if (rl->parsed()) return cmd_realize(file_a, common[7]);
    if (gn->parsed())
      return cmd_gen(kind, seed, d_in, d_out, rank, n, d_env, dims);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
