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

#include "qsc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qsc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Eigen::Index index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(std::string("field \"") + key +
                     "\" must be a positive integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Json& first = j.at(0);
  if (!first.is_array() || first.empty())
    throw ParseError("matrix row must be a non-empty array");
  const Eigen::Index cols = static_cast<Eigen::Index>(first.size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() ||
        static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix row " + std::to_string(r) +
                       " has inconsistent length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number())
        throw ParseError("matrix entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") must be an [re, im] pair");
      m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Json channel_to_json(const Channel& c) {
  Json j;
  j["d_in"] = static_cast<long long>(c.d_in);
  j["d_out"] = static_cast<long long>(c.d_out);
  j["repr"] = "choi";
  j["data"] = matrix_to_json(c.choi);
  return j;
}

Channel channel_from_json(const Json& j) {
  const Eigen::Index d_in = index_field(j, "d_in");
  const Eigen::Index d_out = index_field(j, "d_out");
  const std::string repr = field(j, "repr").get<std::string>();
  const Json& data = field(j, "data");
  if (repr == "choi") {
    CMatrix m = matrix_from_json(data);
    if (m.rows() != d_in * d_out || m.cols() != d_in * d_out)
      throw ParseError("choi matrix side must be d_in * d_out");
    return Channel{d_in, d_out, std::move(m)};
  }
  if (repr == "kraus") {
    if (!data.is_array() || data.empty())
      throw ParseError("kraus data must be a non-empty array of matrices");
    KrausSet k;
    k.d_in = d_in;
    k.d_out = d_out;
    for (const Json& op : data) {
      CMatrix m = matrix_from_json(op);
      if (m.rows() != d_out || m.cols() != d_in)
        throw ParseError("kraus operator must be d_out x d_in");
      k.operators.push_back(std::move(m));
    }
    return choi_from_kraus(k);
  }
  throw ParseError("field \"repr\" must be \"kraus\" or \"choi\"");
}

namespace {

DimSpec dims_from_json(const Json& j) {
  const Json& d = field(j, "dims");
  if (!d.is_array() || d.size() != 4)
    throw ParseError("field \"dims\" must be [dA0, dA1, dB0, dB1]");
  DimSpec out;
  Eigen::Index* legs[4] = {&out.a0, &out.a1, &out.b0, &out.b1};
  for (int i = 0; i < 4; ++i) {
    if (!d.at(i).is_number_integer() || d.at(i).get<long long>() < 1)
      throw ParseError("dims entries must be positive integers");
    *legs[i] = static_cast<Eigen::Index>(d.at(i).get<long long>());
  }
  return out;
}

Json dims_to_json(const DimSpec& d) {
  return Json::array({static_cast<long long>(d.a0),
                      static_cast<long long>(d.a1),
                      static_cast<long long>(d.b0),
                      static_cast<long long>(d.b1)});
}

}  // namespace

Json superchannel_to_json(const Superchannel& s) {
  Json j;
  j["dims"] = dims_to_json(s.dims);
  j["repr"] = "choi";
  j["data"] = matrix_to_json(s.choi);
  return j;
}

Superchannel superchannel_from_json(const Json& j) {
  DimSpec dims = dims_from_json(j);
  const std::string repr = field(j, "repr").get<std::string>();
  const Json& data = field(j, "data");
  if (repr == "choi") {
    CMatrix m = matrix_from_json(data);
    if (m.rows() != dims.total() || m.cols() != dims.total())
      throw ParseError("superchannel choi side must be dA0*dA1*dB0*dB1");
    return Superchannel{dims, std::move(m)};
  }
  if (repr == "realization") {
    Realization r;
    r.pre = channel_from_json(field(data, "pre"));
    r.post = channel_from_json(field(data, "post"));
    r.d_e = index_field(data, "d_E");
    return choi_from_realization(r, dims);
  }
  throw ParseError("field \"repr\" must be \"choi\" or \"realization\"");
}

Json bipartite_to_json(const BipartiteChannel& w) {
  Json j;
  j["dims"] = dims_to_json(w.dims);
  j["repr"] = "choi";
  j["data"] = matrix_to_json(w.choi);
  return j;
}

BipartiteChannel bipartite_from_json(const Json& j, double tol) {
  DimSpec dims = dims_from_json(j);
  const std::string repr = field(j, "repr").get<std::string>();
  if (repr != "choi")
    throw ParseError("bipartite channels use the \"choi\" representation");
  CMatrix m = matrix_from_json(field(j, "data"));
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw ParseError("bipartite choi side must be dA0*dA1*dB0*dB1");
  // regroup legs (A0,A1,B0,B1) -> ((A0 B0),(A1 B1)) for the CPTP check
  CMatrix flat = permute_systems(m, dims.shape(), {0, 2, 1, 3});
  return make_bipartite(Channel{dims.a0 * dims.b0, dims.a1 * dims.b1,
                                std::move(flat)},
                        dims, tol);
}

Json family_to_json(const ChannelFamily& f) {
  Json j;
  j["dims"] = Json::array({static_cast<long long>(f.d_in),
                           static_cast<long long>(f.d_out)});
  Json chans = Json::array();
  for (const auto& c : f.channels) chans.push_back(channel_to_json(c));
  j["channels"] = std::move(chans);
  return j;
}

ChannelFamily family_from_json(const Json& j) {
  const Json& d = field(j, "dims");
  if (!d.is_array() || d.size() != 2)
    throw ParseError("family field \"dims\" must be [d0, d1]");
  ChannelFamily f;
  f.d_in = static_cast<Eigen::Index>(d.at(0).get<long long>());
  f.d_out = static_cast<Eigen::Index>(d.at(1).get<long long>());
  if (f.d_in < 1 || f.d_out < 1)
    throw ParseError("family dims must be positive integers");
  const Json& chans = field(j, "channels");
  if (!chans.is_array())
    throw ParseError("field \"channels\" must be an array");
  for (size_t k = 0; k < chans.size(); ++k) {
    Channel c = channel_from_json(chans.at(k));
    if (c.d_in != f.d_in || c.d_out != f.d_out)
      throw ParseError("family channel " + std::to_string(k) +
                       " does not match the family dims");
    f.channels.push_back(std::move(c));
  }
  return f;
}

CMatrix density_from_json(const Json& j) {
  return matrix_from_json(j.is_object() ? field(j, "data") : j);
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qsc
