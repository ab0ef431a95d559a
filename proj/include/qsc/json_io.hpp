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

#pragma once

#include <string>

#include <json.hpp>

#include "qsc/entropy.hpp"
#include "qsc/majorization.hpp"

namespace qsc {

using Json = nlohmann::json;

/// Thrown on malformed input; `what()` carries a field diagnostic.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex matrices serialize as nested arrays of [re, im] pairs; numbers
/// round-trip bit exactly (shortest decimal that recovers the double).
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// {"d_in": n, "d_out": m, "repr": "kraus"|"choi", "data": ...}; emission
/// always uses the Choi representation.
Json channel_to_json(const Channel& c);
Channel channel_from_json(const Json& j);

/// {"dims": [dA0,dA1,dB0,dB1], "repr": "choi"|"realization", "data": ...};
/// the realization variant embeds two channel objects plus "d_E".
Json superchannel_to_json(const Superchannel& s);
Superchannel superchannel_from_json(const Json& j);

/// Same schema as superchannels, interpreted as a bipartite channel with
/// Choi legs (A0, A1, B0, B1); parsing validates CPTP.
Json bipartite_to_json(const BipartiteChannel& w);
BipartiteChannel bipartite_from_json(const Json& j, double tol = 1e-8);

/// {"dims": [d0, d1], "channels": [ ... ]}.
Json family_to_json(const ChannelFamily& f);
ChannelFamily family_from_json(const Json& j);

/// A density matrix, either a bare nested array or {"data": ...}.
CMatrix density_from_json(const Json& j);

Json parse_json_text(const std::string& text);
Json parse_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qsc
