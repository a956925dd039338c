// Copyright 2026 The gaussmax Authors
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

// JSON wire encoding shared by every module:
//   complex matrix: {"dim": s, "re": [[...], ...], "im": [[...], ...]}
//   complex vector: {"re": [...], "im": [...]}
// "im" may be omitted on input (all-zero imaginary part); it is always
// written on output. Decoding errors raise InvalidInput naming the field.

#pragma once

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussmax/gaussian.hpp"
#include "gaussmax/linalg.hpp"

namespace gaussmax::json {

using nlohmann::json;

json encode(const CMatrix& m);
json encode(const HermitianMatrix& m);
json encode(const CVector& v);
json encode(const RVector& v);

/// `field` is used only for error messages.
CMatrix decode_matrix(const json& j, std::string_view field);
HermitianMatrix decode_hermitian(const json& j, std::string_view field);
CVector decode_vector(const json& j, std::string_view field);
std::vector<double> decode_reals(const json& j, std::string_view field);

/// Looks up a required member of an object.
const json& require(const json& j, std::string_view key, std::string_view context);

}  // namespace gaussmax::json
