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

#include "gaussmax/json_codec.hpp"

#include <string>

#include "gtest/gtest.h"

#include "gaussmax/errors.hpp"
#include "instances.hpp"

using gaussmax::CMatrix;
using gaussmax::CVector;
using gaussmax::HermitianMatrix;
using gaussmax::InvalidInput;
using gaussmax::RVector;
using gaussmax::cplx;
using Json = nlohmann::json;
namespace codec = gaussmax::json;

TEST(json_codec, matrix_round_trip_is_bit_exact) {
  gaussmax::testing::Rng rng(41);
  const CMatrix m = gaussmax::testing::random_complex(rng, 3, 3);
  const std::string text = codec::encode(m).dump();
  const CMatrix back = codec::decode_matrix(Json::parse(text), "m");
  EXPECT_EQ(back, m);
}

TEST(json_codec, vector_round_trip_and_optional_imaginary_part) {
  gaussmax::testing::Rng rng(43);
  const CVector v = gaussmax::testing::random_complex(rng, 4, 1).col(0);
  EXPECT_EQ(codec::decode_vector(Json::parse(codec::encode(v).dump()), "v"), v);
  const CVector real_only = codec::decode_vector(Json::parse(R"({"re": [1, 2]})"), "v");
  EXPECT_EQ(real_only(1), cplx(2.0, 0.0));
}

TEST(json_codec, matrix_layout) {
  const Json j = codec::encode(HermitianMatrix::diagonal({1.0, 2.0}));
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("re")[1][1], 2.0);
  EXPECT_EQ(j.at("im")[0][1], 0.0);
  const Json r = codec::encode(RVector(RVector::Constant(2, 0.5)));
  EXPECT_TRUE(r.is_array());
}

TEST(json_codec, decode_errors_name_the_field) {
  const auto message = [](const Json& j) {
    try {
      codec::decode_hermitian(j, "sigma");
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")).find("sigma"), std::string::npos);
  EXPECT_NE(message(Json::parse(R"({"dim": 0, "re": []})")).find("dim"), std::string::npos);
  EXPECT_NE(message(Json::parse(R"({"dim": 1, "re": [["x"]]})")).find("number"), std::string::npos);
  EXPECT_NE(message(Json::parse(R"({"dim": 2, "re": [[1, 1], [0, 1]]})")).find("sigma"), std::string::npos);
  EXPECT_NE(message(Json::parse(R"([1, 2])")).find("sigma"), std::string::npos);
  EXPECT_THROW(codec::decode_vector(Json::parse(R"({"re": [1], "im": [1, 2]})"), "z"), InvalidInput);
}

TEST(json_codec, require_reports_missing_key) {
  const Json j = Json::parse(R"({"a": 1})");
  EXPECT_EQ(codec::require(j, "a", "input"), 1);
  try {
    codec::require(j, "sigma", "input");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_EQ(std::string(e.what()), "missing field 'sigma' in input");
  }
  EXPECT_EQ(codec::decode_reals(Json::parse("[1, 2.5]"), "f")[1], 2.5);
}
