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

#include "gaussmax/errors.hpp"

namespace gaussmax::json {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view msg) {
  throw InvalidInput("field '" + std::string(field) + "': " + std::string(msg));
}

std::vector<double> reals_of(const json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) fail(field, "expected a number");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> rows_of(const json& j, std::string_view field, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) fail(field, "expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    rows.push_back(reals_of(row, field));
    if (rows.back().size() != dim) fail(field, "expected " + std::to_string(dim) + " columns");
  }
  return rows;
}

}  // namespace

json encode(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json encode(const HermitianMatrix& m) { return encode(m.matrix()); }

json encode(const CVector& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json encode(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const json& require(const json& j, std::string_view key, std::string_view context) {
  if (!j.is_object()) fail(context, "expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end()) {
    throw InvalidInput("missing field '" + std::string(key) + "' in " + std::string(context));
  }
  return *it;
}

CMatrix decode_matrix(const json& j, std::string_view field) {
  if (!j.is_object()) fail(field, "expected {\"dim\", \"re\", \"im\"}");
  const json& dim_j = require(j, "dim", field);
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) fail(field, "'dim' must be a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
  const auto re = rows_of(require(j, "re", field), std::string(field) + ".re", dim);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (j.contains("im")) im = rows_of(j.at("im"), std::string(field) + ".im", dim);
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = cplx(re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                     im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

HermitianMatrix decode_hermitian(const json& j, std::string_view field) {
  const CMatrix m = decode_matrix(j, field);
  try {
    return HermitianMatrix(m);
  } catch (const InvalidInput& e) {
    fail(field, e.what());
  }
}

CVector decode_vector(const json& j, std::string_view field) {
  if (!j.is_object()) fail(field, "expected {\"re\", \"im\"}");
  const auto re = reals_of(require(j, "re", field), std::string(field) + ".re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) {
    im = reals_of(j.at("im"), std::string(field) + ".im");
    if (im.size() != re.size()) fail(field, "'re' and 'im' lengths differ");
  }
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
  return v;
}

std::vector<double> decode_reals(const json& j, std::string_view field) { return reals_of(j, field); }

}  // namespace gaussmax::json
