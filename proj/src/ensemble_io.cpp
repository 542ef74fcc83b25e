// Copyright 2026 The avgfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avgfid/ensemble_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "avgfid/errors.hpp"

namespace avgfid {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

long long read_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError("field " + field + ": expected an integer");
  return v.get<long long>();
}

double read_double(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError("field " + field + ": expected a number");
  return v.get<double>();
}

const json& read_array(const json& v, const std::string& field, std::size_t expected) {
  if (!v.is_array()) throw ParseError("field " + field + ": expected an array");
  if (v.size() != expected) {
    throw ParseError("field " + field + ": expected " + std::to_string(expected) + " elements, got " +
                     std::to_string(v.size()));
  }
  return v;
}

// 1-based line of a byte offset reported by the JSON parser.
std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

namespace json_format {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string matrix(const ComplexMatrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += "[" + number(m(i, j).real()) + ", " + number(m(i, j).imag()) + "]";
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace json_format

Ensemble parse_ensemble_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    throw ParseError("line " + std::to_string(line_of(text, err.byte)) + ": " + err.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");

  const long long d = read_int(require(doc, "d"), "d");
  const long long n = read_int(require(doc, "n"), "n");
  if (d < 1) throw ParseError("field d: must be >= 1");
  if (n < 1) throw ParseError("field n: must be >= 1");
  const auto dz = static_cast<std::size_t>(d);
  const auto nz = static_cast<std::size_t>(n);

  const json& probs_json = read_array(require(doc, "probs"), "probs", nz);
  std::vector<double> probs(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    probs[i] = read_double(probs_json[i], "probs[" + std::to_string(i) + "]");
  }

  const json& states_json = read_array(require(doc, "states"), "states", nz);
  std::vector<DensityMatrix> states;
  states.reserve(nz);
  for (std::size_t k = 0; k < nz; ++k) {
    const std::string base = "states[" + std::to_string(k) + "]";
    const json& rows = read_array(states_json[k], base, dz);
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < dz; ++i) {
      const std::string row_field = base + "[" + std::to_string(i) + "]";
      const json& row = read_array(rows[i], row_field, dz);
      for (std::size_t j = 0; j < dz; ++j) {
        const std::string field = row_field + "[" + std::to_string(j) + "]";
        const json& pair = read_array(row[j], field, 2);
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            Complex(read_double(pair[0], field + "[0]"), read_double(pair[1], field + "[1]"));
      }
    }
    const double defect = hermiticity_defect(m);
    if (!(defect <= kHermTol)) {
      throw InvariantViolation(base + ": not Hermitian (deviation " + std::to_string(defect) + ")");
    }
    try {
      states.emplace_back(HermitianMatrix(m));
    } catch (const InvariantViolation& err) {
      throw InvariantViolation(base + ": " + err.what());
    }
  }
  try {
    return Ensemble(std::move(states), ProbabilityVector(std::move(probs)));
  } catch (const InvariantViolation& err) {
    throw InvariantViolation(std::string("probs: ") + err.what());
  }
}

std::string ensemble_to_json(const Ensemble& e) {
  std::string out = "{\n  \"d\": " + std::to_string(e.dim()) + ",\n  \"n\": " + std::to_string(e.size()) +
                    ",\n  \"probs\": [";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ", ";
    out += json_format::number(e.prob(i));
  }
  out += "],\n  \"states\": [\n";
  for (std::size_t k = 0; k < e.size(); ++k) {
    out += "    " + json_format::matrix(e.state(k).matrix());
    out += k + 1 < e.size() ? ",\n" : "\n";
  }
  return out + "  ]\n}\n";
}

Ensemble read_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_ensemble_json(buf.str());
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

void write_ensemble(const Ensemble& e, const std::filesystem::path& path) {
  write_text_file(path, ensemble_to_json(e));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace avgfid
