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

#pragma once

// Canonical JSON interchange for ensembles:
//
//   { "d": <int>, "n": <int>,
//     "probs": [<float>, ...],
//     "states": [ [[[re, im], ...d], ...d], ...n ] }
//
// Matrices are row-major and every float is written with 17 significant
// digits, so write followed by read reproduces the ensemble bit for bit.

#include <filesystem>
#include <string>
#include <string_view>

#include "avgfid/ensemble.hpp"

namespace avgfid {

/// Throws ParseError (malformed text or schema, with line or field context)
/// or InvariantViolation (well-formed data that is not a valid ensemble).
Ensemble parse_ensemble_json(std::string_view text);
std::string ensemble_to_json(const Ensemble& e);

Ensemble read_ensemble(const std::filesystem::path& path);
void write_ensemble(const Ensemble& e, const std::filesystem::path& path);

namespace json_format {

/// "%.17g"; non-finite values become null.
std::string number(double x);
/// [[[re, im], ...], ...] in row-major order.
std::string matrix(const ComplexMatrix& m);

}  // namespace json_format

/// Writes `text` to `path`, throwing std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace avgfid
