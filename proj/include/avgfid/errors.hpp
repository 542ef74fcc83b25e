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

#include <stdexcept>
#include <string>

namespace avgfid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AVGFID_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// Linear algebra.
AVGFID_DEFINE_ERROR(DecompositionFailure);
AVGFID_DEFINE_ERROR(NotPSD);
AVGFID_DEFINE_ERROR(SingularMatrix);
AVGFID_DEFINE_ERROR(RankDeficient);
AVGFID_DEFINE_ERROR(ZeroTrace);

// Domain validation.
AVGFID_DEFINE_ERROR(DimensionMismatch);
AVGFID_DEFINE_ERROR(OutOfRange);
AVGFID_DEFINE_ERROR(InvariantViolation);
AVGFID_DEFINE_ERROR(NumericalInstability);
AVGFID_DEFINE_ERROR(DegenerateWeights);

// A state that must be full rank is not. The message carries a remediation hint.
AVGFID_DEFINE_ERROR(SingularState);

/// Malformed input file. `what()` includes line and field context.
AVGFID_DEFINE_ERROR(ParseError);

#undef AVGFID_DEFINE_ERROR

}  // namespace avgfid
