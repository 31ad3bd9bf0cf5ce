// Copyright 2026 The Cubist Authors
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

#include <stdexcept>
#include <string>

namespace cubist {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};
struct IndexError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
/// A sampling or interpolation grid does not cover the support it needs to.
struct CoverageError : Error {
  using Error::Error;
};
/// Fock truncation or grid capture lost more norm than allowed.
struct TruncationError : Error {
  using Error::Error;
};
struct SingularPhaseError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace cubist
