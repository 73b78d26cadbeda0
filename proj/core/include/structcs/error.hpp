// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace structcs {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad dimensions, out-of-range indices, malformed specs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive sweep would exceed its combinatorial budget.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// The greedy equitable colouring could not produce a valid partition.
class ColoringFailure : public Error {
 public:
  using Error::Error;
};

// An eigen/SVD/factorisation step did not succeed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input files (CSV, binary, JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace structcs
