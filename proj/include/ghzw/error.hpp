// Copyright 2026 The ghzw Authors
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

namespace ghzw {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong dimensions, bad indices, parameters out of range.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A matrix that is not positive semidefinite (or not Hermitian).
class NotAState : public Error {
 public:
  using Error::Error;
};

// Trace differs from one where a normalized state was required.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Coordinates or curve parameters outside their admissible region.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// The GHZ/W line intersection could not be bracketed. Only reachable with
// coordinates that slipped past the triangle check.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghzw
