// Copyright 2026 The qcell Authors
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

#ifndef QCELL_ERROR_HPP
#define QCELL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qcell {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (non-square, mismatched widths, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-unitary matrix,
/// out-of-range wire, malformed document, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A filesystem or stream operation failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcell

#endif  // QCELL_ERROR_HPP
