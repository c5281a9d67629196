// mud/common.h

// Copyright 2026  The MUD Front-End Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MUD_COMMON_H_
#define MUD_COMMON_H_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mud {

// Row-major so that a row is one frame, matching the on-disk feature layout.
template <typename Scalar>
using MatrixX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Base error for every rejection raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Raised when an input file does not match the expected container/format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Raised when a serialized model violates its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace mud

#endif  // MUD_COMMON_H_
