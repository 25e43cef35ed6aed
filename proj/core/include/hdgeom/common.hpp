/*
   Copyright 2026 The hdgeom Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hdgeom {

/// Row-major storage keeps one sample per contiguous row, which is what every
/// pairwise kernel in the library iterates over.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

/// Precondition or domain violation in a library call.
class InvalidArgument : public std::invalid_argument
{
public:
   using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its configured resource budget.
class ResourceLimit : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

/// Malformed file or failed read/write.
class IoError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
   if (!condition)
   {
      throw InvalidArgument(message);
   }
}

std::string version();

} // namespace hdgeom
