// Copyright 2026 The ska Authors
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

#ifndef SKA_ERROR_HPP_
#define SKA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ska {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ground set is too large for exhaustive enumeration.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

/// Default cap on ground-set sizes for enumeration (2^n subsets, Bell(n)
/// partitions).
inline constexpr int kDefaultEnumerationCap = 16;

}  // namespace ska

#endif  // SKA_ERROR_HPP_
