// Copyright 2026 The Hostility Detection Authors
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

#ifndef HOSTILITY_ERROR_H_
#define HOSTILITY_ERROR_H_

#include <stdexcept>
#include <string>

namespace hostility {

// Invalid run configuration (missing field, bad value, missing path).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: dataset rows, resource files, model files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stored artifact does not match the resources it was built against.
class ChecksumError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace hostility

#endif  // HOSTILITY_ERROR_H_
