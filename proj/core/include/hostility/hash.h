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

#ifndef HOSTILITY_HASH_H_
#define HOSTILITY_HASH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace hostility {

// 64-bit FNV-1a. Used for artifact integrity and config fingerprints, not
// for anything adversarial.
class Fnv1a {
 public:
  Fnv1a& Update(std::string_view bytes);
  uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string HashHex(std::string_view bytes);
std::string HashFileHex(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace hostility

#endif  // HOSTILITY_HASH_H_
