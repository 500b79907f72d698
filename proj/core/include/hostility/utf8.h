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

#ifndef HOSTILITY_UTF8_H_
#define HOSTILITY_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace hostility::utf8 {

// Decodes UTF-8 into code points. Returns false on any invalid sequence
// (overlong forms, surrogates, truncated input, values above U+10FFFF).
bool Decode(std::string_view text, std::u32string* out);

// Decodes, throwing DataError on invalid input. `context` is included in
// the message.
std::u32string DecodeOrThrow(std::string_view text, std::string_view context);

bool IsValid(std::string_view text);

void Append(char32_t cp, std::string* out);
std::string Encode(std::u32string_view cps);

// Number of code points in valid UTF-8 text.
size_t Length(std::string_view text);

}  // namespace hostility::utf8

#endif  // HOSTILITY_UTF8_H_
