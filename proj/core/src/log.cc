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

#include "hostility/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

namespace hostility {
namespace {

std::mutex sink_mutex;
WarningSink current_sink;
std::atomic<long> warning_count{0};

}  // namespace

void Warn(const std::string& message) {
  ++warning_count;
  std::lock_guard<std::mutex> lock(sink_mutex);
  if (current_sink) {
    current_sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningSink SetWarningSink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex);
  WarningSink previous = std::move(current_sink);
  current_sink = std::move(sink);
  return previous;
}

long WarningCount() { return warning_count.load(); }

}  // namespace hostility
