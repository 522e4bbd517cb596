// Copyright 2026 The phaselift-haar Authors
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

#include <cstddef>
#include <exception>
#include <functional>

namespace phaselift {

/// Worker count used when a caller passes 0: $PHASELIFT_THREADS if set to a
/// positive integer, else std::thread::hardware_concurrency().
std::size_t default_thread_count();

/// Runs body(0) ... body(count - 1) on up to `threads` workers (0 selects the
/// default). Indices are claimed dynamically; callers write results into
/// per-index slots and reduce them in index order afterwards. If any body
/// throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace phaselift
