// Copyright 2026 The Authors.
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

#pragma once

#include <cstddef>
#include <functional>

namespace nlt {

// 0 means "use hardware concurrency"; always resolves to >= 1.
unsigned resolve_threads(unsigned requested) noexcept;

// Runs fn(block) for every block in [0, blocks). Blocks are claimed by workers
// in arbitrary order, so callers must write results into per-block slots and
// merge them in block order afterwards; that keeps every reduction identical
// at any thread count.
void for_each_block(std::size_t blocks, unsigned threads,
                    const std::function<void(std::size_t)>& fn);

}  // namespace nlt
