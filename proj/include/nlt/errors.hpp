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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlt {

enum class Errc {
  duplicate_edge,
  weight_out_of_range,
  weight_sum_exceeds_one,
  unknown_endpoint,
  reserved_label,
  cyclic_network,
  void_in_permanent_set,
  void_target,
  invalid_seed,
  missing_threshold,
  cell_budget_exceeded,
  search_budget_exceeded,
  candidate_already_seeded,
  bad_input,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::move(what)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Carries one witness cycle (node indices in cycle order) for diagnostics.
class CyclicNetworkError : public Error {
 public:
  CyclicNetworkError(std::vector<std::uint32_t> cycle, std::string what)
      : Error(Errc::cyclic_network, std::move(what)), cycle_(std::move(cycle)) {}
  const std::vector<std::uint32_t>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::uint32_t> cycle_;
};

}  // namespace nlt
