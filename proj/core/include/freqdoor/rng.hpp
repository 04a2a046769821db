// Copyright 2026 The freqdoor Authors
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
#include <algorithm>
#include <random>
#include <vector>

namespace freqdoor {

// std::mt19937_64's output sequence is fixed by the standard; the
// distributions are not, so index draws go through uniform_index.
using Rng = std::mt19937_64;

// Unbiased draw from [0, bound) by rejection. bound must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

// `count` distinct positions of `population`, returned in ascending order.
// Requires count <= population.size().
template <typename T>
std::vector<T> sample_sorted(const std::vector<T>& population, std::size_t count,
                             Rng& rng) {
  std::vector<std::size_t> order(population.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + uniform_index(rng, order.size() - i);
    std::swap(order[i], order[j]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  std::vector<T> out;
  out.reserve(count);
  for (auto i : order) out.push_back(population[i]);
  return out;
}

}  // namespace freqdoor
