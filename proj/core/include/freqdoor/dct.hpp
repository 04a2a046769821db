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

#include <cstddef>
#include <span>
#include <vector>

#include "freqdoor/image.hpp"

namespace freqdoor {

// Square N x N block of doubles, row-major. The tag keeps spatial samples and
// DCT coefficients from being mixed up.
template <typename Tag>
class SquareBlock {
 public:
  SquareBlock() = default;
  explicit SquareBlock(int size, double fill = 0.0)
      : size_(size), values_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const noexcept { return size_; }

  double& operator()(int row, int col) {
    return values_[static_cast<std::size_t>(row) * size_ + col];
  }
  double operator()(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * size_ + col];
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  int size_ = 0;
  std::vector<double> values_;
};

using SpatialBlock = SquareBlock<struct SpatialTag>;
// Coefficients X(k1, k2); (0, 0) is DC, frequency rises along the diagonal.
using FrequencyBlock = SquareBlock<struct FrequencyTag>;

// Builds a block from a row-major buffer of side*side values. Throws
// std::invalid_argument when the buffer is not square.
SpatialBlock make_spatial_block(std::span<const double> values);

struct BandIndex {
  int k1 = 0;
  int k2 = 0;
  bool operator==(const BandIndex&) const = default;
};

// Orthonormal DCT-II basis value: c(k) * cos(pi * (2n + 1) * k / 2N) with
// c(0) = 1/sqrt(N), c(k > 0) = sqrt(2/N).
double dct_basis(int size, int k, int n);

// 2-D DCT-II, orthonormal. Requires size >= 2.
FrequencyBlock dct2(const SpatialBlock& block);
// Exact inverse of dct2 (DCT-III with the same scaling).
SpatialBlock idct2(const FrequencyBlock& coeffs);

// Spatial image of a single unit coefficient at `band`.
SpatialBlock basis_image(int size, BandIndex band);

// Zeroes every coefficient with k1 + k2 >= cutoff. Requires cutoff >= 0.
FrequencyBlock ideal_low_pass(const FrequencyBlock& coeffs, int cutoff);

struct BlockOrigin {
  int row = 0;
  int col = 0;
  bool operator==(const BlockOrigin&) const = default;
  auto operator<=>(const BlockOrigin&) const = default;
};

// Disjoint full N x N tiles in row-major order; edge strips narrower than N
// are not covered.
struct BlockGrid {
  int height = 0;
  int width = 0;
  int block_size = 0;
  std::vector<BlockOrigin> origins;
};

// Throws std::invalid_argument if block_size < 2 or the plane is smaller
// than one block.
BlockGrid make_grid(int height, int width, int block_size);

SpatialBlock extract_block(const Plane& plane, BlockOrigin origin, int size);
void store_block(Plane& plane, BlockOrigin origin, const SpatialBlock& block);

}  // namespace freqdoor
