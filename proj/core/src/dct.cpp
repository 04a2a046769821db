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

#include "freqdoor/dct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace freqdoor {
namespace {

// basis[k * n + i] = c(k) cos(pi (2i + 1) k / 2n)
class BasisTable {
 public:
  explicit BasisTable(int n) : n_(n), table_(static_cast<std::size_t>(n) * n) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) table_[static_cast<std::size_t>(k) * n + i] = dct_basis(n, k, i);
    }
  }
  double operator()(int k, int i) const { return table_[static_cast<std::size_t>(k) * n_ + i]; }

 private:
  int n_;
  std::vector<double> table_;
};

const BasisTable& basis_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<BasisTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BasisTable>(n);
  return *slot;
}

void check_size(int n) {
  if (n < 2) throw std::invalid_argument("DCT block size must be >= 2, got " + std::to_string(n));
}

}  // namespace

double dct_basis(int size, int k, int n) {
  const double scale = k == 0 ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
  return scale * std::cos(std::numbers::pi * (2.0 * n + 1.0) * k / (2.0 * size));
}

SpatialBlock make_spatial_block(std::span<const double> values) {
  const auto side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(values.size()))));
  if (static_cast<std::size_t>(side) * side != values.size() || side == 0) {
    throw std::invalid_argument("block of " + std::to_string(values.size()) +
                                " values is not square");
  }
  SpatialBlock block(side);
  std::copy(values.begin(), values.end(), block.values().begin());
  return block;
}

FrequencyBlock dct2(const SpatialBlock& block) {
  const int n = block.size();
  check_size(n);
  const auto& c = basis_for(n);
  // Rows first: tmp(k1, n2) = sum_n1 c(k1, n1) x(n1, n2).
  SpatialBlock tmp(n);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int n1 = 0; n1 < n; ++n1) {
      const double w = c(k1, n1);
      for (int n2 = 0; n2 < n; ++n2) tmp(k1, n2) += w * block(n1, n2);
    }
  }
  FrequencyBlock out(n);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      double s = 0.0;
      for (int n2 = 0; n2 < n; ++n2) s += tmp(k1, n2) * c(k2, n2);
      out(k1, k2) = s;
    }
  }
  return out;
}

SpatialBlock idct2(const FrequencyBlock& coeffs) {
  const int n = coeffs.size();
  check_size(n);
  const auto& c = basis_for(n);
  // tmp(n1, k2) = sum_k1 c(k1, n1) X(k1, k2).
  SpatialBlock tmp(n);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int n1 = 0; n1 < n; ++n1) {
      const double w = c(k1, n1);
      if (w == 0.0) continue;
      for (int k2 = 0; k2 < n; ++k2) tmp(n1, k2) += w * coeffs(k1, k2);
    }
  }
  SpatialBlock out(n);
  for (int n1 = 0; n1 < n; ++n1) {
    for (int n2 = 0; n2 < n; ++n2) {
      double s = 0.0;
      for (int k2 = 0; k2 < n; ++k2) s += tmp(n1, k2) * c(k2, n2);
      out(n1, n2) = s;
    }
  }
  return out;
}

SpatialBlock basis_image(int size, BandIndex band) {
  check_size(size);
  SpatialBlock out(size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) out(r, c) = dct_basis(size, band.k1, r) * dct_basis(size, band.k2, c);
  }
  return out;
}

FrequencyBlock ideal_low_pass(const FrequencyBlock& coeffs, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("low-pass cutoff must be >= 0");
  FrequencyBlock out = coeffs;
  const int n = coeffs.size();
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      if (k1 + k2 >= cutoff) out(k1, k2) = 0.0;
    }
  }
  return out;
}

BlockGrid make_grid(int height, int width, int block_size) {
  if (block_size < 2) {
    throw std::invalid_argument("block size must be >= 2, got " + std::to_string(block_size));
  }
  if (height < block_size || width < block_size) {
    throw std::invalid_argument("a " + std::to_string(height) + "x" + std::to_string(width) +
                                " plane cannot hold one " + std::to_string(block_size) + "px block");
  }
  BlockGrid grid{height, width, block_size, {}};
  for (int r = 0; r + block_size <= height; r += block_size) {
    for (int c = 0; c + block_size <= width; c += block_size) grid.origins.push_back({r, c});
  }
  return grid;
}

SpatialBlock extract_block(const Plane& plane, BlockOrigin origin, int size) {
  SpatialBlock block(size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) block(r, c) = plane(origin.row + r, origin.col + c);
  }
  return block;
}

void store_block(Plane& plane, BlockOrigin origin, const SpatialBlock& block) {
  const int size = block.size();
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) plane(origin.row + r, origin.col + c) = block(r, c);
  }
}

}  // namespace freqdoor
