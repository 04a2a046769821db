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

#include <array>

#include "freqdoor/image.hpp"

namespace freqdoor {

// Which RGB<->YUV coefficient set to use.
//
// kCorrected is the YIQ-style pair whose composite is within 3.4e-3 of the
// identity. kPrintedSigns keeps two printed signs (V row: -0.311 for B;
// B row: -1.705 for V) that make the pair non-invertible; it exists for
// auditing the difference.
enum class ColorVariant { kCorrected, kPrintedSigns };

enum class ColorDirection { kRgbToYuv, kYuvToRgb };

struct ColorMatrix {
  std::array<double, 9> m{};  // row-major
  ColorDirection direction = ColorDirection::kRgbToYuv;

  std::array<double, 3> apply(double a, double b, double c) const noexcept {
    return {m[0] * a + m[1] * b + m[2] * c, m[3] * a + m[4] * b + m[5] * c,
            m[6] * a + m[7] * b + m[8] * c};
  }
  double at(int row, int col) const noexcept { return m[row * 3 + col]; }
};

const ColorMatrix& rgb_to_yuv_matrix(ColorVariant variant = ColorVariant::kCorrected);
const ColorMatrix& yuv_to_rgb_matrix(ColorVariant variant = ColorVariant::kCorrected);

// inverse * forward, row-major.
std::array<double, 9> composite_matrix(ColorVariant variant);

// Unclipped per-pixel linear maps. Throw std::invalid_argument when the input
// has the wrong colorspace tag.
PlanarImage rgb_to_yuv(const PlanarImage& img, ColorVariant variant = ColorVariant::kCorrected);
PlanarImage yuv_to_rgb(const PlanarImage& img, ColorVariant variant = ColorVariant::kCorrected);

}  // namespace freqdoor
