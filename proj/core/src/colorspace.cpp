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

#include "freqdoor/colorspace.hpp"

#include <stdexcept>

namespace freqdoor {
namespace {

const ColorMatrix kForwardCorrected{{0.299, 0.587, 0.114,    //
                                     0.596, -0.272, -0.321,  //
                                     0.212, -0.523, 0.311},
                                    ColorDirection::kRgbToYuv};
const ColorMatrix kForwardVerbatim{{0.299, 0.587, 0.114,    //
                                    0.596, -0.272, -0.321,  //
                                    0.212, -0.523, -0.311},
                                   ColorDirection::kRgbToYuv};
const ColorMatrix kInverseCorrected{{1.0, 0.956, 0.620,    //
                                     1.0, -0.272, -0.647,  //
                                     1.0, -1.108, 1.705},
                                    ColorDirection::kYuvToRgb};
const ColorMatrix kInverseVerbatim{{1.0, 0.956, 0.620,    //
                                    1.0, -0.272, -0.647,  //
                                    1.0, -1.108, -1.705},
                                   ColorDirection::kYuvToRgb};

PlanarImage convert(const PlanarImage& img, const ColorMatrix& matrix, ColorSpace to) {
  img.validate();
  PlanarImage out(img.height, img.width, to);
  const auto a = img.planes[0].values();
  const auto b = img.planes[1].values();
  const auto c = img.planes[2].values();
  auto x = out.planes[0].values();
  auto y = out.planes[1].values();
  auto z = out.planes[2].values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto v = matrix.apply(a[i], b[i], c[i]);
    x[i] = v[0];
    y[i] = v[1];
    z[i] = v[2];
  }
  return out;
}

}  // namespace

const ColorMatrix& rgb_to_yuv_matrix(ColorVariant variant) {
  return variant == ColorVariant::kCorrected ? kForwardCorrected : kForwardVerbatim;
}

const ColorMatrix& yuv_to_rgb_matrix(ColorVariant variant) {
  return variant == ColorVariant::kCorrected ? kInverseCorrected : kInverseVerbatim;
}

std::array<double, 9> composite_matrix(ColorVariant variant) {
  const auto& f = rgb_to_yuv_matrix(variant);
  const auto& g = yuv_to_rgb_matrix(variant);
  std::array<double, 9> out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += g.at(r, k) * f.at(k, c);
      out[r * 3 + c] = s;
    }
  }
  return out;
}

PlanarImage rgb_to_yuv(const PlanarImage& img, ColorVariant variant) {
  if (img.space != ColorSpace::kRgb) throw std::invalid_argument("rgb_to_yuv expects RGB planes");
  return convert(img, rgb_to_yuv_matrix(variant), ColorSpace::kYuv);
}

PlanarImage yuv_to_rgb(const PlanarImage& img, ColorVariant variant) {
  if (img.space != ColorSpace::kYuv) throw std::invalid_argument("yuv_to_rgb expects YUV planes");
  return convert(img, yuv_to_rgb_matrix(variant), ColorSpace::kRgb);
}

}  // namespace freqdoor
