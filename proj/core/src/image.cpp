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

#include "freqdoor/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace freqdoor {
namespace {

void check_shape(int height, int width, int channels) {
  if (height <= 0 || width <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(height) + "x" + std::to_string(width));
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                std::to_string(channels));
  }
}

}  // namespace

PixelImage::PixelImage(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
  check_shape(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * width * channels, 0);
}

PixelImage::PixelImage(int height, int width, int channels, std::vector<std::uint8_t> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_shape(height, width, channels);
  if (data_.size() != static_cast<std::size_t>(height) * width * channels) {
    throw std::invalid_argument("pixel buffer holds " + std::to_string(data_.size()) +
                                " bytes, expected " +
                                std::to_string(static_cast<std::size_t>(height) * width * channels));
  }
}

Plane::Plane(int height, int width, double fill)
    : height_(height), width_(width),
      values_(static_cast<std::size_t>(height) * width, fill) {
  if (height < 0 || width < 0) throw std::invalid_argument("negative plane size");
}

int plane_count(ColorSpace space) noexcept { return space == ColorSpace::kGray ? 1 : 3; }

PlanarImage::PlanarImage(int h, int w, ColorSpace s) : height(h), width(w), space(s) {
  planes.assign(plane_count(s), Plane(h, w));
}

void PlanarImage::validate() const {
  if (static_cast<int>(planes.size()) != plane_count(space)) {
    throw std::invalid_argument("planar image has " + std::to_string(planes.size()) +
                                " planes for its colorspace");
  }
  for (const auto& p : planes) {
    if (p.height() != height || p.width() != width) {
      throw std::invalid_argument("planar image planes differ in shape");
    }
  }
}

PlanarImage to_planar(const PixelImage& img) {
  const int c = img.channels();
  PlanarImage out(img.height(), img.width(), c == 1 ? ColorSpace::kGray : ColorSpace::kRgb);
  const auto src = img.data();
  const std::size_t n = static_cast<std::size_t>(img.height()) * img.width();
  for (int ch = 0; ch < c; ++ch) {
    auto dst = out.planes[ch].values();
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i * c + ch];
  }
  return out;
}

std::uint8_t quantize(double value) noexcept {
  // std::round is half away from zero.
  const double r = std::round(value);
  if (!(r > 0.0)) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

PixelImage to_pixel(const PlanarImage& img) {
  if (img.space == ColorSpace::kYuv) {
    throw std::invalid_argument("to_pixel needs RGB or GRAY planes; convert YUV first");
  }
  img.validate();
  const int c = static_cast<int>(img.planes.size());
  PixelImage out(img.height, img.width, c);
  auto dst = out.data();
  const std::size_t n = static_cast<std::size_t>(img.height) * img.width;
  for (int ch = 0; ch < c; ++ch) {
    const auto src = img.planes[ch].values();
    for (std::size_t i = 0; i < n; ++i) dst[i * c + ch] = quantize(src[i]);
  }
  return out;
}

}  // namespace freqdoor
