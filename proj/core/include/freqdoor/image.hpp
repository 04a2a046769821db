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
#include <cstdint>
#include <span>
#include <vector>

namespace freqdoor {

// Interleaved 8-bit image, row-major, channel order R,G,B (or one gray plane).
class PixelImage {
 public:
  PixelImage() = default;
  // Zero-filled image. Throws std::invalid_argument on a bad shape.
  PixelImage(int height, int width, int channels);
  // Takes ownership of `data`, which must hold height*width*channels bytes.
  PixelImage(int height, int width, int channels, std::vector<std::uint8_t> data);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int row, int col, int channel) {
    return data_[index(row, col, channel)];
  }
  std::uint8_t at(int row, int col, int channel) const {
    return data_[index(row, col, channel)];
  }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  bool same_shape(const PixelImage& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  bool operator==(const PixelImage&) const = default;

 private:
  std::size_t index(int row, int col, int channel) const noexcept {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + channel;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

// A single floating-point channel.
class Plane {
 public:
  Plane() = default;
  Plane(int height, int width, double fill = 0.0);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  double& operator()(int row, int col) {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  double operator()(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const Plane&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

enum class ColorSpace { kRgb, kYuv, kGray };

// Per-channel float planes: the working representation between transform
// stages. GRAY has one plane, RGB/YUV three.
struct PlanarImage {
  int height = 0;
  int width = 0;
  ColorSpace space = ColorSpace::kRgb;
  std::vector<Plane> planes;

  PlanarImage() = default;
  PlanarImage(int height, int width, ColorSpace space);

  // Throws std::invalid_argument if plane count or plane shapes are wrong.
  void validate() const;
};

int plane_count(ColorSpace space) noexcept;

PlanarImage to_planar(const PixelImage& img);

// Rounds half away from zero, then clips to [0, 255]. YUV input is rejected.
PixelImage to_pixel(const PlanarImage& img);

// The quantization rule used by to_pixel.
std::uint8_t quantize(double value) noexcept;

}  // namespace freqdoor
