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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "freqdoor/colorspace.hpp"
#include "freqdoor/dct.hpp"
#include "freqdoor/image.hpp"

namespace freqdoor {

enum class Channel { kY, kU, kV, kGray };

struct BandSpec {
  BandIndex band;
  double magnitude = 0.0;  // added to X(k1, k2)
  bool operator==(const BandSpec&) const = default;
};

struct BlockSelection {
  enum class Kind { kAll, kRandom };
  Kind kind = Kind::kAll;
  int count = 0;           // kRandom only
  std::uint64_t seed = 0;  // kRandom only

  static BlockSelection all() { return {}; }
  static BlockSelection random(int count, std::uint64_t seed) {
    return {Kind::kRandom, count, seed};
  }
  bool operator==(const BlockSelection&) const = default;
};

// A frequency-domain trigger. Immutable once built; share freely.
struct TriggerSpec {
  std::vector<Channel> channels;
  std::vector<BandSpec> bands;
  int block_size = 32;
  BlockSelection blocks;
  ColorVariant color = ColorVariant::kCorrected;

  // Throws std::invalid_argument when the trigger cannot be applied to an
  // image of this shape.
  void validate(int height, int width, int channels) const;

  bool operator==(const TriggerSpec&) const = default;
};

inline constexpr double kDefaultSmallMagnitude = 30.0;
inline constexpr double kDefaultLargeMagnitude = 50.0;
inline constexpr BandIndex kMidBand{15, 15};
inline constexpr BandIndex kHighBand{31, 31};

// U,V (or GRAY) channels, bands (15,15) and (31,31), N = 32, all blocks.
// Magnitude 30 for images no larger than 32 pixels per side, else 50.
TriggerSpec default_spec(int height, int width, int channels);

// Origins of the blocks the trigger is written to.
std::vector<BlockOrigin> select_blocks(const BlockGrid& grid, const BlockSelection& selection);

// Adds the trigger coefficients to every selected block of the selected
// planes of a YUV (or GRAY) working image.
void apply_frequency_trigger(PlanarImage& working, const TriggerSpec& spec);

// Full pipeline without the final quantization: RGB (or GRAY) planes of the
// poisoned image. Only the change made in the YUV domain is mapped back to
// RGB and added to the source planes.
PlanarImage inject_planar(const PixelImage& img, const TriggerSpec& spec);

PixelImage inject(const PixelImage& img, const TriggerSpec& spec);

// The fixed pixel-domain perturbation equivalent to the trigger. Channel
// count follows the image (3 for RGB, 1 for GRAY).
struct SpatialTrigger {
  int height = 0;
  int width = 0;
  std::vector<Plane> delta;

  int channels() const noexcept { return static_cast<int>(delta.size()); }
};

SpatialTrigger spatial_trigger(const TriggerSpec& spec, int height, int width, int channels);

// quantize(img + delta) per pixel.
PixelImage superimpose(const PixelImage& img, const SpatialTrigger& trigger);

// "FTRG", u32 H, W, C little-endian, then C*H*W little-endian float32 values,
// channel-major then row-major.
void write_ftrg(const SpatialTrigger& trigger, const std::filesystem::path& path);
SpatialTrigger read_ftrg(const std::filesystem::path& path);

// 128 + factor * delta, quantized.
PixelImage visualize_trigger(const SpatialTrigger& trigger, double factor = 10.0);

// "k1,k2:mag" band flag syntax.
BandSpec parse_band(std::string_view text);
std::string format_band(const BandSpec& band);

// Comma-separated channel names: Y, U, V, GRAY.
std::vector<Channel> parse_channels(std::string_view text);
std::string format_channels(const std::vector<Channel>& channels);

// "all" or "random:<count>:<seed>".
BlockSelection parse_block_selection(std::string_view text);
std::string format_block_selection(const BlockSelection& selection);

}  // namespace freqdoor
