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

#include "freqdoor/trigger.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "freqdoor/error.hpp"
#include "freqdoor/rng.hpp"

namespace freqdoor {
namespace {

int plane_index(Channel ch) {
  switch (ch) {
    case Channel::kY:
    case Channel::kGray:
      return 0;
    case Channel::kU:
      return 1;
    case Channel::kV:
      return 2;
  }
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

// Frequency-domain change of one block: idct2(dct2(b) + bands) - b.
SpatialBlock block_change(const SpatialBlock& block, const std::vector<BandSpec>& bands) {
  FrequencyBlock coeffs = dct2(block);
  for (const auto& b : bands) coeffs(b.band.k1, b.band.k2) += b.magnitude;
  SpatialBlock out = idct2(coeffs);
  auto o = out.values();
  const auto in = block.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= in[i];
  return out;
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char bytes[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v >> 16),
                                  static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw FormatError("FTRG file truncated");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

void TriggerSpec::validate(int height, int width, int image_channels) const {
  if (channels.empty()) throw std::invalid_argument("trigger needs at least one channel");
  if (bands.empty()) throw std::invalid_argument("trigger needs at least one band");
  if (block_size < 2) throw std::invalid_argument("trigger block size must be >= 2");
  for (const auto& b : bands) {
    if (b.band.k1 < 0 || b.band.k2 < 0 || b.band.k1 >= block_size || b.band.k2 >= block_size) {
      throw std::invalid_argument("band " + format_band(b) + " outside a " +
                                  std::to_string(block_size) + "px block");
    }
    if (!std::isfinite(b.magnitude)) throw std::invalid_argument("band magnitude must be finite");
  }
  for (auto ch : channels) {
    const bool gray = ch == Channel::kGray;
    if (image_channels == 1 && !gray) {
      throw std::invalid_argument("1-channel images only accept the GRAY trigger channel");
    }
    if (image_channels == 3 && gray) {
      throw std::invalid_argument("3-channel images take Y, U or V trigger channels");
    }
  }
  if (image_channels != 1 && image_channels != 3) {
    throw std::invalid_argument("images must have 1 or 3 channels");
  }
  if (height < block_size || width < block_size) {
    throw std::invalid_argument("image " + std::to_string(height) + "x" + std::to_string(width) +
                                " is smaller than one " + std::to_string(block_size) +
                                "px trigger block");
  }
  if (blocks.kind == BlockSelection::Kind::kRandom) {
    const auto available = static_cast<long long>(height / block_size) * (width / block_size);
    if (blocks.count < 1 || blocks.count > available) {
      throw std::invalid_argument("random block count " + std::to_string(blocks.count) +
                                  " not in [1, " + std::to_string(available) + "]");
    }
  }
}

TriggerSpec default_spec(int height, int width, int channels) {
  const double magnitude =
      std::max(height, width) <= 32 ? kDefaultSmallMagnitude : kDefaultLargeMagnitude;
  TriggerSpec spec;
  spec.channels = channels == 1 ? std::vector<Channel>{Channel::kGray}
                                : std::vector<Channel>{Channel::kU, Channel::kV};
  spec.bands = {{kMidBand, magnitude}, {kHighBand, magnitude}};
  spec.block_size = 32;
  spec.blocks = BlockSelection::all();
  return spec;
}

std::vector<BlockOrigin> select_blocks(const BlockGrid& grid, const BlockSelection& selection) {
  if (selection.kind == BlockSelection::Kind::kAll) return grid.origins;
  if (selection.count < 0 || static_cast<std::size_t>(selection.count) > grid.origins.size()) {
    throw std::invalid_argument("cannot select " + std::to_string(selection.count) +
                                " blocks from a grid of " + std::to_string(grid.origins.size()));
  }
  Rng rng(selection.seed);
  return sample_sorted(grid.origins, static_cast<std::size_t>(selection.count), rng);
}

void apply_frequency_trigger(PlanarImage& working, const TriggerSpec& spec) {
  if (working.space == ColorSpace::kRgb) {
    throw std::invalid_argument("frequency trigger goes into YUV or GRAY planes");
  }
  working.validate();
  spec.validate(working.height, working.width, static_cast<int>(working.planes.size()));
  const auto origins = select_blocks(make_grid(working.height, working.width, spec.block_size),
                                     spec.blocks);
  for (auto ch : spec.channels) {
    Plane& plane = working.planes[plane_index(ch)];
    for (const auto& origin : origins) {
      SpatialBlock block = extract_block(plane, origin, spec.block_size);
      FrequencyBlock coeffs = dct2(block);
      for (const auto& b : spec.bands) coeffs(b.band.k1, b.band.k2) += b.magnitude;
      store_block(plane, origin, idct2(coeffs));
    }
  }
}

PlanarImage inject_planar(const PixelImage& img, const TriggerSpec& spec) {
  spec.validate(img.height(), img.width(), img.channels());
  PlanarImage source = to_planar(img);
  const auto origins =
      select_blocks(make_grid(img.height(), img.width(), spec.block_size), spec.blocks);

  if (source.space == ColorSpace::kGray) {
    Plane& plane = source.planes[0];
    for (const auto& origin : origins) {
      SpatialBlock block = extract_block(plane, origin, spec.block_size);
      const SpatialBlock change = block_change(block, spec.bands);
      auto v = block.values();
      const auto d = change.values();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += d[i];
      store_block(plane, origin, block);
    }
    return source;
  }

  const PlanarImage yuv = rgb_to_yuv(source, spec.color);
  PlanarImage change(img.height(), img.width(), ColorSpace::kYuv);
  for (auto ch : spec.channels) {
    const int p = plane_index(ch);
    for (const auto& origin : origins) {
      store_block(change.planes[p], origin,
                  block_change(extract_block(yuv.planes[p], origin, spec.block_size), spec.bands));
    }
  }
  const PlanarImage rgb_change = yuv_to_rgb(change, spec.color);
  for (int ch = 0; ch < 3; ++ch) {
    auto dst = source.planes[ch].values();
    const auto d = rgb_change.planes[ch].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += d[i];
  }
  return source;
}

PixelImage inject(const PixelImage& img, const TriggerSpec& spec) {
  return to_pixel(inject_planar(img, spec));
}

SpatialTrigger spatial_trigger(const TriggerSpec& spec, int height, int width, int channels) {
  spec.validate(height, width, channels);
  const auto origins = select_blocks(make_grid(height, width, spec.block_size), spec.blocks);

  // Pattern shared by every selected block and channel.
  FrequencyBlock coeffs(spec.block_size);
  for (const auto& b : spec.bands) coeffs(b.band.k1, b.band.k2) += b.magnitude;
  const SpatialBlock pattern = idct2(coeffs);

  SpatialTrigger out{height, width, {}};
  if (channels == 1) {
    out.delta.assign(1, Plane(height, width));
    for (const auto& origin : origins) store_block(out.delta[0], origin, pattern);
    return out;
  }

  PlanarImage yuv(height, width, ColorSpace::kYuv);
  for (auto ch : spec.channels) {
    for (const auto& origin : origins) store_block(yuv.planes[plane_index(ch)], origin, pattern);
  }
  out.delta = yuv_to_rgb(yuv, spec.color).planes;
  return out;
}

PixelImage superimpose(const PixelImage& img, const SpatialTrigger& trigger) {
  if (img.height() != trigger.height || img.width() != trigger.width ||
      img.channels() != trigger.channels()) {
    throw std::invalid_argument("trigger shape does not match image");
  }
  PlanarImage planar = to_planar(img);
  for (int ch = 0; ch < img.channels(); ++ch) {
    auto dst = planar.planes[ch].values();
    const auto d = trigger.delta[ch].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += d[i];
  }
  return to_pixel(planar);
}

void write_ftrg(const SpatialTrigger& trigger, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write("FTRG", 4);
  write_u32(out, static_cast<std::uint32_t>(trigger.height));
  write_u32(out, static_cast<std::uint32_t>(trigger.width));
  write_u32(out, static_cast<std::uint32_t>(trigger.channels()));
  for (const auto& plane : trigger.delta) {
    for (double v : plane.values()) write_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

SpatialTrigger read_ftrg(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "FTRG", 4) != 0) {
    throw FormatError(path.string() + ": missing FTRG magic");
  }
  const auto h = read_u32(in);
  const auto w = read_u32(in);
  const auto c = read_u32(in);
  if (h == 0 || w == 0 || (c != 1 && c != 3) || h > (1u << 16) || w > (1u << 16)) {
    throw FormatError(path.string() + ": bad FTRG header");
  }
  SpatialTrigger out{static_cast<int>(h), static_cast<int>(w), {}};
  out.delta.assign(c, Plane(out.height, out.width));
  for (auto& plane : out.delta) {
    for (double& v : plane.values()) v = std::bit_cast<float>(read_u32(in));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(path.string() + ": trailing bytes after FTRG payload");
  }
  return out;
}

PixelImage visualize_trigger(const SpatialTrigger& trigger, double factor) {
  PlanarImage planar(trigger.height, trigger.width,
                     trigger.channels() == 1 ? ColorSpace::kGray : ColorSpace::kRgb);
  for (int ch = 0; ch < trigger.channels(); ++ch) {
    auto dst = planar.planes[ch].values();
    const auto d = trigger.delta[ch].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = 128.0 + factor * d[i];
  }
  return to_pixel(planar);
}

BandSpec parse_band(std::string_view text) {
  const auto colon = text.find(':');
  const auto comma = text.find(',');
  if (colon == std::string_view::npos || comma == std::string_view::npos || comma > colon) {
    throw std::invalid_argument("band '" + std::string(text) + "' is not of the form k1,k2:magnitude");
  }
  BandSpec band;
  band.band.k1 = parse_number<int>(text.substr(0, comma), "band index");
  band.band.k2 = parse_number<int>(text.substr(comma + 1, colon - comma - 1), "band index");
  band.magnitude = parse_number<double>(text.substr(colon + 1), "band magnitude");
  if (band.band.k1 < 0 || band.band.k2 < 0) {
    throw std::invalid_argument("band '" + std::string(text) + "' has a negative index");
  }
  return band;
}

std::string format_band(const BandSpec& band) {
  std::ostringstream out;
  out.precision(17);
  out << band.band.k1 << ',' << band.band.k2 << ':' << band.magnitude;
  return out.str();
}

std::vector<Channel> parse_channels(std::string_view text) {
  std::vector<Channel> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto name = trim(text.substr(0, comma));
    Channel ch;
    if (name == "Y" || name == "y") {
      ch = Channel::kY;
    } else if (name == "U" || name == "u") {
      ch = Channel::kU;
    } else if (name == "V" || name == "v") {
      ch = Channel::kV;
    } else if (name == "GRAY" || name == "gray") {
      ch = Channel::kGray;
    } else {
      throw std::invalid_argument("unknown trigger channel '" + std::string(name) + "'");
    }
    if (std::find(out.begin(), out.end(), ch) != out.end()) {
      throw std::invalid_argument("trigger channel '" + std::string(name) + "' given twice");
    }
    out.push_back(ch);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("no trigger channels given");
  return out;
}

std::string format_channels(const std::vector<Channel>& channels) {
  std::string out;
  for (auto ch : channels) {
    if (!out.empty()) out += ',';
    switch (ch) {
      case Channel::kY: out += 'Y'; break;
      case Channel::kU: out += 'U'; break;
      case Channel::kV: out += 'V'; break;
      case Channel::kGray: out += "GRAY"; break;
    }
  }
  return out;
}

BlockSelection parse_block_selection(std::string_view text) {
  text = trim(text);
  if (text == "all") return BlockSelection::all();
  constexpr std::string_view prefix = "random:";
  if (text.substr(0, prefix.size()) == prefix) {
    text.remove_prefix(prefix.size());
    const auto colon = text.find(':');
    const int count = parse_number<int>(text.substr(0, colon), "block count");
    const std::uint64_t seed =
        colon == std::string_view::npos ? 0 : parse_number<std::uint64_t>(text.substr(colon + 1), "block seed");
    return BlockSelection::random(count, seed);
  }
  throw std::invalid_argument("block selection '" + std::string(text) +
                              "' is not 'all' or 'random:<count>[:<seed>]'");
}

std::string format_block_selection(const BlockSelection& selection) {
  if (selection.kind == BlockSelection::Kind::kAll) return "all";
  return "random:" + std::to_string(selection.count) + ":" + std::to_string(selection.seed);
}

}  // namespace freqdoor
