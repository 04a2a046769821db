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

#include "freqdoor/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "freqdoor/error.hpp"

namespace fs = std::filesystem;

namespace freqdoor {
namespace {

constexpr std::size_t kPlaneBytes = kCifarSide * kCifarSide;

bool is_png(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png";
}

std::string label_dir_name(int label, int max_label) {
  const auto width = std::to_string(std::max(max_label, 0)).size();
  auto name = std::to_string(label);
  return std::string(width - std::min(width, name.size()), '0') + name;
}

}  // namespace

Dataset load_cifar10_bin(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (bytes.size() % kCifarRecordBytes != 0) {
    throw FormatError(path.string() + ": " + std::to_string(bytes.size()) +
                      " bytes is not a whole number of 3073-byte records (truncated?)");
  }
  const std::size_t count = bytes.size() / kCifarRecordBytes;
  Dataset out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const std::uint8_t* rec = bytes.data() + r * kCifarRecordBytes;
    if (rec[0] >= kCifarClasses) {
      throw FormatError(path.string() + ": record " + std::to_string(r) + " has label " +
                        std::to_string(rec[0]) + " > 9");
    }
    std::vector<std::uint8_t> pixels(3 * kPlaneBytes);
    for (std::size_t i = 0; i < kPlaneBytes; ++i) {
      pixels[3 * i + 0] = rec[1 + i];
      pixels[3 * i + 1] = rec[1 + kPlaneBytes + i];
      pixels[3 * i + 2] = rec[1 + 2 * kPlaneBytes + i];
    }
    out.push_back({PixelImage(kCifarSide, kCifarSide, 3, std::move(pixels)), rec[0],
                   std::to_string(r)});
  }
  return out;
}

void write_cifar10_bin(const Dataset& records, const fs::path& path) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(records.size() * kCifarRecordBytes);
  for (const auto& rec : records) {
    const auto& img = rec.image;
    if (img.height() != kCifarSide || img.width() != kCifarSide || img.channels() != 3) {
      throw std::invalid_argument("record " + rec.source_id + " is not a 32x32x3 image");
    }
    if (rec.label < 0 || rec.label > 255) {
      throw std::invalid_argument("record " + rec.source_id + " label " +
                                  std::to_string(rec.label) + " does not fit one byte");
    }
    bytes.push_back(static_cast<std::uint8_t>(rec.label));
    const auto px = img.data();
    for (int ch = 0; ch < 3; ++ch) {
      for (std::size_t i = 0; i < kPlaneBytes; ++i) bytes.push_back(px[3 * i + ch]);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::string> list_classes(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError(root.string() + " is not a directory");
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Dataset load_image_dir(const fs::path& root, const ImageDirOptions& options) {
  const auto classes = list_classes(root);
  Dataset out;
  for (std::size_t label = 0; label < classes.size(); ++label) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root / classes[label])) {
      if (entry.is_regular_file() && is_png(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      const auto id = fs::relative(file, root).generic_string();
      try {
        out.push_back({read_png(file), static_cast<int>(label), id});
      } catch (const Error& e) {
        if (options.strict) throw FormatError("cannot decode " + file.string() + ": " + e.what());
        if (options.on_skip) options.on_skip(file, e.what());
      }
    }
  }
  return out;
}

void write_image_dir(const Dataset& records, const fs::path& root,
                     const std::vector<std::string>& class_names) {
  int max_label = 0;
  for (const auto& rec : records) {
    if (rec.label < 0) throw std::invalid_argument("negative label on " + rec.source_id);
    if (!class_names.empty() && static_cast<std::size_t>(rec.label) >= class_names.size()) {
      throw std::invalid_argument("label " + std::to_string(rec.label) + " has no class name");
    }
    max_label = std::max(max_label, rec.label);
  }
  const auto index_width = std::to_string(records.empty() ? 0 : records.size() - 1).size();
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());
  // Empty classes still get a directory so reloaded labels keep their index.
  const std::size_t dir_count = class_names.empty() ? static_cast<std::size_t>(max_label) + 1
                                                    : class_names.size();
  for (std::size_t label = 0; label < dir_count && !records.empty(); ++label) {
    const auto dir = class_names.empty() ? label_dir_name(static_cast<int>(label), max_label)
                                         : class_names[label];
    fs::create_directories(root / dir, ec);
    if (ec) throw IoError("cannot create " + (root / dir).string() + ": " + ec.message());
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string dir = class_names.empty() ? label_dir_name(rec.label, max_label)
                                                : class_names[rec.label];
    const fs::path id(rec.source_id);
    std::string name;
    if (is_png(id) && id.is_relative()) {
      name = id.filename().string();
    } else {
      name = std::to_string(i);
      name = std::string(index_width - std::min(index_width, name.size()), '0') + name + ".png";
    }
    write_png(rec.image, root / dir / name);
  }
}

DatasetFormat detect_format(const fs::path& path) {
  return fs::is_directory(path) ? DatasetFormat::kImageDir : DatasetFormat::kCifarBinary;
}

}  // namespace freqdoor
