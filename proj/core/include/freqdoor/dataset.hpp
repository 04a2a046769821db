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

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "freqdoor/image.hpp"

namespace freqdoor {

struct DatasetRecord {
  PixelImage image;
  int label = 0;
  // Record index for binary batches, root-relative path for directories.
  std::string source_id;

  bool operator==(const DatasetRecord&) const = default;
};

using Dataset = std::vector<DatasetRecord>;

// CIFAR-10 binary batch: 3073-byte records, label byte then the R, G and B
// planes of a 32x32 image, each row-major.
inline constexpr int kCifarSide = 32;
inline constexpr std::size_t kCifarRecordBytes = 1 + 3 * kCifarSide * kCifarSide;
inline constexpr int kCifarClasses = 10;

Dataset load_cifar10_bin(const std::filesystem::path& path);
void write_cifar10_bin(const Dataset& records, const std::filesystem::path& path);

// Called for each undecodable file when loading non-strictly.
using SkipHandler = std::function<void(const std::filesystem::path&, const std::string&)>;

struct ImageDirOptions {
  // Fail on the first undecodable file instead of skipping it.
  bool strict = true;
  SkipHandler on_skip;
};

// root/<class>/<file>.png; class index = position in the lexicographically
// sorted subdirectory list.
Dataset load_image_dir(const std::filesystem::path& root, const ImageDirOptions& options = {});

// Sorted class subdirectory names under root.
std::vector<std::string> list_classes(const std::filesystem::path& root);

// Writes root/<class_names[label]>/<file>.png. Without class names the
// directory is the zero-padded label, so lexicographic order equals label
// order. A record whose source_id is a relative .png path keeps its file
// name; other records are named by their position.
void write_image_dir(const Dataset& records, const std::filesystem::path& root,
                     const std::vector<std::string>& class_names = {});

PixelImage read_png(const std::filesystem::path& path);
void write_png(const PixelImage& img, const std::filesystem::path& path);

enum class DatasetFormat { kCifarBinary, kImageDir };

// A directory is an image dir; anything else is treated as a binary batch.
DatasetFormat detect_format(const std::filesystem::path& path);

}  // namespace freqdoor
