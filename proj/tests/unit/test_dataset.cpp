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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "freqdoor/dataset.hpp"
#include "freqdoor/error.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace freqdoor {
namespace {

using testing::TempDir;

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

TEST(Cifar10, LoadsSingleRecordPlaneOrder) {
  TempDir dir("cifar");
  std::vector<std::uint8_t> bytes(kCifarRecordBytes, 0);
  bytes[0] = 8;
  bytes[1] = 11;            // R at (0,0)
  bytes[1 + 1024] = 22;     // G at (0,0)
  bytes[1 + 2048 + 33] = 3;  // B at (1,1)
  write_bytes(dir / "one.bin", bytes);

  const Dataset records = load_cifar10_bin(dir / "one.bin");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].label, 8);
  EXPECT_EQ(records[0].source_id, "0");
  const auto& img = records[0].image;
  EXPECT_EQ(img.height(), 32);
  EXPECT_EQ(img.width(), 32);
  EXPECT_EQ(img.channels(), 3);
  EXPECT_EQ(img.at(0, 0, 0), 11);
  EXPECT_EQ(img.at(0, 0, 1), 22);
  EXPECT_EQ(img.at(1, 1, 2), 3);
}

TEST(Cifar10, RejectsTruncatedFile) {
  TempDir dir("cifar");
  write_bytes(dir / "short.bin", std::vector<std::uint8_t>(3072, 1));
  EXPECT_THROW(load_cifar10_bin(dir / "short.bin"), FormatError);
}

TEST(Cifar10, RejectsLabelAboveNine) {
  TempDir dir("cifar");
  std::vector<std::uint8_t> bytes(kCifarRecordBytes, 0);
  bytes[0] = 10;
  write_bytes(dir / "bad.bin", bytes);
  EXPECT_THROW(load_cifar10_bin(dir / "bad.bin"), FormatError);
}

TEST(Cifar10, MissingFileIsIoError) {
  EXPECT_THROW(load_cifar10_bin("/nonexistent/freqdoor/batch.bin"), IoError);
}

TEST(Cifar10, FullTestBatchSize) {
  TempDir dir("cifar");
  std::mt19937 rng(3);
  const Dataset records = testing::random_dataset(rng, 10000);
  write_cifar10_bin(records, dir / "test_batch.bin");
  EXPECT_EQ(fs::file_size(dir / "test_batch.bin"), 10000 * kCifarRecordBytes);
  const Dataset loaded = load_cifar10_bin(dir / "test_batch.bin");
  ASSERT_EQ(loaded.size(), 10000u);
  for (const auto& r : loaded) {
    ASSERT_EQ(r.image.height(), 32);
    ASSERT_EQ(r.image.channels(), 3);
  }
}

TEST(Cifar10, RoundTripIsExact) {
  TempDir dir("cifar");
  std::mt19937 rng(11);
  const Dataset records = testing::random_dataset(rng, 100);
  write_cifar10_bin(records, dir / "rt.bin");
  EXPECT_EQ(load_cifar10_bin(dir / "rt.bin"), records);
}

TEST(Cifar10, WriterRejectsWideLabelsAndOtherShapes) {
  TempDir dir("cifar");
  std::mt19937 rng(1);
  Dataset records = testing::random_dataset(rng, 2);
  records[1].label = 256;
  EXPECT_THROW(write_cifar10_bin(records, dir / "x.bin"), std::invalid_argument);
  records[1].label = 1;
  records[1].image = PixelImage(28, 28, 1);
  EXPECT_THROW(write_cifar10_bin(records, dir / "x.bin"), std::invalid_argument);
}

TEST(ImageDir, LabelsFollowSortedClassDirs) {
  TempDir dir("imgdir");
  std::mt19937 rng(5);
  for (int cls = 9; cls >= 0; --cls) {
    fs::create_directories(dir / std::to_string(cls));
    for (int i = 0; i < 5; ++i) {
      write_png(testing::random_image(rng, 8, 8, 3),
                dir.path() / std::to_string(cls) / ("img" + std::to_string(i) + ".png"));
    }
  }
  const Dataset records = load_image_dir(dir.path());
  ASSERT_EQ(records.size(), 50u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].label, static_cast<int>(i / 5));
  }
  EXPECT_EQ(records[0].source_id, "0/img0.png");
  EXPECT_EQ(load_image_dir(dir.path()), records);
}

TEST(ImageDir, EmptyRootGivesNoRecords) {
  TempDir dir("imgdir");
  EXPECT_TRUE(load_image_dir(dir.path()).empty());
}

TEST(ImageDir, CorruptPngStrictNamesFile) {
  TempDir dir("imgdir");
  fs::create_directories(dir / "cat");
  std::mt19937 rng(2);
  write_png(testing::random_image(rng, 4, 4, 3), dir.path() / "cat" / "a.png");
  write_bytes(dir.path() / "cat" / "broken.png", {0x89, 'P', 'N', 'G', 1, 2, 3});
  try {
    load_image_dir(dir.path());
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("broken.png"), std::string::npos);
  }

  std::vector<std::string> skipped;
  ImageDirOptions lenient;
  lenient.strict = false;
  lenient.on_skip = [&](const fs::path& p, const std::string&) { skipped.push_back(p.filename()); };
  const Dataset records = load_image_dir(dir.path(), lenient);
  EXPECT_EQ(records.size(), 1u);
  ASSERT_EQ(skipped.size(), 1u);
  EXPECT_EQ(skipped[0], "broken.png");
}

TEST(ImageDir, RoundTripKeepsPixelsAndLabels) {
  TempDir dir("imgdir");
  std::mt19937 rng(9);
  Dataset records;
  for (int label = 0; label < 12; ++label) {
    for (int i = 0; i < 3; ++i) {
      records.push_back({testing::random_image(rng, 6, 5, label % 2 ? 1 : 3), label,
                         "r" + std::to_string(label * 3 + i)});
    }
  }
  write_image_dir(records, dir.path());
  const Dataset loaded = load_image_dir(dir.path());
  ASSERT_EQ(loaded.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(loaded[i].image, records[i].image);
    EXPECT_EQ(loaded[i].label, records[i].label);
  }
}

TEST(ImageDir, EmptyClassesKeepTheirIndex) {
  TempDir dir("imgdir");
  std::mt19937 rng(4);
  const Dataset records = {{testing::random_image(rng, 4, 4, 3), 0, "a"},
                           {testing::random_image(rng, 4, 4, 3), 3, "b"}};
  write_image_dir(records, dir.path());
  const Dataset loaded = load_image_dir(dir.path());
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded[1].label, 3);
}

TEST(ImageDir, PreservesFileNamesFromSourceIds) {
  TempDir src("imgdir");
  TempDir dst("imgdir");
  std::mt19937 rng(6);
  fs::create_directories(src / "bird");
  fs::create_directories(src / "cat");
  write_png(testing::random_image(rng, 4, 4, 3), src.path() / "bird" / "x1.png");
  write_png(testing::random_image(rng, 4, 4, 3), src.path() / "cat" / "y2.png");
  const Dataset records = load_image_dir(src.path());
  write_image_dir(records, dst.path(), list_classes(src.path()));
  EXPECT_TRUE(fs::exists(dst.path() / "bird" / "x1.png"));
  EXPECT_TRUE(fs::exists(dst.path() / "cat" / "y2.png"));
  EXPECT_EQ(load_image_dir(dst.path()), records);
}

TEST(Png, GrayAndColorRoundTrip) {
  TempDir dir("png");
  std::mt19937 rng(8);
  for (int c : {1, 3}) {
    const PixelImage img = testing::random_image(rng, 13, 7, c);
    write_png(img, dir / "x.png");
    EXPECT_EQ(read_png(dir / "x.png"), img);
  }
}

TEST(Format, DirectoriesAreImageDirs) {
  TempDir dir("fmt");
  EXPECT_EQ(detect_format(dir.path()), DatasetFormat::kImageDir);
  EXPECT_EQ(detect_format(dir / "data_batch_1.bin"), DatasetFormat::kCifarBinary);
}

}  // namespace
}  // namespace freqdoor
