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

#include <cmath>
#include <random>

#include "freqdoor/colorspace.hpp"
#include "oracles.hpp"

namespace freqdoor {
namespace {

PlanarImage pixel(ColorSpace space, double a, double b, double c) {
  PlanarImage p(1, 1, space);
  p.planes[0](0, 0) = a;
  p.planes[1](0, 0) = b;
  p.planes[2](0, 0) = c;
  return p;
}

std::array<double, 3> values(const PlanarImage& p) {
  return {p.planes[0](0, 0), p.planes[1](0, 0), p.planes[2](0, 0)};
}

TEST(RgbToYuv, MatchesWorkedExamples) {
  EXPECT_EQ(values(rgb_to_yuv(pixel(ColorSpace::kRgb, 0, 0, 0))), (std::array<double, 3>{0, 0, 0}));

  const auto white = values(rgb_to_yuv(pixel(ColorSpace::kRgb, 255, 255, 255)));
  EXPECT_NEAR(white[0], 255.0, 1e-9);
  EXPECT_NEAR(white[1], 0.765, 1e-9);
  EXPECT_NEAR(white[2], 0.0, 1e-9);

  const auto red = values(rgb_to_yuv(pixel(ColorSpace::kRgb, 255, 0, 0)));
  EXPECT_NEAR(red[0], 76.245, 1e-9);
  EXPECT_NEAR(red[1], 151.98, 1e-9);
  EXPECT_NEAR(red[2], 54.06, 1e-9);
}

TEST(YuvToRgb, MatchesWorkedExamples) {
  EXPECT_EQ(values(yuv_to_rgb(pixel(ColorSpace::kYuv, 0, 0, 0))), (std::array<double, 3>{0, 0, 0}));
  const auto gray = values(yuv_to_rgb(pixel(ColorSpace::kYuv, 255, 0, 0)));
  EXPECT_EQ(gray, (std::array<double, 3>{255, 255, 255}));
  const auto back = values(yuv_to_rgb(pixel(ColorSpace::kYuv, 76.245, 151.98, 54.06)));
  EXPECT_NEAR(back[0], 255.0, 1.5);
  EXPECT_NEAR(back[1], 0.0, 1.5);
  EXPECT_NEAR(back[2], 0.0, 1.5);
}

TEST(ColorConversion, RejectsWrongTag) {
  EXPECT_THROW(rgb_to_yuv(pixel(ColorSpace::kYuv, 1, 2, 3)), std::invalid_argument);
  EXPECT_THROW(yuv_to_rgb(pixel(ColorSpace::kRgb, 1, 2, 3)), std::invalid_argument);
  PlanarImage gray(1, 1, ColorSpace::kGray);
  EXPECT_THROW(rgb_to_yuv(gray), std::invalid_argument);
}

TEST(ColorConversion, AgreesWithTermByTermOracle) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-300.0, 300.0);
  for (bool verbatim : {false, true}) {
    const auto variant = verbatim ? ColorVariant::kPrintedSigns : ColorVariant::kCorrected;
    for (int i = 0; i < 200; ++i) {
      const double a = dist(rng), b = dist(rng), c = dist(rng);
      const auto fwd = values(rgb_to_yuv(pixel(ColorSpace::kRgb, a, b, c), variant));
      const auto inv = values(yuv_to_rgb(pixel(ColorSpace::kYuv, a, b, c), variant));
      const auto fwd_ref = oracle::rgb_to_yuv_direct(a, b, c, verbatim);
      const auto inv_ref = oracle::yuv_to_rgb_direct(a, b, c, verbatim);
      for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(fwd[k], fwd_ref[k], 1e-10);
        EXPECT_NEAR(inv[k], inv_ref[k], 1e-10);
      }
    }
  }
}

TEST(ColorMatrix, CorrectedCompositeIsNearIdentity) {
  const auto m = composite_matrix(ColorVariant::kCorrected);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_LE(std::abs(m[r * 3 + c] - (r == c)), 6e-3) << r << "," << c;
  }
}

TEST(ColorMatrix, VerbatimCompositeIsNot) {
  const auto m = composite_matrix(ColorVariant::kPrintedSigns);
  double worst = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(m[r * 3 + c] - (r == c)));
  }
  EXPECT_GT(worst, 0.3);
}

// Property: both maps are linear.
TEST(ColorConversion, IsLinear) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> dist(-255.0, 255.0);
  for (int i = 0; i < 500; ++i) {
    const double s = dist(rng) / 64.0, t = dist(rng) / 64.0;
    const std::array<double, 3> x{dist(rng), dist(rng), dist(rng)};
    const std::array<double, 3> y{dist(rng), dist(rng), dist(rng)};
    for (auto space : {ColorSpace::kRgb, ColorSpace::kYuv}) {
      auto f = [&](double a, double b, double c) {
        const auto p = pixel(space, a, b, c);
        return values(space == ColorSpace::kRgb ? rgb_to_yuv(p) : yuv_to_rgb(p));
      };
      const auto lhs = f(s * x[0] + t * y[0], s * x[1] + t * y[1], s * x[2] + t * y[2]);
      const auto fx = f(x[0], x[1], x[2]);
      const auto fy = f(y[0], y[1], y[2]);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(lhs[k], s * fx[k] + t * fy[k], 1e-9);
    }
  }
}

}  // namespace
}  // namespace freqdoor
