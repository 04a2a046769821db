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
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freqdoor/image.hpp"

namespace freqdoor {

inline constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

// 10 log10(255^2 / MSE) over all pixels and channels; +inf for equal images.
double psnr(const PixelImage& x, const PixelImage& y);
double mse(const PixelImage& x, const PixelImage& y);

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
  int window = 11;
  double sigma = 1.5;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
  double c3() const { return c2() / 2.0; }
};

// Luminance * contrast * structure with Gaussian-weighted local statistics,
// averaged over every full window position, then over channels.
double ssim(const PixelImage& x, const PixelImage& y, const SsimParams& params = {});

inline constexpr double kProbabilityFloor = 1e-12;

// sum p_i ln(p_i / max(q_i, 1e-12)); p_i = 0 terms contribute nothing.
// Both inputs must be non-negative and sum to 1 within 1e-6.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct PairMetrics {
  std::string source_id;
  double psnr = 0.0;
  double ssim = 0.0;
  std::optional<double> inception_kl;
};

struct MetricsSummary {
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;
  std::optional<double> mean_inception_kl;
};

MetricsSummary summarize(const std::vector<PairMetrics>& rows);

// source_id,psnr,ssim[,is] rows followed by a "mean" row.
void write_metrics_report(std::ostream& out, const std::vector<PairMetrics>& rows);

// One probability vector per line, comma-separated.
std::vector<std::vector<double>> read_probability_csv(const std::filesystem::path& path);

// "inf" for infinite values, fixed precision otherwise.
std::string format_metric(double value, int precision = 6);

}  // namespace freqdoor
