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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "freqdoor/colorspace.hpp"
#include "freqdoor/dct.hpp"
#include "freqdoor/defense.hpp"
#include "freqdoor/fidelity.hpp"
#include "freqdoor/parallel.hpp"

namespace freqdoor {
namespace {

// Columns whose spread is below this (relative to their magnitude) are
// treated as constant.
constexpr double kConstantColumnTolerance = 1e-9;

double sample_skewness(std::span<const double> column) {
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double x : column) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace

std::vector<double> frequency_features(const PixelImage& img, int block_size) {
  PlanarImage planar = to_planar(img);
  if (planar.space == ColorSpace::kRgb) planar = rgb_to_yuv(planar);
  const BlockGrid grid = make_grid(img.height(), img.width(), block_size);
  std::vector<double> out;
  out.reserve(planar.planes.size() * grid.origins.size() * block_size * block_size);
  for (const auto& plane : planar.planes) {
    for (const auto& origin : grid.origins) {
      const FrequencyBlock coeffs = dct2(extract_block(plane, origin, block_size));
      out.insert(out.end(), coeffs.values().begin(), coeffs.values().end());
    }
  }
  return out;
}

void standardize_columns(FrequencyFeatureMatrix& f) {
  f.column_mean.assign(f.cols, 0.0);
  f.column_stddev.assign(f.cols, 0.0);
  if (f.rows == 0) return;
  const double n = static_cast<double>(f.rows);
  for (std::size_t c = 0; c < f.cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < f.rows; ++r) mean += f(r, c);
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < f.rows; ++r) {
      const double d = f(r, c) - mean;
      var += d * d;
    }
    var /= n;
    const double stddev = std::sqrt(var);
    f.column_mean[c] = mean;
    f.column_stddev[c] = stddev;
    const bool constant = stddev <= kConstantColumnTolerance * std::max(1.0, std::abs(mean));
    for (std::size_t r = 0; r < f.rows; ++r) {
      f(r, c) = constant ? 0.0 : (f(r, c) - mean) / stddev;
    }
  }
}

FrequencyFeatureMatrix extract_features(const Dataset& records, int block_size, int jobs) {
  FrequencyFeatureMatrix f;
  if (records.empty()) return f;
  const auto& first = records.front().image;
  for (const auto& rec : records) {
    if (!rec.image.same_shape(first)) {
      throw std::invalid_argument("feature extraction needs one image shape; " + rec.source_id +
                                  " differs");
    }
  }
  f.rows = records.size();
  f.cols = frequency_features(first, block_size).size();
  f.values.assign(f.rows * f.cols, 0.0);
  parallel_for(f.rows, jobs, [&](std::size_t r) {
    const auto row = frequency_features(records[r].image, block_size);
    std::copy(row.begin(), row.end(), f.values.begin() + static_cast<std::ptrdiff_t>(r * f.cols));
  });
  f.row_ids.reserve(f.rows);
  for (const auto& rec : records) f.row_ids.push_back(rec.source_id);
  standardize_columns(f);
  return f;
}

std::size_t AnomalyRanking::rank_of(std::size_t row) const {
  const auto it = std::find(order.begin(), order.end(), row);
  if (it == order.end()) throw std::out_of_range("row not in ranking");
  return static_cast<std::size_t>(it - order.begin()) + 1;
}

AnomalyRanking rank_scores(std::vector<double> scores, std::vector<std::string> row_ids) {
  if (row_ids.empty()) {
    row_ids.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) row_ids.push_back(std::to_string(i));
  }
  if (row_ids.size() != scores.size()) throw std::invalid_argument("one row id per score required");
  AnomalyRanking out{std::move(scores), {}, std::move(row_ids)};
  out.order.resize(out.scores.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    if (out.scores[a] != out.scores[b]) return out.scores[a] > out.scores[b];
    return out.row_ids[a] < out.row_ids[b];
  });
  return out;
}

AnomalyRanking copod_score(const FrequencyFeatureMatrix& f) {
  if (f.rows < 2) throw std::invalid_argument("COPOD needs at least 2 rows");
  const std::size_t n = f.rows;
  const double floor = 1.0 / static_cast<double>(n + 1);
  std::vector<double> left(n, 0.0);
  std::vector<double> right(n, 0.0);
  std::vector<double> skewed(n, 0.0);
  std::vector<double> column(n);
  std::vector<double> sorted(n);

  for (std::size_t c = 0; c < f.cols; ++c) {
    for (std::size_t r = 0; r < n; ++r) column[r] = f(r, c);
    sorted = column;
    std::sort(sorted.begin(), sorted.end());
    const bool use_left = sample_skewness(column) < 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double x = column[r];
      // F(x) = #{x_i <= x} / n; right tail #{x_i >= x} / n.
      const auto le = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
      const auto ge = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), x);
      const double tail_left = -std::log(std::max(static_cast<double>(le) / n, floor));
      const double tail_right = -std::log(std::max(static_cast<double>(ge) / n, floor));
      left[r] += tail_left;
      right[r] += tail_right;
      skewed[r] += use_left ? tail_left : tail_right;
    }
  }
  std::vector<double> scores(n);
  for (std::size_t r = 0; r < n; ++r) scores[r] = std::max({left[r], right[r], skewed[r]});
  return rank_scores(std::move(scores), f.row_ids);
}

double precision_at_k(const AnomalyRanking& ranking,
                      const std::unordered_set<std::string>& poisoned_ids, std::size_t k) {
  if (k < 1 || k > ranking.order.size()) {
    throw std::invalid_argument("K = " + std::to_string(k) + " outside [1, " +
                                std::to_string(ranking.order.size()) + "]");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    hits += poisoned_ids.count(ranking.row_ids[ranking.order[i]]);
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::vector<std::size_t> default_k_sweep(std::size_t poisoned, std::size_t rows) {
  const std::size_t top = std::min(std::max<std::size_t>(2 * poisoned, 10), rows);
  std::vector<std::size_t> ks;
  for (std::size_t i = 1; i <= 10; ++i) {
    const std::size_t k = std::max<std::size_t>(1, top * i / 10);
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  return ks;
}

void write_detection_report(std::ostream& out, const AnomalyRanking& ranking,
                            const std::unordered_set<std::string>* poisoned_ids,
                            const std::vector<std::size_t>& k_values) {
  out << "source_id,score,rank" << (poisoned_ids ? ",is_poisoned" : "") << '\n';
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    const auto row = ranking.order[i];
    out << ranking.row_ids[row] << ',' << format_metric(ranking.scores[row], 9) << ',' << i + 1;
    if (poisoned_ids) out << ',' << (poisoned_ids->count(ranking.row_ids[row]) ? 1 : 0);
    out << '\n';
  }
  if (!poisoned_ids) return;
  out << "\nk,precision\n";
  for (auto k : k_values) {
    out << k << ',' << format_metric(precision_at_k(ranking, *poisoned_ids, k)) << '\n';
  }
}

}  // namespace freqdoor
