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
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "freqdoor/dataset.hpp"
#include "freqdoor/image.hpp"

namespace freqdoor {

// Smoothing filters. Borders use half-sample symmetric reflection
// (d c b a | a b c d | d c b a). Output is re-quantized.

// Normalized separable Gaussian of odd side `window`.
PixelImage gaussian_filter(const PixelImage& img, int window = 3, double sigma = 1.0);
std::vector<double> gaussian_kernel(int window, double sigma);

// Adaptive local Wiener filter. Noise power is the mean local variance of
// each channel.
PixelImage wiener_filter(const PixelImage& img, int window = 3);

// Per-channel local statistics over a window, exposed for testing.
struct LocalMoments {
  Plane mean;
  Plane variance;
};
LocalMoments local_moments(const Plane& plane, int window);

// One row per image: block DCT coefficients of every YUV (or GRAY) plane,
// channel-major, then block-major, then coefficient row-major. Columns are
// standardized in place; constant columns become zero.
struct FrequencyFeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  std::vector<double> column_mean;
  std::vector<double> column_stddev;
  std::vector<std::string> row_ids;

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

// Raw features for one image.
std::vector<double> frequency_features(const PixelImage& img, int block_size);

FrequencyFeatureMatrix extract_features(const Dataset& records, int block_size = 32,
                                        int jobs = 1);

// Standardizes a raw row-major matrix in place.
void standardize_columns(FrequencyFeatureMatrix& features);

struct AnomalyRanking {
  std::vector<double> scores;       // per input row, higher = more anomalous
  std::vector<std::size_t> order;   // row indices, most anomalous first
  std::vector<std::string> row_ids;

  std::size_t rank_of(std::size_t row) const;
};

// Copula-based outlier scores: max of the summed left-tail, right-tail and
// skewness-selected tail negative log ECDF values. Ties in score are broken
// by row id.
AnomalyRanking copod_score(const FrequencyFeatureMatrix& features);

// Orders rows by descending score, ties by ascending row id.
AnomalyRanking rank_scores(std::vector<double> scores, std::vector<std::string> row_ids);

// |top-K rows that are poisoned| / K.
double precision_at_k(const AnomalyRanking& ranking,
                      const std::unordered_set<std::string>& poisoned_ids, std::size_t k);

// Ten evenly spaced values up to 2 * poisoned, capped by rows.
std::vector<std::size_t> default_k_sweep(std::size_t poisoned, std::size_t rows);

// source_id,score,rank[,is_poisoned] in rank order, then a blank line and
// the precision@K table when poisoned ids are given.
void write_detection_report(std::ostream& out, const AnomalyRanking& ranking,
                            const std::unordered_set<std::string>* poisoned_ids,
                            const std::vector<std::size_t>& k_values);

}  // namespace freqdoor
