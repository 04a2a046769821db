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

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "freqdoor/defense.hpp"

namespace freqdoor {
namespace {

void check_window(int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("filter window must be odd and positive, got " +
                                std::to_string(window));
  }
}

// Half-sample symmetric index: -1 -> 0, n -> n - 1.
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

// Separable correlation with reflect padding, same-size output.
Plane correlate(const Plane& in, const std::vector<double>& k) {
  const int half = static_cast<int>(k.size()) / 2;
  const int h = in.height();
  const int w = in.width();
  Plane rows(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double s = 0.0;
      for (int i = -half; i <= half; ++i) s += k[i + half] * in(r, reflect(c + i, w));
      rows(r, c) = s;
    }
  }
  Plane out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double s = 0.0;
      for (int i = -half; i <= half; ++i) s += k[i + half] * rows(reflect(r + i, h), c);
      out(r, c) = s;
    }
  }
  return out;
}

template <typename F>
PixelImage map_channels(const PixelImage& img, F&& filter) {
  PlanarImage planar = to_planar(img);
  for (auto& plane : planar.planes) plane = filter(plane);
  return to_pixel(planar);
}

}  // namespace

std::vector<double> gaussian_kernel(int window, double sigma) {
  check_window(window);
  if (!(sigma > 0.0)) throw std::invalid_argument("Gaussian sigma must be > 0");
  std::vector<double> k(window);
  const int half = window / 2;
  for (int i = 0; i < window; ++i) {
    const double d = i - half;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& v : k) v /= sum;
  return k;
}

PixelImage gaussian_filter(const PixelImage& img, int window, double sigma) {
  const auto k = gaussian_kernel(window, sigma);
  return map_channels(img, [&](const Plane& p) { return correlate(p, k); });
}

LocalMoments local_moments(const Plane& plane, int window) {
  check_window(window);
  const std::vector<double> box(window, 1.0 / window);
  Plane squares(plane.height(), plane.width());
  const auto src = plane.values();
  auto sq = squares.values();
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = src[i] * src[i];
  LocalMoments m{correlate(plane, box), correlate(squares, box)};
  auto var = m.variance.values();
  const auto mean = m.mean.values();
  for (std::size_t i = 0; i < var.size(); ++i) var[i] = std::max(var[i] - mean[i] * mean[i], 0.0);
  return m;
}

PixelImage wiener_filter(const PixelImage& img, int window) {
  check_window(window);
  return map_channels(img, [&](const Plane& p) {
    const auto m = local_moments(p, window);
    const auto var = m.variance.values();
    const double noise = std::accumulate(var.begin(), var.end(), 0.0) / static_cast<double>(var.size());
    Plane out(p.height(), p.width());
    auto o = out.values();
    const auto x = p.values();
    const auto mean = m.mean.values();
    for (std::size_t i = 0; i < o.size(); ++i) {
      const double denom = std::max(var[i], noise);
      const double gain = denom > 0.0 ? std::max(var[i] - noise, 0.0) / denom : 0.0;
      o[i] = mean[i] + gain * (x[i] - mean[i]);
    }
    return out;
  });
}

}  // namespace freqdoor
