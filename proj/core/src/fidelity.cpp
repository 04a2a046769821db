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

#include "freqdoor/fidelity.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "freqdoor/error.hpp"

namespace freqdoor {
namespace {

void check_same_shape(const PixelImage& x, const PixelImage& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("images differ in shape");
}

std::vector<double> normalized_gaussian(int window, double sigma) {
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

// Separable weighted sum over every full window position ("valid" region).
Plane weighted_valid(const Plane& in, const std::vector<double>& k) {
  const int w = static_cast<int>(k.size());
  const int out_h = in.height() - w + 1;
  const int out_w = in.width() - w + 1;
  Plane rows(in.height(), out_w);
  for (int r = 0; r < in.height(); ++r) {
    for (int c = 0; c < out_w; ++c) {
      double s = 0.0;
      for (int i = 0; i < w; ++i) s += k[i] * in(r, c + i);
      rows(r, c) = s;
    }
  }
  Plane out(out_h, out_w);
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double s = 0.0;
      for (int i = 0; i < w; ++i) s += k[i] * rows(r + i, c);
      out(r, c) = s;
    }
  }
  return out;
}

Plane channel_plane(const PixelImage& img, int ch) {
  Plane p(img.height(), img.width());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) p(r, c) = img.at(r, c, ch);
  }
  return p;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out(a.height(), a.width());
  auto o = out.values();
  const auto x = a.values();
  const auto y = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
  return out;
}

double channel_ssim(const Plane& x, const Plane& y, const std::vector<double>& k,
                    const SsimParams& p) {
  const Plane mx = weighted_valid(x, k);
  const Plane my = weighted_valid(y, k);
  const Plane exx = weighted_valid(product(x, x), k);
  const Plane eyy = weighted_valid(product(y, y), k);
  const Plane exy = weighted_valid(product(x, y), k);
  const double c1 = p.c1();
  const double c2 = p.c2();
  const double c3 = p.c3();

  double total = 0.0;
  const auto n = mx.values().size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ux = mx.values()[i];
    const double uy = my.values()[i];
    const double vx = std::max(exx.values()[i] - ux * ux, 0.0);
    const double vy = std::max(eyy.values()[i] - uy * uy, 0.0);
    const double cov = exy.values()[i] - ux * uy;
    const double sxsy = std::sqrt(vx * vy);
    const double luminance = (2.0 * ux * uy + c1) / (ux * ux + uy * uy + c1);
    const double contrast = (2.0 * sxsy + c2) / (vx + vy + c2);
    const double structure = (cov + c3) / (sxsy + c3);
    total += luminance * contrast * structure;
  }
  return total / static_cast<double>(n);
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    row.push_back(std::stod(cell, &used));
  }
  return row;
}

}  // namespace

double mse(const PixelImage& x, const PixelImage& y) {
  check_same_shape(x, y);
  const auto a = x.data();
  const auto b = y.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(const PixelImage& x, const PixelImage& y) {
  const double err = mse(x, y);
  if (err == 0.0) return kInfiniteDb;
  return 10.0 * std::log10(255.0 * 255.0 / err);
}

double ssim(const PixelImage& x, const PixelImage& y, const SsimParams& params) {
  check_same_shape(x, y);
  if (params.window < 1 || params.window % 2 == 0) {
    throw std::invalid_argument("SSIM window must be odd");
  }
  if (std::min(x.height(), x.width()) < params.window) {
    throw std::invalid_argument("image smaller than the " + std::to_string(params.window) +
                                "px SSIM window");
  }
  if (x == y) return 1.0;
  const auto k = normalized_gaussian(params.window, params.sigma);
  double total = 0.0;
  for (int ch = 0; ch < x.channels(); ++ch) {
    total += channel_ssim(channel_plane(x, ch), channel_plane(y, ch), k, params);
  }
  return total / x.channels();
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("probability vectors differ in length");
  auto check = [](std::span<const double> v, const char* name) {
    double sum = 0.0;
    for (double x : v) {
      if (!(x >= 0.0)) throw std::invalid_argument(std::string(name) + " has a negative entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument(std::string(name) + " sums to " + std::to_string(sum) + ", not 1");
    }
  };
  check(p, "p");
  check(q, "q");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    total += p[i] * std::log(p[i] / std::max(q[i], kProbabilityFloor));
  }
  return total;
}

MetricsSummary summarize(const std::vector<PairMetrics>& rows) {
  MetricsSummary s;
  if (rows.empty()) return s;
  double kl = 0.0;
  bool has_kl = true;
  for (const auto& r : rows) {
    s.mean_psnr += r.psnr;
    s.mean_ssim += r.ssim;
    if (r.inception_kl) {
      kl += *r.inception_kl;
    } else {
      has_kl = false;
    }
  }
  const double n = static_cast<double>(rows.size());
  s.mean_psnr /= n;
  s.mean_ssim /= n;
  if (has_kl) s.mean_inception_kl = kl / n;
  return s;
}

std::string format_metric(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << value;
  return out.str();
}

void write_metrics_report(std::ostream& out, const std::vector<PairMetrics>& rows) {
  const bool with_kl = !rows.empty() && rows.front().inception_kl.has_value();
  out << "source_id,psnr,ssim" << (with_kl ? ",is" : "") << '\n';
  for (const auto& r : rows) {
    out << r.source_id << ',' << format_metric(r.psnr) << ',' << format_metric(r.ssim);
    if (with_kl) out << ',' << format_metric(r.inception_kl.value_or(0.0));
    out << '\n';
  }
  const auto s = summarize(rows);
  out << "mean," << format_metric(s.mean_psnr) << ',' << format_metric(s.mean_ssim);
  if (with_kl) out << ',' << format_metric(s.mean_inception_kl.value_or(0.0));
  out << '\n';
}

std::vector<std::vector<double>> read_probability_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      rows.push_back(parse_csv_row(line));
    } catch (const std::exception&) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": not a numeric row");
    }
  }
  return rows;
}

}  // namespace freqdoor
