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

#include "freqdoor_cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "freqdoor/dataset.hpp"
#include "freqdoor/defense.hpp"
#include "freqdoor/error.hpp"
#include "freqdoor/fidelity.hpp"
#include "freqdoor/parallel.hpp"
#include "freqdoor/poison.hpp"
#include "freqdoor/trigger.hpp"
#include "freqdoor/version.hpp"

namespace fs = std::filesystem;

namespace freqdoor::cli {
namespace {

// Magnitudes above this start to become visible.
constexpr double kVisibleMagnitude = 100.0;

// A flag value failed validation; reported as a usage error before any I/O.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& message)
      : std::runtime_error(flag + ": " + message) {}
};

struct TriggerFlags {
  std::string channels;
  std::vector<std::string> bands;
  std::optional<double> magnitude;
  int block_size = 32;
  std::string blocks = "all";
  bool paper_verbatim = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--channels", channels,
                   "Trigger channels, e.g. U,V or Y,U,V (GRAY for 1-channel data); "
                   "default U,V or GRAY");
    cmd.add_option("--band", bands, "Band k1,k2:magnitude (repeatable); default 15,15 and 31,31");
    cmd.add_option("--magnitude", magnitude,
                   "Magnitude for the default bands; default 30 up to 32px images, else 50");
    cmd.add_option("--block-size", block_size, "DCT block side in pixels")->capture_default_str();
    cmd.add_option("--blocks", blocks, "Block subset: all | random:<count>:<seed>")
        ->capture_default_str();
    cmd.add_flag("--paper-verbatim", paper_verbatim,
                 "Use the color matrices exactly as printed (non-invertible pair)");
  }

  // Everything that can be checked without knowing the image shape.
  void validate() const {
    if (block_size < 2) throw UsageError("--block-size", "must be >= 2");
    if (!bands.empty() && magnitude) {
      throw UsageError("--magnitude", "only applies to the default bands; drop it or --band");
    }
    if (magnitude && !std::isfinite(*magnitude)) throw UsageError("--magnitude", "must be finite");
    for (const auto& text : bands) {
      BandSpec band;
      try {
        band = parse_band(text);
      } catch (const std::invalid_argument& e) {
        throw UsageError("--band", e.what());
      }
      if (band.band.k1 < 0 || band.band.k2 < 0 || band.band.k1 >= block_size ||
          band.band.k2 >= block_size) {
        throw UsageError("--band", "index " + text + " outside a " + std::to_string(block_size) +
                                       "px block");
      }
    }
    if (!channels.empty()) {
      try {
        parse_channels(channels);
      } catch (const std::invalid_argument& e) {
        throw UsageError("--channels", e.what());
      }
    }
    try {
      parse_block_selection(blocks);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--blocks", e.what());
    }
  }

  TriggerSpec build(int height, int width, int image_channels) const {
    TriggerSpec spec = default_spec(height, width, image_channels);
    if (!channels.empty()) spec.channels = parse_channels(channels);
    if (!bands.empty()) {
      spec.bands.clear();
      for (const auto& text : bands) spec.bands.push_back(parse_band(text));
    } else if (magnitude) {
      for (auto& b : spec.bands) b.magnitude = *magnitude;
    }
    spec.block_size = block_size;
    spec.blocks = parse_block_selection(blocks);
    spec.color = paper_verbatim ? ColorVariant::kPrintedSigns : ColorVariant::kCorrected;
    try {
      spec.validate(height, width, image_channels);
    } catch (const std::invalid_argument& e) {
      throw UsageError("trigger", e.what());
    }
    return spec;
  }
};

struct LoadedDataset {
  Dataset records;
  DatasetFormat format = DatasetFormat::kCifarBinary;
  std::vector<std::string> class_names;
};

DatasetFormat resolve_format(const std::string& flag, const fs::path& path) {
  if (flag == "cifar10") return DatasetFormat::kCifarBinary;
  if (flag == "dir") return DatasetFormat::kImageDir;
  return detect_format(path);
}

void check_format_flag(const std::string& flag) {
  if (flag != "auto" && flag != "cifar10" && flag != "dir") {
    throw UsageError("--format", "expected auto, cifar10 or dir, got '" + flag + "'");
  }
}

LoadedDataset load_dataset(const fs::path& path, const std::string& format_flag, bool skip_bad,
                           std::ostream& err) {
  LoadedDataset out;
  out.format = resolve_format(format_flag, path);
  if (out.format == DatasetFormat::kCifarBinary) {
    out.records = load_cifar10_bin(path);
  } else {
    ImageDirOptions options;
    options.strict = !skip_bad;
    options.on_skip = [&err](const fs::path& file, const std::string& why) {
      err << "warning: skipping " << file.string() << ": " << why << '\n';
    };
    out.class_names = list_classes(path);
    out.records = load_image_dir(path, options);
  }
  return out;
}

void save_dataset(const Dataset& records, const LoadedDataset& like, const fs::path& path) {
  if (like.format == DatasetFormat::kCifarBinary) {
    write_cifar10_bin(records, path);
  } else {
    write_image_dir(records, path, like.class_names);
  }
}

int class_count(const LoadedDataset& data) {
  return data.format == DatasetFormat::kCifarBinary ? kCifarClasses
                                                    : static_cast<int>(data.class_names.size());
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(cell, &used);
      if (used != cell.size() || v < 1) throw std::invalid_argument(cell);
      ks.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("--k", "'" + cell + "' is not a positive integer");
    }
  }
  if (ks.empty()) throw UsageError("--k", "empty list");
  return ks;
}

std::vector<PairMetrics> pair_metrics(const Dataset& clean, const Dataset& poisoned, int jobs) {
  std::map<std::string, const DatasetRecord*> by_id;
  for (const auto& rec : clean) by_id[rec.source_id] = &rec;
  std::vector<PairMetrics> rows(poisoned.size());
  parallel_for(poisoned.size(), jobs, [&](std::size_t i) {
    const auto it = by_id.find(poisoned[i].source_id);
    if (it == by_id.end()) {
      throw FormatError("no clean record with source id " + poisoned[i].source_id);
    }
    const auto& a = it->second->image;
    const auto& b = poisoned[i].image;
    rows[i] = {poisoned[i].source_id, psnr(a, b), ssim(a, b), std::nullopt};
  });
  return rows;
}

// ---------------------------------------------------------------------------

struct PoisonArgs {
  std::string input;
  std::string output;
  std::string manifest;
  std::string format = "auto";
  std::string mode = "change-label";
  double rate = kDefaultInjectionRate;
  int target = kDefaultTargetLabel;
  std::uint64_t seed = 0;
  std::string perturbed;
  bool asr_pool = false;
  bool skip_bad = false;
  int jobs = 0;
  TriggerFlags trigger;
};

int cmd_poison(PoisonArgs& a, std::ostream& out, std::ostream& err) {
  check_format_flag(a.format);
  a.trigger.validate();
  PoisonMode mode;
  try {
    mode = parse_poison_mode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--mode", e.what());
  }
  if (!(a.rate >= 0.0 && a.rate <= 1.0)) throw UsageError("--rate", "must be in [0, 1]");
  if (a.target < 0) throw UsageError("--target", "must be >= 0");
  if (a.asr_pool && !a.perturbed.empty()) {
    throw UsageError("--perturbed", "not used when building an ASR pool");
  }
  const fs::path manifest_path = a.manifest.empty() ? fs::path(a.output + ".manifest.json")
                                                    : fs::path(a.manifest);

  const LoadedDataset data = load_dataset(a.input, a.format, a.skip_bad, err);
  if (data.records.empty()) throw Error("dataset " + a.input + " has no records");
  if (a.target >= class_count(data)) {
    throw UsageError("--target", "label " + std::to_string(a.target) + " not in a " +
                                     std::to_string(class_count(data)) + "-class dataset");
  }
  const auto& first = data.records.front().image;
  const TriggerSpec spec = a.trigger.build(first.height(), first.width(), first.channels());
  for (const auto& b : spec.bands) {
    if (std::abs(b.magnitude) > kVisibleMagnitude) {
      err << "warning: magnitude " << b.magnitude << " at band " << format_band(b)
          << " may leave visible artifacts\n";
    }
  }

  if (a.asr_pool) {
    const Dataset pool = poison_testset(data.records, spec, a.target, a.jobs);
    save_dataset(pool, data, a.output);
    out << "asr pool: " << pool.size() << " of " << data.records.size()
        << " records injected (target class " << a.target << " excluded)\n";
    return kOk;
  }

  if (a.rate == 0.0) err << "warning: --rate 0 poisons nothing; output equals input\n";

  PoisonConfig config;
  config.injection_rate = a.rate;
  config.target_label = a.target;
  config.mode = mode;
  config.seed = a.seed;
  config.spec = spec;

  PoisonOptions options;
  options.jobs = a.jobs;
  std::optional<LoadedDataset> perturbed;
  if (!a.perturbed.empty()) {
    perturbed = load_dataset(a.perturbed, a.format, a.skip_bad, err);
    if (perturbed->records.size() != data.records.size()) {
      throw Error("--perturbed dataset has " + std::to_string(perturbed->records.size()) +
                  " records, expected " + std::to_string(data.records.size()));
    }
    options.pre_perturb = [&perturbed](std::size_t i, const DatasetRecord&) {
      return perturbed->records[i].image;
    };
  }

  const PoisonResult result = poison_dataset(data.records, config, options);
  save_dataset(result.records, data, a.output);
  write_manifest(result.manifest, manifest_path);

  Dataset clean_pairs;
  Dataset poisoned_pairs;
  std::unordered_set<std::string> ids(result.manifest.poisoned_ids.begin(),
                                      result.manifest.poisoned_ids.end());
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    if (!ids.count(data.records[i].source_id)) continue;
    clean_pairs.push_back(data.records[i]);
    poisoned_pairs.push_back(result.records[i]);
  }
  out << "poisoned " << result.manifest.poisoned_records << " of "
      << result.manifest.total_records << " records (" << to_string(mode) << ", target "
      << a.target << ")\n";
  out << "manifest: " << manifest_path.string() << '\n';
  if (!poisoned_pairs.empty()) {
    bool fits_window = std::min(first.height(), first.width()) >= SsimParams{}.window;
    if (fits_window) {
      const auto s = summarize(pair_metrics(clean_pairs, poisoned_pairs, a.jobs));
      out << "mean psnr: " << format_metric(s.mean_psnr, 3) << " dB\n";
      out << "mean ssim: " << format_metric(s.mean_ssim, 5) << '\n';
    }
  }
  return kOk;
}

struct ExtractArgs {
  std::string size = "32x32x3";
  std::string output;
  std::string visual;
  double factor = 10.0;
  TriggerFlags trigger;
};

int cmd_extract_trigger(ExtractArgs& a, std::ostream& out, std::ostream&) {
  a.trigger.validate();
  int h = 0, w = 0, c = 0;
  char x1 = 0, x2 = 0;
  std::istringstream in(a.size);
  if (!(in >> h >> x1 >> w >> x2 >> c) || x1 != 'x' || x2 != 'x' || h <= 0 || w <= 0 ||
      (c != 1 && c != 3) || in.peek() != std::char_traits<char>::eof()) {
    throw UsageError("--size", "expected HxWxC with C in {1,3}, got '" + a.size + "'");
  }
  if (!std::isfinite(a.factor)) throw UsageError("--factor", "must be finite");
  const TriggerSpec spec = a.trigger.build(h, w, c);
  const SpatialTrigger trigger = spatial_trigger(spec, h, w, c);
  write_ftrg(trigger, a.output);
  const fs::path visual = a.visual.empty() ? fs::path(a.output).replace_extension(".png")
                                           : fs::path(a.visual);
  write_png(visualize_trigger(trigger, a.factor), visual);
  out << "trigger: " << a.output << " (" << h << "x" << w << "x" << c << ")\n";
  out << "visualization: " << visual.string() << " (factor " << a.factor << ")\n";
  return kOk;
}

struct MetricsArgs {
  std::string clean;
  std::string poisoned;
  std::string report;
  std::string format = "auto";
  std::string clean_probs;
  std::string poisoned_probs;
  bool skip_bad = false;
  int jobs = 0;
};

int cmd_metrics(MetricsArgs& a, std::ostream& out, std::ostream& err) {
  check_format_flag(a.format);
  if (a.clean_probs.empty() != a.poisoned_probs.empty()) {
    throw UsageError("--clean-probs", "needs --poisoned-probs as well (and vice versa)");
  }
  const auto clean = load_dataset(a.clean, a.format, a.skip_bad, err);
  const auto poisoned = load_dataset(a.poisoned, a.format, a.skip_bad, err);
  auto rows = pair_metrics(clean.records, poisoned.records, a.jobs);
  if (!a.clean_probs.empty()) {
    const auto p = read_probability_csv(a.clean_probs);
    const auto q = read_probability_csv(a.poisoned_probs);
    if (p.size() != rows.size() || q.size() != rows.size()) {
      throw FormatError("probability files need one row per poisoned record (" +
                        std::to_string(rows.size()) + ")");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].inception_kl = kl_divergence(p[i], q[i]);
  }
  std::ofstream file(a.report, std::ios::trunc);
  if (!file) throw IoError("cannot open " + a.report + " for writing");
  write_metrics_report(file, rows);
  if (!file) throw IoError("failed writing " + a.report);
  const auto s = summarize(rows);
  out << "pairs: " << rows.size() << '\n';
  out << "mean psnr: " << format_metric(s.mean_psnr, 3) << " dB\n";
  out << "mean ssim: " << format_metric(s.mean_ssim, 5) << '\n';
  if (s.mean_inception_kl) out << "mean is: " << format_metric(*s.mean_inception_kl, 5) << '\n';
  return kOk;
}

struct DefendArgs {
  std::string input;
  std::string output;
  std::string format = "auto";
  std::string filter = "gaussian";
  int window = 3;
  double sigma = 1.0;
  bool skip_bad = false;
  int jobs = 0;
};

int cmd_defend(DefendArgs& a, std::ostream& out, std::ostream& err) {
  check_format_flag(a.format);
  if (a.filter != "gaussian" && a.filter != "wiener") {
    throw UsageError("--filter", "expected gaussian or wiener, got '" + a.filter + "'");
  }
  if (a.window < 1 || a.window % 2 == 0) throw UsageError("--window", "must be odd and positive");
  if (!(a.sigma > 0.0)) throw UsageError("--sigma", "must be > 0");
  const auto data = load_dataset(a.input, a.format, a.skip_bad, err);
  Dataset filtered = data.records;
  parallel_for(filtered.size(), a.jobs, [&](std::size_t i) {
    auto& img = filtered[i].image;
    img = a.filter == "gaussian" ? gaussian_filter(img, a.window, a.sigma)
                                 : wiener_filter(img, a.window);
  });
  save_dataset(filtered, data, a.output);
  out << "filtered " << filtered.size() << " records with " << a.filter << " (window "
      << a.window << ")\n";
  return kOk;
}

struct DetectArgs {
  std::string input;
  std::string report;
  std::string manifest;
  std::string format = "auto";
  std::string k_list;
  int block_size = 32;
  bool skip_bad = false;
  int jobs = 0;
};

int cmd_detect(DetectArgs& a, std::ostream& out, std::ostream& err) {
  check_format_flag(a.format);
  if (a.block_size < 2) throw UsageError("--block-size", "must be >= 2");
  std::vector<std::size_t> ks;
  if (!a.k_list.empty()) ks = parse_k_list(a.k_list);
  if (!ks.empty() && a.manifest.empty()) {
    throw UsageError("--k", "precision@K needs --manifest");
  }
  const auto data = load_dataset(a.input, a.format, a.skip_bad, err);
  if (data.records.size() < 2) throw Error("detection needs at least 2 records");

  std::optional<std::unordered_set<std::string>> poisoned;
  if (!a.manifest.empty()) {
    const auto loaded = read_manifest(a.manifest);
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
    poisoned.emplace(loaded.manifest.poisoned_ids.begin(), loaded.manifest.poisoned_ids.end());
    if (ks.empty()) ks = default_k_sweep(poisoned->size(), data.records.size());
    for (auto k : ks) {
      if (k > data.records.size()) {
        throw UsageError("--k", std::to_string(k) + " exceeds the " +
                                    std::to_string(data.records.size()) + " records");
      }
    }
  }

  const auto features = extract_features(data.records, a.block_size, a.jobs);
  const auto ranking = copod_score(features);
  std::ofstream file(a.report, std::ios::trunc);
  if (!file) throw IoError("cannot open " + a.report + " for writing");
  write_detection_report(file, ranking, poisoned ? &*poisoned : nullptr, ks);
  if (!file) throw IoError("failed writing " + a.report);

  out << "scored " << data.records.size() << " records (" << features.cols << " features)\n";
  if (poisoned) {
    out << "k,precision\n";
    for (auto k : ks) out << k << ',' << format_metric(precision_at_k(ranking, *poisoned, k), 4) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"freqdoor: frequency-domain backdoor triggers, fidelity metrics and defenses"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const int env_jobs = default_jobs();

  PoisonArgs poison;
  poison.jobs = env_jobs;
  auto* p = app.add_subcommand("poison", "Poison a dataset and write a manifest");
  p->add_option("--input", poison.input, "CIFAR-10 binary batch or image directory")->required();
  p->add_option("--output", poison.output, "Poisoned dataset (same format as input)")->required();
  p->add_option("--manifest", poison.manifest, "Manifest path; default <output>.manifest.json");
  p->add_option("--format", poison.format, "auto | cifar10 | dir")->capture_default_str();
  p->add_option("--mode", poison.mode, "change-label | clean-label")->capture_default_str();
  p->add_option("--rate", poison.rate, "Injection rate in [0, 1]")->capture_default_str();
  p->add_option("--target", poison.target, "Target label")->capture_default_str();
  p->add_option("--seed", poison.seed, "Sampling seed")->capture_default_str();
  p->add_option("--perturbed", poison.perturbed,
                "Dataset of pre-perturbed images (same order) used for the selected records");
  p->add_flag("--asr-pool", poison.asr_pool,
              "Inject every non-target record and drop target-class records (test sets)");
  p->add_flag("--skip-bad", poison.skip_bad, "Skip undecodable images instead of failing");
  p->add_option("--jobs", poison.jobs, "Worker threads (default $FREQDOOR_JOBS or cores)");
  poison.trigger.attach(*p);

  ExtractArgs extract;
  auto* e = app.add_subcommand("extract-trigger", "Write the spatial trigger (FTRG) and a preview");
  e->add_option("--size", extract.size, "Image shape HxWxC")->capture_default_str();
  e->add_option("--output", extract.output, "FTRG output file")->required();
  e->add_option("--visual", extract.visual, "Preview PNG; default <output>.png");
  e->add_option("--factor", extract.factor, "Preview magnification")->capture_default_str();
  extract.trigger.attach(*e);

  MetricsArgs metrics;
  metrics.jobs = env_jobs;
  auto* m = app.add_subcommand("metrics", "PSNR/SSIM (and IS from probability files) per pair");
  m->add_option("--clean", metrics.clean, "Clean dataset")->required();
  m->add_option("--poisoned", metrics.poisoned, "Poisoned dataset (matched by source id)")
      ->required();
  m->add_option("--report", metrics.report, "CSV report path")->required();
  m->add_option("--format", metrics.format, "auto | cifar10 | dir")->capture_default_str();
  m->add_option("--clean-probs", metrics.clean_probs, "Classifier probabilities of clean images");
  m->add_option("--poisoned-probs", metrics.poisoned_probs,
                "Classifier probabilities of poisoned images");
  m->add_flag("--skip-bad", metrics.skip_bad, "Skip undecodable images instead of failing");
  m->add_option("--jobs", metrics.jobs, "Worker threads");

  DefendArgs defend;
  defend.jobs = env_jobs;
  auto* d = app.add_subcommand("defend", "Apply a smoothing filter to every image");
  d->add_option("--input", defend.input, "Input dataset")->required();
  d->add_option("--output", defend.output, "Filtered dataset")->required();
  d->add_option("--format", defend.format, "auto | cifar10 | dir")->capture_default_str();
  d->add_option("--filter", defend.filter, "gaussian | wiener")->capture_default_str();
  d->add_option("--window", defend.window, "Odd window side")->capture_default_str();
  d->add_option("--sigma", defend.sigma, "Gaussian sigma")->capture_default_str();
  d->add_flag("--skip-bad", defend.skip_bad, "Skip undecodable images instead of failing");
  d->add_option("--jobs", defend.jobs, "Worker threads");

  DetectArgs detect;
  detect.jobs = env_jobs;
  auto* t = app.add_subcommand("detect", "Rank images by frequency-domain anomaly score");
  t->add_option("--input", detect.input, "Dataset to score")->required();
  t->add_option("--report", detect.report, "CSV report path")->required();
  t->add_option("--manifest", detect.manifest, "Poison manifest for precision@K");
  t->add_option("--format", detect.format, "auto | cifar10 | dir")->capture_default_str();
  t->add_option("--k", detect.k_list, "Comma-separated K values; default 10 steps to 2x poisoned");
  t->add_option("--block-size", detect.block_size, "DCT block side")->capture_default_str();
  t->add_flag("--skip-bad", detect.skip_bad, "Skip undecodable images instead of failing");
  t->add_option("--jobs", detect.jobs, "Worker threads");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (p->parsed()) return cmd_poison(poison, out, err);
    if (e->parsed()) return cmd_extract_trigger(extract, out, err);
    if (m->parsed()) return cmd_metrics(metrics, out, err);
    if (d->parsed()) return cmd_defend(defend, out, err);
    if (t->parsed()) return cmd_detect(detect, out, err);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace freqdoor::cli
