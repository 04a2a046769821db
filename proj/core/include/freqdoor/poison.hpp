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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "freqdoor/dataset.hpp"
#include "freqdoor/trigger.hpp"

namespace freqdoor {

enum class PoisonMode { kChangeLabel, kCleanLabel };

inline constexpr double kDefaultInjectionRate = 0.05;
inline constexpr int kDefaultTargetLabel = 8;

struct PoisonConfig {
  double injection_rate = kDefaultInjectionRate;
  int target_label = kDefaultTargetLabel;
  PoisonMode mode = PoisonMode::kChangeLabel;
  std::uint64_t seed = 0;
  TriggerSpec spec;

  bool operator==(const PoisonConfig&) const = default;
};

struct PoisonManifest {
  PoisonConfig config;
  std::vector<std::string> poisoned_ids;
  std::size_t total_records = 0;
  std::size_t poisoned_records = 0;
  std::string version;

  bool operator==(const PoisonManifest&) const = default;
};

struct PoisonResult {
  Dataset records;
  PoisonManifest manifest;
};

// Replaces a selected record's image before the trigger goes in. Used to feed
// adversarially pre-perturbed images in clean-label mode.
using PrePerturbHook = std::function<PixelImage(std::size_t index, const DatasetRecord&)>;

struct PoisonOptions {
  int jobs = 1;
  PrePerturbHook pre_perturb;
};

// floor(rate * N) for change-label; clean-label caps it by the number of
// target-class records.
std::size_t poison_count(const Dataset& records, const PoisonConfig& config);

// Indices of the records to poison, ascending. Depends only on labels,
// config and seed.
std::vector<std::size_t> select_poison_indices(const Dataset& records, const PoisonConfig& config);

PoisonResult poison_dataset(const Dataset& records, const PoisonConfig& config,
                            const PoisonOptions& options = {});

// Injects every record whose label is not target_label and drops the rest;
// labels are left as they were.
Dataset poison_testset(const Dataset& records, const TriggerSpec& spec, int target_label,
                       int jobs = 1);

std::string to_string(PoisonMode mode);
PoisonMode parse_poison_mode(std::string_view text);

struct LoadedManifest {
  PoisonManifest manifest;
  std::vector<std::string> warnings;
};

void write_manifest(const PoisonManifest& manifest, const std::filesystem::path& path);
LoadedManifest read_manifest(const std::filesystem::path& path);

}  // namespace freqdoor
