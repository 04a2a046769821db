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

#include "freqdoor/poison.hpp"

#include <cmath>
#include <stdexcept>

#include "freqdoor/parallel.hpp"
#include "freqdoor/rng.hpp"
#include "freqdoor/version.hpp"

namespace freqdoor {
namespace {

void check_config(const PoisonConfig& config) {
  if (!(config.injection_rate >= 0.0 && config.injection_rate <= 1.0)) {
    throw std::invalid_argument("injection rate must be in [0, 1]");
  }
  if (config.target_label < 0) throw std::invalid_argument("target label must be >= 0");
}

std::vector<std::size_t> candidate_pool(const Dataset& records, const PoisonConfig& config) {
  std::vector<std::size_t> pool;
  pool.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (config.mode == PoisonMode::kChangeLabel || records[i].label == config.target_label) {
      pool.push_back(i);
    }
  }
  return pool;
}

}  // namespace

std::size_t poison_count(const Dataset& records, const PoisonConfig& config) {
  check_config(config);
  // The epsilon keeps rates like 0.05 * 10000 from landing on 499.
  const auto wanted = static_cast<std::size_t>(
      std::floor(config.injection_rate * static_cast<double>(records.size()) + 1e-9));
  if (config.mode == PoisonMode::kChangeLabel) return std::min(wanted, records.size());
  return std::min(wanted, candidate_pool(records, config).size());
}

std::vector<std::size_t> select_poison_indices(const Dataset& records, const PoisonConfig& config) {
  check_config(config);
  const auto pool = candidate_pool(records, config);
  if (config.mode == PoisonMode::kCleanLabel && pool.empty()) {
    throw std::invalid_argument("clean-label poisoning needs records of target class " +
                                std::to_string(config.target_label) + "; none found");
  }
  Rng rng(config.seed);
  return sample_sorted(pool, poison_count(records, config), rng);
}

PoisonResult poison_dataset(const Dataset& records, const PoisonConfig& config,
                            const PoisonOptions& options) {
  if (records.empty()) throw std::invalid_argument("cannot poison an empty dataset");
  check_config(config);
  for (const auto& rec : records) {
    if (rec.image.channels() != records.front().image.channels()) {
      throw std::invalid_argument("dataset mixes gray and color images");
    }
  }
  const auto chosen = select_poison_indices(records, config);

  PoisonResult result{records, {}};
  parallel_for(chosen.size(), options.jobs, [&](std::size_t j) {
    const std::size_t i = chosen[j];
    DatasetRecord& rec = result.records[i];
    if (options.pre_perturb) {
      PixelImage perturbed = options.pre_perturb(i, records[i]);
      if (!perturbed.same_shape(rec.image)) {
        throw std::invalid_argument("pre-perturbed image for " + rec.source_id + " changes shape");
      }
      rec.image = std::move(perturbed);
    }
    rec.image = inject(rec.image, config.spec);
    if (config.mode == PoisonMode::kChangeLabel) rec.label = config.target_label;
  });

  auto& m = result.manifest;
  m.config = config;
  m.total_records = records.size();
  m.poisoned_records = chosen.size();
  m.version = kVersion;
  m.poisoned_ids.reserve(chosen.size());
  for (auto i : chosen) m.poisoned_ids.push_back(records[i].source_id);
  return result;
}

Dataset poison_testset(const Dataset& records, const TriggerSpec& spec, int target_label, int jobs) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].label != target_label) pool.push_back(i);
  }
  Dataset out(pool.size());
  parallel_for(pool.size(), jobs, [&](std::size_t j) {
    const auto& src = records[pool[j]];
    out[j] = {inject(src.image, spec), src.label, src.source_id};
  });
  return out;
}

std::string to_string(PoisonMode mode) {
  return mode == PoisonMode::kChangeLabel ? "change-label" : "clean-label";
}

PoisonMode parse_poison_mode(std::string_view text) {
  if (text == "change-label") return PoisonMode::kChangeLabel;
  if (text == "clean-label") return PoisonMode::kCleanLabel;
  throw std::invalid_argument("unknown poison mode '" + std::string(text) +
                              "' (expected change-label or clean-label)");
}

}  // namespace freqdoor
