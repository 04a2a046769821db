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

#include <fstream>

#include <nlohmann/json.hpp>

#include "freqdoor/error.hpp"
#include "freqdoor/poison.hpp"
#include "freqdoor/version.hpp"

using nlohmann::json;

namespace freqdoor {
namespace {

constexpr const char* kFormatTag = "freqdoor-poison-manifest";

std::string color_name(ColorVariant v) {
  return v == ColorVariant::kCorrected ? "corrected" : "paper-verbatim";
}

ColorVariant parse_color(const std::string& s) {
  if (s == "corrected") return ColorVariant::kCorrected;
  if (s == "paper-verbatim") return ColorVariant::kPrintedSigns;
  throw FormatError("unknown color matrix '" + s + "'");
}

json spec_to_json(const TriggerSpec& spec) {
  json bands = json::array();
  for (const auto& b : spec.bands) {
    bands.push_back({{"k1", b.band.k1}, {"k2", b.band.k2}, {"magnitude", b.magnitude}});
  }
  return {{"channels", format_channels(spec.channels)},
          {"bands", bands},
          {"block_size", spec.block_size},
          {"block_selection", format_block_selection(spec.blocks)},
          {"color_matrix", color_name(spec.color)}};
}

TriggerSpec spec_from_json(const json& j) {
  TriggerSpec spec;
  spec.channels = parse_channels(j.at("channels").get<std::string>());
  for (const auto& b : j.at("bands")) {
    spec.bands.push_back({{b.at("k1").get<int>(), b.at("k2").get<int>()},
                          b.at("magnitude").get<double>()});
  }
  spec.block_size = j.at("block_size").get<int>();
  spec.blocks = parse_block_selection(j.at("block_selection").get<std::string>());
  spec.color = parse_color(j.at("color_matrix").get<std::string>());
  return spec;
}

}  // namespace

void write_manifest(const PoisonManifest& m, const std::filesystem::path& path) {
  const auto& c = m.config;
  json doc = {
      {"format", kFormatTag},
      {"version", m.version},
      {"config",
       {{"injection_rate", c.injection_rate},
        {"target_label", c.target_label},
        {"mode", to_string(c.mode)},
        {"seed", c.seed},
        {"trigger", spec_to_json(c.spec)}}},
      {"total_records", m.total_records},
      {"poisoned_records", m.poisoned_records},
      {"poisoned_ids", m.poisoned_ids},
  };
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

LoadedManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  LoadedManifest out;
  try {
    const json doc = json::parse(in);
    if (doc.value("format", std::string{}) != kFormatTag) {
      throw FormatError(path.string() + " is not a poison manifest");
    }
    auto& m = out.manifest;
    m.version = doc.at("version").get<std::string>();
    const auto& c = doc.at("config");
    m.config.injection_rate = c.at("injection_rate").get<double>();
    m.config.target_label = c.at("target_label").get<int>();
    m.config.mode = parse_poison_mode(c.at("mode").get<std::string>());
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.spec = spec_from_json(c.at("trigger"));
    m.total_records = doc.at("total_records").get<std::size_t>();
    m.poisoned_records = doc.at("poisoned_records").get<std::size_t>();
    m.poisoned_ids = doc.at("poisoned_ids").get<std::vector<std::string>>();
    if (m.poisoned_ids.size() != m.poisoned_records) {
      throw FormatError(path.string() + ": poisoned_records does not match the id list");
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": malformed manifest: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": malformed manifest: " + e.what());
  }
  if (out.manifest.version != kVersion) {
    out.warnings.push_back("manifest written by freqdoor " + out.manifest.version +
                           ", reading with " + kVersion);
  }
  return out;
}

}  // namespace freqdoor
