// Copyright 2026 The Slotforge Authors.
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

// Layered run configuration.
//
// Every key resolves from the first layer that sets it:
//
//   flags (--seed, --set key=value)  >  SLOTFORGE_<SECTION>_<KEY> environment
//   variables  >  TOML file ([forge], [forge.template_banks], [metrics],
//   [adapter], [annotate])  >  built-in defaults.
//
// The source of each effective value is kept for --verbose output.

#ifndef SLOTFORGE_CONFIG_H_
#define SLOTFORGE_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slotforge/adapter_sim.h"
#include "slotforge/prompt_forge.h"
#include "slotforge/slotmetrics.h"

namespace slotforge {

struct AnnotateSettings {
  int max_retries = 3;
  int max_in_flight = 4;
  int64_t max_input_bytes = 128 * 1024;
};

struct CliConfig {
  ForgeConfig forge;
  MatchConfig metrics = MatchConfig::Containment();
  AdapterConfig adapter;
  AnnotateSettings annotate;
};

struct ConfigValue {
  std::string value;
  std::string source;  // "default", "toml:<path>", "env:<NAME>", "flag"
};

struct ResolvedConfig {
  CliConfig config;
  std::map<std::string, ConfigValue> provenance;  // dotted key -> value

  // "key = value  (source)" lines in key order.
  std::string Describe() const;
};

struct ConfigSources {
  std::optional<std::filesystem::path> toml_path;
  std::map<std::string, std::string> environment;  // full variable names
  std::map<std::string, std::string> flags;        // dotted keys
};

// Dotted keys the registry understands, in display order.
std::vector<std::string> ConfigKeys();

// Environment variable consulted for a dotted key, e.g. forge.context_max ->
// SLOTFORGE_FORGE_CONTEXT_MAX.
std::string EnvironmentName(const std::string &key);

// Throws Error(kInvalidConfig) for unknown keys or badly typed values and
// Error(kIo) for an unreadable TOML file. Cross-field validation is left to
// the consumers (ForgeConfig::Validate, AdapterConfig::Validate).
ResolvedConfig ResolveConfig(const ConfigSources &sources);

}  // namespace slotforge

#endif  // SLOTFORGE_CONFIG_H_
