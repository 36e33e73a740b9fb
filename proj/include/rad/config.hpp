// Copyright 2026 The RAD Authors.
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

// Flat `key = value` configuration with dotted keys, `#` comments and
// `--key=value` command-line overrides.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rad {

class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  /// Accepts `--key=value`; throws ConfigError otherwise.
  void apply_override(std::string_view argument);
  void erase(const std::string& key) { values_.erase(key); }

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated list; empty items are dropped.
  std::vector<std::string> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return values_; }
  /// Sorted `key = value` lines; `parse(to_text())` round-trips.
  std::string to_text() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace rad
