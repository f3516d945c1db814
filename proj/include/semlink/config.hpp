/*
 * Copyright 2026 The semlink Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "semlink/complex_grid.hpp"
#include "semlink/phy.hpp"

namespace semlink {

struct GridParams {
  int n_t = 56;
  int n_f = 72;
  int dt = 4;
  int df = 6;
};

// fit: importance-ranked placement on the green REs (identity order when off).
// rematch: receiver-side codebook projection of the dequantized features.
struct Scheme {
  bool fit = true;
  bool rematch = true;

  std::string name() const;
  static Scheme parse(const std::string& name);
  bool operator==(const Scheme&) const = default;
};

struct SimConfig {
  std::string profile = "desk";
  GridParams grid;
  int fft_size = 128;
  int cp_len = 16;
  int qam_order = 16;
  ChannelParams channel;
  int patch = 4;
  int entries = 1024;
  int bits = 8;
  Scheme scheme;
  cplx pilot_symbol{1.0, 0.0};

  // Recorded for reference only; the simulation is sample-indexed baseband.
  double carrier_hz = 2.4e9;
  double bandwidth_hz = 20e6;

  std::vector<double> snr_db{5, 10, 15, 20, 25};
  std::vector<std::uint64_t> seeds{0};
  std::vector<Scheme> schemes{Scheme{true, true}};

  std::filesystem::path codebook;
  std::filesystem::path image;
  std::filesystem::path output_dir{"."};
  std::filesystem::path csv;

  OfdmParams ofdm() const { return {grid.n_f, fft_size, cp_len}; }
  // Throws ConfigError on any inconsistency.
  void validate() const;
};

// Built-in profiles: "desk" (56x72 grid, CP 16, FFT 128) and "paper"
// (448x792 grid, CP 72, FFT 1024).
SimConfig profile_config(const std::string& name);

// Smallest power of two >= n.
int next_pow2(int n);

// Flat "section.key = value" text. '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// Applies key/value settings on top of cfg. A "profile" key resets cfg to that
// profile first, so it must not silently undo earlier keys: it is applied
// before all others regardless of position.
void apply_settings(SimConfig& cfg, const std::map<std::string, std::string>& kv);

SimConfig load_config(const std::filesystem::path& path);

// "5:25:5" (inclusive range), "5,10,20", or a single value; "inf" allowed.
std::vector<double> parse_snr_list(const std::string& spec);
std::vector<Scheme> parse_scheme_list(const std::string& spec);
bool parse_on_off(const std::string& v);

}  // namespace semlink
