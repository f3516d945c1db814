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
#include <string>
#include <vector>

#include "semlink/bitquant.hpp"
#include "semlink/complex_grid.hpp"
#include "semlink/importance.hpp"
#include "semlink/modulation.hpp"

namespace semlink {

enum class Role : std::uint8_t { Regular = 0, Important = 1, Pilot = 2 };

// Pilot lattice at t % dt == 0 and f % df == 0; the four grid neighbours of
// each pilot are Important, dropped at the grid boundary.
class GridLayout {
 public:
  int n_t() const { return n_t_; }
  int n_f() const { return n_f_; }
  int dt() const { return dt_; }
  int df() const { return df_; }
  Role role(int t, int f) const { return roles_[static_cast<std::size_t>(t) * n_f_ + f]; }
  const std::vector<Role>& roles() const { return roles_; }

  std::size_t n_cpi() const { return roles_.size(); }
  std::size_t n_ref() const { return n_ref_; }
  std::size_t n_green() const { return n_green_; }
  std::size_t n_regular() const { return n_regular_; }
  std::size_t n_data() const { return n_green_ + n_regular_; }

  // Time and frequency indices of the pilot rows / columns.
  std::vector<int> pilot_times() const;
  std::vector<int> pilot_freqs() const;

 private:
  friend GridLayout build_layout(int, int, int, int);
  int n_t_ = 0;
  int n_f_ = 0;
  int dt_ = 0;
  int df_ = 0;
  std::vector<Role> roles_;
  std::size_t n_ref_ = 0;
  std::size_t n_green_ = 0;
  std::size_t n_regular_ = 0;
};

GridLayout build_layout(int n_t, int n_f, int dt, int df);

// floor(D * N_green / (N_CPI - N_ref))
int important_feature_count(const GridLayout& layout, int channels);

// What the receiver must know to undo the mapping: payload geometry plus the
// per-stream symbol counts (identical at both ends of the simulated link).
struct StreamPlan {
  int channels = 0;
  int height = 0;
  int width = 0;
  int bits_per_value = 0;
  ValueRange range;
  int important_channels = 0;  // D_imp
  std::size_t bits_a = 0;      // unpadded stream lengths
  std::size_t bits_b = 0;
  std::size_t symbols_a = 0;
  std::size_t symbols_b = 0;
};

struct FrameUsage {
  std::size_t a_on_green = 0;
  std::size_t b_on_green = 0;
  std::size_t b_on_regular = 0;
  std::size_t a_on_regular = 0;
};

struct MappedFrames {
  std::vector<ComplexGrid> frames;
  cplx pilot_symbol{1.0, 0.0};
  StreamPlan plan;
  std::vector<FrameUsage> usage;

  std::size_t data_symbols() const { return plan.symbols_a + plan.symbols_b; }
};

// Planned RE for every stream symbol, as (frame * N_CPI + raster index).
struct Placement {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::size_t frames = 0;
};

Placement plan_placement(const GridLayout& layout, std::size_t symbols_a, std::size_t symbols_b);

StreamPlan plan_streams(const GridLayout& layout, const BitPayload& payload, int bits_per_symbol);

MappedFrames map_payload(const GridLayout& layout, const BitPayload& payload,
                         const ImportanceWeights& ranking, const Modulation& modulator,
                         cplx pilot_symbol = {1.0, 0.0});

BitPayload demap_payload(const MappedFrames& frames, const GridLayout& layout,
                         const ImportanceWeights& ranking, const Modulation& demodulator);

// 'P' pilot, 'G' important, '.' regular; one line per OFDM symbol.
std::string role_map_ascii(const GridLayout& layout);

}  // namespace semlink
