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

#include <cstddef>

#include "semlink/complex_grid.hpp"
#include "semlink/grid.hpp"
#include "semlink/phy.hpp"

namespace semlink {

struct ChannelEstimate {
  // Indexed by (pilot row, pilot column) of the lattice.
  ComplexGrid pilot_estimates;
  ComplexGrid full_grid;
};

// h_LS = y_p / x_p at every pilot RE.
ComplexGrid ls_estimate(const ComplexGrid& rx_frame, const GridLayout& layout, cplx pilot_symbol);

// Linear along frequency on each pilot row, then linear along time. REs past
// the last pilot row/column take the value of the nearest pilot line.
ChannelEstimate bilinear_interpolate(const ComplexGrid& pilot_estimates, const GridLayout& layout);

constexpr double kEqualizerFloor = 1e-6;

// Zero-forcing y / h_hat; REs with |h_hat| < kEqualizerFloor come out as 0.
ComplexGrid equalize(const ComplexGrid& rx_frame, const ChannelEstimate& est);

struct RoleMse {
  double pilot = 0.0;
  double green = 0.0;
  double regular = 0.0;
  std::size_t pilot_count = 0;
  std::size_t green_count = 0;
  std::size_t regular_count = 0;

  // Count-weighted pooling of two measurements.
  RoleMse& operator+=(const RoleMse& o);
};

// Mean |h_hat - h|^2 over each RE role.
RoleMse estimation_error_stats(const ChannelEstimate& est, const ComplexGrid& true_response,
                               const GridLayout& layout);

}  // namespace semlink
