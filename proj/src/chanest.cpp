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

#include "semlink/chanest.hpp"

#include <algorithm>
#include <cmath>

#include "semlink/error.hpp"

namespace semlink {

ComplexGrid ls_estimate(const ComplexGrid& rx_frame, const GridLayout& layout, cplx pilot_symbol) {
  if (pilot_symbol == cplx{}) throw RangeError("pilot symbol must be non-zero");
  if (rx_frame.n_t != layout.n_t() || rx_frame.n_f != layout.n_f())
    throw DimensionError("received frame does not match the layout");
  const auto rows = layout.pilot_times();
  const auto cols = layout.pilot_freqs();
  ComplexGrid est(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      est.at(static_cast<int>(r), static_cast<int>(c)) = rx_frame.at(rows[r], cols[c]) / pilot_symbol;
  return est;
}

namespace {

// Bracketing lattice lines for coordinate x and the weight of the upper one.
struct Bracket {
  int lo = 0;
  int hi = 0;
  double w = 0.0;
};

Bracket bracket(int x, int spacing, int lines) {
  const int lo = std::min(x / spacing, lines - 1);
  if (lo == lines - 1) return {lo, lo, 0.0};
  return {lo, lo + 1, static_cast<double>(x - lo * spacing) / spacing};
}

}  // namespace

ChannelEstimate bilinear_interpolate(const ComplexGrid& pilot_estimates, const GridLayout& layout) {
  const int rows = static_cast<int>(layout.pilot_times().size());
  const int cols = static_cast<int>(layout.pilot_freqs().size());
  if (rows < 1 || cols < 1) throw DimensionError("pilot lattice is empty");
  if (pilot_estimates.n_t != rows || pilot_estimates.n_f != cols)
    throw DimensionError("pilot estimate grid does not match the lattice");

  ChannelEstimate est{pilot_estimates, ComplexGrid(layout.n_t(), layout.n_f())};

  // Frequency pass on every pilot row.
  ComplexGrid rowwise(rows, layout.n_f());
  for (int f = 0; f < layout.n_f(); ++f) {
    const Bracket b = bracket(f, layout.df(), cols);
    for (int r = 0; r < rows; ++r) {
      const cplx lo = pilot_estimates.at(r, b.lo);
      rowwise.at(r, f) = b.w == 0.0 ? lo : lo + b.w * (pilot_estimates.at(r, b.hi) - lo);
    }
  }
  // Time pass.
  for (int t = 0; t < layout.n_t(); ++t) {
    const Bracket b = bracket(t, layout.dt(), rows);
    for (int f = 0; f < layout.n_f(); ++f) {
      const cplx lo = rowwise.at(b.lo, f);
      est.full_grid.at(t, f) = b.w == 0.0 ? lo : lo + b.w * (rowwise.at(b.hi, f) - lo);
    }
  }
  return est;
}

ComplexGrid equalize(const ComplexGrid& rx_frame, const ChannelEstimate& est) {
  if (!rx_frame.same_shape(est.full_grid)) throw DimensionError("estimate does not cover the frame");
  ComplexGrid out(rx_frame.n_t, rx_frame.n_f);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const cplx h = est.full_grid.values[k];
    out.values[k] = std::abs(h) < kEqualizerFloor ? cplx{} : rx_frame.values[k] / h;
  }
  return out;
}

RoleMse& RoleMse::operator+=(const RoleMse& o) {
  auto pool = [](double& mean, std::size_t& n, double other_mean, std::size_t other_n) {
    const std::size_t total = n + other_n;
    if (total > 0) mean = (mean * n + other_mean * other_n) / static_cast<double>(total);
    n = total;
  };
  pool(pilot, pilot_count, o.pilot, o.pilot_count);
  pool(green, green_count, o.green, o.green_count);
  pool(regular, regular_count, o.regular, o.regular_count);
  return *this;
}

RoleMse estimation_error_stats(const ChannelEstimate& est, const ComplexGrid& true_response,
                               const GridLayout& layout) {
  if (!est.full_grid.same_shape(true_response) || true_response.n_t != layout.n_t() ||
      true_response.n_f != layout.n_f())
    throw DimensionError("estimate, channel and layout shapes differ");
  RoleMse m;
  for (std::size_t k = 0; k < layout.n_cpi(); ++k) {
    const double e = std::norm(est.full_grid.values[k] - true_response.values[k]);
    switch (layout.roles()[k]) {
      case Role::Pilot: m.pilot += e, ++m.pilot_count; break;
      case Role::Important: m.green += e, ++m.green_count; break;
      case Role::Regular: m.regular += e, ++m.regular_count; break;
    }
  }
  if (m.pilot_count) m.pilot /= static_cast<double>(m.pilot_count);
  if (m.green_count) m.green /= static_cast<double>(m.green_count);
  if (m.regular_count) m.regular /= static_cast<double>(m.regular_count);
  return m;
}

}  // namespace semlink
