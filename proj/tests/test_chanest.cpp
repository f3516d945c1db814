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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "semlink/chanest.hpp"
#include "semlink/config.hpp"
#include "semlink/error.hpp"
#include "semlink/grid.hpp"
#include "semlink/phy.hpp"

using namespace semlink;

namespace {

ComplexGrid pilot_frame(const GridLayout& g, cplx pilot) {
  ComplexGrid frame(g.n_t(), g.n_f());
  for (int t = 0; t < g.n_t(); ++t)
    for (int f = 0; f < g.n_f(); ++f)
      if (g.role(t, f) == Role::Pilot) frame.at(t, f) = pilot;
  return frame;
}

// Transmit a pilot-only frame through a drawn channel and estimate it.
struct Trial {
  ChannelRealization chan;
  ChannelEstimate est;
};

Trial run_trial(const GridLayout& g, std::uint64_t seed, const ChannelParams& params, double sigma2,
                cplx pilot = 1.0) {
  const OfdmParams ofdm{g.n_f(), next_pow2(g.n_f()), 16};
  Trial tr{draw_channel(seed, params, g.n_t(), sigma2, ofdm), {}};
  const auto tx = ofdm_modulate(pilot_frame(g, pilot), ofdm.fft_size, ofdm.cp_len);
  const auto rx = ofdm_demodulate(channel_apply(tx, tr.chan), ofdm.fft_size, ofdm.cp_len, g.n_f());
  tr.est = bilinear_interpolate(ls_estimate(rx, g, pilot), g);
  return tr;
}

}  // namespace

TEST_SUITE("chanest") {
  TEST_CASE("least squares at pilots") {
    const auto g = build_layout(5, 5, 4, 4);
    ComplexGrid rx(5, 5);
    rx.at(0, 0) = {2, 2};
    rx.at(0, 4) = {0, -1};
    rx.at(4, 0) = 3;
    rx.at(4, 4) = {1, 1};
    const auto h = ls_estimate(rx, g, cplx{1, 1});
    REQUIRE(h.n_t == 2);
    REQUIRE(h.n_f == 2);
    CHECK(std::abs(h.at(0, 0) - cplx{2, 0}) < 1e-15);
    CHECK(std::abs(h.at(0, 1) - cplx{-0.5, -0.5}) < 1e-15);
    CHECK(std::abs(h.at(1, 0) - cplx{1.5, -1.5}) < 1e-15);
    CHECK(std::abs(h.at(1, 1) - cplx{1, 0}) < 1e-15);
    CHECK_THROWS_AS(ls_estimate(rx, g, 0.0), RangeError);
    CHECK_THROWS_AS(ls_estimate(ComplexGrid(5, 6), g, 1.0), DimensionError);
  }

  TEST_CASE("bilinear examples") {
    const auto g = build_layout(5, 5, 4, 4);
    ComplexGrid p(2, 2);
    p.at(0, 0) = 1;
    p.at(0, 1) = 2;
    p.at(1, 0) = 3;
    p.at(1, 1) = 4;
    const auto est = bilinear_interpolate(p, g);
    CHECK(std::abs(est.full_grid.at(2, 2) - 2.5) < 1e-15);
    CHECK(std::abs(est.full_grid.at(0, 2) - 1.5) < 1e-15);
    CHECK(std::abs(est.full_grid.at(1, 0) - 1.5) < 1e-15);
    CHECK(std::abs(est.full_grid.at(4, 4) - 4.0) < 1e-15);

    ComplexGrid c(2, 2, cplx{0.3, -0.7});
    for (auto v : bilinear_interpolate(c, g).full_grid.values) CHECK(std::abs(v - cplx{0.3, -0.7}) < 1e-15);
  }

  TEST_CASE("REs past the last pilot line hold its value") {
    const auto g = build_layout(7, 7, 4, 4);  // pilot lines at 0 and 4
    ComplexGrid p(2, 2);
    p.at(0, 0) = 1;
    p.at(0, 1) = 2;
    p.at(1, 0) = 3;
    p.at(1, 1) = 4;
    const auto est = bilinear_interpolate(p, g);
    for (int t = 4; t < 7; ++t)
      for (int f = 4; f < 7; ++f) CHECK(est.full_grid.at(t, f) == cplx{4});
    CHECK(std::abs(est.full_grid.at(6, 2) - 3.5) < 1e-15);
    CHECK(std::abs(est.full_grid.at(2, 6) - 3.0) < 1e-15);
  }

  TEST_CASE("linear fields are reproduced exactly inside the lattice hull") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const int dt = 3 + static_cast<int>(rng() % 4), df = 3 + static_cast<int>(rng() % 4);
      const int rows = 2 + static_cast<int>(rng() % 5), cols = 2 + static_cast<int>(rng() % 5);
      const auto g = build_layout((rows - 1) * dt + 1, (cols - 1) * df + 1, dt, df);
      const cplx a{n(rng), n(rng)}, b{n(rng), n(rng)}, c{n(rng), n(rng)};
      auto field = [&](double t, double f) { return a + b * t + c * f; };
      ComplexGrid p(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int q = 0; q < cols; ++q) p.at(r, q) = field(r * dt, q * df);
      const auto est = bilinear_interpolate(p, g);
      double err = 0.0;
      for (int t = 0; t < g.n_t(); ++t)
        for (int f = 0; f < g.n_f(); ++f) err = std::max(err, std::abs(est.full_grid.at(t, f) - field(t, f)));
      CHECK(err < 1e-12);
    }
  }

  TEST_CASE("interpolation is exact at pilots") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto g = build_layout(56, 72, 4, 6);
    ComplexGrid p(14, 12);
    for (auto& v : p.values) v = {n(rng), n(rng)};
    const auto est = bilinear_interpolate(p, g);
    for (int r = 0; r < 14; ++r)
      for (int q = 0; q < 12; ++q) CHECK(est.full_grid.at(4 * r, 6 * q) == p.at(r, q));
    CHECK_THROWS_AS(bilinear_interpolate(ComplexGrid(13, 12), g), DimensionError);
  }

  TEST_CASE("zero-forcing equalizer") {
    ChannelEstimate est{ComplexGrid(), ComplexGrid(1, 3)};
    est.full_grid.at(0, 0) = {0, 1};
    est.full_grid.at(0, 1) = 2;
    est.full_grid.at(0, 2) = 1e-7;
    ComplexGrid rx(1, 3);
    rx.at(0, 0) = {1, 0};
    rx.at(0, 1) = {4, 2};
    rx.at(0, 2) = 5;
    const auto eq = equalize(rx, est);
    CHECK(std::abs(eq.at(0, 0) - cplx{0, -1}) < 1e-15);
    CHECK(std::abs(eq.at(0, 1) - cplx{2, 1}) < 1e-15);
    CHECK(eq.at(0, 2) == cplx{});
    CHECK_THROWS_AS(equalize(ComplexGrid(1, 2), est), DimensionError);
  }

  TEST_CASE("error statistics") {
    const auto g = build_layout(8, 8, 3, 3);
    ChannelEstimate est{ComplexGrid(3, 3), ComplexGrid(8, 8, cplx{1, 1})};
    const ComplexGrid truth(8, 8, cplx{1, 1});
    const auto zero = estimation_error_stats(est, truth, g);
    CHECK(zero.pilot == 0.0);
    CHECK(zero.green == 0.0);
    CHECK(zero.regular == 0.0);
    CHECK(zero.pilot_count == g.n_ref());
    CHECK(zero.green_count == g.n_green());
    CHECK(zero.regular_count == g.n_regular());

    est.full_grid.at(0, 0) += 2.0;  // pilot
    est.full_grid.at(0, 1) += 1.0;  // green
    const auto s = estimation_error_stats(est, truth, g);
    CHECK(s.pilot == doctest::Approx(4.0 / g.n_ref()));
    CHECK(s.green == doctest::Approx(1.0 / g.n_green()));
    CHECK(s.regular == 0.0);

    RoleMse pooled = s;
    pooled += zero;
    CHECK(pooled.pilot == doctest::Approx(2.0 / g.n_ref()));
    CHECK(pooled.pilot_count == 2 * g.n_ref());
  }

  TEST_CASE("LS error variance equals the noise variance") {
    const auto g = build_layout(56, 72, 4, 6);
    for (double sigma2 : {0.01, 0.1}) {
      RoleMse total;
      for (int seed = 0; seed < 60; ++seed) {
        const auto tr = run_trial(g, seed, {}, sigma2);
        total += estimation_error_stats(tr.est, tr.chan.freq_response, g);
      }
      CHECK(total.pilot_count == 60 * 168);
      CHECK(std::abs(total.pilot / sigma2 - 1.0) < 0.05);
    }
  }

  TEST_CASE("without noise the greens track the channel better than regular REs") {
    const auto g = build_layout(56, 72, 4, 6);
    RoleMse total;
    for (int seed = 0; seed < 50; ++seed) {
      const auto tr = run_trial(g, seed, {8, 2.0, 0.99}, 0.0);
      total += estimation_error_stats(tr.est, tr.chan.freq_response, g);
    }
    CHECK(total.pilot < 1e-20);
    CHECK(total.green < total.regular);
  }
}
