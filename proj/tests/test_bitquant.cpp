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

#include "semlink/bitquant.hpp"
#include "semlink/error.hpp"
#include "support.hpp"

using namespace semlink;

TEST_SUITE("bitquant") {
  TEST_CASE("scalar quantizer examples") {
    const ValueRange unit{0.0, 1.0};
    CHECK(quantize_value(0.6, 2, unit) == 2);
    CHECK(quantize_value(0.0, 2, unit) == 0);
    CHECK(quantize_value(1.0, 2, unit) == 3);
    CHECK(quantize_value(-5.0, 2, unit) == 0);
    CHECK(quantize_value(7.0, 8, unit) == 255);
    CHECK(dequantize_value(2, 2, unit) == 0.625);

    FeatureTensor t(1, 1, 1);
    t(0, 0, 0) = 0.6;
    const auto p = quantize_features(t, 2, unit);
    CHECK(p.bits == Bits{1, 0});
    CHECK(dequantize_features(p)(0, 0, 0) == 0.625);
  }

  TEST_CASE("big-endian words, channel-major") {
    FeatureTensor t(2, 1, 2);
    t(0, 0, 0) = 0;    // q = 0
    t(0, 0, 1) = 255;  // q = 15 (clamped)
    t(1, 0, 0) = 17;   // q = 1
    t(1, 0, 1) = 160;  // q = 10
    const auto p = quantize_features(t, 4, {0, 256});
    CHECK(p.word_length() == 8);
    CHECK(p.bits == Bits{0, 0, 0, 0, 1, 1, 1, 1, /**/ 0, 0, 0, 1, 1, 0, 1, 0});
    CHECK(std::vector<std::uint8_t>(p.word(1).begin(), p.word(1).end()) == Bits{0, 0, 0, 1, 1, 0, 1, 0});
  }

  TEST_CASE("monotone and within half a cell for in-range values") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 5.0);
    const ValueRange r{-3.0, 5.0};
    for (int bits = 1; bits <= 16; ++bits) {
      const double step = (r.max - r.min) / std::pow(2.0, bits);
      double prev_v = -1e9;
      std::uint32_t prev_q = 0;
      std::vector<double> vs(2000);
      for (auto& v : vs) v = u(rng);
      std::ranges::sort(vs);
      for (double v : vs) {
        const auto q = quantize_value(v, bits, r);
        if (v >= prev_v) CHECK(q >= prev_q);
        prev_v = v;
        prev_q = q;
        CHECK(std::abs(dequantize_value(q, bits, r) - v) <= step / 2 * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("per-channel bit error bounded by step/2 * sqrt(HW)") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    FeatureTensor k(4, 8, 8);
    for (auto& v : k.values()) v = u(rng);
    for (int bits : {1, 3, 8, 12}) {
      const auto p = quantize_features(k, bits, {-10, 10});
      const auto back = dequantize_features(p);
      for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (std::size_t n = 0; n < k.positions(); ++n) s += std::pow(k.channel(i)[n] - back.channel(i)[n], 2);
        CHECK(std::sqrt(s) <= p.step() / 2 * std::sqrt(64.0) * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("pack/unpack of the bit string is the identity") {
    // Property: any well-formed payload survives dequantize -> quantize.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const int bits = 1 + static_cast<int>(rng() % 16);
      BitPayload p;
      p.bits_per_value = bits;
      p.range = {-2.0, 7.0};
      p.channels = 1 + static_cast<int>(rng() % 5);
      p.height = 1 + static_cast<int>(rng() % 4);
      p.width = 1 + static_cast<int>(rng() % 4);
      p.bits.resize(p.word_length() * p.channels);
      for (auto& b : p.bits) b = rng() & 1u;
      CHECK(quantize_features(dequantize_features(p), bits, p.range) == p);
    }
  }

  TEST_CASE("rematch recovers K exactly once the quantizer is fine enough") {
    // Sweep c upward: recovery must be total as soon as step/2 * sqrt(D) drops
    // below half the smallest d_min in use.
    const Codebook& cb = semlink::testing::small_codebook();
    const FeatureTensor k = vq_quantize(dct_encode(synthesize_image(404), 4), cb);
    double dmin = std::numeric_limits<double>::infinity();
    for (int idx : vq_indices(k, cb)) dmin = std::min(dmin, codebook_dmin(cb, idx));

    bool reached_bound = false;
    for (int bits = 1; bits <= 16; ++bits) {
      const auto p = quantize_features(k, bits, cb.value_range());
      const auto back = dequantize_features(p);
      for (std::size_t n = 0; n < k.size(); ++n)
        CHECK(std::abs(back.values()[n] - k.values()[n]) <= p.step() / 2 + 1e-12 * p.step() * (1 << bits));
      if (p.step() / 2 * std::sqrt(16.0) < dmin / 2) {
        reached_bound = true;
        CHECK(rematch(back, cb) == k);
      }
    }
    CHECK(reached_bound);
  }

  TEST_CASE("error paths") {
    FeatureTensor t(1, 1, 1);
    CHECK_THROWS_AS(quantize_features(t, 8, {1, 1}), RangeError);
    CHECK_THROWS_AS(quantize_features(t, 8, {2, 1}), RangeError);
    CHECK_THROWS_AS(quantize_features(t, 0, {0, 1}), RangeError);
    CHECK_THROWS_AS(quantize_features(t, 17, {0, 1}), RangeError);
    auto p = quantize_features(t, 8, {0, 1});
    p.bits.pop_back();
    CHECK_THROWS_AS(dequantize_features(p), FormatError);
  }
}
