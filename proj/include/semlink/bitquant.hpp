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
#include <span>
#include <vector>

#include "semlink/codec.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

using Bits = std::vector<std::uint8_t>;  // one 0/1 value per element

// D words of H*W*c bits each, stored back to back (channel-major, then
// row-major positions, each value a big-endian c-bit field).
struct BitPayload {
  int bits_per_value = 8;
  ValueRange range;
  int channels = 0;
  int height = 0;
  int width = 0;
  Bits bits;

  std::size_t word_length() const {
    return static_cast<std::size_t>(height) * width * bits_per_value;
  }
  std::span<const std::uint8_t> word(int i) const {
    return std::span<const std::uint8_t>(bits).subspan(i * word_length(), word_length());
  }
  std::span<std::uint8_t> word(int i) {
    return std::span<std::uint8_t>(bits).subspan(i * word_length(), word_length());
  }
  // Cell width of the mid-rise quantizer.
  double step() const;

  bool operator==(const BitPayload&) const = default;
};

constexpr int kMaxBitsPerValue = 16;

std::uint32_t quantize_value(double v, int bits, ValueRange range);
double dequantize_value(std::uint32_t q, int bits, ValueRange range);

BitPayload quantize_features(const FeatureTensor& k, int bits, ValueRange range);
FeatureTensor dequantize_features(const BitPayload& p);

}  // namespace semlink
