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

#include "semlink/bitquant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semlink/error.hpp"

namespace semlink {

namespace {

void check_params(int bits, ValueRange range) {
  if (bits < 1 || bits > kMaxBitsPerValue)
    throw RangeError("bits per value must be in [1, 16], got " + std::to_string(bits));
  if (!(range.min < range.max) || !std::isfinite(range.min) || !std::isfinite(range.max))
    throw RangeError("quantizer range must satisfy min < max");
}

double cell(int bits, ValueRange range) {
  return (range.max - range.min) / static_cast<double>(std::uint32_t{1} << bits);
}

}  // namespace

double BitPayload::step() const { return cell(bits_per_value, range); }

std::uint32_t quantize_value(double v, int bits, ValueRange range) {
  check_params(bits, range);
  const double levels = static_cast<double>(std::uint32_t{1} << bits);
  const double q = std::floor((v - range.min) / cell(bits, range));
  return static_cast<std::uint32_t>(std::clamp(q, 0.0, levels - 1.0));
}

double dequantize_value(std::uint32_t q, int bits, ValueRange range) {
  check_params(bits, range);
  return range.min + (static_cast<double>(q) + 0.5) * cell(bits, range);
}

BitPayload quantize_features(const FeatureTensor& k, int bits, ValueRange range) {
  check_params(bits, range);
  BitPayload p;
  p.bits_per_value = bits;
  p.range = range;
  p.channels = k.channels();
  p.height = k.height();
  p.width = k.width();
  p.bits.reserve(k.size() * bits);
  // values() is channel-major, row-major within a channel: the wire order.
  for (double v : k.values()) {
    const std::uint32_t q = quantize_value(v, bits, range);
    for (int b = bits - 1; b >= 0; --b) p.bits.push_back(static_cast<std::uint8_t>((q >> b) & 1u));
  }
  return p;
}

FeatureTensor dequantize_features(const BitPayload& p) {
  check_params(p.bits_per_value, p.range);
  if (p.channels < 0 || p.height < 0 || p.width < 0) throw FormatError("negative payload shape");
  if (p.bits.size() != p.word_length() * p.channels)
    throw FormatError("payload holds " + std::to_string(p.bits.size()) + " bits, expected " +
                      std::to_string(p.word_length() * p.channels));
  FeatureTensor k(p.channels, p.height, p.width);
  auto bit = p.bits.begin();
  for (double& v : k.values()) {
    std::uint32_t q = 0;
    for (int b = 0; b < p.bits_per_value; ++b) {
      if (*bit > 1) throw FormatError("payload bit is not 0/1");
      q = (q << 1) | *bit++;
    }
    v = dequantize_value(q, p.bits_per_value, p.range);
  }
  return k;
}

}  // namespace semlink
