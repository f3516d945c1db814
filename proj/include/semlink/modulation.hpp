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

#include <span>
#include <vector>

#include "semlink/bitquant.hpp"
#include "semlink/complex_grid.hpp"

namespace semlink {

// Bit <-> symbol mapping used by the resource mapper. Inputs to modulate()
// must hold a whole number of symbols.
class Modulation {
 public:
  virtual ~Modulation() = default;
  virtual int bits_per_symbol() const = 0;
  virtual std::vector<cplx> modulate(std::span<const std::uint8_t> bits) const = 0;
  virtual Bits demodulate(std::span<const cplx> symbols) const = 0;
};

}  // namespace semlink
