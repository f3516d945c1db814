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

#include <complex>
#include <cstddef>
#include <vector>

namespace semlink {

using cplx = std::complex<double>;

// n_t x n_f resource grid, time-major (one OFDM symbol per row).
struct ComplexGrid {
  int n_t = 0;
  int n_f = 0;
  std::vector<cplx> values;

  ComplexGrid() = default;
  ComplexGrid(int symbols, int subcarriers, cplx fill = {})
      : n_t(symbols), n_f(subcarriers),
        values(static_cast<std::size_t>(symbols) * subcarriers, fill) {}

  cplx& at(int t, int f) { return values[static_cast<std::size_t>(t) * n_f + f]; }
  cplx at(int t, int f) const { return values[static_cast<std::size_t>(t) * n_f + f]; }
  bool same_shape(const ComplexGrid& o) const { return n_t == o.n_t && n_f == o.n_f; }
};

}  // namespace semlink
