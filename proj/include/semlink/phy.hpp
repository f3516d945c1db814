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

#include "semlink/complex_grid.hpp"
#include "semlink/modulation.hpp"

namespace semlink {

// ---- 16-QAM, Gray coded: (b0 b1) -> I, (b2 b3) -> Q,
// 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3, scaled by 1/sqrt(10).

struct QamSymbols {
  std::vector<cplx> symbols;
  int pad_bits = 0;  // zeros appended to reach a multiple of 4
};

QamSymbols qam16_modulate(std::span<const std::uint8_t> bits);
// Minimum-distance hard decision.
Bits qam16_demodulate(std::span<const cplx> symbols);

class Qam16 final : public Modulation {
 public:
  int bits_per_symbol() const override { return 4; }
  std::vector<cplx> modulate(std::span<const std::uint8_t> bits) const override;
  Bits demodulate(std::span<const cplx> symbols) const override;
};

// ---- OFDM

struct OfdmParams {
  int n_f = 72;
  int fft_size = 128;
  int cp_len = 16;
};

// FFT bin carrying active subcarrier f. The active band is centred on DC:
// subcarrier f sits at signed frequency f - n_f/2.
int subcarrier_bin(int f, int n_f, int fft_size);

// Unitary IDFT per OFDM symbol plus cyclic prefix.
std::vector<cplx> ofdm_modulate(const ComplexGrid& frame, int fft_size, int cp_len);
// CP removal and unitary DFT; returns the n_f active subcarriers per symbol.
ComplexGrid ofdm_demodulate(std::span<const cplx> samples, int fft_size, int cp_len, int n_f);

// ---- Channel

struct ChannelParams {
  int taps = 8;
  double decay = 2.0;  // pdp(k) proportional to exp(-k / decay)
  double rho = 0.999;  // AR(1) correlation between consecutive OFDM symbols
};

// Tap gains are held constant inside an OFDM symbol and evolve by AR(1)
// between symbols.
struct ChannelRealization {
  std::vector<std::vector<cplx>> taps;  // [symbol][tap]
  std::vector<double> pdp;
  double rho = 1.0;
  double sigma2 = 0.0;
  std::uint64_t noise_seed = 0;
  OfdmParams ofdm;
  ComplexGrid freq_response;  // n_t x n_f, H(t, f) = sum_k g_t[k] e^{-j 2 pi k bin(f) / N}
};

std::vector<double> exponential_pdp(int taps, double decay);

ChannelRealization draw_channel(std::uint64_t seed, const ChannelParams& params, int n_t,
                                double sigma2, const OfdmParams& ofdm);

// Per-symbol linear convolution (the CP absorbs the previous symbol's tail)
// plus circular complex AWGN of variance sigma2.
std::vector<cplx> channel_apply(std::span<const cplx> samples, const ChannelRealization& chan);

// sigma2 = 10^(-snr_db / 10); +inf maps to 0.
double noise_variance_for_snr(double snr_db);

}  // namespace semlink
