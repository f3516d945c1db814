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

#include "semlink/phy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "fft.hpp"
#include "semlink/error.hpp"

namespace semlink {

namespace {

const double kQamScale = 1.0 / std::sqrt(10.0);

double gray_level(std::uint8_t hi, std::uint8_t lo) {
  // 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
  if (hi == 0) return lo == 0 ? -3.0 : -1.0;
  return lo == 1 ? 1.0 : 3.0;
}

void gray_bits(double level, std::uint8_t* out) {
  if (level < -2.0) {
    out[0] = 0, out[1] = 0;
  } else if (level < 0.0) {
    out[0] = 0, out[1] = 1;
  } else if (level < 2.0) {
    out[0] = 1, out[1] = 1;
  } else {
    out[0] = 1, out[1] = 0;
  }
}

}  // namespace

QamSymbols qam16_modulate(std::span<const std::uint8_t> bits) {
  QamSymbols out;
  out.pad_bits = static_cast<int>((4 - bits.size() % 4) % 4);
  out.symbols.reserve((bits.size() + 3) / 4);
  auto bit = [&](std::size_t k) -> std::uint8_t { return k < bits.size() ? (bits[k] & 1u) : 0; };
  for (std::size_t k = 0; k < bits.size(); k += 4) {
    const double i = gray_level(bit(k), bit(k + 1));
    const double q = gray_level(bit(k + 2), bit(k + 3));
    out.symbols.emplace_back(i * kQamScale, q * kQamScale);
  }
  return out;
}

Bits qam16_demodulate(std::span<const cplx> symbols) {
  Bits out(symbols.size() * 4);
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    gray_bits(symbols[k].real() / kQamScale, &out[4 * k]);
    gray_bits(symbols[k].imag() / kQamScale, &out[4 * k + 2]);
  }
  return out;
}

std::vector<cplx> Qam16::modulate(std::span<const std::uint8_t> bits) const {
  return qam16_modulate(bits).symbols;
}

Bits Qam16::demodulate(std::span<const cplx> symbols) const { return qam16_demodulate(symbols); }

int subcarrier_bin(int f, int n_f, int fft_size) {
  return ((f - n_f / 2) % fft_size + fft_size) % fft_size;
}

std::vector<cplx> ofdm_modulate(const ComplexGrid& frame, int fft_size, int cp_len) {
  if (fft_size < frame.n_f || fft_size < 1) throw ConfigError("fft size smaller than subcarrier count");
  if (cp_len < 0 || cp_len > fft_size) throw ConfigError("cyclic prefix length out of range");
  const std::size_t sym_len = static_cast<std::size_t>(fft_size) + cp_len;
  std::vector<cplx> out(sym_len * frame.n_t);
  std::vector<cplx> buf(fft_size);
  for (int t = 0; t < frame.n_t; ++t) {
    std::fill(buf.begin(), buf.end(), cplx{});
    for (int f = 0; f < frame.n_f; ++f) buf[subcarrier_bin(f, frame.n_f, fft_size)] = frame.at(t, f);
    detail::unitary_dft(buf, true);
    auto* dst = out.data() + t * sym_len;
    std::copy(buf.end() - cp_len, buf.end(), dst);
    std::copy(buf.begin(), buf.end(), dst + cp_len);
  }
  return out;
}

ComplexGrid ofdm_demodulate(std::span<const cplx> samples, int fft_size, int cp_len, int n_f) {
  if (fft_size < n_f || fft_size < 1) throw ConfigError("fft size smaller than subcarrier count");
  if (cp_len < 0 || cp_len > fft_size) throw ConfigError("cyclic prefix length out of range");
  const std::size_t sym_len = static_cast<std::size_t>(fft_size) + cp_len;
  if (samples.size() % sym_len != 0)
    throw DimensionError("sample count " + std::to_string(samples.size()) +
                         " is not a multiple of the symbol length " + std::to_string(sym_len));
  const int n_t = static_cast<int>(samples.size() / sym_len);
  ComplexGrid grid(n_t, n_f);
  std::vector<cplx> buf(fft_size);
  for (int t = 0; t < n_t; ++t) {
    const auto* src = samples.data() + t * sym_len + cp_len;
    std::copy(src, src + fft_size, buf.begin());
    detail::unitary_dft(buf, false);
    for (int f = 0; f < n_f; ++f) grid.at(t, f) = buf[subcarrier_bin(f, n_f, fft_size)];
  }
  return grid;
}

std::vector<double> exponential_pdp(int taps, double decay) {
  if (taps < 1) throw ConfigError("channel needs at least one tap");
  if (!(decay > 0.0)) throw ConfigError("pdp decay must be positive");
  std::vector<double> pdp(taps);
  double total = 0.0;
  for (int k = 0; k < taps; ++k) total += pdp[k] = std::exp(-k / decay);
  for (auto& p : pdp) p /= total;
  return pdp;
}

ChannelRealization draw_channel(std::uint64_t seed, const ChannelParams& params, int n_t,
                                double sigma2, const OfdmParams& ofdm) {
  if (std::abs(params.rho) > 1.0) throw ConfigError("|rho| must not exceed 1");
  if (!(sigma2 >= 0.0)) throw ConfigError("noise variance must be non-negative");
  if (n_t < 0) throw ConfigError("negative symbol count");
  if (ofdm.fft_size < ofdm.n_f) throw ConfigError("fft size smaller than subcarrier count");

  ChannelRealization ch;
  ch.pdp = exponential_pdp(params.taps, params.decay);
  ch.rho = params.rho;
  ch.sigma2 = sigma2;
  ch.ofdm = ofdm;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  auto cn = [&] {
    const double re = normal(rng);
    return cplx{re, normal(rng)};
  };
  ch.noise_seed = rng();

  const double innovation = std::sqrt(std::max(0.0, 1.0 - params.rho * params.rho));
  ch.taps.resize(n_t);
  for (int t = 0; t < n_t; ++t) {
    ch.taps[t].resize(params.taps);
    for (int k = 0; k < params.taps; ++k) {
      const double amp = std::sqrt(ch.pdp[k]);
      const cplx w = cn();
      ch.taps[t][k] = t == 0 ? amp * w : params.rho * ch.taps[t - 1][k] + innovation * amp * w;
    }
  }

  ch.freq_response = ComplexGrid(n_t, ofdm.n_f);
  for (int f = 0; f < ofdm.n_f; ++f) {
    const double bin = subcarrier_bin(f, ofdm.n_f, ofdm.fft_size);
    for (int t = 0; t < n_t; ++t) {
      cplx h{};
      for (int k = 0; k < params.taps; ++k)
        h += ch.taps[t][k] * std::polar(1.0, -2.0 * std::numbers::pi * k * bin / ofdm.fft_size);
      ch.freq_response.at(t, f) = h;
    }
  }
  return ch;
}

std::vector<cplx> channel_apply(std::span<const cplx> samples, const ChannelRealization& chan) {
  const std::size_t sym_len = static_cast<std::size_t>(chan.ofdm.fft_size) + chan.ofdm.cp_len;
  const std::size_t n_t = chan.taps.size();
  if (samples.size() != sym_len * n_t)
    throw DimensionError("sample count does not match the channel's symbol count");
  const int taps = n_t ? static_cast<int>(chan.taps[0].size()) : 0;
  if (taps - 1 > chan.ofdm.cp_len) throw ConfigError("cyclic prefix shorter than the channel memory");

  std::vector<cplx> out(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const auto& g = chan.taps[n / sym_len];
    cplx acc{};
    for (int k = 0; k < taps && static_cast<std::size_t>(k) <= n; ++k) acc += g[k] * samples[n - k];
    out[n] = acc;
  }
  if (chan.sigma2 > 0.0) {
    std::mt19937_64 rng(chan.noise_seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(chan.sigma2 / 2.0));
    for (auto& v : out) {
      const double re = normal(rng);
      v += cplx{re, normal(rng)};
    }
  }
  return out;
}

double noise_variance_for_snr(double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  if (std::isnan(snr_db)) throw ConfigError("SNR is NaN");
  return std::pow(10.0, -snr_db / 10.0);
}

}  // namespace semlink
