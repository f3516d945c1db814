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

#include "semlink/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "semlink/error.hpp"

namespace semlink {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
constexpr double kC2 = (0.03 * 255) * (0.03 * 255);

std::vector<double> gaussian_taps() {
  std::vector<double> w(kWindow);
  double total = 0.0;
  for (int k = 0; k < kWindow; ++k) {
    const double x = k - kWindow / 2;
    total += w[k] = std::exp(-x * x / (2 * kSigma * kSigma));
  }
  for (auto& v : w) v /= total;
  return w;
}

// Separable "valid" filtering: output is (h - 10) x (w - 10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::vector<double>& taps) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> horiz(static_cast<std::size_t>(h) * ow);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * src[static_cast<std::size_t>(r) * w + c + k];
      horiz[static_cast<std::size_t>(r) * ow + c] = s;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * horiz[static_cast<std::size_t>(r + k) * ow + c];
      out[static_cast<std::size_t>(r) * ow + c] = s;
    }
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double psnr(const Image& orig, const Image& recon) {
  if (!orig.same_shape(recon)) throw DimensionError("psnr: image shapes differ");
  if (orig.size() == 0) throw DimensionError("psnr: empty image");
  double s = 0.0;
  for (std::size_t k = 0; k < orig.size(); ++k) {
    const double d = orig.samples[k] - recon.samples[k];
    s += d * d;
  }
  const double mse = s / static_cast<double>(orig.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const Image& orig, const Image& recon) {
  if (!orig.same_shape(recon)) throw DimensionError("ssim: image shapes differ");
  if (orig.width < kWindow || orig.height < kWindow)
    throw DimensionError("ssim: images must be at least 11x11");

  const int w = orig.width;
  const int h = orig.height;
  const auto taps = gaussian_taps();
  const auto& x = orig.samples;
  const auto& y = recon.samples;
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    xx[k] = x[k] * x[k];
    yy[k] = y[k] * y[k];
    xy[k] = x[k] * y[k];
  }
  const auto mx = filter_valid(x, w, h, taps);
  const auto my = filter_valid(y, w, h, taps);
  const auto sxx = filter_valid(xx, w, h, taps);
  const auto syy = filter_valid(yy, w, h, taps);
  const auto sxy = filter_valid(xy, w, h, taps);

  std::vector<double> map(mx.size());
  for (std::size_t k = 0; k < map.size(); ++k) {
    const double vx = sxx[k] - mx[k] * mx[k];
    const double vy = syy[k] - my[k] * my[k];
    const double cxy = sxy[k] - mx[k] * my[k];
    const double num = (2.0 * (mx[k] * my[k]) + kC1) * (2.0 * cxy + kC2);
    const double den = ((mx[k] * mx[k] + my[k] * my[k]) + kC1) * ((vx + vy) + kC2);
    map[k] = num / den;
  }
  return mean_of(map);
}

std::vector<double> feature_error(const FeatureTensor& k, const FeatureTensor& k_prime) {
  if (!k.same_shape(k_prime)) throw DimensionError("feature_error: tensor shapes differ");
  std::vector<double> e(k.channels());
  for (int i = 0; i < k.channels(); ++i) {
    const auto a = k.channel(i);
    const auto b = k_prime.channel(i);
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += (a[n] - b[n]) * (a[n] - b[n]);
    e[i] = std::sqrt(s);
  }
  return e;
}

double bit_error_rate(const BitPayload& tx, const BitPayload& rx) {
  if (tx.bits.size() != rx.bits.size()) throw DimensionError("ber: payload sizes differ");
  if (tx.bits.empty()) return 0.0;
  std::size_t diff = 0;
  for (std::size_t k = 0; k < tx.bits.size(); ++k) diff += (tx.bits[k] != rx.bits[k]);
  return static_cast<double>(diff) / static_cast<double>(tx.bits.size());
}

double RunReport::mean_e_total() const { return mean_of(e_total); }
double RunReport::mean_e_bits() const { return mean_of(e_bits); }
double RunReport::mean_e_channel() const { return mean_of(e_channel); }

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string csv_header() {
  return "scheme,snr_db,seed,psnr_db,ssim,ber,mean_Ei,mean_Eb,mean_Eh,mse_pilot,mse_green,mse_regular";
}

std::string csv_row(const RunReport& r) {
  std::string row = r.scheme;
  row += ',' + format_real(r.snr_db);
  row += ',' + std::to_string(r.seed);
  for (double v : {r.psnr_db, r.ssim, r.ber, r.mean_e_total(), r.mean_e_bits(), r.mean_e_channel(),
                   r.est_mse.pilot, r.est_mse.green, r.est_mse.regular})
    row += ',' + format_real(v);
  return row;
}

}  // namespace semlink
