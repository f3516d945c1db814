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
#include <string>
#include <vector>

#include "semlink/bitquant.hpp"
#include "semlink/chanest.hpp"
#include "semlink/image.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

// 10 log10(255^2 / MSE); +inf for identical images.
double psnr(const Image& orig, const Image& recon);

// Mean SSIM, 11x11 Gaussian window (sigma 1.5), C1 = (0.01*255)^2,
// C2 = (0.03*255)^2, averaged over window positions fully inside the image.
double ssim(const Image& orig, const Image& recon);

// E_i = ||k_i - k'_i||_2 for every channel.
std::vector<double> feature_error(const FeatureTensor& k, const FeatureTensor& k_prime);

double bit_error_rate(const BitPayload& tx, const BitPayload& rx);

struct RunReport {
  std::string scheme;
  double snr_db = 0.0;
  std::uint64_t seed = 0;

  double psnr_db = 0.0;
  double ssim = 0.0;
  double ber = 0.0;

  // Per-channel feature error and its measured parts: E_b from the quantizer
  // alone, E_h from the link (dequantized rx vs dequantized tx).
  std::vector<double> e_total;
  std::vector<double> e_bits;
  std::vector<double> e_channel;
  RoleMse est_mse;

  double mean_e_total() const;
  double mean_e_bits() const;
  double mean_e_channel() const;
};

// CSV header and row in the fixed column order
// scheme,snr_db,seed,psnr_db,ssim,ber,mean_Ei,mean_Eb,mean_Eh,mse_pilot,mse_green,mse_regular
std::string csv_header();
std::string csv_row(const RunReport& r);
// Shortest round-trippable decimal; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);

}  // namespace semlink
