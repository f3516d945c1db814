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

#include "semlink/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "semlink/chanest.hpp"
#include "semlink/error.hpp"
#include "semlink/phy.hpp"
#include "semlink/seed.hpp"

namespace semlink {

Image vq_reference(const Image& image, const Codebook& cb, int patch) {
  return dct_decode(vq_quantize(dct_encode(image, patch), cb), patch);
}

RunReport run_once(const SimConfig& cfg, const Codebook& cb, const Image& image, double snr_db,
                   std::uint64_t seed, RunTrace* trace) {
  cfg.validate();
  if (cb.dim() != cfg.patch * cfg.patch)
    throw ConfigError("codebook dimension " + std::to_string(cb.dim()) + " does not match patch size " +
                      std::to_string(cfg.patch));

  const GridLayout layout = build_layout(cfg.grid.n_t, cfg.grid.n_f, cfg.grid.dt, cfg.grid.df);
  const OfdmParams ofdm = cfg.ofdm();
  const Qam16 qam;
  const double sigma2 = noise_variance_for_snr(snr_db);

  // Transmitter.
  const FeatureTensor z_e = dct_encode(image, cfg.patch);
  const FeatureTensor k = vq_quantize(z_e, cb);
  const ImportanceWeights ranking =
      cfg.scheme.fit ? importance_weights(feature_gradients(z_e, k, image.size()))
                     : identity_ranking(k.channels());
  const BitPayload tx = quantize_features(k, cfg.bits, cb.value_range());
  const MappedFrames mapped = map_payload(layout, tx, ranking, qam, cfg.pilot_symbol);

  // Link and receiver front end, one CPI at a time.
  MappedFrames received;
  received.pilot_symbol = mapped.pilot_symbol;
  received.plan = mapped.plan;
  received.usage = mapped.usage;
  RoleMse est_mse;
  for (std::size_t f = 0; f < mapped.frames.size(); ++f) {
    const auto chan =
        draw_channel(derive_seed(seed, "channel", f), cfg.channel, layout.n_t(), sigma2, ofdm);
    const auto tx_samples = ofdm_modulate(mapped.frames[f], ofdm.fft_size, ofdm.cp_len);
    const auto rx_samples = channel_apply(tx_samples, chan);
    const ComplexGrid rx = ofdm_demodulate(rx_samples, ofdm.fft_size, ofdm.cp_len, ofdm.n_f);
    const ChannelEstimate est =
        bilinear_interpolate(ls_estimate(rx, layout, cfg.pilot_symbol), layout);
    est_mse += estimation_error_stats(est, chan.freq_response, layout);
    received.frames.push_back(equalize(rx, est));
  }

  const BitPayload rx = demap_payload(received, layout, ranking, qam);
  const FeatureTensor k_prime = dequantize_features(rx);
  const FeatureTensor k_bits = dequantize_features(tx);
  const FeatureTensor z_q = cfg.scheme.rematch ? rematch(k_prime, cb) : k_prime;
  const Image recon = dct_decode(z_q, cfg.patch);

  RunReport r;
  r.scheme = cfg.scheme.name();
  r.snr_db = snr_db;
  r.seed = seed;
  r.psnr_db = psnr(image, recon);
  r.ssim = ssim(image, recon);
  r.ber = bit_error_rate(tx, rx);
  r.e_total = feature_error(k, k_prime);
  r.e_bits = feature_error(k, k_bits);
  r.e_channel = feature_error(k_bits, k_prime);
  r.est_mse = est_mse;

  if (trace) {
    trace->z_e = z_e;
    trace->k = k;
    trace->ranking = ranking;
    trace->tx_payload = tx;
    trace->tx_frames = mapped;
    trace->rx_payload = rx;
    trace->k_prime = k_prime;
    trace->z_q = z_q;
    trace->reconstruction = recon;
  }
  return r;
}

SweepResult sweep(const SimConfig& cfg, const Codebook& cb, const Image& image) {
  if (cfg.schemes.empty() || cfg.snr_db.empty() || cfg.seeds.empty())
    throw ConfigError("sweep needs at least one scheme, SNR and seed");
  SweepResult out;
  out.reserve(cfg.schemes.size() * cfg.snr_db.size() * cfg.seeds.size());
  SimConfig point = cfg;
  for (const Scheme& s : cfg.schemes) {
    point.scheme = s;
    for (double snr : cfg.snr_db)
      for (std::uint64_t seed : cfg.seeds) out.push_back(run_once(point, cb, image, snr, seed));
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = csv_header() + '\n';
  for (const auto& r : result) out += csv_row(r) + '\n';
  return out;
}

void write_csv(const std::filesystem::path& path, const SweepResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << sweep_csv(result);
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pgm") out.push_back(e.path());
  std::ranges::sort(out);
  return out;
}

TrainResult train_codebook_cmd(const std::filesystem::path& image_dir, int patch,
                               const TrainOptions& opts, const std::filesystem::path& out) {
  const auto files = list_images(image_dir);
  if (files.empty()) throw InsufficientDataError("no .pgm images in " + image_dir.string());
  std::vector<double> vectors;
  for (const auto& f : files) {
    const auto v = tensor_vectors(dct_encode(read_pgm(f), patch));
    vectors.insert(vectors.end(), v.begin(), v.end());
  }
  TrainResult result = train_codebook(vectors, patch * patch, opts);
  save_codebook(out, result.codebook);
  return result;
}

}  // namespace semlink
