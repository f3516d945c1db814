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
#include <filesystem>
#include <optional>
#include <vector>

#include "semlink/bitquant.hpp"
#include "semlink/codec.hpp"
#include "semlink/config.hpp"
#include "semlink/grid.hpp"
#include "semlink/image.hpp"
#include "semlink/importance.hpp"
#include "semlink/metrics.hpp"

namespace semlink {

// Intermediate artifacts of one link run, captured on request.
struct RunTrace {
  FeatureTensor z_e;
  FeatureTensor k;           // quantized features sent
  ImportanceWeights ranking;
  BitPayload tx_payload;
  MappedFrames tx_frames;
  BitPayload rx_payload;
  FeatureTensor k_prime;     // dequantized received features
  FeatureTensor z_q;         // decoder input (rematched when enabled)
  Image reconstruction;
};

// One end-to-end realization. The scheme comes from cfg.scheme; the noise
// level from snr_db (+inf disables noise). Randomness derives from seed only.
RunReport run_once(const SimConfig& cfg, const Codebook& cb, const Image& image, double snr_db,
                   std::uint64_t seed, RunTrace* trace = nullptr);

// Channel-free reference: decode(vq_quantize(encode(image))).
Image vq_reference(const Image& image, const Codebook& cb, int patch);

using SweepResult = std::vector<RunReport>;

// Cartesian sweep over cfg.schemes x cfg.snr_db x cfg.seeds, in that nesting
// order.
SweepResult sweep(const SimConfig& cfg, const Codebook& cb, const Image& image);

std::string sweep_csv(const SweepResult& result);
void write_csv(const std::filesystem::path& path, const SweepResult& result);

// Every *.pgm under dir, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

// Trains a codebook on the patch vectors of every image in dir and writes it.
TrainResult train_codebook_cmd(const std::filesystem::path& image_dir, int patch,
                               const TrainOptions& opts, const std::filesystem::path& out);

}  // namespace semlink
