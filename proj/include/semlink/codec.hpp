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
#include <span>
#include <vector>

#include "semlink/image.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

struct ValueRange {
  double min = 0.0;
  double max = 0.0;
  bool operator==(const ValueRange&) const = default;
};

// J entries of dimension D shared by both link ends. Construction validates
// J >= 2, pairwise-distinct entries and a non-degenerate value range.
class Codebook {
 public:
  Codebook(int dim, std::vector<double> entries);
  // Used by the file loader: the stored range is taken as-is, after checking it
  // covers every component.
  Codebook(int dim, std::vector<double> entries, ValueRange range);

  int size() const { return size_; }
  int dim() const { return dim_; }
  std::span<const double> entry(int j) const {
    return {entries_.data() + static_cast<std::size_t>(j) * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& entries() const { return entries_; }
  ValueRange value_range() const { return range_; }

  // Index of the Euclidean-nearest entry; ties go to the lowest index.
  int nearest(std::span<const double> v) const;

  bool operator==(const Codebook&) const = default;

 private:
  void validate() const;

  int dim_ = 0;
  int size_ = 0;
  std::vector<double> entries_;
  ValueRange range_;
};

// Orthonormal 2-D DCT-II over non-overlapping BxB patches. Channel u*B+v holds
// coefficient (u, v) of every patch.
FeatureTensor dct_encode(const Image& img, int patch);
// Inverse transform and patch reassembly, without clamping.
Image dct_decode_unclamped(const FeatureTensor& feat, int patch);
// Same as above with samples clamped to [0, 255].
Image dct_decode(const FeatureTensor& feat, int patch);

FeatureTensor vq_quantize(const FeatureTensor& z_e, const Codebook& cb);
// Receiver-side projection of a distorted tensor back onto the codebook.
FeatureTensor rematch(const FeatureTensor& k_prime, const Codebook& cb);
// Per-position entry indices chosen by nearest-neighbour search (row-major).
std::vector<int> vq_indices(const FeatureTensor& z_e, const Codebook& cb);

double codebook_dmin(const Codebook& cb, int i);

struct TrainOptions {
  int entries = 1024;
  int max_iters = 50;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

struct TrainResult {
  Codebook codebook;
  // Distortion (mean squared error per vector) after each assignment step.
  std::vector<double> distortion;
};

// Generalized Lloyd with k-means++ seeding. vectors is row-major, dim columns.
TrainResult train_codebook(std::span<const double> vectors, int dim, const TrainOptions& opts);

// Gathers every per-position D-vector of a tensor, row-major by position.
std::vector<double> tensor_vectors(const FeatureTensor& t);

// "VQCB" binary codebook file.
void save_codebook(const std::filesystem::path& path, const Codebook& cb);
Codebook load_codebook(const std::filesystem::path& path);
std::vector<std::uint8_t> serialize_codebook(const Codebook& cb);
Codebook deserialize_codebook(std::span<const std::uint8_t> bytes);

}  // namespace semlink
