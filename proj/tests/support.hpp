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
#include <random>
#include <string>
#include <vector>

#include "semlink/codec.hpp"
#include "semlink/corpus.hpp"
#include "semlink/image.hpp"
#include "semlink/seed.hpp"
#include "semlink/tensor.hpp"

namespace semlink::testing {

inline Image random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Image img(w, h);
  for (auto& s : img.samples) s = u(rng);
  return img;
}

inline FeatureTensor random_tensor(std::mt19937_64& rng, int d, int h, int w, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  FeatureTensor t(d, h, w);
  for (auto& v : t.values()) v = n(rng);
  return t;
}

inline Codebook random_codebook(std::mt19937_64& rng, int entries, int dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> v(static_cast<std::size_t>(entries) * dim);
  for (auto& x : v) x = n(rng);
  return Codebook(dim, std::move(v));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("semlink_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Small shared codebook trained on synthetic scenes; cached per process.
inline const Codebook& small_codebook() {
  static const Codebook cb = [] {
    std::vector<double> vectors;
    for (int k = 0; k < 8; ++k) {
      const auto v = tensor_vectors(dct_encode(synthesize_image(derive_seed(11, "train", k)), 4));
      vectors.insert(vectors.end(), v.begin(), v.end());
    }
    TrainOptions opts;
    opts.entries = 256;
    opts.max_iters = 20;
    opts.seed = 5;
    return train_codebook(vectors, 16, opts).codebook;
  }();
  return cb;
}

}  // namespace semlink::testing
