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

#include <string>
#include <vector>

#include "semlink/image.hpp"
#include "semlink/tensor.hpp"

namespace semlink {

struct ImportanceWeights {
  std::vector<double> omega;
  // Channel indices, most important first.
  std::vector<int> ranking;
};

// (1/l) * ||z' - z||^2 with l the pixel count.
double reconstruction_loss(const Image& z, const Image& z_prime);

// dL/dK for the orthonormal block decoder, evaluated at the quantized tensor:
// (2/l) * (K - z_e).
FeatureTensor feature_gradients(const FeatureTensor& z_e, const FeatureTensor& k,
                                std::size_t pixel_count);

// Global average pooling per channel, then ranking by |omega| descending with
// ties resolved to the lower channel index.
ImportanceWeights importance_weights(const FeatureTensor& grads);

ImportanceWeights identity_ranking(int channels);

// Comma-separated channel order, e.g. "0,3,1,2".
std::string ranking_csv(const ImportanceWeights& w);

}  // namespace semlink
