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

#include "semlink/importance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semlink/error.hpp"

namespace semlink {

double reconstruction_loss(const Image& z, const Image& z_prime) {
  if (!z.same_shape(z_prime)) throw DimensionError("loss: image shapes differ");
  if (z.size() == 0) throw DimensionError("loss: empty image");
  double s = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double d = z_prime.samples[k] - z.samples[k];
    s += d * d;
  }
  return s / static_cast<double>(z.size());
}

FeatureTensor feature_gradients(const FeatureTensor& z_e, const FeatureTensor& k,
                                std::size_t pixel_count) {
  if (!z_e.same_shape(k)) throw DimensionError("gradients: tensor shapes differ");
  if (pixel_count == 0) throw DimensionError("gradients: pixel count must be positive");
  FeatureTensor g(k.channels(), k.height(), k.width());
  const double scale = 2.0 / static_cast<double>(pixel_count);
  for (std::size_t n = 0; n < g.size(); ++n) g.values()[n] = scale * (k.values()[n] - z_e.values()[n]);
  return g;
}

ImportanceWeights importance_weights(const FeatureTensor& grads) {
  ImportanceWeights w;
  const int d = grads.channels();
  w.omega.assign(d, 0.0);
  if (grads.positions() > 0) {
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (double g : grads.channel(i)) {
        if (!std::isfinite(g)) throw RangeError("importance: non-finite gradient");
        s += g;
      }
      w.omega[i] = s / static_cast<double>(grads.positions());
    }
  }
  w.ranking.resize(d);
  std::iota(w.ranking.begin(), w.ranking.end(), 0);
  std::ranges::stable_sort(w.ranking, [&](int a, int b) {
    return std::abs(w.omega[a]) > std::abs(w.omega[b]);
  });
  return w;
}

ImportanceWeights identity_ranking(int channels) {
  ImportanceWeights w;
  w.omega.assign(channels, 0.0);
  w.ranking.resize(channels);
  std::iota(w.ranking.begin(), w.ranking.end(), 0);
  return w;
}

std::string ranking_csv(const ImportanceWeights& w) {
  std::string out;
  for (std::size_t k = 0; k < w.ranking.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(w.ranking[k]);
  }
  return out;
}

}  // namespace semlink
