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

#include "semlink/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "semlink/error.hpp"
#include "semlink/seed.hpp"

namespace semlink {

Image synthesize_image(std::uint64_t seed, int width, int height) {
  if (width < 1 || height < 1) throw DimensionError("synthetic image needs positive dimensions");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

  Image img(width, height);
  const double g0 = between(40, 200);
  const double gx = between(-60, 60);
  const double gy = between(-60, 60);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      img.at(r, c) = g0 + gx * (c / double(width) - 0.5) + gy * (r / double(height) - 0.5);

  // Soft ellipses, largest first, each with its own linear shading.
  const int blobs = 3 + static_cast<int>(u(rng) * 6);
  for (int b = 0; b < blobs; ++b) {
    const double scale = b == 0 ? 0.35 : between(0.05, 0.2);
    const double cx = between(0.2, 0.8) * width;
    const double cy = between(0.2, 0.8) * height;
    const double ax = scale * width * between(0.7, 1.3);
    const double ay = scale * height * between(0.7, 1.3);
    const double angle = between(0, std::numbers::pi);
    const double level = between(20, 235);
    const double shade = between(-40, 40);
    const double edge = between(1.0, 4.0);
    const double ca = std::cos(angle), sa = std::sin(angle);
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        const double dx = c - cx, dy = r - cy;
        const double px = (ca * dx + sa * dy) / ax;
        const double py = (-sa * dx + ca * dy) / ay;
        const double rad = std::sqrt(px * px + py * py);
        const double alpha = 1.0 / (1.0 + std::exp((rad - 1.0) * std::min(ax, ay) / edge));
        const double value = level + shade * px;
        img.at(r, c) = (1 - alpha) * img.at(r, c) + alpha * value;
      }
  }

  const double tex_amp = between(0, 12);
  const double fx = between(0.05, 0.5), fy = between(0.05, 0.5), ph = between(0, 6.28);
  std::normal_distribution<double> noise(0.0, between(0.5, 3.0));
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      double v = img.at(r, c) + tex_amp * std::sin(fx * c + fy * r + ph) + noise(rng);
      img.at(r, c) = std::round(std::clamp(v, 0.0, 255.0));
    }
  return img;
}

void write_corpus(const std::filesystem::path& dir, int count, std::uint64_t seed, int width,
                  int height) {
  std::filesystem::create_directories(dir);
  for (int k = 0; k < count; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03d.pgm", k);
    write_pgm(dir / name, synthesize_image(derive_seed(seed, "corpus", k), width, height));
  }
}

}  // namespace semlink
