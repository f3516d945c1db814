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

#include <cstddef>
#include <filesystem>
#include <vector>

namespace semlink {

// Row-major grayscale plane. Images read from disk hold samples in [0, 255];
// the unclamped decoder may produce values outside that range.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> samples;

  Image() = default;
  Image(int w, int h, double fill = 0.0);

  double& at(int row, int col) { return samples[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return samples[static_cast<std::size_t>(row) * width + col]; }
  std::size_t size() const { return samples.size(); }
  bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

// Portable graymap I/O. Both P2 and P5 are accepted on read; maxval must be 255.
Image read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image& img, bool binary = true);

}  // namespace semlink
