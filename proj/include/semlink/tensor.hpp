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
#include <span>
#include <vector>

namespace semlink {

// D x H x W real array, indexed (channel, row, col). Channel-major storage so
// that one feature map k_i is a contiguous span.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  FeatureTensor(int channels, int height, int width, double fill = 0.0)
      : d_(channels), h_(height), w_(width),
        values_(static_cast<std::size_t>(channels) * height * width, fill) {}

  int channels() const { return d_; }
  int height() const { return h_; }
  int width() const { return w_; }
  std::size_t positions() const { return static_cast<std::size_t>(h_) * w_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int n, int m) { return values_[index(i, n, m)]; }
  double operator()(int i, int n, int m) const { return values_[index(i, n, m)]; }

  std::span<double> channel(int i) { return {values_.data() + i * positions(), positions()}; }
  std::span<const double> channel(int i) const {
    return {values_.data() + i * positions(), positions()};
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const FeatureTensor& o) const { return d_ == o.d_ && h_ == o.h_ && w_ == o.w_; }
  bool operator==(const FeatureTensor&) const = default;

 private:
  std::size_t index(int i, int n, int m) const {
    return (static_cast<std::size_t>(i) * h_ + n) * w_ + m;
  }

  int d_ = 0;
  int h_ = 0;
  int w_ = 0;
  std::vector<double> values_;
};

}  // namespace semlink
