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

#include "semlink/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "semlink/error.hpp"

namespace semlink {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

ValueRange range_of(const std::vector<double>& values) {
  if (values.empty()) return {};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

// basis[u * B + x] = alpha(u) cos((2x + 1) u pi / 2B)
std::vector<double> dct_basis(int patch) {
  std::vector<double> basis(static_cast<std::size_t>(patch) * patch);
  for (int u = 0; u < patch; ++u) {
    const double alpha = std::sqrt((u == 0 ? 1.0 : 2.0) / patch);
    for (int x = 0; x < patch; ++x)
      basis[u * patch + x] =
          alpha * std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * patch));
  }
  return basis;
}

void check_patch(int patch) {
  if (patch < 1) throw DimensionError("patch size must be positive");
}

}  // namespace

Codebook::Codebook(int dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw DimensionError("codebook dimension must be positive");
  if (entries_.size() % dim_ != 0) throw DimensionError("codebook storage not a multiple of D");
  size_ = static_cast<int>(entries_.size() / dim_);
  range_ = range_of(entries_);
  validate();
}

Codebook::Codebook(int dim, std::vector<double> entries, ValueRange range)
    : Codebook(dim, std::move(entries)) {
  if (!(range.min <= range_.min && range.max >= range_.max))
    throw FormatError("codebook value range does not cover its entries");
  range_ = range;
  if (!(range_.min < range_.max)) throw RangeError("codebook value range is degenerate");
}

void Codebook::validate() const {
  if (size_ < 2) throw DimensionError("codebook needs at least two entries");
  for (double v : entries_)
    if (!std::isfinite(v)) throw RangeError("codebook entry is not finite");
  if (!(range_.min < range_.max)) throw RangeError("codebook value range is degenerate");
  for (int i = 0; i < size_; ++i)
    for (int j = i + 1; j < size_; ++j)
      if (squared_distance(entry(i), entry(j)) == 0.0)
        throw RangeError("codebook entries " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide");
}

int Codebook::nearest(std::span<const double> v) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < size_; ++j) {
    const double* e = entries_.data() + static_cast<std::size_t>(j) * dim_;
    double s = 0.0;
    for (int k = 0; k < dim_ && s < best_d; ++k) {
      const double d = v[k] - e[k];
      s += d * d;
    }
    // Strict comparison keeps the lowest index on ties.
    if (s < best_d) {
      best_d = s;
      best = j;
    }
  }
  return best;
}

FeatureTensor dct_encode(const Image& img, int patch) {
  check_patch(patch);
  if (img.width % patch != 0 || img.height % patch != 0)
    throw DimensionError("image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                         " not divisible by patch size " + std::to_string(patch));
  const auto basis = dct_basis(patch);
  const int rows = img.height / patch;
  const int cols = img.width / patch;
  FeatureTensor out(patch * patch, rows, cols);
  std::vector<double> tmp(static_cast<std::size_t>(patch) * patch);

  for (int n = 0; n < rows; ++n) {
    for (int m = 0; m < cols; ++m) {
      // rows first: tmp[u][y] = sum_x C[u][x] f(x, y)
      for (int u = 0; u < patch; ++u)
        for (int y = 0; y < patch; ++y) {
          double s = 0.0;
          for (int x = 0; x < patch; ++x) s += basis[u * patch + x] * img.at(n * patch + x, m * patch + y);
          tmp[u * patch + y] = s;
        }
      for (int u = 0; u < patch; ++u)
        for (int v = 0; v < patch; ++v) {
          double s = 0.0;
          for (int y = 0; y < patch; ++y) s += basis[v * patch + y] * tmp[u * patch + y];
          out(u * patch + v, n, m) = s;
        }
    }
  }
  return out;
}

Image dct_decode_unclamped(const FeatureTensor& feat, int patch) {
  check_patch(patch);
  if (feat.channels() != patch * patch)
    throw DimensionError("tensor has " + std::to_string(feat.channels()) +
                         " channels, patch size needs " + std::to_string(patch * patch));
  const auto basis = dct_basis(patch);
  Image img(feat.width() * patch, feat.height() * patch);
  std::vector<double> tmp(static_cast<std::size_t>(patch) * patch);

  for (int n = 0; n < feat.height(); ++n) {
    for (int m = 0; m < feat.width(); ++m) {
      // tmp[u][y] = sum_v C[v][y] F(u, v)
      for (int u = 0; u < patch; ++u)
        for (int y = 0; y < patch; ++y) {
          double s = 0.0;
          for (int v = 0; v < patch; ++v) s += basis[v * patch + y] * feat(u * patch + v, n, m);
          tmp[u * patch + y] = s;
        }
      for (int x = 0; x < patch; ++x)
        for (int y = 0; y < patch; ++y) {
          double s = 0.0;
          for (int u = 0; u < patch; ++u) s += basis[u * patch + x] * tmp[u * patch + y];
          img.at(n * patch + x, m * patch + y) = s;
        }
    }
  }
  return img;
}

Image dct_decode(const FeatureTensor& feat, int patch) {
  Image img = dct_decode_unclamped(feat, patch);
  for (auto& s : img.samples) s = std::clamp(s, 0.0, 255.0);
  return img;
}

std::vector<int> vq_indices(const FeatureTensor& z_e, const Codebook& cb) {
  if (cb.dim() != z_e.channels())
    throw DimensionError("codebook dimension " + std::to_string(cb.dim()) +
                         " does not match tensor depth " + std::to_string(z_e.channels()));
  std::vector<int> idx(z_e.positions());
  std::vector<double> v(z_e.channels());
  for (int n = 0; n < z_e.height(); ++n)
    for (int m = 0; m < z_e.width(); ++m) {
      for (int i = 0; i < z_e.channels(); ++i) v[i] = z_e(i, n, m);
      idx[static_cast<std::size_t>(n) * z_e.width() + m] = cb.nearest(v);
    }
  return idx;
}

FeatureTensor vq_quantize(const FeatureTensor& z_e, const Codebook& cb) {
  const auto idx = vq_indices(z_e, cb);
  FeatureTensor out(z_e.channels(), z_e.height(), z_e.width());
  for (int n = 0; n < z_e.height(); ++n)
    for (int m = 0; m < z_e.width(); ++m) {
      const auto e = cb.entry(idx[static_cast<std::size_t>(n) * z_e.width() + m]);
      for (int i = 0; i < z_e.channels(); ++i) out(i, n, m) = e[i];
    }
  return out;
}

FeatureTensor rematch(const FeatureTensor& k_prime, const Codebook& cb) {
  return vq_quantize(k_prime, cb);
}

double codebook_dmin(const Codebook& cb, int i) {
  if (i < 0 || i >= cb.size())
    throw RangeError("entry index " + std::to_string(i) + " out of range");
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < cb.size(); ++j)
    if (j != i) best = std::min(best, squared_distance(cb.entry(i), cb.entry(j)));
  return std::sqrt(best);
}

std::vector<double> tensor_vectors(const FeatureTensor& t) {
  std::vector<double> out;
  out.reserve(t.size());
  for (int n = 0; n < t.height(); ++n)
    for (int m = 0; m < t.width(); ++m)
      for (int i = 0; i < t.channels(); ++i) out.push_back(t(i, n, m));
  return out;
}

TrainResult train_codebook(std::span<const double> vectors, int dim, const TrainOptions& opts) {
  if (dim < 1 || vectors.size() % dim != 0)
    throw DimensionError("training data is not a whole number of vectors");
  const std::size_t count = vectors.size() / dim;
  const int k = opts.entries;
  if (k < 2) throw DimensionError("codebook needs at least two entries");
  if (count < static_cast<std::size_t>(k))
    throw InsufficientDataError("need at least " + std::to_string(k) + " training vectors, got " +
                                std::to_string(count));

  auto point = [&](std::size_t p) { return vectors.subspan(p * dim, dim); };
  std::vector<double> centroids(static_cast<std::size_t>(k) * dim);
  auto centroid = [&](int j) {
    return std::span<double>(centroids.data() + static_cast<std::size_t>(j) * dim, dim);
  };

  // k-means++ seeding.
  std::mt19937_64 rng(opts.seed);
  std::vector<double> d2(count, std::numeric_limits<double>::infinity());
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  for (int j = 0;; ++j) {
    std::ranges::copy(point(pick), centroid(j).begin());
    if (j + 1 == k) break;
    double total = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
      d2[p] = std::min(d2[p], squared_distance(point(p), centroid(j)));
      total += d2[p];
    }
    if (total <= 0.0)
      throw InsufficientDataError("training data has fewer than " + std::to_string(k) +
                                  " distinct vectors");
    double target = std::uniform_real_distribution<double>(0.0, total)(rng);
    pick = count;
    for (std::size_t p = 0; p < count; ++p) {
      if (d2[p] <= 0.0) continue;
      pick = p;
      target -= d2[p];
      if (target < 0.0) break;
    }
  }

  std::vector<int> assign(count, 0);
  std::vector<double> dist(count, 0.0);
  std::vector<std::size_t> members(k);
  std::vector<double> sums(static_cast<std::size_t>(k) * dim);
  std::vector<double> history;

  for (int iter = 0; iter < std::max(1, opts.max_iters); ++iter) {
    double total = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      const auto x = point(p);
      for (int j = 0; j < k; ++j) {
        const double* c = centroids.data() + static_cast<std::size_t>(j) * dim;
        double s = 0.0;
        for (int q = 0; q < dim && s < best_d; ++q) {
          const double d = x[q] - c[q];
          s += d * d;
        }
        if (s < best_d) {
          best_d = s;
          best = j;
        }
      }
      assign[p] = best;
      dist[p] = best_d;
      total += best_d;
    }
    history.push_back(total / static_cast<double>(count));

    const std::size_t h = history.size();
    if (h >= 2) {
      const double prev = history[h - 2];
      const double rel = prev > 0.0 ? (prev - history[h - 1]) / prev : 0.0;
      if (rel < opts.tol) break;
    }
    if (iter + 1 == opts.max_iters) break;

    std::ranges::fill(members, 0);
    std::ranges::fill(sums, 0.0);
    for (std::size_t p = 0; p < count; ++p) {
      ++members[assign[p]];
      const auto x = point(p);
      for (int q = 0; q < dim; ++q) sums[static_cast<std::size_t>(assign[p]) * dim + q] += x[q];
    }
    for (int j = 0; j < k; ++j)
      if (members[j] > 0)
        for (int q = 0; q < dim; ++q)
          centroid(j)[q] = sums[static_cast<std::size_t>(j) * dim + q] / static_cast<double>(members[j]);

    // Empty clusters take the point of the largest cluster that lies farthest
    // from that cluster's (updated) centroid.
    for (int j = 0; j < k; ++j) {
      if (members[j] > 0) continue;
      const int largest = static_cast<int>(std::ranges::max_element(members) - members.begin());
      std::size_t far = count;
      double far_d = -1.0;
      for (std::size_t p = 0; p < count; ++p) {
        if (assign[p] != largest) continue;
        const double d = squared_distance(point(p), centroid(largest));
        if (d > far_d) {
          far_d = d;
          far = p;
        }
      }
      if (far == count || far_d <= 0.0) break;
      std::ranges::copy(point(far), centroid(j).begin());
      assign[far] = j;
      --members[largest];
      members[j] = 1;
    }
  }

  return {Codebook(dim, std::move(centroids)), std::move(history)};
}

// ---------------------------------------------------------------------------
// VQCB file: "VQCB" | u16 version | u32 J | u32 D | f64 min | f64 max | J*D f64
// All multi-byte fields little-endian.

namespace {

constexpr std::uint16_t kCodebookVersion = 1;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw FormatError("codebook file truncated");
    std::uint64_t bits = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) bits |= std::uint64_t{bytes_[pos_ + b]} << (8 * b);
    pos_ += sizeof(T);
    if constexpr (std::is_same_v<T, double>) {
      return std::bit_cast<double>(bits);
    } else {
      return static_cast<T>(bits);
    }
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_codebook(const Codebook& cb) {
  std::vector<std::uint8_t> out{'V', 'Q', 'C', 'B'};
  out.reserve(4 + 2 + 8 + 16 + cb.entries().size() * 8);
  put_le(out, kCodebookVersion);
  put_le(out, static_cast<std::uint32_t>(cb.size()));
  put_le(out, static_cast<std::uint32_t>(cb.dim()));
  put_le(out, cb.value_range().min);
  put_le(out, cb.value_range().max);
  for (double v : cb.entries()) put_le(out, v);
  return out;
}

Codebook deserialize_codebook(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "VQCB", 4) != 0)
    throw FormatError("not a VQCB codebook file");
  ByteReader r(bytes.subspan(4));
  const auto version = r.get<std::uint16_t>();
  if (version != kCodebookVersion)
    throw FormatError("unsupported codebook version " + std::to_string(version));
  const auto entries = r.get<std::uint32_t>();
  const auto dim = r.get<std::uint32_t>();
  ValueRange range;
  range.min = r.get<double>();
  range.max = r.get<double>();
  const std::uint64_t n = std::uint64_t{entries} * dim;
  if (dim == 0 || r.remaining() != n * 8) throw FormatError("codebook payload size mismatch");
  std::vector<double> values(n);
  for (auto& v : values) v = r.get<double>();
  return Codebook(static_cast<int>(dim), std::move(values), range);
}

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
  const auto bytes = serialize_codebook(cb);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  return deserialize_codebook(bytes);
}

}  // namespace semlink
