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

#include "semlink/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "semlink/error.hpp"

namespace semlink {

Image::Image(int w, int h, double fill)
    : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {
  if (w < 0 || h < 0) throw DimensionError("image dimensions must be non-negative");
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string data) : data_(std::move(data)) {}

  // Next whitespace-delimited header token, skipping '#' comments.
  std::string token() {
    for (;;) {
      while (pos_ < data_.size() && std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
      if (pos_ < data_.size() && data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) throw FormatError("pgm: unexpected end of file");
    return data_.substr(start, pos_ - start);
  }

  int integer() {
    std::string t = token();
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw FormatError("pgm: bad integer '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("pgm: bad integer '" + t + "'");
    }
  }

  // Binary raster starts after exactly one whitespace byte.
  std::size_t raster_offset() const { return pos_ + 1; }
  const std::string& data() const { return data_; }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  PgmReader r(std::string(std::istreambuf_iterator<char>(in), {}));

  const std::string magic = r.token();
  if (magic != "P2" && magic != "P5") throw FormatError(path.string() + ": not a P2/P5 graymap");
  const int w = r.integer();
  const int h = r.integer();
  const int maxval = r.integer();
  if (w <= 0 || h <= 0) throw FormatError(path.string() + ": bad dimensions");
  if (maxval != 255) throw FormatError(path.string() + ": maxval must be 255");

  Image img(w, h);
  if (magic == "P2") {
    for (auto& s : img.samples) {
      int v = r.integer();
      if (v < 0 || v > 255) throw FormatError(path.string() + ": sample out of range");
      s = v;
    }
  } else {
    const std::size_t off = r.raster_offset();
    if (r.data().size() < off + img.size()) throw FormatError(path.string() + ": truncated raster");
    for (std::size_t k = 0; k < img.size(); ++k)
      img.samples[k] = static_cast<unsigned char>(r.data()[off + k]);
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  auto to_byte = [](double v) {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
  };
  out << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << "\n255\n";
  if (binary) {
    std::string raster(img.size(), '\0');
    for (std::size_t k = 0; k < img.size(); ++k) raster[k] = static_cast<char>(to_byte(img.samples[k]));
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  } else {
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) out << (c ? " " : "") << to_byte(img.at(r, c));
      out << '\n';
    }
  }
  if (!out) throw FormatError("write failed: " + path.string());
}

}  // namespace semlink
