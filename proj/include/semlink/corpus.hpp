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

#include "semlink/image.hpp"

namespace semlink {

// Deterministic synthetic grayscale scene (shaded background, soft-edged
// ellipses, mild texture and sensor noise), integer samples in [0, 255].
// Stand-in for a natural-image corpus in tests and demos.
Image synthesize_image(std::uint64_t seed, int width = 128, int height = 128);

// Writes count images named img_000.pgm ... into dir; image k uses seed
// derive_seed(seed, "corpus", k).
void write_corpus(const std::filesystem::path& dir, int count, std::uint64_t seed, int width = 128,
                  int height = 128);

}  // namespace semlink
