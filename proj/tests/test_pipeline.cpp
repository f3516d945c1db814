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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semlink/corpus.hpp"
#include "semlink/error.hpp"
#include "semlink/pipeline.hpp"
#include "support.hpp"

using namespace semlink;
using semlink::testing::small_codebook;

namespace {

SimConfig desk(Scheme scheme = {true, true}) {
  SimConfig cfg = profile_config("desk");
  cfg.scheme = scheme;
  return cfg;
}

// Frequency-flat, time-invariant link: the pilots see the channel exactly.
SimConfig ideal_link(int bits) {
  SimConfig cfg = desk();
  cfg.channel = {1, 2.0, 1.0};
  cfg.bits = bits;
  return cfg;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_SUITE("pipeline") {
  const Image image = synthesize_image(77, 64, 64);

  TEST_CASE("ideal link at 16 bits reproduces the codebook reference") {
    const Codebook& cb = small_codebook();
    RunTrace trace;
    const auto r = run_once(ideal_link(16), cb, image, kInf, 1, &trace);
    CHECK(r.ber == 0.0);
    CHECK(trace.z_q == trace.k);
    const Image ref = vq_reference(image, cb, 4);
    CHECK(trace.reconstruction.samples == ref.samples);
    CHECK(r.psnr_db == psnr(image, ref));
    CHECK(r.est_mse.green < 1e-20);
    CHECK(r.est_mse.regular < 1e-20);
  }

  TEST_CASE("ideal link at 16 bits: rematch on and off agree up to the quantizer") {
    const Codebook& cb = small_codebook();
    SimConfig off = ideal_link(16);
    off.scheme.rematch = false;
    RunTrace t_on, t_off;
    const auto on = run_once(ideal_link(16), cb, image, kInf, 9, &t_on);
    const auto r_off = run_once(off, cb, image, kInf, 9, &t_off);
    CHECK(on.ber == r_off.ber);
    CHECK(on.est_mse.green == r_off.est_mse.green);
    CHECK(on.est_mse.regular == r_off.est_mse.regular);
    CHECK(t_on.z_q == t_on.k);
    CHECK(std::abs(on.psnr_db - r_off.psnr_db) < 0.01);
  }

  TEST_CASE("ideal link error is bounded by the quantizer") {
    const Codebook& cb = small_codebook();
    for (int bits : {4, 8}) {
      RunTrace trace;
      const auto r = run_once(ideal_link(bits), cb, image, kInf, 2, &trace);
      CHECK(r.ber == 0.0);
      const double half = trace.tx_payload.step() / 2;
      for (std::size_t n = 0; n < trace.k.size(); ++n)
        CHECK(std::abs(trace.k_prime.values()[n] - trace.k.values()[n]) <= half * (1 + 1e-12));
      for (double e : r.e_total) CHECK(e <= half * std::sqrt(16.0 * 16.0) * (1 + 1e-12));
      CHECK(r.e_channel == std::vector<double>(16, 0.0));
      CHECK(r.e_total == r.e_bits);
    }
  }

  TEST_CASE("rematch on recovers K whenever the quantizer noise is inside d_min/2") {
    const Codebook& cb = small_codebook();
    RunTrace trace;
    run_once(ideal_link(12), cb, image, kInf, 3, &trace);
    double dmin = kInf;
    for (int idx : vq_indices(trace.k, cb)) dmin = std::min(dmin, codebook_dmin(cb, idx));
    if (trace.tx_payload.step() / 2 * 4 < dmin / 2) CHECK(trace.z_q == trace.k);

    SimConfig off = ideal_link(12);
    off.scheme.rematch = false;
    RunTrace t_off;
    const auto r_off = run_once(off, cb, image, kInf, 3, &t_off);
    CHECK(t_off.z_q == t_off.k_prime);
    CHECK(r_off.psnr_db <= psnr(image, trace.reconstruction) + 1e-9);
  }

  TEST_CASE("scheme switches touch only their own stage") {
    const Codebook& cb = small_codebook();
    for (Scheme s : {Scheme{true, true}, Scheme{false, true}, Scheme{true, false}, Scheme{false, false}}) {
      RunTrace trace;
      const auto r = run_once(desk(s), cb, image, 10.0, 4, &trace);
      CHECK(r.scheme == s.name());
      if (!s.fit) CHECK(trace.ranking.ranking == identity_ranking(16).ranking);
      if (s.fit) CHECK(trace.ranking.ranking == importance_weights(feature_gradients(trace.z_e, trace.k, image.size())).ranking);
      if (s.rematch) CHECK(trace.z_q == rematch(trace.k_prime, cb));
      else CHECK(trace.z_q == trace.k_prime);
    }
    // With the same seed, rematch on/off share everything up to the decoder input.
    RunTrace on, off;
    const auto r_on = run_once(desk({true, true}), cb, image, 10.0, 5, &on);
    const auto r_off = run_once(desk({true, false}), cb, image, 10.0, 5, &off);
    CHECK(on.rx_payload == off.rx_payload);
    CHECK(r_on.ber == r_off.ber);
    CHECK(r_on.est_mse.green == r_off.est_mse.green);
    CHECK(r_on.e_total == r_off.e_total);
  }

  TEST_CASE("feature error decomposition respects the triangle inequality") {
    const Codebook& cb = small_codebook();
    for (double snr : {5.0, 15.0}) {
      const auto r = run_once(desk(), cb, image, snr, 6);
      for (int i = 0; i < 16; ++i) CHECK(r.e_total[i] <= r.e_bits[i] + r.e_channel[i] + 1e-9);
    }
  }

  TEST_CASE("runs and sweeps are deterministic") {
    const Codebook& cb = small_codebook();
    const auto a = run_once(desk(), cb, image, 10.0, 7);
    const auto b = run_once(desk(), cb, image, 10.0, 7);
    const auto c = run_once(desk(), cb, image, 10.0, 8);
    CHECK(csv_row(a) == csv_row(b));
    CHECK(csv_row(a) != csv_row(c));

    SimConfig cfg = desk();
    cfg.schemes = {{true, true}, {false, false}};
    cfg.snr_db = {5, 15};
    cfg.seeds = {0, 1, 2};
    const auto s1 = sweep(cfg, cb, image);
    REQUIRE(s1.size() == 12);
    CHECK(s1[0].scheme == "fit-rematch");
    CHECK(s1[0].snr_db == 5);
    CHECK(s1[2].seed == 2);
    CHECK(s1[3].snr_db == 15);
    CHECK(s1[6].scheme == "plain");
    CHECK(csv_row(s1[4]) == csv_row(run_once(desk(), cb, image, 15, 1)));
    CHECK(sweep_csv(s1) == sweep_csv(sweep(cfg, cb, image)));

    semlink::testing::TempDir dir("sweep");
    write_csv(dir.path() / "out.csv", s1);
    std::ifstream in(dir.path() / "out.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == sweep_csv(s1));
    std::string first_line = ss.str().substr(0, ss.str().find('\n'));
    CHECK(first_line == csv_header());
  }

  TEST_CASE("noise hurts") {
    const Codebook& cb = small_codebook();
    double p5 = 0.0, p25 = 0.0;
    for (int seed = 0; seed < 4; ++seed) {
      p5 += run_once(desk(), cb, image, 5.0, seed).psnr_db;
      p25 += run_once(desk(), cb, image, 25.0, seed).psnr_db;
    }
    CHECK(p25 > p5);
  }

  TEST_CASE("configuration mismatches are rejected") {
    SimConfig cfg = desk();
    cfg.patch = 8;
    CHECK_THROWS_AS(run_once(cfg, small_codebook(), image, 10.0, 0), ConfigError);
    SimConfig empty = desk();
    empty.seeds.clear();
    CHECK_THROWS_AS(sweep(empty, small_codebook(), image), ConfigError);
    CHECK_THROWS_AS(run_once(desk(), small_codebook(), Image(30, 30), 10.0, 0), DimensionError);
  }

  TEST_CASE("codebook training from an image directory") {
    semlink::testing::TempDir dir("train");
    write_corpus(dir.path() / "imgs", 4, 21, 64, 64);
    CHECK(list_images(dir.path() / "imgs").size() == 4);
    TrainOptions opts;
    opts.entries = 64;
    opts.max_iters = 15;
    opts.seed = 3;
    const auto a = train_codebook_cmd(dir.path() / "imgs", 4, opts, dir.path() / "a.vqcb");
    const auto b = train_codebook_cmd(dir.path() / "imgs", 4, opts, dir.path() / "b.vqcb");
    const Codebook la = load_codebook(dir.path() / "a.vqcb");
    CHECK(la.size() == 64);
    CHECK(std::ranges::equal(la.entries(), a.codebook.entries()));
    CHECK(std::ranges::equal(a.codebook.entries(), b.codebook.entries()));
    CHECK(a.distortion == b.distortion);
    CHECK_THROWS_AS(train_codebook_cmd(dir.path(), 4, opts, dir.path() / "c.vqcb"), InsufficientDataError);
  }

  TEST_CASE("larger codebooks fit held-out images better") {
    std::vector<double> train;
    for (int k = 0; k < 6; ++k) {
      const auto v = tensor_vectors(dct_encode(synthesize_image(derive_seed(31, "train", k)), 4));
      train.insert(train.end(), v.begin(), v.end());
    }
    const Image held = synthesize_image(derive_seed(31, "held", 0));
    const FeatureTensor z = dct_encode(held, 4);
    double prev = kInf;
    for (int entries : {16, 64, 256}) {
      TrainOptions opts;
      opts.entries = entries;
      opts.max_iters = 20;
      opts.seed = 1;
      const Codebook cb = train_codebook(train, 16, opts).codebook;
      const FeatureTensor q = vq_quantize(z, cb);
      double d = 0.0;
      for (std::size_t n = 0; n < z.size(); ++n) d += std::pow(z.values()[n] - q.values()[n], 2);
      CHECK(d < prev);
      prev = d;
    }
  }
}
