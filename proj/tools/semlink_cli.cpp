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

// semlink command line: codebook training, single link runs, SNR sweeps and
// grid inspection.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "semlink/codec.hpp"
#include "semlink/config.hpp"
#include "semlink/corpus.hpp"
#include "semlink/error.hpp"
#include "semlink/grid.hpp"
#include "semlink/pipeline.hpp"

namespace {

using namespace semlink;

// Options shared by run and sweep. Everything ends up as config key/value
// overrides so the file and the flags go through one code path.
struct LinkOptions {
  std::string config;
  std::string profile;
  std::string codebook;
  std::string image;
  std::map<std::string, std::string> overrides;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config, "flat key = value config file");
    cmd->add_option("--profile", profile, "desk | paper")->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--codebook", codebook, "VQCB codebook file");
    cmd->add_option("--image", image, "input image (PGM)");
    flag(cmd, "--bits", "quant.bits", "bits per feature value");
    flag(cmd, "--rho", "chan.rho", "AR(1) correlation between OFDM symbols");
    flag(cmd, "--taps", "chan.taps", "channel taps");
    flag(cmd, "--decay", "chan.decay", "exponential pdp decay (taps)");
  }

  void flag(CLI::App* cmd, const std::string& name, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        name, [this, key](const std::string& v) { overrides[key] = v; }, help);
  }

  SimConfig resolve() const {
    std::map<std::string, std::string> kv;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError("cannot open config " + config);
      std::stringstream ss;
      ss << in.rdbuf();
      kv = parse_key_values(ss.str());
    }
    if (!profile.empty()) kv["profile"] = profile;
    if (!kv.count("profile")) kv["profile"] = "desk";
    if (!codebook.empty()) kv["codec.codebook"] = codebook;
    if (!image.empty()) kv["paths.image"] = image;
    for (const auto& [k, v] : overrides) kv[k] = v;
    SimConfig cfg;
    apply_settings(cfg, kv);
    cfg.validate();
    if (cfg.codebook.empty()) throw ConfigError("no codebook given (--codebook or codec.codebook)");
    if (cfg.image.empty()) throw ConfigError("no image given (--image or paths.image)");
    return cfg;
  }
};

void print_report(const RunReport& r, const std::string& ranking) {
  std::printf("scheme       %s\n", r.scheme.c_str());
  std::printf("snr_db       %s\n", format_real(r.snr_db).c_str());
  std::printf("seed         %llu\n", static_cast<unsigned long long>(r.seed));
  std::printf("psnr_db      %s\n", format_real(r.psnr_db).c_str());
  std::printf("ssim         %.6f\n", r.ssim);
  std::printf("ber          %.6e\n", r.ber);
  std::printf("mean_Ei      %.6g\n", r.mean_e_total());
  std::printf("mean_Eb      %.6g\n", r.mean_e_bits());
  std::printf("mean_Eh      %.6g\n", r.mean_e_channel());
  std::printf("mse_pilot    %.6e\n", r.est_mse.pilot);
  std::printf("mse_green    %.6e\n", r.est_mse.green);
  std::printf("mse_regular  %.6e\n", r.est_mse.regular);
  std::printf("ranking      %s\n", ranking.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semlink: vector-quantized semantic link simulator over OFDM"};
  app.require_subcommand(1);

  // train-codebook
  auto* train = app.add_subcommand("train-codebook", "train a shared codebook from a PGM directory");
  std::string train_dir, train_out;
  int train_patch = 4;
  TrainOptions train_opts;
  train->add_option("--images", train_dir, "directory of .pgm images")->required();
  train->add_option("--patch", train_patch, "patch size B");
  train->add_option("--entries", train_opts.entries, "codebook size J");
  train->add_option("--seed", train_opts.seed, "k-means++ seed");
  train->add_option("--max-iters", train_opts.max_iters, "Lloyd iteration cap");
  train->add_option("--tol", train_opts.tol, "relative distortion change to stop at");
  train->add_option("--out", train_out, "output VQCB file")->required();

  // run
  auto* run = app.add_subcommand("run", "simulate one link realization");
  LinkOptions run_opts;
  run_opts.add(run);
  double run_snr = 10.0;
  std::string run_fit, run_rematch, run_emit;
  std::uint64_t run_seed = 0;
  run->add_option("--snr-db", run_snr, "SNR in dB (inf disables noise)");
  run->add_option("--fit", run_fit, "importance-aware placement")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--rematch", run_rematch, "receiver codebook rematching")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--seed", run_seed, "master seed");
  run->add_option("--emit-image", run_emit, "write the reconstruction as PGM");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a scheme x SNR x seed sweep and write CSV");
  LinkOptions sweep_opts;
  sweep_opts.add(sw);
  std::string sweep_snr, sweep_schemes, sweep_csv_path;
  int sweep_seeds = 0;
  sw->add_option("--snr-db", sweep_snr, "start:stop:step or comma list");
  sw->add_option("--seeds", sweep_seeds, "number of seeds (0..N-1)");
  sw->add_option("--schemes", sweep_schemes, "comma list of fit-rematch, rematch, fit, plain");
  sw->add_option("--csv", sweep_csv_path, "output CSV (stdout when omitted)");

  // grid-info
  auto* info = app.add_subcommand("grid-info", "print resource grid counts and role map");
  std::string info_profile = "desk";
  int info_channels = 16;
  bool info_map = false;
  info->add_option("--profile", info_profile, "desk | paper")->check(CLI::IsMember({"desk", "paper"}));
  info->add_option("--features", info_channels, "feature channel count D");
  info->add_flag("--map", info_map, "print the role map even for large grids");

  // synth-corpus
  auto* synth = app.add_subcommand("synth-corpus", "write deterministic synthetic PGM images");
  std::string synth_out;
  int synth_count = 16, synth_size = 128;
  std::uint64_t synth_seed = 0;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--count", synth_count, "number of images");
  synth->add_option("--size", synth_size, "width and height");
  synth->add_option("--seed", synth_seed, "corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*train) {
      const auto result = train_codebook_cmd(train_dir, train_patch, train_opts, train_out);
      std::printf("trained %d x %d codebook in %zu iterations, distortion %.6g -> %s\n",
                  result.codebook.size(), result.codebook.dim(), result.distortion.size(),
                  result.distortion.back(), train_out.c_str());
    } else if (*run) {
      if (!run_fit.empty()) run_opts.overrides["scheme.fit"] = run_fit;
      if (!run_rematch.empty()) run_opts.overrides["scheme.rematch"] = run_rematch;
      const SimConfig cfg = run_opts.resolve();
      const Codebook cb = load_codebook(cfg.codebook);
      const Image img = read_pgm(cfg.image);
      RunTrace trace;
      const RunReport r = run_once(cfg, cb, img, run_snr, run_seed, &trace);
      print_report(r, ranking_csv(trace.ranking));
      if (!run_emit.empty()) write_pgm(run_emit, trace.reconstruction);
    } else if (*sw) {
      if (!sweep_snr.empty()) sweep_opts.overrides["sweep.snr_db"] = sweep_snr;
      if (sweep_seeds > 0) sweep_opts.overrides["sweep.seeds"] = std::to_string(sweep_seeds);
      if (!sweep_schemes.empty()) sweep_opts.overrides["sweep.schemes"] = sweep_schemes;
      SimConfig cfg = sweep_opts.resolve();
      if (!sweep_csv_path.empty()) cfg.csv = sweep_csv_path;
      const Codebook cb = load_codebook(cfg.codebook);
      const Image img = read_pgm(cfg.image);
      const SweepResult res = sweep(cfg, cb, img);
      if (cfg.csv.empty()) {
        std::fputs(sweep_csv(res).c_str(), stdout);
      } else {
        write_csv(cfg.csv, res);
        std::printf("%zu runs -> %s\n", res.size(), cfg.csv.string().c_str());
      }
    } else if (*info) {
      const SimConfig cfg = profile_config(info_profile);
      const GridLayout g = build_layout(cfg.grid.n_t, cfg.grid.n_f, cfg.grid.dt, cfg.grid.df);
      std::printf("profile    %s\n", info_profile.c_str());
      std::printf("grid       %d x %d (dt=%d, df=%d)\n", g.n_t(), g.n_f(), g.dt(), g.df());
      std::printf("fft_size   %d\ncp_len     %d\n", cfg.fft_size, cfg.cp_len);
      std::printf("N_CPI      %zu\nN_ref      %zu\nN_green    %zu\nN_regular  %zu\n", g.n_cpi(),
                  g.n_ref(), g.n_green(), g.n_regular());
      std::printf("D_imp      %d (D=%d)\n", important_feature_count(g, info_channels), info_channels);
      if (info_map || g.n_cpi() <= 100 * 100) std::fputs(role_map_ascii(g).c_str(), stdout);
    } else if (*synth) {
      write_corpus(synth_out, synth_count, synth_seed, synth_size, synth_size);
      std::printf("wrote %d images to %s\n", synth_count, synth_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
