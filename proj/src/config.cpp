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

#include "semlink/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "semlink/error.hpp"

namespace semlink {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double d = std::stod(t, &used);
    if (used == t.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  try {
    std::size_t used = 0;
    const long long i = std::stoll(t, &used);
    if (used == t.size() && i >= std::numeric_limits<int>::min() && i <= std::numeric_limits<int>::max())
      return static_cast<int>(i);
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

}  // namespace

std::string Scheme::name() const {
  if (fit && rematch) return "fit-rematch";
  if (rematch) return "rematch";
  if (fit) return "fit";
  return "plain";
}

Scheme Scheme::parse(const std::string& name) {
  const std::string n = trim(name);
  if (n == "fit-rematch") return {true, true};
  if (n == "rematch") return {false, true};
  if (n == "fit") return {true, false};
  if (n == "plain") return {false, false};
  throw ConfigError("unknown scheme '" + name + "' (fit-rematch, rematch, fit, plain)");
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

SimConfig profile_config(const std::string& name) {
  SimConfig cfg;
  cfg.profile = name;
  if (name == "desk") {
    cfg.grid = {56, 72, 4, 6};
    cfg.cp_len = 16;
  } else if (name == "paper") {
    cfg.grid = {448, 792, 4, 6};
    cfg.cp_len = 72;
  } else {
    throw ConfigError("unknown profile '" + name + "' (desk, paper)");
  }
  cfg.fft_size = next_pow2(cfg.grid.n_f);
  return cfg;
}

void SimConfig::validate() const {
  if (qam_order != 16) throw ConfigError("only 16-QAM is supported");
  if (grid.dt < 3 || grid.df < 3) throw ConfigError("pilot spacing must be at least 3");
  if (grid.n_t < grid.dt || grid.n_f < grid.df) throw ConfigError("grid smaller than one pilot interval");
  if (fft_size < grid.n_f) throw ConfigError("fft size smaller than subcarrier count");
  if (channel.taps < 1) throw ConfigError("channel needs at least one tap");
  if (cp_len < channel.taps - 1 || cp_len > fft_size)
    throw ConfigError("cyclic prefix must cover the channel memory (cp_len >= taps - 1)");
  if (!(channel.decay > 0.0)) throw ConfigError("pdp decay must be positive");
  if (std::abs(channel.rho) > 1.0) throw ConfigError("|rho| must not exceed 1");
  if (patch < 1) throw ConfigError("patch size must be positive");
  if (entries < 2) throw ConfigError("codebook needs at least two entries");
  if (bits < 1 || bits > 16) throw ConfigError("bits per value must be in [1, 16]");
  if (pilot_symbol == cplx{}) throw ConfigError("pilot symbol must be non-zero");
  for (double s : snr_db)
    if (std::isnan(s)) throw ConfigError("SNR list contains NaN");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

bool parse_on_off(const std::string& v) {
  const std::string t = trim(v);
  if (t == "on" || t == "true" || t == "1") return true;
  if (t == "off" || t == "false" || t == "0") return false;
  throw ConfigError("expected on/off, got '" + v + "'");
}

std::vector<double> parse_snr_list(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.empty()) throw ConfigError("empty SNR list");
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("SNR range must be start:stop:step");
    const double start = to_real("snr", parts[0]);
    const double stop = to_real("snr", parts[1]);
    const double step = to_real("snr", parts[2]);
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
      throw ConfigError("bad SNR range '" + spec + "'");
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(start + k * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_real("snr", p));
  return out;
}

std::vector<Scheme> parse_scheme_list(const std::string& spec) {
  std::vector<Scheme> out;
  for (const auto& p : split(spec, ','))
    if (!p.empty()) out.push_back(Scheme::parse(p));
  if (out.empty()) throw ConfigError("empty scheme list");
  return out;
}

void apply_settings(SimConfig& cfg, const std::map<std::string, std::string>& kv) {
  if (auto it = kv.find("profile"); it != kv.end()) {
    SimConfig base = profile_config(it->second);
    base.codebook = cfg.codebook;
    base.image = cfg.image;
    base.output_dir = cfg.output_dir;
    base.csv = cfg.csv;
    cfg = base;
  }
  bool fft_explicit = false;
  for (const auto& [key, v] : kv) {
    if (key == "profile") continue;
    else if (key == "grid.n_t") cfg.grid.n_t = to_int(key, v);
    else if (key == "grid.n_f") cfg.grid.n_f = to_int(key, v);
    else if (key == "grid.dt") cfg.grid.dt = to_int(key, v);
    else if (key == "grid.df") cfg.grid.df = to_int(key, v);
    else if (key == "phy.fft_size") cfg.fft_size = to_int(key, v), fft_explicit = true;
    else if (key == "phy.cp_len") cfg.cp_len = to_int(key, v);
    else if (key == "phy.qam_order") cfg.qam_order = to_int(key, v);
    else if (key == "phy.carrier_hz") cfg.carrier_hz = to_real(key, v);
    else if (key == "phy.bandwidth_hz") cfg.bandwidth_hz = to_real(key, v);
    else if (key == "phy.pilot") cfg.pilot_symbol = {to_real(key, v), 0.0};
    else if (key == "chan.taps") cfg.channel.taps = to_int(key, v);
    else if (key == "chan.decay") cfg.channel.decay = to_real(key, v);
    else if (key == "chan.rho") cfg.channel.rho = to_real(key, v);
    else if (key == "codec.patch") cfg.patch = to_int(key, v);
    else if (key == "codec.entries") cfg.entries = to_int(key, v);
    else if (key == "codec.codebook") cfg.codebook = v;
    else if (key == "quant.bits") cfg.bits = to_int(key, v);
    else if (key == "scheme.fit") cfg.scheme.fit = parse_on_off(v);
    else if (key == "scheme.rematch") cfg.scheme.rematch = parse_on_off(v);
    else if (key == "sweep.snr_db") cfg.snr_db = parse_snr_list(v);
    else if (key == "sweep.schemes") cfg.schemes = parse_scheme_list(v);
    else if (key == "sweep.seeds") {
      const int n = to_int(key, v);
      if (n < 1) throw ConfigError("sweep.seeds must be positive");
      cfg.seeds.clear();
      for (int s = 0; s < n; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    else if (key == "paths.image") cfg.image = v;
    else if (key == "paths.output_dir") cfg.output_dir = v;
    else if (key == "paths.csv") cfg.csv = v;
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (!fft_explicit && kv.count("grid.n_f")) cfg.fft_size = next_pow2(cfg.grid.n_f);
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  SimConfig cfg;
  apply_settings(cfg, parse_key_values(ss.str()));
  cfg.validate();
  return cfg;
}

}  // namespace semlink
