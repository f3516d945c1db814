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

#include "semlink/grid.hpp"

#include <algorithm>
#include <string>

#include "semlink/error.hpp"

namespace semlink {

std::vector<int> GridLayout::pilot_times() const {
  std::vector<int> out;
  for (int t = 0; t < n_t_; t += dt_) out.push_back(t);
  return out;
}

std::vector<int> GridLayout::pilot_freqs() const {
  std::vector<int> out;
  for (int f = 0; f < n_f_; f += df_) out.push_back(f);
  return out;
}

GridLayout build_layout(int n_t, int n_f, int dt, int df) {
  // Spacing >= 3 keeps the neighbour crosses of adjacent pilots disjoint.
  if (dt < 3 || df < 3)
    throw ConfigError("pilot spacing must be at least 3 in both directions");
  if (n_t < dt || n_f < df) throw ConfigError("grid smaller than one pilot interval");

  GridLayout g;
  g.n_t_ = n_t;
  g.n_f_ = n_f;
  g.dt_ = dt;
  g.df_ = df;
  g.roles_.assign(static_cast<std::size_t>(n_t) * n_f, Role::Regular);
  auto cell = [&](int t, int f) -> Role& { return g.roles_[static_cast<std::size_t>(t) * n_f + f]; };

  for (int t = 0; t < n_t; t += dt)
    for (int f = 0; f < n_f; f += df) cell(t, f) = Role::Pilot;

  constexpr int kNeighbours[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (int t = 0; t < n_t; t += dt)
    for (int f = 0; f < n_f; f += df)
      for (const auto& d : kNeighbours) {
        const int tt = t + d[0];
        const int ff = f + d[1];
        if (tt < 0 || tt >= n_t || ff < 0 || ff >= n_f) continue;
        if (cell(tt, ff) == Role::Regular) cell(tt, ff) = Role::Important;
      }

  for (Role r : g.roles_) {
    switch (r) {
      case Role::Pilot: ++g.n_ref_; break;
      case Role::Important: ++g.n_green_; break;
      case Role::Regular: ++g.n_regular_; break;
    }
  }
  return g;
}

int important_feature_count(const GridLayout& layout, int channels) {
  if (channels < 1) throw DimensionError("feature count must be positive");
  const std::size_t data = layout.n_cpi() - layout.n_ref();
  if (data == 0) return 0;
  const auto d_imp = static_cast<std::size_t>(channels) * layout.n_green() / data;
  return static_cast<int>(std::min<std::size_t>(d_imp, channels));
}

Placement plan_placement(const GridLayout& layout, std::size_t symbols_a, std::size_t symbols_b) {
  Placement p;
  p.a.reserve(symbols_a);
  p.b.reserve(symbols_b);
  if (layout.n_data() == 0 && symbols_a + symbols_b > 0)
    throw ConfigError("layout has no data resource elements");

  const auto& roles = layout.roles();
  const std::size_t n_cpi = layout.n_cpi();
  while (p.a.size() < symbols_a || p.b.size() < symbols_b) {
    const std::size_t base = p.frames * n_cpi;
    for (std::size_t re = 0; re < n_cpi; ++re) {
      const bool a_left = p.a.size() < symbols_a;
      const bool b_left = p.b.size() < symbols_b;
      if (roles[re] == Role::Important) {
        if (a_left) p.a.push_back(base + re);
        else if (b_left) p.b.push_back(base + re);
      } else if (roles[re] == Role::Regular) {
        if (b_left) p.b.push_back(base + re);
        else if (a_left) p.a.push_back(base + re);
      }
    }
    ++p.frames;
  }
  return p;
}

namespace {

void check_ranking(const ImportanceWeights& ranking, int channels) {
  if (static_cast<int>(ranking.ranking.size()) != channels)
    throw DimensionError("ranking length does not match the payload channel count");
  std::vector<bool> seen(channels, false);
  for (int c : ranking.ranking) {
    if (c < 0 || c >= channels || seen[c]) throw DimensionError("ranking is not a permutation");
    seen[c] = true;
  }
}

std::size_t symbols_for(std::size_t bits, int bits_per_symbol) {
  return (bits + bits_per_symbol - 1) / bits_per_symbol;
}

Bits stream_bits(const BitPayload& payload, const std::vector<int>& order, int first, int last,
                 int bits_per_symbol) {
  Bits out;
  out.reserve((last - first) * payload.word_length() + bits_per_symbol);
  for (int k = first; k < last; ++k) {
    const auto w = payload.word(order[k]);
    out.insert(out.end(), w.begin(), w.end());
  }
  out.resize(symbols_for(out.size(), bits_per_symbol) * bits_per_symbol, 0);
  return out;
}

void tally(std::vector<FrameUsage>& usage, const GridLayout& layout,
           const std::vector<std::size_t>& slots, bool stream_a) {
  const std::size_t n_cpi = layout.n_cpi();
  for (std::size_t pos : slots) {
    auto& u = usage[pos / n_cpi];
    const bool green = layout.roles()[pos % n_cpi] == Role::Important;
    if (stream_a) (green ? u.a_on_green : u.a_on_regular)++;
    else (green ? u.b_on_green : u.b_on_regular)++;
  }
}

}  // namespace

StreamPlan plan_streams(const GridLayout& layout, const BitPayload& payload, int bits_per_symbol) {
  StreamPlan plan;
  plan.channels = payload.channels;
  plan.height = payload.height;
  plan.width = payload.width;
  plan.bits_per_value = payload.bits_per_value;
  plan.range = payload.range;
  plan.important_channels = payload.channels > 0 ? important_feature_count(layout, payload.channels) : 0;
  plan.bits_a = payload.word_length() * plan.important_channels;
  plan.bits_b = payload.word_length() * (payload.channels - plan.important_channels);
  plan.symbols_a = symbols_for(plan.bits_a, bits_per_symbol);
  plan.symbols_b = symbols_for(plan.bits_b, bits_per_symbol);
  return plan;
}

MappedFrames map_payload(const GridLayout& layout, const BitPayload& payload,
                         const ImportanceWeights& ranking, const Modulation& modulator,
                         cplx pilot_symbol) {
  check_ranking(ranking, payload.channels);
  if (payload.bits.size() != payload.word_length() * payload.channels)
    throw FormatError("payload bit count inconsistent with its shape");

  MappedFrames out;
  out.pilot_symbol = pilot_symbol;
  out.plan = plan_streams(layout, payload, modulator.bits_per_symbol());
  const int d_imp = out.plan.important_channels;
  const int bps = modulator.bits_per_symbol();

  const auto sym_a = modulator.modulate(stream_bits(payload, ranking.ranking, 0, d_imp, bps));
  const auto sym_b =
      modulator.modulate(stream_bits(payload, ranking.ranking, d_imp, payload.channels, bps));
  const Placement place = plan_placement(layout, sym_a.size(), sym_b.size());

  out.frames.assign(place.frames, ComplexGrid(layout.n_t(), layout.n_f()));
  for (auto& frame : out.frames)
    for (std::size_t re = 0; re < layout.n_cpi(); ++re)
      if (layout.roles()[re] == Role::Pilot) frame.values[re] = pilot_symbol;

  const std::size_t n_cpi = layout.n_cpi();
  for (std::size_t k = 0; k < sym_a.size(); ++k)
    out.frames[place.a[k] / n_cpi].values[place.a[k] % n_cpi] = sym_a[k];
  for (std::size_t k = 0; k < sym_b.size(); ++k)
    out.frames[place.b[k] / n_cpi].values[place.b[k] % n_cpi] = sym_b[k];

  out.usage.assign(place.frames, {});
  tally(out.usage, layout, place.a, true);
  tally(out.usage, layout, place.b, false);
  return out;
}

BitPayload demap_payload(const MappedFrames& frames, const GridLayout& layout,
                         const ImportanceWeights& ranking, const Modulation& demodulator) {
  const StreamPlan& plan = frames.plan;
  check_ranking(ranking, plan.channels);
  const Placement place = plan_placement(layout, plan.symbols_a, plan.symbols_b);
  if (place.frames != frames.frames.size())
    throw DimensionError("expected " + std::to_string(place.frames) + " frames, got " +
                         std::to_string(frames.frames.size()));
  for (const auto& f : frames.frames)
    if (f.n_t != layout.n_t() || f.n_f != layout.n_f())
      throw DimensionError("frame shape does not match the layout");

  const std::size_t n_cpi = layout.n_cpi();
  auto gather = [&](const std::vector<std::size_t>& slots) {
    std::vector<cplx> sym(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
      sym[k] = frames.frames[slots[k] / n_cpi].values[slots[k] % n_cpi];
    return demodulator.demodulate(sym);
  };
  const Bits bits_a = gather(place.a);
  const Bits bits_b = gather(place.b);
  if (bits_a.size() < plan.bits_a || bits_b.size() < plan.bits_b)
    throw DimensionError("demodulated stream shorter than planned");

  BitPayload p;
  p.bits_per_value = plan.bits_per_value;
  p.range = plan.range;
  p.channels = plan.channels;
  p.height = plan.height;
  p.width = plan.width;
  p.bits.assign(p.word_length() * p.channels, 0);
  const std::size_t len = p.word_length();
  for (int k = 0; k < plan.channels; ++k) {
    const bool in_a = k < plan.important_channels;
    const Bits& src = in_a ? bits_a : bits_b;
    const std::size_t offset = (in_a ? k : k - plan.important_channels) * len;
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(offset), len,
                p.word(ranking.ranking[k]).begin());
  }
  return p;
}

std::string role_map_ascii(const GridLayout& layout) {
  std::string out;
  out.reserve(layout.n_cpi() + layout.n_t());
  for (int t = 0; t < layout.n_t(); ++t) {
    for (int f = 0; f < layout.n_f(); ++f) {
      switch (layout.role(t, f)) {
        case Role::Pilot: out += 'P'; break;
        case Role::Important: out += 'G'; break;
        case Role::Regular: out += '.'; break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace semlink
