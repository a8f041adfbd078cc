#pragma once
// Named inputs shared by the command-line tool and the tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "error.hpp"
#include "front.hpp"
#include "singularity.hpp"
#include "zigzag.hpp"

namespace legfront {

inline PlatData plat_of(const std::string& word, int samples = 64) {
  PlatData pd;
  pd.word = word_from_string(word);
  pd.style.samples = samples;
  pd.flips.assign(static_cast<std::size_t>(plat_component_count(pd)), false);
  return pd;
}

// Unknot with `count` stabilizations; bit j of `signs` picks the zig-zag of the j-th one.
inline FrontDiagram stabilized_unknot(int count, unsigned signs = 0, int samples = 64) {
  FrontDiagram f = realize_plat(plat_of("L0 R0", samples));
  for (int j = 0; j < count; ++j) {
    MoveSite s;
    s.event = 1;
    s.pos = 0;
    s.variant = static_cast<int>((signs >> j) & 1U);
    f = apply_move(f, MoveKind::Stabilize, s).front;
  }
  return f;
}

// Unit circle (cos t, sin t, 0) in R3Std, closed, with the first sample repeated at the end.
inline SampledLegendrian circle_curve(std::size_t n = 2001) {
  if (n < 3) throw DomainError("circle needs at least 3 samples");
  SampledLegendrian c;
  c.model = ContactModel::r3();
  c.closed = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1);
    const double u = i + 1 == n ? 0.0 : t;
    c.points.push_back({std::cos(u), std::sin(u), 0.0});
    c.params.push_back(t);
  }
  return c;
}

// Applies `count` random R1/R2/R3 moves, each at a random matching site.
inline PlatData random_isotopy(PlatData pd, int count, std::uint64_t seed, std::vector<MoveKind>* kinds = nullptr) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (pd.flips.empty()) pd.flips.assign(static_cast<std::size_t>(plat_component_count(pd)), false);
  for (int m = 0; m < count; ++m) {
    bool done = false;
    for (int attempt = 0; attempt < 20000 && !done; ++attempt) {
      const MoveKind kind = std::array{MoveKind::R1, MoveKind::R2, MoveKind::R3}[static_cast<std::size_t>(pick(3))];
      MoveSite s;
      s.event = pick(static_cast<int>(pd.word.size()) + 1);
      s.pos = pick(8);
      s.variant = pick(2);
      s.inverse = kind != MoveKind::R3 && pick(3) == 0;
      try {
        pd = apply_word_move(pd, kind, s);
        if (kinds) kinds->push_back(kind);
        done = true;
      } catch (const PatternError&) {
      }
    }
    if (!done) throw DomainError("no applicable move found");
  }
  return pd;
}

// Known names: unknot, stabilized, stabilized2, zigzag, saucer, random (uses seed).
inline FrontDiagram builtin_front(const std::string& name, std::uint64_t seed = 0, int samples = 64) {
  if (name == "unknot") return realize_plat(plat_of("L0 R0", samples));
  if (name == "stabilized") return stabilized_unknot(1, 0, samples);
  if (name == "stabilized2") return stabilized_unknot(2, 2, samples);
  if (name == "zigzag") return psi_zigzag_front(unit_zigzag_delta(), static_cast<std::size_t>(4 * samples));
  if (name == "saucer") return saucer_slice(static_cast<std::size_t>(16 * samples));
  if (name == "random") {
    PlatStyle st;
    st.samples = samples;
    return realize_plat(random_knot_word(seed, 14, 6, st));
  }
  throw SchemaError("unknown builtin front '" + name + "'");
}

}  // namespace legfront
