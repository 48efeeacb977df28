#pragma once

#include <optional>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "rpkh/cobord.hpp"
#include "rpkh/diagram_ops.hpp"

namespace morse_support {

using namespace rpkh;

struct Setup {
  ProjDiagram d;
  MovieState st;
  MorseStep step;
};

// A random host, a random partial smoothing and one legal Morse step.
inline std::optional<Setup> random_setup(std::mt19937_64& rng) {
  int m = 1 + static_cast<int>(rng() % 3);
  bool proj = rng() % 2;
  if (!proj && m == 1) m = 2;
  auto w = corpus::random_word(rng, m, 1 + static_cast<int>(rng() % 4), false);
  if (w.empty()) return std::nullopt;
  ProjDiagram d = from_braid(w, m, proj);
  if (rng() % 2) d = disjoint_union(d, corpus::unknot0());
  MovieState st{std::vector<int8_t>(d.num_crossings(), -1), std::vector<char>(d.num_arcs(), 0)};
  for (int c = 0; c < d.num_crossings(); ++c)
    if (rng() % 2) st.fixed[c] = static_cast<int8_t>(rng() % 2);
  std::vector<MorseStep> cands;
  for (int c = 0; c < d.num_crossings(); ++c)
    if (st.fixed[c] >= 0) cands.push_back({MorseStep::Saddle, c});
  for (int a = 0; a < d.num_arcs(); ++a)
    if (d.arc(a).free_loop()) cands.push_back({MorseStep::Death, a});
  if (cands.empty()) return std::nullopt;
  MorseStep step = cands[rng() % cands.size()];
  if (step.kind == MorseStep::Death && rng() % 2) {
    st.hidden[step.index] = 1;
    step.kind = MorseStep::Birth;
  }
  return Setup{d, st, step};
}

inline std::vector<int8_t> class_dirs(const DiagramView& v, const std::vector<int>& rev) {
  auto d = v.reoriented(rev).arc_dir;
  for (size_t a = 0; a < d.size(); ++a)
    if (v.hidden[a]) d[a] = 0;
  return d;
}


}  // namespace morse_support
