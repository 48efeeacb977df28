#include "rpkh/lift.hpp"

#include "rpkh/diagram_ops.hpp"

namespace rpkh {

std::vector<int> flip_word(const std::vector<int>& word, int strands) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int g : word) out.push_back(g > 0 ? strands - g : -(strands + g));
  return out;
}

std::vector<int> half_twist(int strands) {
  std::vector<int> w;
  for (int i = 1; i < strands; ++i)
    for (int j = i; j >= 1; --j) w.push_back(j);
  return w;
}

ProjDiagram lift_diagram(const BraidInput& b, LiftForm form) {
  if (!b.projective) throw DiagramError("lift expects a projective closure");
  std::vector<int> w = b.word;
  if (form == LiftForm::Flip) {
    auto f = flip_word(b.word, b.strands);
    w.insert(w.end(), f.begin(), f.end());
  } else {
    auto delta = half_twist(b.strands);
    w.insert(w.end(), delta.begin(), delta.end());
    w.insert(w.end(), b.word.begin(), b.word.end());
    for (auto it = delta.rbegin(); it != delta.rend(); ++it) w.push_back(-*it);
  }
  return from_braid(w, b.strands, false);
}

ProjDiagram hp_link(int p) {
  if (p < 1) throw DiagramError("hp_link needs p >= 1");
  ProjDiagram d = from_braid(half_twist(2 * p), 2 * p, true);
  // Every strand closes up on itself.
  std::vector<int> comps;
  for (int k = p; k < 2 * p; ++k) {
    int a = d.wall_arc(2 * p + k);  // left end of position k+1
    comps.push_back(d.arc_component()[a]);
  }
  return reverse(d, comps);
}

}  // namespace rpkh
