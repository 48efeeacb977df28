#pragma once

#include <random>
#include <string>
#include <vector>

#include "rpkh/diagram_ops.hpp"
#include "rpkh/lift.hpp"
#include "rpkh/projdiag.hpp"

namespace corpus {

using rpkh::ProjDiagram;

enum Kind { LocalClass0, NonLocalClass0, Class1 };

struct Entry {
  std::string name;
  ProjDiagram d;
  Kind kind;
};

inline ProjDiagram unknot0() { return ProjDiagram(0, {}, {rpkh::Arc{0, {}, {}}}); }
inline ProjDiagram unknot1() { return rpkh::from_braid({}, 1, true); }
inline ProjDiagram planar(std::vector<int> w, int m) { return rpkh::from_braid(w, m, false); }
inline ProjDiagram proj(std::vector<int> w, int m) { return rpkh::from_braid(w, m, true); }

// Two kinks on U1: a vertex carries the essential circle next to two trivial ones.
inline ProjDiagram two_kink_u1() { return rpkh::add_kink(rpkh::add_kink(unknot1(), 0, 1), 0, 2); }

inline std::vector<Entry> all() {
  using namespace rpkh;
  return {
      {"U0", unknot0(), LocalClass0},
      {"trefoil", planar({1, 1, 1}, 2), LocalClass0},
      {"mirror trefoil", planar({-1, -1, -1}, 2), LocalClass0},
      {"figure eight", planar({1, -2, 1, -2}, 3), LocalClass0},
      {"hopf", planar({1, 1}, 2), LocalClass0},
      {"T(2,5)", planar({1, 1, 1, 1, 1}, 2), LocalClass0},
      {"6-crossing planar", planar({1, 1, 1, -2, 1, -2}, 3), LocalClass0},
      {"trefoil through wall", push_through_wall(planar({1, 1, 1}, 2), 0), LocalClass0},
      {"proj [-1,-1]", proj({-1, -1}, 2), NonLocalClass0},
      {"proj [1,1,1]", proj({1, 1, 1}, 2), NonLocalClass0},
      {"proj [-1]", proj({-1}, 2), NonLocalClass0},
      {"proj [1,-2,3]", proj({1, -2, 3}, 4), NonLocalClass0},
      {"proj [1,1,-1,1,1,1,1,1]", proj({1, 1, -1, 1, 1, 1, 1, 1}, 2), NonLocalClass0},
      {"H_1", hp_link(1), NonLocalClass0},
      {"H_2", hp_link(2), NonLocalClass0},
      {"U1", unknot1(), Class1},
      {"two-kink U1", two_kink_u1(), Class1},
      {"proj [1,2]", proj({1, 2}, 3), Class1},
      {"proj [1,2,1,2]", proj({1, 2, 1, 2}, 3), Class1},
      {"proj [1,-2,1]", proj({1, -2, 1}, 3), Class1},
      {"proj [-1,-2,-1,-2]", proj({-1, -2, -1, -2}, 3), Class1},
      {"proj [1,2,3,4]", proj({1, 2, 3, 4}, 5), Class1},
      {"proj [1,1,2,-1,2,2]", proj({1, 1, 2, -1, 2, 2}, 3), Class1},
      {"U0 + U1", disjoint_union(unknot1(), unknot0()), Class1},
  };
}

// Random braid word with generators in 1..m-1.
inline std::vector<int> random_word(std::mt19937_64& rng, int m, int len, bool positive) {
  std::vector<int> w;
  for (int i = 0; i < len && m > 1; ++i) {
    int g = 1 + static_cast<int>(rng() % (m - 1));
    w.push_back(positive || rng() % 2 ? g : -g);
  }
  return w;
}

}  // namespace corpus
