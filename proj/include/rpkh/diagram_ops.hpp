#pragma once

#include <vector>

#include "rpkh/projdiag.hpp"

namespace rpkh {

// Crossing change at every crossing.
ProjDiagram mirror(const ProjDiagram& d);
// Crossing change at one crossing.
ProjDiagram flip_crossing(const ProjDiagram& d, int c);
// Reverse the orientation of the listed components (all if empty).
ProjDiagram reverse(const ProjDiagram& d, const std::vector<int>& comps = {});

// Reidemeister I: a kink on arc `a`. Variants 0..3 choose which strand passes
// first and the side of the loop; variants 1 and 3 give positive crossings.
ProjDiagram add_kink(const ProjDiagram& d, int a, int variant);

// Push the strand through the wall twice more next to wall point p (m > 0).
ProjDiagram wall_zigzag(const ProjDiagram& d, int p);
// Planar diagram: push arc `a` once through the wall and back (m becomes 2).
ProjDiagram push_through_wall(const ProjDiagram& d, int a);

// `local` must be planar. It is placed in the host face of `d`.
ProjDiagram disjoint_union(const ProjDiagram& d, const ProjDiagram& local);
// Band the arcs together; -1 picks the first arc on the host face.
ProjDiagram connected_sum(const ProjDiagram& d, const ProjDiagram& local, int arc_d = -1, int arc_l = -1);

}  // namespace rpkh
