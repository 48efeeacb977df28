#pragma once

#include <vector>

#include "rpkh/projdiag.hpp"

namespace rpkh {

// Rotation by pi about the horizontal axis: sigma_i -> sigma_{m-i}.
std::vector<int> flip_word(const std::vector<int>& word, int strands);

// Positive half-twist, as sigma_1 (sigma_2 sigma_1) ... (sigma_{m-1} ... sigma_1).
std::vector<int> half_twist(int strands);

enum class LiftForm { Flip, HalfTwist };

// Planar closure of T flip(T), or of T Delta T Delta^-1.
ProjDiagram lift_diagram(const BraidInput& b, LiftForm form = LiftForm::Flip);

// Projective closure of the positive half-twist on 2p strands; strands
// p+1..2p are reversed.
ProjDiagram hp_link(int p);

}  // namespace rpkh
