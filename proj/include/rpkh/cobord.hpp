#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rpkh/cube.hpp"
#include "rpkh/projdiag.hpp"

namespace rpkh {

// Cobordisms live on a fixed host diagram. A state smooths some crossings and
// hides some free loops; a saddle at crossing c switches its smoothing, a birth
// unhides a loop and a death hides it.
struct MovieState {
  std::vector<int8_t> fixed;  // per crossing: -1 free, else smoothing
  std::vector<char> hidden;   // per arc
};

struct MorseStep {
  enum Kind { Birth, Death, Saddle };
  Kind kind = Saddle;
  int index = 0;  // loop arc (birth, death) or crossing (saddle), internal indices
};

const char* kind_name(MorseStep::Kind k);

// Arc directions (+1 native) consistent at free crossings, with the smoothing of
// fixed crossings, and with both smoothings at each crossing in `saddles`.
// Prefers the native direction. nullopt if there is none.
std::optional<std::vector<int8_t>> solve_orientation(const ProjDiagram& d, const std::vector<int8_t>& fixed,
                                                     const std::vector<int>& saddles = {});

// Validates the step and returns the state after it. Throws DiagramError.
MovieState apply_step(const ProjDiagram& host, const MovieState& s, const MorseStep& step);

struct MorseMap {
  MorseStep step;
  DiagramView source, target;
  std::shared_ptr<const Complex> src, tgt;
  bool orientable = true;
  // Per homological degree; rows index the target, columns the source.
  std::map<int, std::vector<SymEntry>> entries;

  bool zero() const;
  SparseMatrix<mpq_class> matrix(int i, const CoeffSpec& spec) const;
};

// arc_dir must be consistent with both states (for a saddle: alternating at c).
// For a non-orientable saddle pass separate orientations via morse_map_split.
MorseMap morse_map(const ProjDiagram& host, const std::vector<int8_t>& arc_dir, const MovieState& state,
                   const MorseStep& step, const ResolutionChoices& choices = {});
MorseMap morse_map_split(const ProjDiagram& host, const std::vector<int8_t>& source_dir,
                         const std::vector<int8_t>& target_dir, const MovieState& state, const MorseStep& step,
                         const ResolutionChoices& choices = {});

// d phi = phi d; exact in s, t for the Polynomials ring.
bool is_chain_map(const MorseMap& m, const CoeffSpec& spec);

// Smallest j(target) - j(source) over nonzero Lee entries; nullopt for the zero map.
std::optional<int> filtration_degree(const MorseMap& m);

struct Movie {
  ProjDiagram host;
  std::optional<std::vector<int8_t>> orientation;
  MovieState initial;
  std::vector<MorseStep> steps;

  int euler_characteristic() const;
};

struct GenusVerdict {
  int s0 = 0, s1 = 0, chi = 0;
  bool allowed = true;  // s1 - s0 >= chi
  bool applicable = true;  // false for a non-orientable cobordism
  std::string message() const;
};

GenusVerdict genus_bound_check(int s0, int s1, int chi);

// Lower bound on the slice genus of a knot.
inline int slice_genus_bound(int s) { return (s < 0 ? 1 - s : s + 1) / 2; }

struct StepAudit {
  MorseStep step;
  bool orientable = true;
  bool chain_map = false;
  std::optional<int> degree;
};

struct MovieAudit {
  std::vector<StepAudit> steps;
  int chi = 0;
  bool global_orientation = true;
  std::optional<int> composite_degree;  // nullopt: zero map
  int s0 = 0, s1 = 0;
  GenusVerdict verdict;
  bool ok() const;
};

// Segments are separate movies glued at diagram checkpoints.
MovieAudit audit_movie(const std::vector<Movie>& segments);

}  // namespace rpkh
