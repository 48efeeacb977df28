#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpkh {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An arc endpoint. Crossing endpoints use the internal crossing index.
struct Port {
  enum Kind : uint8_t { None, Cross, Wall };
  Kind kind = None;
  int index = -1;
  int slot = -1;

  static Port cross(int c, int s) { return {Cross, c, s}; }
  static Port wall(int p) { return {Wall, p, -1}; }
  bool operator==(const Port&) const = default;
};

struct Arc {
  int id = 0;
  Port from, to;  // both None for a free trivial loop
  bool free_loop() const { return from.kind == Port::None; }
};

// A link diagram in the disk with antipodal identification of its 2m wall
// points (p ~ p+m). Arcs are oriented from -> to. Crossing slots run
// counterclockwise starting at the incoming under-strand.
class ProjDiagram {
 public:
  ProjDiagram() = default;
  ProjDiagram(int wall_points, std::vector<int> crossing_ids, std::vector<Arc> arcs);

  int wall_points() const { return wall_points_; }
  int m() const { return wall_points_ / 2; }
  int num_crossings() const { return static_cast<int>(crossing_ids_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const std::vector<int>& crossing_ids() const { return crossing_ids_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int a) const { return arcs_[a]; }

  int slot_arc(int c, int s) const { return slot_arc_[c][s]; }
  int wall_arc(int p) const { return wall_arc_[p]; }
  int arc_at(const Port& p) const;
  // Arc index whose crossing/wall endpoint at `p` is its head (to) end.
  bool arrives_at(int a, const Port& p) const { return arcs_[a].to == p; }

  int sign(int c) const { return sign_[c]; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int link_class() const { return m() % 2; }
  int components() const { return num_components_; }
  const std::vector<int>& arc_component() const { return arc_component_; }
  // Compass rotation derived from the native orientation, see compass_offset().
  int compass(int c) const { return compass_[c]; }

  int wall_partner(int p) const { return (p + m()) % wall_points_; }

 private:
  void build();

  int wall_points_ = 0;
  std::vector<int> crossing_ids_;
  std::vector<Arc> arcs_;
  std::vector<std::array<int, 4>> slot_arc_;
  std::vector<int> wall_arc_;
  std::vector<int> sign_;
  std::vector<int> compass_;
  int n_plus_ = 0, n_minus_ = 0;
  int num_components_ = 0;
  std::vector<int> arc_component_;
};

// Compass positions, counterclockwise.
enum Compass { SE = 0, NE = 1, NW = 2, SW = 3 };

// Rotation r such that slot s sits at compass position (s + r) mod 4 once both
// strands are turned to point north. Depends only on which slots are incoming.
int compass_offset(bool in0, bool in1, bool in2, bool in3);

// Crossing sign from the incoming under slot (0 or 2) and incoming over slot (1 or 3).
int crossing_sign(int under_in, int over_in);

// A diagram restricted to some crossings: the remaining ones are already
// smoothed, selected free loops are absent, and arcs carry an orientation that
// may differ from the native one. A plain diagram is the view with nothing
// fixed, nothing hidden and the native orientation.
struct DiagramView {
  ProjDiagram diagram;
  std::vector<int8_t> fixed;    // per crossing: -1 free, else smoothing 0/1
  std::vector<int8_t> arc_dir;  // per arc: +1 native, -1 reversed
  std::vector<char> hidden;     // per arc: hidden free loop

  DiagramView() = default;
  explicit DiagramView(ProjDiagram d);
  DiagramView(ProjDiagram d, std::vector<int8_t> fixed, std::vector<int8_t> arc_dir,
              std::vector<char> hidden);

  std::vector<int> free_crossings() const;
  int sign(int c) const;  // under arc_dir, free crossings only
  int n_plus() const;
  int n_minus() const;
  int components() const;
  // Component index per arc (-1 for hidden); components traced through free
  // crossings, through the smoothings of fixed crossings and through the wall.
  std::vector<int> arc_components() const;
  // Full vertex mask: fixed smoothings plus the scattered free bits.
  uint64_t full_vertex(uint64_t free_mask) const;
  // The same view with the orientation of the given components reversed.
  DiagramView reoriented(const std::vector<int>& comps) const;
  bool is_plain() const;
};

enum class Bifurcation { OneTwo, TwoOne, OneOne };

struct LinkData {
  int link_class;
  int components;
};

LinkData link_data(const ProjDiagram& d);

struct BraidInput {
  int strands = 1;
  std::vector<int> word;
  bool projective = true;
};

ProjDiagram from_braid(const std::vector<int>& word, int strands, bool projective);
inline ProjDiagram from_braid(const BraidInput& b) { return from_braid(b.word, b.strands, b.projective); }

}  // namespace rpkh
