#pragma once

#include <cstdint>
#include <vector>

#include "rpkh/projdiag.hpp"

namespace rpkh {

// One circle of a resolution, stored in its canonical traversal: starting on
// its smallest arc, which it runs forward.
struct Circle {
  std::vector<int> arcs;
  std::vector<int8_t> dirs;  // +1 if the arc is run from -> to
  int min_arc = 0;
  int wall_passes = 0;  // passages through the wall (identified pairs)
  bool essential = false;
};

struct Resolution {
  uint64_t vertex = 0;  // bit c = smoothing at crossing c
  std::vector<Circle> circles;  // ascending min arc, essential last
  std::vector<int> arc_circle;  // -1 for hidden loops
  std::vector<int8_t> arc_dir;  // canonical direction of each arc in its circle

  int size() const { return static_cast<int>(circles.size()); }
  int essential_index() const;  // -1 if none
  int circle_at(const ProjDiagram& d, int c, int s) const { return arc_circle[d.slot_arc(c, s)]; }
  // Does the canonical traversal leave crossing c through slot s?
  bool exits(const ProjDiagram& d, int c, int s) const;
};

// Smoothing partner of slot s: 0-resolution pairs 0-1, 2-3; 1-resolution 0-3, 1-2.
inline int smoothing_partner(int s, int r) {
  static const int tab[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};
  return tab[r][s];
}

Resolution resolve(const ProjDiagram& d, uint64_t vertex, const std::vector<char>& hidden = {});
Resolution resolve(const ProjDiagram& d, const std::vector<int>& vertex);

Bifurcation classify_bifurcation(const ProjDiagram& d, const Resolution& before, const Resolution& after, int c);
Bifurcation classify_bifurcation(const ProjDiagram& d, uint64_t vertex, int c);

struct DividingChoice {
  int direction = 1;  // +1 canonical, -1 reversed
  int variant = 0;    // class 0 with wall points: selects among placements
};

struct CircleOrientation {
  enum Provenance { Induced, Dividing };
  std::vector<int8_t> dir;   // relative to the canonical traversal
  std::vector<int> distance; // dividing only; 0 for the essential circle
  Provenance provenance = Dividing;
};

// Faces of a diagram, reused for every resolution.
class Geometry {
 public:
  Geometry(const ProjDiagram& d, const std::vector<char>& hidden = {});
  CircleOrientation dividing_orientation(const Resolution& res, const DividingChoice& choice) const;
  int num_faces() const { return num_faces_; }
  int dart_face(int dart) const { return dart_face_[dart]; }  // dart 2a: arc a forward, 2a+1: backward
  int host_face() const { return host_; }

 private:
  ProjDiagram d_;
  std::vector<char> hidden_;
  int num_faces_ = 0;
  int host_ = -1;
  std::vector<int> dart_face_;
};

// Throws DiagramError unless every connected piece of the diagram is a planar map.
void check_planar(const ProjDiagram& d);

struct OrientedResolution {
  uint64_t vertex;
  Resolution res;
  CircleOrientation induced;
};

// Oriented resolution for the orientation carried by a view (fixed crossings keep their smoothing).
OrientedResolution oriented_resolution(const DiagramView& view);

}  // namespace rpkh
