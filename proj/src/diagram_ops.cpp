#include "rpkh/diagram_ops.hpp"

#include <algorithm>

#include "rpkh/geometry.hpp"

namespace rpkh {

namespace {

// Editable copy of a diagram with crossing slots addressed by internal index.
struct Builder {
  int wall_points = 0;
  std::vector<int> ids;
  std::vector<Arc> arcs;

  explicit Builder(const ProjDiagram& d) : wall_points(d.wall_points()), ids(d.crossing_ids()), arcs(d.arcs()) {}

  int new_crossing() {
    int id = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
    ids.push_back(id);
    return static_cast<int>(ids.size()) - 1;
  }
  int next_arc_id() const {
    int id = 0;
    for (auto& a : arcs) id = std::max(id, a.id + 1);
    return id;
  }
  void relabel_slots(int c, int shift) {
    for (auto& a : arcs)
      for (Port* p : {&a.from, &a.to})
        if (p->kind == Port::Cross && p->index == c) p->slot = ((p->slot - shift) % 4 + 4) % 4;
  }
  ProjDiagram build() const { return ProjDiagram(wall_points, ids, arcs); }
};

int incoming_over(const ProjDiagram& d, int c) { return d.sign(c) > 0 ? 3 : 1; }

}  // namespace

ProjDiagram flip_crossing(const ProjDiagram& d, int c) {
  Builder b(d);
  b.relabel_slots(c, incoming_over(d, c));
  return b.build();
}

ProjDiagram mirror(const ProjDiagram& d) {
  Builder b(d);
  for (int c = 0; c < d.num_crossings(); ++c) b.relabel_slots(c, incoming_over(d, c));
  return b.build();
}

ProjDiagram reverse(const ProjDiagram& d, const std::vector<int>& comps) {
  std::vector<char> rev(d.components(), comps.empty() ? 1 : 0);
  for (int k : comps) rev.at(k) = 1;
  Builder b(d);
  for (int c = 0; c < d.num_crossings(); ++c)
    if (rev[d.arc_component()[d.slot_arc(c, 0)]]) b.relabel_slots(c, 2);
  for (size_t a = 0; a < b.arcs.size(); ++a)
    if (rev[d.arc_component()[a]]) std::swap(b.arcs[a].from, b.arcs[a].to);
  return b.build();
}

ProjDiagram add_kink(const ProjDiagram& d, int a, int variant) {
  // (first entry, first exit, second entry, second exit)
  static const int pass[4][4] = {{0, 2, 1, 3}, {0, 2, 3, 1}, {1, 3, 0, 2}, {3, 1, 0, 2}};
  const int* v = pass[((variant % 4) + 4) % 4];
  Builder b(d);
  const int c = b.new_crossing();
  Arc& orig = b.arcs.at(a);
  const int id = b.next_arc_id();
  if (orig.free_loop()) {
    orig.from = Port::cross(c, v[3]);
    orig.to = Port::cross(c, v[0]);
    b.arcs.push_back({id, Port::cross(c, v[1]), Port::cross(c, v[2])});
  } else {
    Port q = orig.to;
    orig.to = Port::cross(c, v[0]);
    b.arcs.push_back({id, Port::cross(c, v[1]), Port::cross(c, v[2])});
    b.arcs.push_back({id + 1, Port::cross(c, v[3]), q});
  }
  return b.build();
}

ProjDiagram wall_zigzag(const ProjDiagram& d, int p) {
  const int m = d.m();
  if (m == 0) throw DiagramError("wall move needs wall points");
  int a = d.wall_arc(p);
  if (!d.arrives_at(a, Port::wall(p))) p = d.wall_partner(p), a = d.wall_arc(p);
  const int p0 = p % m, m2 = m + 2;
  auto renum = [&](int q) {
    int half = q / m, r = q % m;
    return half * m2 + r + (r > p0 ? 2 : 0);
  };
  Builder b(d);
  b.wall_points = 2 * m2;
  for (auto& arc : b.arcs)
    for (Port* pt : {&arc.from, &arc.to})
      if (pt->kind == Port::Wall) pt->index = renum(pt->index);
  const int u = renum(p), w = u + 1, v = u + 2;
  auto partner = [&](int x) { return (x + m2) % (2 * m2); };
  // The continuation leaves from the partner of v instead of the partner of u.
  int cont = d.wall_arc(d.wall_partner(p));
  b.arcs[cont].from = Port::wall(partner(v));
  const int id = b.next_arc_id();
  b.arcs.push_back({id, Port::wall(partner(u)), Port::wall(partner(w))});
  b.arcs.push_back({id + 1, Port::wall(w), Port::wall(v)});
  return b.build();
}

ProjDiagram push_through_wall(const ProjDiagram& d, int a) {
  if (d.m() != 0) throw DiagramError("push_through_wall expects a planar diagram");
  Builder b(d);
  b.wall_points = 4;
  Arc& orig = b.arcs.at(a);
  const int id = b.next_arc_id();
  if (orig.free_loop()) {
    orig.from = Port::wall(1);
    orig.to = Port::wall(0);
  } else {
    Port q = orig.to;
    orig.to = Port::wall(0);
    b.arcs.push_back({id + 1, Port::wall(1), q});
  }
  b.arcs.push_back({id, Port::wall(2), Port::wall(3)});
  return b.build();
}

ProjDiagram disjoint_union(const ProjDiagram& d, const ProjDiagram& local) {
  if (local.m() != 0) throw DiagramError("disjoint union expects a planar second operand");
  Builder b(d);
  const int off = d.num_crossings();
  const int id0 = b.next_arc_id();
  int maxid = b.ids.empty() ? -1 : *std::max_element(b.ids.begin(), b.ids.end());
  for (int c = 0; c < local.num_crossings(); ++c) b.ids.push_back(maxid + 1 + c);
  for (const Arc& arc : local.arcs()) {
    Arc n = arc;
    n.id = id0 + arc.id;
    for (Port* p : {&n.from, &n.to})
      if (p->kind == Port::Cross) p->index += off;
    b.arcs.push_back(n);
  }
  return b.build();
}

static int first_host_arc(const ProjDiagram& d) {
  Geometry g(d);
  for (int a = 0; a < d.num_arcs(); ++a)
    if (!d.arc(a).free_loop() && (g.dart_face(2 * a) == g.host_face() || g.dart_face(2 * a + 1) == g.host_face()))
      return a;
  for (int a = 0; a < d.num_arcs(); ++a)
    if (!d.arc(a).free_loop()) return a;
  return -1;
}

ProjDiagram connected_sum(const ProjDiagram& d, const ProjDiagram& local, int arc_d, int arc_l) {
  if (arc_d < 0) arc_d = first_host_arc(d);
  if (arc_l < 0) arc_l = first_host_arc(local);
  if (arc_l < 0) {
    // `local` is a union of free loops: drop one of them.
    Builder rest(local);
    for (size_t a = 0; a < rest.arcs.size(); ++a)
      if (rest.arcs[a].free_loop()) {
        rest.arcs.erase(rest.arcs.begin() + a);
        break;
      }
    return disjoint_union(d, rest.build());
  }
  const int nd = d.num_arcs();
  ProjDiagram u = disjoint_union(d, local);
  Builder b(u);
  if (arc_d < 0) {
    // d consists of free loops only: merge one of them into the local arc.
    for (int a = 0; a < nd; ++a)
      if (b.arcs[a].free_loop()) {
        b.arcs.erase(b.arcs.begin() + a);
        return b.build();
      }
  }
  Arc& x = b.arcs[arc_d];
  Arc& y = b.arcs[nd + arc_l];
  std::swap(x.to, y.to);
  return b.build();
}

}  // namespace rpkh
