#include "rpkh/projdiag.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rpkh/geometry.hpp"

namespace rpkh {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

// Number components by their smallest arc; -1 stays -1.
int relabel(std::vector<int>& comp) {
  std::map<int, int> ids;
  for (int& c : comp) {
    if (c < 0) continue;
    auto [it, fresh] = ids.emplace(c, static_cast<int>(ids.size()));
    c = it->second;
  }
  return static_cast<int>(ids.size());
}

}  // namespace

int compass_offset(bool in0, bool in1, bool in2, bool in3) {
  const bool in[4] = {in0, in1, in2, in3};
  for (int a = 0; a < 4; ++a)
    if (in[a] && in[(a + 1) % 4]) return (3 - a + 4) % 4;
  throw DiagramError("crossing has no adjacent incoming pair");
}

int crossing_sign(int under_in, int over_in) { return over_in == (under_in + 3) % 4 ? 1 : -1; }

ProjDiagram::ProjDiagram(int wall_points, std::vector<int> crossing_ids, std::vector<Arc> arcs)
    : wall_points_(wall_points), crossing_ids_(std::move(crossing_ids)), arcs_(std::move(arcs)) {
  build();
}

int ProjDiagram::arc_at(const Port& p) const {
  if (p.kind == Port::Cross) return slot_arc_[p.index][p.slot];
  if (p.kind == Port::Wall) return wall_arc_[p.index];
  return -1;
}

void ProjDiagram::build() {
  if (wall_points_ < 0 || wall_points_ % 2 != 0)
    throw DiagramError("odd wall-point count " + std::to_string(wall_points_));
  const int n = num_crossings();
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.id < b.id; });
  for (size_t i = 1; i < arcs_.size(); ++i)
    if (arcs_[i].id == arcs_[i - 1].id) throw DiagramError("duplicate arc id " + std::to_string(arcs_[i].id));

  auto cname = [&](int c) { return std::to_string(crossing_ids_[c]); };
  slot_arc_.assign(n, {-1, -1, -1, -1});
  wall_arc_.assign(wall_points_, -1);
  auto claim = [&](const Port& p, int a) {
    if (p.kind == Port::Cross) {
      if (p.index < 0 || p.index >= n || p.slot < 0 || p.slot > 3)
        throw DiagramError("arc " + std::to_string(arcs_[a].id) + " refers to an invalid crossing port");
      int& slot = slot_arc_[p.index][p.slot];
      if (slot >= 0)
        throw DiagramError("duplicate use of crossing " + cname(p.index) + " slot " + std::to_string(p.slot));
      slot = a;
    } else if (p.kind == Port::Wall) {
      if (p.index < 0 || p.index >= wall_points_)
        throw DiagramError("arc " + std::to_string(arcs_[a].id) + " refers to missing wall point " +
                           std::to_string(p.index));
      if (wall_arc_[p.index] >= 0) throw DiagramError("duplicate use of wall point " + std::to_string(p.index));
      wall_arc_[p.index] = a;
    }
  };
  for (int a = 0; a < num_arcs(); ++a) {
    const Arc& arc = arcs_[a];
    if ((arc.from.kind == Port::None) != (arc.to.kind == Port::None))
      throw DiagramError("arc " + std::to_string(arc.id) + " has a missing endpoint");
    claim(arc.from, a);
    claim(arc.to, a);
  }
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      if (slot_arc_[c][s] < 0)
        throw DiagramError("dangling port crossing " + cname(c) + " slot " + std::to_string(s));
  for (int p = 0; p < wall_points_; ++p)
    if (wall_arc_[p] < 0) throw DiagramError("dangling wall point " + std::to_string(p));

  sign_.assign(n, 0);
  compass_.assign(n, 0);
  n_plus_ = n_minus_ = 0;
  for (int c = 0; c < n; ++c) {
    bool in[4];
    for (int s = 0; s < 4; ++s) in[s] = arrives_at(slot_arc_[c][s], Port::cross(c, s));
    if (!in[0] || in[2] || in[1] == in[3])
      throw DiagramError("inconsistent orientation at crossing " + cname(c));
    sign_[c] = in[3] ? 1 : -1;
    compass_[c] = compass_offset(in[0], in[1], in[2], in[3]);
    (sign_[c] > 0 ? n_plus_ : n_minus_)++;
  }
  for (int p = 0; p < m(); ++p) {
    bool a = arrives_at(wall_arc_[p], Port::wall(p));
    bool b = arrives_at(wall_arc_[p + m()], Port::wall(p + m()));
    if (a == b) throw DiagramError("inconsistent orientation at wall point " + std::to_string(p));
  }

  UnionFind uf(num_arcs());
  for (int c = 0; c < n; ++c) {
    uf.unite(slot_arc_[c][0], slot_arc_[c][2]);
    uf.unite(slot_arc_[c][1], slot_arc_[c][3]);
  }
  for (int p = 0; p < m(); ++p) uf.unite(wall_arc_[p], wall_arc_[p + m()]);
  arc_component_.resize(num_arcs());
  for (int a = 0; a < num_arcs(); ++a) arc_component_[a] = uf.find(a);
  num_components_ = relabel(arc_component_);

  check_planar(*this);
}

LinkData link_data(const ProjDiagram& d) { return {d.link_class(), d.components()}; }

ProjDiagram from_braid(const std::vector<int>& word, int strands, bool projective) {
  const int m = strands;
  if (m < 1) throw DiagramError("braid needs at least one strand");
  for (int g : word)
    if (g == 0 || std::abs(g) >= m) throw DiagramError("braid generator " + std::to_string(g) + " out of range");

  std::vector<Arc> arcs;
  std::vector<Port> open(m + 1), first(m + 1);
  for (int i = 1; i <= m; ++i) open[i] = projective ? Port::wall(m + i - 1) : Port{};
  auto connect = [&](int pos, Port to) {
    if (open[pos].kind == Port::None)
      first[pos] = to;
    else
      arcs.push_back({static_cast<int>(arcs.size()), open[pos], to});
  };
  std::vector<int> ids;
  for (size_t k = 0; k < word.size(); ++k) {
    const int c = static_cast<int>(k), i = std::abs(word[k]);
    ids.push_back(c);
    if (word[k] > 0) {
      connect(i, Port::cross(c, 3));
      connect(i + 1, Port::cross(c, 0));
      open[i] = Port::cross(c, 2);
      open[i + 1] = Port::cross(c, 1);
    } else {
      connect(i, Port::cross(c, 0));
      connect(i + 1, Port::cross(c, 1));
      open[i] = Port::cross(c, 3);
      open[i + 1] = Port::cross(c, 2);
    }
  }
  for (int i = 1; i <= m; ++i) {
    if (projective)
      arcs.push_back({static_cast<int>(arcs.size()), open[i], Port::wall(m - i)});
    else if (open[i].kind == Port::None)
      arcs.push_back({static_cast<int>(arcs.size()), Port{}, Port{}});
    else
      arcs.push_back({static_cast<int>(arcs.size()), open[i], first[i]});
  }
  return ProjDiagram(projective ? 2 * m : 0, ids, arcs);
}

DiagramView::DiagramView(ProjDiagram d)
    : diagram(std::move(d)),
      fixed(diagram.num_crossings(), -1),
      arc_dir(diagram.num_arcs(), 1),
      hidden(diagram.num_arcs(), 0) {}

DiagramView::DiagramView(ProjDiagram d, std::vector<int8_t> fx, std::vector<int8_t> dir, std::vector<char> hid)
    : diagram(std::move(d)), fixed(std::move(fx)), arc_dir(std::move(dir)), hidden(std::move(hid)) {
  const ProjDiagram& D = diagram;
  if (static_cast<int>(fixed.size()) != D.num_crossings() || static_cast<int>(arc_dir.size()) != D.num_arcs() ||
      static_cast<int>(hidden.size()) != D.num_arcs())
    throw DiagramError("view data has the wrong size");
  for (int a = 0; a < D.num_arcs(); ++a)
    if (hidden[a] && !D.arc(a).free_loop()) throw DiagramError("only free loops can be hidden");
  auto in = [&](int c, int s) {
    int a = D.slot_arc(c, s);
    return D.arrives_at(a, Port::cross(c, s)) == (arc_dir[a] > 0);
  };
  for (int c = 0; c < D.num_crossings(); ++c) {
    const std::string name = std::to_string(D.crossing_ids()[c]);
    if (fixed[c] < 0) {
      if (in(c, 0) == in(c, 2) || in(c, 1) == in(c, 3))
        throw DiagramError("inconsistent orientation at crossing " + name);
    } else {
      int partner_of_0 = fixed[c] == 0 ? 1 : 3;
      int partner_of_2 = fixed[c] == 0 ? 3 : 1;
      if (in(c, 0) == in(c, partner_of_0) || in(c, 2) == in(c, partner_of_2))
        throw DiagramError("orientation does not follow the smoothing at crossing " + name);
    }
  }
  for (int p = 0; p < D.m(); ++p) {
    auto arr = [&](int q) {
      int a = D.wall_arc(q);
      return D.arrives_at(a, Port::wall(q)) == (arc_dir[a] > 0);
    };
    if (arr(p) == arr(p + D.m())) throw DiagramError("inconsistent orientation at wall point " + std::to_string(p));
  }
}

bool DiagramView::is_plain() const {
  for (auto f : fixed)
    if (f >= 0) return false;
  for (auto d : arc_dir)
    if (d < 0) return false;
  for (auto h : hidden)
    if (h) return false;
  return true;
}

std::vector<int> DiagramView::free_crossings() const {
  std::vector<int> out;
  for (int c = 0; c < diagram.num_crossings(); ++c)
    if (fixed[c] < 0) out.push_back(c);
  return out;
}

int DiagramView::sign(int c) const {
  const ProjDiagram& D = diagram;
  auto in = [&](int s) {
    int a = D.slot_arc(c, s);
    return D.arrives_at(a, Port::cross(c, s)) == (arc_dir[a] > 0);
  };
  return crossing_sign(in(0) ? 0 : 2, in(1) ? 1 : 3);
}

int DiagramView::n_plus() const {
  int k = 0;
  for (int c : free_crossings()) k += sign(c) > 0;
  return k;
}

int DiagramView::n_minus() const {
  int k = 0;
  for (int c : free_crossings()) k += sign(c) < 0;
  return k;
}

std::vector<int> DiagramView::arc_components() const {
  const ProjDiagram& D = diagram;
  UnionFind uf(D.num_arcs());
  for (int c = 0; c < D.num_crossings(); ++c) {
    auto j = [&](int s, int t) { uf.unite(D.slot_arc(c, s), D.slot_arc(c, t)); };
    if (fixed[c] < 0) {
      j(0, 2), j(1, 3);
    } else if (fixed[c] == 0) {
      j(0, 1), j(2, 3);
    } else {
      j(0, 3), j(1, 2);
    }
  }
  for (int p = 0; p < D.m(); ++p) uf.unite(D.wall_arc(p), D.wall_arc(p + D.m()));
  std::vector<int> comp(D.num_arcs());
  for (int a = 0; a < D.num_arcs(); ++a) comp[a] = hidden[a] ? -1 : uf.find(a);
  relabel(comp);
  return comp;
}

int DiagramView::components() const {
  auto comp = arc_components();
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

uint64_t DiagramView::full_vertex(uint64_t free_mask) const {
  uint64_t v = 0;
  int k = 0;
  for (int c = 0; c < diagram.num_crossings(); ++c) {
    if (fixed[c] < 0) {
      if ((free_mask >> k) & 1) v |= uint64_t{1} << c;
      ++k;
    } else if (fixed[c] == 1) {
      v |= uint64_t{1} << c;
    }
  }
  return v;
}

DiagramView DiagramView::reoriented(const std::vector<int>& comps) const {
  auto comp = arc_components();
  auto dir = arc_dir;
  for (int a = 0; a < diagram.num_arcs(); ++a)
    if (comp[a] >= 0 && std::find(comps.begin(), comps.end(), comp[a]) != comps.end()) dir[a] = -dir[a];
  return DiagramView(diagram, fixed, dir, hidden);
}

}  // namespace rpkh
