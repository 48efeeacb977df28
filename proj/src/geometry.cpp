#include "rpkh/geometry.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace rpkh {

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

// Darts: 2a / 2a+1 run arc a forward / backward. Boundary interval p (from
// wall point p to p+1) has darts 2A+2p (forward) and 2A+2p+1 (backward); the
// disk lies to the left of the forward one.
struct Darts {
  const ProjDiagram& d;
  int A, W;
  explicit Darts(const ProjDiagram& dd) : d(dd), A(dd.num_arcs()), W(dd.wall_points()) {}

  int total() const { return 2 * A + 2 * W; }
  bool is_arc(int x) const { return x < 2 * A; }
  int fwd(int p) const { return 2 * A + 2 * (((p % W) + W) % W); }
  int bwd(int p) const { return fwd(p) + 1; }
  Port head(int x) const {
    if (is_arc(x)) return (x & 1) ? d.arc(x / 2).from : d.arc(x / 2).to;
    int p = (x - 2 * A) / 2;
    return (x & 1) ? Port::wall(p) : Port::wall((p + 1) % W);
  }
  int out_slot(int c, int s) const {
    int a = d.slot_arc(c, s);
    return d.arc(a).from == Port::cross(c, s) ? 2 * a : 2 * a + 1;
  }
  int out_wall(int p) const {
    int a = d.wall_arc(p);
    return d.arc(a).from == Port::wall(p) ? 2 * a : 2 * a + 1;
  }
  // Next dart around the face on the left. `vertex` < 0 means the diagram
  // itself; otherwise crossings are replaced by the smoothings of that vertex.
  int next(int x, int64_t vertex) const {
    Port h = head(x);
    if (h.kind == Port::Cross) {
      int s = vertex < 0 ? (h.slot + 3) % 4 : smoothing_partner(h.slot, (vertex >> h.index) & 1);
      return out_slot(h.index, s);
    }
    int p = h.index;
    int r = x ^ 1;
    if (is_arc(r)) return fwd(p);
    if (r == fwd(p)) return bwd(p - 1);
    return out_wall(p);
  }
};

// Trace all face cycles over non-loop darts; returns the number of faces.
int trace_faces(const Darts& D, int64_t vertex, std::vector<int>& face) {
  face.assign(D.total(), -1);
  int nf = 0;
  for (int x = 0; x < D.total(); ++x) {
    if (face[x] >= 0 || (D.is_arc(x) && D.d.arc(x / 2).free_loop())) continue;
    int y = x;
    do {
      face[y] = nf;
      y = D.next(y, vertex);
    } while (y != x);
    ++nf;
  }
  return nf;
}

// Port-graph components: crossing nodes 0..n-1, the wall node n.
std::vector<int> port_components(const ProjDiagram& d) {
  const int n = d.num_crossings();
  UF uf(n + 1);
  auto node = [&](const Port& p) { return p.kind == Port::Cross ? p.index : n; };
  for (const Arc& a : d.arcs())
    if (!a.free_loop()) uf.unite(node(a.from), node(a.to));
  std::vector<int> comp(n + 1);
  for (int i = 0; i <= n; ++i) comp[i] = uf.find(i);
  return comp;
}

}  // namespace

int Resolution::essential_index() const {
  if (!circles.empty() && circles.back().essential) return size() - 1;
  return -1;
}

bool Resolution::exits(const ProjDiagram& d, int c, int s) const {
  int a = d.slot_arc(c, s);
  return (d.arc(a).from == Port::cross(c, s)) == (arc_dir[a] > 0);
}

Resolution resolve(const ProjDiagram& d, uint64_t vertex, const std::vector<char>& hidden) {
  Resolution res;
  res.vertex = vertex;
  const int A = d.num_arcs();
  res.arc_circle.assign(A, -1);
  res.arc_dir.assign(A, 0);
  for (int start = 0; start < A; ++start) {
    if (res.arc_circle[start] >= 0 || (!hidden.empty() && hidden[start])) continue;
    Circle circ;
    circ.min_arc = start;
    const int id = static_cast<int>(res.circles.size());
    int a = start, dir = 1;
    do {
      res.arc_circle[a] = id;
      res.arc_dir[a] = static_cast<int8_t>(dir);
      circ.arcs.push_back(a);
      circ.dirs.push_back(static_cast<int8_t>(dir));
      const Arc& arc = d.arc(a);
      if (arc.free_loop()) break;
      Port h = dir > 0 ? arc.to : arc.from;
      Port nxt;
      if (h.kind == Port::Cross) {
        nxt = Port::cross(h.index, smoothing_partner(h.slot, (vertex >> h.index) & 1));
      } else {
        nxt = Port::wall(d.wall_partner(h.index));
        ++circ.wall_passes;
      }
      a = d.arc_at(nxt);
      dir = d.arc(a).from == nxt ? 1 : -1;
    } while (!(a == start && dir == 1));
    circ.essential = circ.wall_passes % 2 == 1;
    res.circles.push_back(std::move(circ));
  }
  // Essential circle goes last.
  for (int k = 0; k < res.size(); ++k) {
    if (!res.circles[k].essential) continue;
    Circle e = std::move(res.circles[k]);
    res.circles.erase(res.circles.begin() + k);
    res.circles.push_back(std::move(e));
    for (int k2 = 0; k2 < res.size(); ++k2)
      for (int a : res.circles[k2].arcs) res.arc_circle[a] = k2;
    break;
  }
  return res;
}

Resolution resolve(const ProjDiagram& d, const std::vector<int>& vertex) {
  if (static_cast<int>(vertex.size()) != d.num_crossings()) throw DiagramError("vertex length mismatch");
  uint64_t v = 0;
  for (size_t c = 0; c < vertex.size(); ++c)
    if (vertex[c]) v |= uint64_t{1} << c;
  return resolve(d, v);
}

Bifurcation classify_bifurcation(const ProjDiagram& d, const Resolution& before, const Resolution& after, int c) {
  auto count = [&](const Resolution& r) {
    std::vector<int> ids;
    for (int s = 0; s < 4; ++s) ids.push_back(r.circle_at(d, c, s));
    std::sort(ids.begin(), ids.end());
    return std::unique(ids.begin(), ids.end()) - ids.begin();
  };
  auto b = count(before), a = count(after);
  if (b == a) return Bifurcation::OneOne;
  return b == 2 ? Bifurcation::TwoOne : Bifurcation::OneTwo;
}

Bifurcation classify_bifurcation(const ProjDiagram& d, uint64_t vertex, int c) {
  if ((vertex >> c) & 1) throw DiagramError("bifurcation needs the crossing at its 0-smoothing");
  return classify_bifurcation(d, resolve(d, vertex), resolve(d, vertex | (uint64_t{1} << c)), c);
}

void check_planar(const ProjDiagram& d) {
  Darts D(d);
  std::vector<int> face;
  trace_faces(D, -1, face);
  auto comp = port_components(d);
  const int n = d.num_crossings();
  std::vector<long> V(n + 1, 0), E(n + 1, 0);
  std::vector<std::vector<int>> faces(n + 1);
  for (int c = 0; c < n; ++c) V[comp[c]]++;
  V[comp[n]] += d.wall_points();
  E[comp[n]] += d.wall_points();
  auto node = [&](const Port& p) { return p.kind == Port::Cross ? p.index : n; };
  for (int a = 0; a < d.num_arcs(); ++a) {
    if (d.arc(a).free_loop()) continue;
    int k = comp[node(d.arc(a).from)];
    E[k]++;
    faces[k].push_back(face[2 * a]);
    faces[k].push_back(face[2 * a + 1]);
  }
  for (int x = 2 * d.num_arcs(); x < D.total(); ++x) faces[comp[n]].push_back(face[x]);
  for (int k = 0; k <= n; ++k) {
    if (comp[k] != k || (k == n && d.wall_points() == 0)) continue;
    if (k < n && V[k] == 0) continue;
    auto& f = faces[k];
    std::sort(f.begin(), f.end());
    long F = std::unique(f.begin(), f.end()) - f.begin();
    if (V[k] - E[k] + F != 2) throw DiagramError("diagram is not planar");
  }
}

Geometry::Geometry(const ProjDiagram& d, const std::vector<char>& hidden) : d_(d), hidden_(hidden) {
  if (hidden_.empty()) hidden_.assign(d.num_arcs(), 0);
  Darts D(d);
  int nf = trace_faces(D, -1, dart_face_);
  const int n = d.num_crossings();
  int host;
  if (d.wall_points() > 0) {
    host = dart_face_[D.fwd(0)];
  } else {
    host = nf++;
  }
  // Extra faces for visible free loops.
  std::vector<int> loop_face(d.num_arcs(), -1);
  for (int a = 0; a < d.num_arcs(); ++a)
    if (d.arc(a).free_loop() && !hidden_[a]) loop_face[a] = nf++;

  UF uf(nf);
  auto comp = port_components(d);
  std::vector<std::vector<int>> darts_of(n + 1);
  auto node = [&](const Port& p) { return p.kind == Port::Cross ? p.index : n; };
  for (int a = 0; a < d.num_arcs(); ++a) {
    if (d.arc(a).free_loop()) continue;
    int k = comp[node(d.arc(a).from)];
    darts_of[k].push_back(2 * a);
    darts_of[k].push_back(2 * a + 1);
  }
  for (int k = 0; k < n; ++k) {
    if (comp[k] != k || (d.wall_points() > 0 && comp[n] == k)) continue;
    // A floating piece: its largest face is the outer one.
    std::vector<std::pair<int, int>> cnt;  // (face, count)
    for (int x : darts_of[k]) {
      int f = dart_face_[x];
      auto it = std::find_if(cnt.begin(), cnt.end(), [&](auto& e) { return e.first == f; });
      if (it == cnt.end())
        cnt.push_back({f, 1});
      else
        it->second++;
    }
    int best = -1, best_n = -1, best_dart = 1 << 30;
    for (auto [f, c] : cnt) {
      int first = *std::min_element(darts_of[k].begin(), darts_of[k].end(),
                                    [&](int x, int y) { return (dart_face_[x] == f ? x : 1 << 30) <
                                                               (dart_face_[y] == f ? y : 1 << 30); });
      if (c > best_n || (c == best_n && first < best_dart)) best = f, best_n = c, best_dart = first;
    }
    uf.unite(best, host);
  }
  for (int a = 0; a < d.num_arcs(); ++a) {
    if (loop_face[a] < 0) continue;
    dart_face_[2 * a] = loop_face[a];
    dart_face_[2 * a + 1] = host;
  }
  std::vector<int> relabel(nf, -1);
  num_faces_ = 0;
  for (int f = 0; f < nf; ++f) {
    int r = uf.find(f);
    if (relabel[r] < 0) relabel[r] = num_faces_++;
    relabel[f] = relabel[r];
  }
  for (int& f : dart_face_)
    if (f >= 0) f = relabel[f];
  host_ = relabel[host];
}

CircleOrientation Geometry::dividing_orientation(const Resolution& res, const DividingChoice& choice) const {
  const ProjDiagram& d = d_;
  Darts D(d);
  const int n = d.num_crossings(), m = d.m(), F = num_faces_;
  UF cells(F);
  for (int c = 0; c < n; ++c) {
    auto arr = [&](int s) { return dart_face_[D.out_slot(c, s) ^ 1]; };
    if (((res.vertex >> c) & 1) == 0)
      cells.unite(arr(2), arr(0));
    else
      cells.unite(arr(1), arr(3));
  }
  auto cell_of_dart = [&](int x) { return cells.find(dart_face_[x]); };
  const int E = res.essential_index();
  const int dirsign = choice.direction >= 0 ? 1 : -1;

  struct Edge {
    int to;
    bool flip;
    int circle;  // -1 for a wall edge
  };
  int num_nodes = F;
  std::vector<int8_t> dart_side(D.total(), 0);  // split cells: 1 = P1, 2 = P2
  std::vector<int> split_index(F, -1);
  std::vector<std::vector<Edge>> adj;
  auto node_of = [&](int x) {
    int X = cell_of_dart(x);
    if (split_index[X] < 0) return X;
    return F + 2 * split_index[X] + (dart_side[x] == 1 ? 0 : 1);
  };
  auto add_edge = [&](int a, int b, bool flip, int circle) {
    adj[a].push_back({b, flip, circle});
    adj[b].push_back({a, flip, circle});
  };
  std::vector<int> sources;
  int start = -1;

  if (E < 0 && m > 0) {
    // Class 0 with wall points: locate the region carrying an essential curve.
    std::vector<std::vector<int>> rb;
    std::vector<int> cell_rb(F, -1);
    std::vector<char> seen(D.total(), 0);
    for (int p = 0; p < 2 * m; ++p) {
      int x0 = D.fwd(p);
      if (seen[x0]) continue;
      std::vector<int> cyc;
      int x = x0;
      do {
        seen[x] = 1;
        cyc.push_back(x);
        x = D.next(x, static_cast<int64_t>(res.vertex));
      } while (x != x0);
      cell_rb[cell_of_dart(x0)] = static_cast<int>(rb.size());
      rb.push_back(std::move(cyc));
    }
    struct WEdge {
      int to, mine, theirs;
    };
    std::vector<std::vector<WEdge>> wadj(F);
    std::vector<int> touching;
    for (int p = 0; p < 2 * m; ++p) {
      int X = cell_of_dart(D.fwd(p)), Y = cell_of_dart(D.fwd(p + m));
      wadj[X].push_back({Y, p, (p + m) % (2 * m)});
      touching.push_back(X);
    }
    std::sort(touching.begin(), touching.end());
    touching.erase(std::unique(touching.begin(), touching.end()), touching.end());

    struct Conflict {
      int x = -1, y = -1, qx = -1, qy = -1;
    };
    std::vector<int> color(F, -1), parent(F, -1), pq(F, -1), cq(F, -1);
    auto bfs = [&](int root, std::vector<int>* members) {
      Conflict cf;
      std::deque<int> q{root};
      color[root] = 0;
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (members) members->push_back(x);
        for (auto& e : wadj[x]) {
          if (color[e.to] < 0) {
            color[e.to] = 1 - color[x];
            parent[e.to] = x, pq[e.to] = e.mine, cq[e.to] = e.theirs;
            q.push_back(e.to);
          } else if (color[e.to] == color[x] && cf.x < 0) {
            cf = {x, e.to, e.mine, e.theirs};
          }
        }
      }
      return cf;
    };
    std::vector<int> region;
    for (int X : touching) {
      if (color[X] >= 0) continue;
      std::vector<int> members;
      Conflict cf = bfs(X, &members);
      if (cf.x >= 0) {
        if (!region.empty()) throw DiagramError("invalid dividing region");
        region = members;
      }
    }
    if (region.empty()) throw DiagramError("invalid dividing region");
    std::sort(region.begin(), region.end());
    int root = region[static_cast<size_t>(std::abs(choice.variant)) % region.size()];
    for (int X : region) color[X] = -1, parent[X] = -1;
    Conflict cf = bfs(root, nullptr);

    auto path_up = [&](int x) {
      std::vector<int> path{x};
      while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;  // root .. x
    };
    auto px = path_up(cf.x), py = path_up(cf.y);
    size_t l = 0;
    while (l + 1 < px.size() && l + 1 < py.size() && px[l + 1] == py[l + 1]) ++l;
    // Cycle nodes and transitions (exit interval of node i, entry interval of node i+1).
    std::vector<int> cyc_nodes;
    std::vector<std::pair<int, int>> trans;
    for (size_t i = l; i < px.size(); ++i) {
      cyc_nodes.push_back(px[i]);
      if (i + 1 < px.size()) trans.push_back({pq[px[i + 1]], cq[px[i + 1]]});
    }
    trans.push_back({cf.qx, cf.qy});
    for (size_t i = py.size() - 1; i > l; --i) {
      cyc_nodes.push_back(py[i]);
      trans.push_back({cq[py[i]], pq[py[i]]});
    }
    const int L = static_cast<int>(cyc_nodes.size());
    std::vector<int> entry(L), exit(L);
    for (int i = 0; i < L; ++i) {
      exit[i] = trans[i].first;
      entry[(i + 1) % L] = trans[i].second;
    }
    for (int i = 0; i < L; ++i) {
      int X = cyc_nodes[i];
      split_index[X] = i;
      const auto& cyc = rb[cell_rb[X]];
      int ia = static_cast<int>(std::find(cyc.begin(), cyc.end(), D.fwd(entry[i])) - cyc.begin());
      int ib = static_cast<int>(std::find(cyc.begin(), cyc.end(), D.fwd(exit[i])) - cyc.begin());
      const int len = static_cast<int>(cyc.size());
      for (int k = (ia + 1) % len; k != ib; k = (k + 1) % len) dart_side[cyc[k]] = 1;
      for (int k = (ib + 1) % len; k != ia; k = (k + 1) % len) dart_side[cyc[k]] = 2;
    }
    num_nodes = F + 2 * L;
    adj.assign(num_nodes, {});
    auto sub = [&](int i, int side) { return F + 2 * i + (side == 1 ? 0 : 1); };
    std::vector<char> crossed(2 * m, 0);
    for (int i = 0; i < L; ++i) {
      int j = (i + 1) % L;
      crossed[exit[i]] = crossed[entry[j]] = 1;
      add_edge(sub(i, 1), sub(j, 2), true, -1);
      add_edge(sub(i, 2), sub(j, 1), true, -1);
    }
    for (int p = 0; p < m; ++p)
      if (!crossed[p]) add_edge(node_of(D.fwd(p)), node_of(D.fwd(p + m)), true, -1);
    for (int i = 0; i < L; ++i) sources.push_back(sub(i, 1)), sources.push_back(sub(i, 2));
    start = sub(0, 2);
  } else {
    adj.assign(num_nodes, {});
    for (int p = 0; p < m; ++p) add_edge(node_of(D.fwd(p)), node_of(D.fwd(p + m)), true, -1);
  }

  for (int k = 0; k < res.size(); ++k) {
    const Circle& C = res.circles[k];
    for (size_t i = 0; i < C.arcs.size(); ++i) {
      int x = 2 * C.arcs[i] + (C.dirs[i] > 0 ? 0 : 1);
      add_edge(node_of(x), node_of(x ^ 1), false, k);
    }
  }

  CircleOrientation out;
  out.dir.assign(res.size(), 1);
  out.distance.assign(res.size(), 0);
  int oE = 0;
  if (E >= 0) {
    const Circle& C = res.circles[E];
    int pmin = 1 << 30, apmin = -1;
    for (int a : C.arcs)
      for (const Port& p : {d.arc(a).from, d.arc(a).to})
        if (p.kind == Port::Wall && p.index < pmin) pmin = p.index, apmin = a;
    bool arrives = (d.arc(apmin).to == Port::wall(pmin)) == (res.arc_dir[apmin] > 0);
    oE = (arrives ? 1 : -1) * dirsign;
    out.dir[E] = static_cast<int8_t>(oE);
    int x0 = 2 * C.arcs[0];
    start = node_of(oE > 0 ? x0 : x0 ^ 1);
    for (size_t i = 0; i < C.arcs.size(); ++i) {
      int x = 2 * C.arcs[i] + (C.dirs[i] > 0 ? 0 : 1);
      sources.push_back(node_of(x));
      sources.push_back(node_of(x ^ 1));
    }
  } else if (m == 0) {
    start = cells.find(host_);
    sources.push_back(start);
  }

  // Orientation of the disk relative to the model, per node.
  std::vector<int> sgn(num_nodes, 0);
  {
    std::deque<int> q{start};
    sgn[start] = dirsign;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& e : adj[x]) {
        if (E >= 0 && e.circle == E) continue;
        int s = e.flip ? -sgn[x] : sgn[x];
        if (sgn[e.to] == 0) {
          sgn[e.to] = s;
          q.push_back(e.to);
        } else if (sgn[e.to] != s) {
          throw DiagramError("dividing orientation: inconsistent disk orientation");
        }
      }
    }
  }
  // 0-1 BFS: crossing a circle other than the dividing one costs 1.
  std::vector<int> dist(num_nodes, 1 << 29);
  {
    std::deque<int> q;
    for (int s : sources) {
      if (dist[s] != 0) q.push_back(s);
      dist[s] = 0;
    }
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& e : adj[x]) {
        int w = (e.circle < 0 || e.circle == E) ? 0 : 1;
        if (dist[x] + w < dist[e.to]) {
          dist[e.to] = dist[x] + w;
          if (w == 0)
            q.push_front(e.to);
          else
            q.push_back(e.to);
        }
      }
    }
  }
  std::vector<char> is_source(num_nodes, 0);
  for (int s : sources) is_source[s] = 1;
  std::vector<int> mark(num_nodes, -1);
  for (int k = 0; k < res.size(); ++k) {
    if (k == E) continue;
    const Circle& C = res.circles[k];
    int best = 1 << 29;
    for (size_t i = 0; i < C.arcs.size(); ++i) {
      int x = 2 * C.arcs[i] + (C.dirs[i] > 0 ? 0 : 1);
      best = std::min({best, dist[node_of(x)], dist[node_of(x ^ 1)]});
    }
    out.distance[k] = best + 1;
    int left = node_of(2 * C.arcs[0]);
    // Is the left side the Moebius side, i.e. can it reach the dividing curve without crossing C?
    bool mobius = false;
    std::deque<int> q{left};
    mark[left] = k;
    while (!q.empty() && !mobius) {
      int x = q.front();
      q.pop_front();
      if (is_source[x]) mobius = true;
      for (auto& e : adj[x])
        if (e.circle != k && mark[e.to] != k) mark[e.to] = k, q.push_back(e.to);
    }
    bool ccw = (sgn[left] == 1) == !mobius;
    bool want_ccw = out.distance[k] % 2 == 0;
    out.dir[k] = ccw == want_ccw ? 1 : -1;
  }
  return out;
}

OrientedResolution oriented_resolution(const DiagramView& view) {
  const ProjDiagram& d = view.diagram;
  uint64_t v = 0;
  for (int c = 0; c < d.num_crossings(); ++c) {
    int r = view.fixed[c] >= 0 ? view.fixed[c] : (view.sign(c) > 0 ? 0 : 1);
    if (r) v |= uint64_t{1} << c;
  }
  OrientedResolution out{v, resolve(d, v, view.hidden), {}};
  out.induced.provenance = CircleOrientation::Induced;
  for (const Circle& C : out.res.circles) {
    int o = view.arc_dir[C.min_arc];
    for (size_t i = 0; i < C.arcs.size(); ++i)
      if (C.dirs[i] * o != view.arc_dir[C.arcs[i]])
        throw DiagramError("orientation does not induce an orientation of the resolution");
    out.induced.dir.push_back(static_cast<int8_t>(o));
  }
  out.induced.distance.assign(out.res.size(), 0);
  return out;
}

}  // namespace rpkh
