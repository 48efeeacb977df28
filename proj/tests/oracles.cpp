#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

using rpkh::Arc;
using rpkh::Port;
using rpkh::ProjDiagram;

namespace oracle {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

// Raw port tables built from the arc list only.
struct Ports {
  std::map<std::pair<int, int>, int> at_slot;  // (crossing, slot) -> arc
  std::map<std::pair<int, int>, bool> incoming;
  std::map<int, int> at_wall;
  explicit Ports(const ProjDiagram& d) {
    const auto& arcs = d.arcs();
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
      for (int end = 0; end < 2; ++end) {
        const Port& p = end ? arcs[a].to : arcs[a].from;
        if (p.kind == Port::Cross) {
          at_slot[{p.index, p.slot}] = a;
          incoming[{p.index, p.slot}] = end == 1;
        } else if (p.kind == Port::Wall) {
          at_wall[p.index] = a;
        }
      }
    }
  }
  int sign(int c) const {
    // over strand enters at slot 3 for a positive crossing
    return incoming.at({c, 3}) ? 1 : -1;
  }
  // Pairs for the 0-smoothing: the oriented one at positive crossings.
  std::array<std::pair<int, int>, 2> smoothing(int c, int r) const {
    int over_in = incoming.at({c, 1}) ? 1 : 3;
    std::array<std::pair<int, int>, 2> oriented{{{0, over_in == 1 ? 3 : 1}, {over_in, 2}}};
    std::array<std::pair<int, int>, 2> other{{{0, over_in}, {over_in == 1 ? 3 : 1, 2}}};
    bool zero_is_oriented = sign(c) > 0;
    return (r == 0) == zero_is_oriented ? oriented : other;
  }
};

struct Circles {
  std::vector<int> arc_circle;
  int count = 0;
  std::vector<int> wall_pairs;  // per circle
};

Circles trace(const ProjDiagram& d, const Ports& P, const std::function<std::array<std::pair<int, int>, 2>(int)>& pairs) {
  const int A = d.num_arcs();
  Dsu u(A);
  for (int c = 0; c < d.num_crossings(); ++c)
    for (auto [s, t] : pairs(c)) u.join(P.at_slot.at({c, s}), P.at_slot.at({c, t}));
  const int m = d.wall_points() / 2;
  for (int p = 0; p < m; ++p) u.join(P.at_wall.at(p), P.at_wall.at(p + m));
  Circles out;
  out.arc_circle.assign(A, -1);
  std::map<int, int> id;
  for (int a = 0; a < A; ++a) {
    int r = u.find(a);
    auto it = id.find(r);
    if (it == id.end()) it = id.emplace(r, out.count++).first;
    out.arc_circle[a] = it->second;
  }
  out.wall_pairs.assign(out.count, 0);
  for (int p = 0; p < m; ++p) out.wall_pairs[out.arc_circle[P.at_wall.at(p)]]++;
  return out;
}

}  // namespace

CircleCount count_circles(const ProjDiagram& d, uint64_t vertex) {
  Ports P(d);
  auto c = trace(d, P, [&](int x) { return P.smoothing(x, (vertex >> x) & 1); });
  CircleCount cc{c.count, 0};
  for (int w : c.wall_pairs) cc.essential += w % 2;
  return cc;
}

int oriented_circles(const ProjDiagram& d) {
  Ports P(d);
  return trace(d, P, [&](int x) { return P.smoothing(x, P.sign(x) > 0 ? 0 : 1); }).count;
}

rpkh::LaurentPoly skein_jones(const ProjDiagram& d) {
  using rpkh::LaurentPoly;
  const int n = d.num_crossings();
  Ports P(d);
  // bracket in A, accumulated as map exponent -> coefficient
  std::map<int, long> br;
  for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
    int k = trace(d, P, [&](int x) { return P.smoothing(x, (v >> x) & 1); }).count;
    int ones = std::popcount(v);
    // (-A^2 - A^-2)^(k-1) expanded binomially
    std::map<int, long> delta{{0, 1}};
    for (int i = 1; i < k; ++i) {
      std::map<int, long> next;
      for (auto [e, c] : delta) next[e + 2] -= c, next[e - 2] -= c;
      delta = next;
    }
    for (auto [e, c] : delta) br[e + (n - ones) - ones] += c;
  }
  int w = 0;
  for (int c = 0; c < n; ++c) w += P.sign(c);
  LaurentPoly j;
  for (auto [e, c] : br) {
    if (!c) continue;
    int ex = e - 3 * w;  // times (-A^3)^-w
    long coeff = (w % 2) ? -c : c;
    if (ex % 2) throw std::logic_error("odd power of A");
    // A^ex with q = -A^-2
    j.add(-ex / 2, (ex / 2) % 2 ? -coeff : coeff);
  }
  return j;
}

int dense_rank(std::vector<std::vector<mpq_class>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      mpq_class f = rows[r][c] / rows[rank][c];
      for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

namespace {

// Null space basis of M (rows x cols), as vectors of length cols.
std::vector<std::vector<mpq_class>> null_space(std::vector<std::vector<mpq_class>> M, size_t cols) {
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < M.size(); ++c) {
    size_t p = r;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[r], M[p]);
    mpq_class inv = 1 / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      mpq_class f = M[i][c];
      for (size_t k = 0; k < cols; ++k) M[i][k] -= f * M[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<char> is_piv(cols, 0);
  for (int c : pivot_col) is_piv[c] = 1;
  std::vector<std::vector<mpq_class>> out;
  for (size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<mpq_class> v(cols);
    v[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][f];
    out.push_back(v);
  }
  return out;
}

// Planar cube with standard signs.
struct Classical {
  int n = 0, n_plus = 0, n_minus = 0;
  std::vector<Circles> res;  // per vertex
  struct Gen {
    uint64_t v;
    uint32_t lab;  // bit = x
    int i, j;
  };
  std::vector<Gen> gens;
  std::map<std::pair<uint64_t, uint32_t>, int> index;

  explicit Classical(const ProjDiagram& d) {
    if (d.wall_points() != 0) throw std::invalid_argument("classical oracle is planar only");
    n = d.num_crossings();
    Ports P(d);
    for (int c = 0; c < n; ++c) (P.sign(c) > 0 ? n_plus : n_minus)++;
    for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
      res.push_back(trace(d, P, [&](int x) { return P.smoothing(x, (v >> x) & 1); }));
      const int k = res.back().count;
      for (uint32_t lab = 0; lab < (uint32_t{1} << k); ++lab) {
        int r = std::popcount(v);
        int j = (k - 2 * std::popcount(lab)) + r + n_plus - 2 * n_minus;
        index[{v, lab}] = static_cast<int>(gens.size());
        gens.push_back({v, lab, r - n_minus, j});
      }
    }
  }

  // Entries (target gen, coefficient) of d applied to generator g.
  std::vector<std::pair<int, int>> apply(int g, int t) const {
    std::vector<std::pair<int, int>> out;
    const Gen& G = gens[g];
    const Circles& cu = res[G.v];
    for (int i = 0; i < n; ++i) {
      if ((G.v >> i) & 1) continue;
      const uint64_t w = G.v | (uint64_t{1} << i);
      const Circles& cw = res[w];
      const int sign = std::popcount(G.v & ((uint64_t{1} << i) - 1)) % 2 ? -1 : 1;
      // circle correspondence through shared arcs
      std::vector<std::set<int>> to(cu.count);
      for (size_t a = 0; a < cu.arc_circle.size(); ++a) to[cu.arc_circle[a]].insert(cw.arc_circle[a]);
      std::vector<std::set<int>> from(cw.count);
      for (size_t a = 0; a < cu.arc_circle.size(); ++a) from[cw.arc_circle[a]].insert(cu.arc_circle[a]);
      uint32_t base = 0;
      std::vector<int> touched_u, touched_w;
      for (int c = 0; c < cu.count; ++c) {
        int img = *to[c].begin();
        if (to[c].size() == 1 && from[img].size() == 1) {
          if ((G.lab >> c) & 1) base |= uint32_t{1} << img;
        } else {
          touched_u.push_back(c);
        }
      }
      for (int c = 0; c < cw.count; ++c)
        if (!(from[c].size() == 1 && to[*from[c].begin()].size() == 1)) touched_w.push_back(c);
      auto emit = [&](uint32_t lab, int coeff) {
        if (coeff) out.push_back({index.at({w, lab}), sign * coeff});
      };
      if (touched_u.size() == 2 && touched_w.size() == 1) {
        int a = (G.lab >> touched_u[0]) & 1, b = (G.lab >> touched_u[1]) & 1;
        uint32_t X = uint32_t{1} << touched_w[0];
        if (!a && !b) emit(base, 1);
        else if (a != b) emit(base | X, 1);
        else emit(base, t);
      } else if (touched_u.size() == 1 && touched_w.size() == 2) {
        int a = (G.lab >> touched_u[0]) & 1;
        uint32_t X1 = uint32_t{1} << touched_w[0], X2 = uint32_t{1} << touched_w[1];
        if (!a) {
          emit(base | X1, 1);
          emit(base | X2, 1);
        } else {
          emit(base | X1 | X2, 1);
          emit(base, t);
        }
      } else {
        throw std::logic_error("unexpected bifurcation in a planar diagram");
      }
    }
    return out;
  }

  std::vector<int> in_degree(int i) const {
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
      if (gens[g].i == i) out.push_back(g);
    return out;
  }

  // Dense matrix of d: C^i -> C^{i+1}, restricted to the given column gens.
  std::vector<std::vector<mpq_class>> matrix(const std::vector<int>& cols, const std::vector<int>& rows, int t) const {
    std::map<int, int> row_pos;
    for (size_t r = 0; r < rows.size(); ++r) row_pos[rows[r]] = static_cast<int>(r);
    std::vector<std::vector<mpq_class>> M(rows.size(), std::vector<mpq_class>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      for (auto [g, v] : apply(cols[c], t)) M[row_pos.at(g)][c] += v;
    return M;
  }
};

}  // namespace

std::map<std::pair<int, int>, int> classical_kh(const ProjDiagram& d) {
  Classical C(d);
  std::map<std::pair<int, int>, int> out;
  const int lo = -C.n_minus, hi = C.n - C.n_minus;
  // rank of d restricted to a j block, per degree
  std::map<std::pair<int, int>, int> rank_out;
  std::map<std::pair<int, int>, int> count;
  for (auto& g : C.gens) count[{g.i, g.j}]++;
  for (int i = lo; i < hi; ++i) {
    std::map<int, std::vector<int>> cols, rows;
    for (int g : C.in_degree(i)) cols[C.gens[g].j].push_back(g);
    for (int g : C.in_degree(i + 1)) rows[C.gens[g].j].push_back(g);
    for (auto& [j, cs] : cols) {
      if (!rows.count(j)) continue;
      rank_out[{i, j}] = dense_rank(C.matrix(cs, rows[j], 0));
    }
  }
  for (auto& [key, n] : count) {
    int r = n - rank_out[key] - rank_out[{key.first - 1, key.second}];
    if (r) out[key] = r;
  }
  return out;
}

int classical_s(const ProjDiagram& d) {
  if (d.components() != 1) throw std::invalid_argument("classical s oracle handles knots only");
  Classical C(d);
  auto c0 = C.in_degree(0), cm = C.in_degree(-1), c1 = C.in_degree(1);
  auto B = C.matrix(cm, c0, 1);  // columns are boundaries in C^0
  std::vector<std::vector<mpq_class>> brows;
  for (size_t c = 0; c < cm.size(); ++c) {
    std::vector<mpq_class> v(c0.size());
    for (size_t r = 0; r < c0.size(); ++r) v[r] = B[r][c];
    brows.push_back(v);
  }
  const int rb = dense_rank(brows);
  std::set<int> levels;
  for (int g : c0) levels.insert(C.gens[g].j);
  int s_min = 0;
  bool found = false;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    const int l = *it;
    std::vector<int> sub;
    std::vector<size_t> where;
    for (size_t p = 0; p < c0.size(); ++p)
      if (C.gens[c0[p]].j >= l) sub.push_back(c0[p]), where.push_back(p);
    auto D = C.matrix(sub, c1, 1);
    auto ker = null_space(D, sub.size());
    auto rows = brows;
    for (auto& k : ker) {
      std::vector<mpq_class> v(c0.size());
      for (size_t q = 0; q < sub.size(); ++q) v[where[q]] = k[q];
      rows.push_back(v);
    }
    if (dense_rank(rows) - rb == 2) {
      s_min = l;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("Lee homology of a knot should be two-dimensional");
  return s_min + 1;
}

mpq_class dense_level(const rpkh::Complex& cx, int degree, const mpq_class& tau, const rpkh::SparseVec<mpq_class>& z) {
  const int n = cx.dim(degree);
  std::vector<mpq_class> lev(n);
  for (int g = 0; g < n; ++g) {
    auto gi = cx.generator(degree, g);
    lev[g] = gi.j - tau * gi.k;
  }
  auto d = cx.differential_q(degree - 1, rpkh::CoeffSpec::lee());
  std::set<mpq_class> cand(lev.begin(), lev.end());
  for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
    // kill coordinates of level >= l, then test membership in the image
    auto project = [&](const rpkh::SparseVec<mpq_class>& v) {
      std::vector<mpq_class> out(n);
      for (auto& [g, x] : v)
        if (lev[g] < *it) out[g] = x;
      return out;
    };
    std::vector<std::vector<mpq_class>> rows;
    for (auto& col : d.col) rows.push_back(project(col));
    const int r0 = dense_rank(rows);
    rows.push_back(project(z));
    if (dense_rank(rows) == r0) return *it;
  }
  throw std::domain_error("class is zero or below every level");
}

}  // namespace oracle
