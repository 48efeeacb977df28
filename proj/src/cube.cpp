#include "rpkh/cube.hpp"

#include <bit>
#include <map>
#include <random>
#include <sstream>

namespace rpkh {

mpz_class CoeffSpec::eval(const Monomial& mo) const {
  if (ring == Polynomials) throw std::logic_error("symbolic coefficients have no numeric value");
  mpz_class s_pow, t_pow;
  mpz_pow_ui(s_pow.get_mpz_t(), mpz_class(s).get_mpz_t(), mo.a);
  mpz_pow_ui(t_pow.get_mpz_t(), mpz_class(t).get_mpz_t(), mo.b);
  return mo.sign * s_pow * t_pow;
}

int permutation_sign(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = perm[j]) seen[j] = 1, ++len;
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

VertexChoice ResolutionChoices::at(const Resolution& res, const Geometry& geo) const {
  const int k = res.size();
  VertexChoice ch;
  ch.order.resize(k);
  for (int i = 0; i < k; ++i) ch.order[i] = i;
  std::mt19937_64 rng(seed ^ (res.vertex * 0x9E3779B97F4A7C15ULL) ^ 0x5851F42D4C957F2DULL);
  if (order == Reversed) {
    std::reverse(ch.order.begin(), ch.order.end());
  } else if (order == RandomOrder) {
    for (int i = k - 1; i > 0; --i) std::swap(ch.order[i], ch.order[rng() % (i + 1)]);
  }
  ch.pos.resize(k);
  for (int i = 0; i < k; ++i) ch.pos[ch.order[i]] = i;
  if (orient == Dividing) {
    ch.orient = geo.dividing_orientation(res, dividing).dir;
  } else if (orient == Traversal) {
    ch.orient.assign(k, 1);
  } else {
    ch.orient.resize(k);
    for (auto& o : ch.orient) o = (rng() >> 7) & 1 ? 1 : -1;
  }
  return ch;
}

Complex::Complex(DiagramView view, ResolutionChoices choices)
    : view_(std::move(view)),
      choices_(choices),
      geo_(view_.diagram, view_.hidden),
      free_(view_.free_crossings()),
      n_plus_(view_.n_plus()),
      n_minus_(view_.n_minus()) {
  if (n_free() > 24) throw std::invalid_argument("too many crossings for a full cube");
  cache_.resize(size_t{1} << n_free());
  vertex_offset_.assign(size_t{1} << n_free(), -1);
  layouts_.resize(n_free() + 1);
}

const Complex::VertexData& Complex::data(uint64_t fm) const {
  auto& slot = cache_[fm];
  if (!slot) {
    auto vd = std::make_unique<VertexData>();
    vd->res = resolve(view_.diagram, full_vertex(fm), view_.hidden);
    vd->ch = choices_.at(vd->res, geo_);
    slot = std::move(vd);
  }
  return *slot;
}

const Resolution& Complex::resolution(uint64_t fm) const { return data(fm).res; }
const VertexChoice& Complex::choice(uint64_t fm) const { return data(fm).ch; }

int Complex::degree_of(uint64_t fm) const { return std::popcount(fm) - n_minus_; }

const Complex::Layout& Complex::layout(int i) const {
  static const Layout empty{{}, {0}};
  const int w = i + n_minus_;
  if (w < 0 || w > n_free()) return empty;
  auto& slot = layouts_[w];
  if (!slot) {
    auto L = std::make_unique<Layout>();
    L->offsets.push_back(0);
    for (uint64_t fm = 0; fm < (uint64_t{1} << n_free()); ++fm) {
      if (std::popcount(fm) != w) continue;
      vertex_offset_[fm] = L->offsets.back();
      L->verts.push_back(fm);
      L->offsets.push_back(L->offsets.back() + (1 << resolution(fm).size()));
    }
    slot = std::move(L);
  }
  return *slot;
}

int Complex::dim(int i) const { return layout(i).offsets.back(); }
const std::vector<uint64_t>& Complex::vertices(int i) const { return layout(i).verts; }

GenInfo Complex::grading(uint64_t fm, uint32_t labels) const {
  const Resolution& r = resolution(fm);
  const int w = std::popcount(fm);
  GenInfo g{fm, labels, w - n_minus_, w + n_plus_ - 2 * n_minus_ + r.size() - 2 * std::popcount(labels), 0};
  int e = r.essential_index();
  if (e >= 0) g.k = ((labels >> e) & 1) ? -1 : 1;
  return g;
}

GenInfo Complex::generator(int i, int idx) const {
  const Layout& L = layout(i);
  auto it = std::upper_bound(L.offsets.begin(), L.offsets.end(), idx) - 1;
  size_t vi = it - L.offsets.begin();
  return grading(L.verts[vi], static_cast<uint32_t>(idx - *it));
}

int Complex::index_of(uint64_t fm, uint32_t labels) const {
  layout(degree_of(fm));
  return vertex_offset_[fm] + static_cast<int>(labels);
}

namespace {

struct Near {
  int first = -1, second = -1;  // second == -1: a single near circle
  bool cons_first = true, cons_second = true;
};

Near near_circles(const ProjDiagram& d, const Resolution& res, const VertexChoice& ch, int c, int r) {
  const int rc = d.compass(c);
  const int s_nw = (NW - rc + 4) % 4;
  int p1[2], p2[2];
  if (r == 0) {
    p1[0] = 0, p1[1] = 1, p2[0] = 2, p2[1] = 3;
  } else {
    p1[0] = 0, p1[1] = 3, p2[0] = 1, p2[1] = 2;
  }
  if (p2[0] == s_nw || p2[1] == s_nw) std::swap(p1, p2);
  // Each smoothing arc holds exactly one of NE, SW (odd compass positions).
  auto marked = [&](int* p) { return ((p[0] + rc) % 4) % 2 == 1 ? p[0] : p[1]; };
  auto consistent = [&](int k, int slot) { return res.exits(d, c, slot) != (ch.orient[k] < 0); };
  Near n;
  n.first = res.circle_at(d, c, p1[0]);
  n.cons_first = consistent(n.first, marked(p1));
  int other = res.circle_at(d, c, p2[0]);
  if (other != n.first) {
    n.second = other;
    n.cons_second = consistent(other, marked(p2));
  }
  return n;
}

// Sign of the rearrangement of `ch.order` into `target`.
int rearrangement_sign(const VertexChoice& ch, const std::vector<int>& target) {
  int inv = 0;
  for (size_t i = 0; i < target.size(); ++i)
    for (size_t j = i + 1; j < target.size(); ++j) inv += ch.pos[target[i]] > ch.pos[target[j]];
  return inv % 2 ? -1 : 1;
}

struct EdgeCtx {
  const Resolution *ru, *rv;
  const VertexChoice *cu, *cv;
  Near nu, nv;
  int sign_p;
  std::vector<std::pair<int, int>> far;  // (index at u, index at v)
  std::vector<char> far_flip;
};

}  // namespace

Bifurcation Complex::bifurcation(uint64_t fm, int f) const {
  return classify_bifurcation(view_.diagram, resolution(fm), resolution(fm | (uint64_t{1} << f)), free_[f]);
}

static EdgeCtx edge_context(const Complex& cx, uint64_t fm, int f) {
  const ProjDiagram& d = cx.diagram();
  const int c = cx.free_crossing(f);
  const uint64_t gm = fm | (uint64_t{1} << f);
  EdgeCtx e;
  e.ru = &cx.resolution(fm);
  e.rv = &cx.resolution(gm);
  e.cu = &cx.choice(fm);
  e.cv = &cx.choice(gm);
  e.nu = near_circles(d, *e.ru, *e.cu, c, 0);
  e.nv = near_circles(d, *e.rv, *e.cv, c, 1);
  // Near circles first; far circles keep the order they have at the source on both sides.
  std::vector<int> tu{e.nu.first}, tv{e.nv.first};
  if (e.nu.second >= 0) tu.push_back(e.nu.second);
  if (e.nv.second >= 0) tv.push_back(e.nv.second);
  for (int k : e.cu->order) {
    if (k == e.nu.first || k == e.nu.second) continue;
    int kv = e.rv->arc_circle[e.ru->circles[k].min_arc];
    e.far.push_back({k, kv});
    e.far_flip.push_back(e.cu->orient[k] != e.cv->orient[kv]);
    tu.push_back(k);
    tv.push_back(kv);
  }
  e.sign_p = rearrangement_sign(*e.cu, tu) * rearrangement_sign(*e.cv, tv);
  return e;
}

static int sign_o(const EdgeCtx& e, uint32_t g) {
  int s = 1;
  for (size_t i = 0; i < e.far.size(); ++i)
    if (e.far_flip[i] && ((g >> e.far[i].first) & 1)) s = -s;
  return s;
}

static int sign_c(const EdgeCtx& e, uint32_t g, uint32_t h) {
  int s = 1;
  auto count = [&](const Near& n, uint32_t lab) {
    if (!n.cons_first && ((lab >> n.first) & 1)) s = -s;
    if (n.second >= 0 && !n.cons_second && ((lab >> n.second) & 1)) s = -s;
  };
  count(e.nu, g);
  count(e.nv, h);
  return s;
}

SignFactors Complex::edge_sign_factors(uint64_t fm, int f, uint32_t g, uint32_t h) const {
  EdgeCtx e = edge_context(*this, fm, f);
  return {e.sign_p, sign_o(e, g), sign_c(e, g, h)};
}

std::vector<EdgeTerm> Complex::edge_map(uint64_t fm, int f) const {
  EdgeCtx e = edge_context(*this, fm, f);
  std::vector<EdgeTerm> out;
  const bool merge = e.nu.second >= 0 && e.nv.second < 0;
  const bool split = e.nu.second < 0 && e.nv.second >= 0;
  if (!merge && !split) return out;  // 1-1 bifurcation
  const int ku = e.ru->size();
  for (uint32_t g = 0; g < (uint32_t{1} << ku); ++g) {
    uint32_t base = 0;
    for (auto [a, b] : e.far)
      if ((g >> a) & 1) base |= uint32_t{1} << b;
    auto emit = [&](uint32_t h, int a, int b) {
      int sg = e.sign_p * sign_o(e, g) * sign_c(e, g, h);
      out.push_back({g, h, {sg, a, b}});
    };
    if (merge) {
      const int A = e.nu.first, B = e.nu.second, M = e.nv.first;
      const int la = (g >> A) & 1, lb = (g >> B) & 1;
      const bool ess = e.ru->circles[A].essential || e.ru->circles[B].essential;
      const uint32_t one = base, x = base | (uint32_t{1} << M);
      if (!la && !lb) {
        emit(one, 0, 0);
      } else if (la != lb) {
        if (!ess) {
          emit(x, 0, 0);
        } else {
          // essential label times trivial label
          int le = e.ru->circles[A].essential ? la : lb;
          if (le == 0)
            emit(x, 1, 0);  // 1bar * X -> s Xbar
          else
            emit(x, 0, 0);  // Xbar * 1 -> Xbar
        }
      } else {
        if (!ess)
          emit(one, 1, 1);
        else
          emit(one, 0, 1);
      }
    } else {
      const int S = e.nu.first, A = e.nv.first, B = e.nv.second;
      const int l = (g >> S) & 1;
      const uint32_t bA = uint32_t{1} << A, bB = uint32_t{1} << B;
      if (!e.ru->circles[S].essential) {
        if (!l) {
          emit(base | bB, 0, 0);
          emit(base | bA, 0, 0);
        } else {
          emit(base | bA | bB, 0, 0);
          emit(base, 1, 1);
        }
      } else {
        const uint32_t ess_bit = e.rv->circles[A].essential ? bA : bB;
        const uint32_t triv_bit = ess_bit == bA ? bB : bA;
        if (!l) {
          emit(base | triv_bit, 0, 0);  // 1bar -> (1bar, X)
          emit(base | ess_bit, 1, 0);   //       + s (Xbar, 1)
        } else {
          emit(base | ess_bit | triv_bit, 0, 0);  // Xbar -> (Xbar, X)
          emit(base, 0, 1);                       //       + t (1bar, 1)
        }
      }
    }
  }
  return out;
}

std::vector<SymEntry> Complex::differential(int i) const {
  std::vector<SymEntry> out;
  if (i < min_degree() || i >= max_degree()) return out;
  layout(i + 1);
  for (uint64_t fm : vertices(i)) {
    for (int f = 0; f < n_free(); ++f) {
      if ((fm >> f) & 1) continue;
      const uint64_t gm = fm | (uint64_t{1} << f);
      for (auto& t : edge_map(fm, f)) out.push_back({index_of(gm, t.to), index_of(fm, t.from), t.coeff});
    }
  }
  return out;
}

SparseMatrix<mpq_class> Complex::differential_q(int i, const CoeffSpec& spec) const {
  SparseMatrix<mpq_class> m(dim(i + 1), dim(i));
  for (auto& e : differential(i)) {
    mpz_class v = spec.eval(e.coeff);
    if (v != 0) m.add(e.row, e.col, mpq_class(v));
  }
  m.normalize();
  return m;
}

SparseMatrix<mpz_class> Complex::differential_z(int i, const CoeffSpec& spec) const {
  SparseMatrix<mpz_class> m(dim(i + 1), dim(i));
  for (auto& e : differential(i)) {
    mpz_class v = spec.eval(e.coeff);
    if (v != 0) m.add(e.row, e.col, v);
  }
  m.normalize();
  return m;
}

void Complex::verify_d2(const CoeffSpec& spec) const {
  for (int i = min_degree(); i + 2 <= max_degree(); ++i) {
    auto d1 = differential(i), d2 = differential(i + 1);
    std::vector<std::vector<std::pair<int, Monomial>>> by_col(dim(i + 1));
    for (auto& e : d2) by_col[e.col].push_back({e.row, e.coeff});
    std::map<std::tuple<int, int, int, int>, long> acc;  // (row, col, a, b)
    for (auto& e : d1) {
      for (auto& [r2, mo] : by_col[e.row]) {
        int a = e.coeff.a + mo.a, b = e.coeff.b + mo.b;
        long v = e.coeff.sign * mo.sign;
        if (spec.ring == CoeffSpec::Polynomials) {
          acc[{r2, e.col, a, b}] += v;
        } else {
          mpz_class val = spec.eval({static_cast<int>(v), a, b});
          acc[{r2, e.col, 0, 0}] += val.get_si();
        }
      }
    }
    for (auto& [key, v] : acc) {
      if (v == 0) continue;
      GenInfo g = generator(i, std::get<1>(key));
      std::ostringstream os;
      os << "d^2 != 0 at degree " << i << ", vertex " << g.vertex << ", labels " << g.labels;
      throw D2Error(os.str());
    }
  }
}

std::shared_ptr<const Complex> build_complex(const DiagramView& view, const ResolutionChoices& choices,
                                             const CoeffSpec& spec, bool force_verify) {
  auto cx = std::make_shared<Complex>(view, choices);
  if (force_verify || cx->n_free() <= 10) cx->verify_d2(spec);
  return cx;
}

int change_choices_sign(const VertexChoice& from, const VertexChoice& to, uint32_t labels) {
  int s = permutation_sign(from.order) * permutation_sign(to.order);
  for (size_t k = 0; k < from.orient.size(); ++k)
    if (((labels >> k) & 1) && from.orient[k] != to.orient[k]) s = -s;
  return s;
}

std::vector<int> change_choices_map(const Complex& a, const Complex& b, int i) {
  std::vector<int> out(a.dim(i));
  for (int g = 0; g < a.dim(i); ++g) {
    GenInfo gi = a.generator(i, g);
    out[g] = change_choices_sign(a.choice(gi.vertex), b.choice(gi.vertex), gi.labels);
  }
  return out;
}

// Sign comparing the oriented essential circle at each vertex with one
// transported along merge and split edges, where the two circles share arcs.
static std::vector<int> essential_transport(const Complex& c) {
  const uint64_t N = uint64_t{1} << c.n_free();
  auto abs_dir = [&](uint64_t fm) {
    const Resolution& r = c.resolution(fm);
    int e = r.essential_index();
    std::vector<int8_t> out(c.diagram().num_arcs(), 0);
    const Circle& C = r.circles[e];
    for (size_t i = 0; i < C.arcs.size(); ++i) out[C.arcs[i]] = C.dirs[i] * c.choice(fm).orient[e];
    return out;
  };
  std::vector<int> eps(N, 0);
  for (uint64_t root = 0; root < N; ++root) {
    if (eps[root]) continue;
    eps[root] = 1;
    std::vector<uint64_t> stack{root};
    while (!stack.empty()) {
      uint64_t u = stack.back();
      stack.pop_back();
      auto du = abs_dir(u);
      for (int f = 0; f < c.n_free(); ++f) {
        uint64_t v = u ^ (uint64_t{1} << f);
        if (eps[v]) continue;
        if (c.bifurcation(std::min(u, v), f) == Bifurcation::OneOne) continue;
        auto dv = abs_dir(v);
        for (size_t a = 0; a < du.size(); ++a)
          if (du[a] && dv[a]) {
            eps[v] = eps[u] * du[a] * dv[a];
            break;
          }
        if (eps[v]) stack.push_back(v);
      }
    }
  }
  return eps;
}

std::vector<std::pair<int, int>> theta_map(const Complex& c, int i, const CoeffSpec& spec) {
  if (!spec.s_equals_t()) throw std::invalid_argument("s != t: Theta is not a chain map");
  std::vector<std::pair<int, int>> out(c.dim(i));
  if (c.diagram().link_class() == 0) {
    for (int g = 0; g < c.dim(i); ++g) out[g] = {g, 1};
    return out;
  }
  const auto eps = essential_transport(c);
  for (int g = 0; g < c.dim(i); ++g) {
    GenInfo gi = c.generator(i, g);
    int e = c.resolution(gi.vertex).essential_index();
    out[g] = {c.index_of(gi.vertex, gi.labels ^ (uint32_t{1} << e)), eps[gi.vertex]};
  }
  return out;
}

}  // namespace rpkh
