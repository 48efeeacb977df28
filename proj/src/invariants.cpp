#include "rpkh/invariants.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "rpkh/geometry.hpp"

namespace rpkh {

std::vector<HomologyEntry> khovanov_table(const DiagramView& view, bool integers, const ResolutionChoices& choices) {
  const CoeffSpec spec = integers ? CoeffSpec::khovanov() : CoeffSpec::khovanov_q();
  auto cx = build_complex(view, choices, spec);
  using Key = std::tuple<int, int, int>;
  std::map<Key, int> count, rank_in, rank_out;
  std::map<Key, std::vector<mpz_class>> torsion;
  const int lo = cx->min_degree(), hi = cx->max_degree();
  // Per degree: (j, k) block of each generator and its index inside the block.
  std::vector<std::vector<std::pair<int, int>>> jk(hi - lo + 1);
  std::vector<std::vector<int>> local(hi - lo + 1);
  std::vector<std::map<std::pair<int, int>, int>> block_size(hi - lo + 1);
  for (int i = lo; i <= hi; ++i) {
    for (int g = 0; g < cx->dim(i); ++g) {
      GenInfo gi = cx->generator(i, g);
      jk[i - lo].push_back({gi.j, gi.k});
      local[i - lo].push_back(block_size[i - lo][{gi.j, gi.k}]++);
      count[{i, gi.j, gi.k}]++;
    }
  }
  for (int i = lo; i < hi; ++i) {
    auto d = cx->differential_z(i, spec);
    std::map<std::pair<int, int>, SparseMatrix<mpz_class>> blocks;
    for (int c = 0; c < d.cols; ++c) {
      auto key = jk[i - lo][c];
      for (auto& [r, v] : d.col[c]) {
        if (jk[i + 1 - lo][r] != key) throw InvariantError("Khovanov differential is not homogeneous");
        auto it = blocks.find(key);
        if (it == blocks.end())
          it = blocks.emplace(key, SparseMatrix<mpz_class>(block_size[i + 1 - lo][key], block_size[i - lo][key])).first;
        it->second.add(local[i + 1 - lo][r], local[i - lo][c], v);
      }
    }
    for (auto& [key, m] : blocks) {
      m.normalize();
      int rank;
      if (integers) {
        auto f = smith_normal_form(m);
        rank = static_cast<int>(f.size());
        for (auto& x : f)
          if (x > 1) torsion[{i + 1, key.first, key.second}].push_back(x);
      } else {
        SparseMatrix<mpq_class> q(m.rows, m.cols);
        for (int c = 0; c < m.cols; ++c)
          for (auto& [r, v] : m.col[c]) q.col[c].push_back({r, mpq_class(v)});
        rank = rank_q(q);
      }
      rank_out[{i, key.first, key.second}] = rank;
      rank_in[{i + 1, key.first, key.second}] = rank;
    }
  }
  std::vector<HomologyEntry> out;
  for (auto& [key, n] : count) {
    int r = n - rank_out[key] - rank_in[key];
    auto& t = torsion[key];
    if (r == 0 && t.empty()) continue;
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), r, t});
  }
  return out;
}

int homology_dim(const Complex& cx, const CoeffSpec& spec) {
  std::map<int, int> rank;
  for (int i = cx.min_degree(); i < cx.max_degree(); ++i) rank[i] = rank_q(cx.differential_q(i, spec));
  int total = 0;
  for (int i = cx.min_degree(); i <= cx.max_degree(); ++i) total += cx.dim(i) - rank[i] - rank[i - 1];
  return total;
}

std::pair<LeeClass, LeeClass> lee_generators(const Complex& cx, const std::vector<int>& reversed) {
  OrientedResolution orr = oriented_resolution(cx.view().reoriented(reversed));
  uint64_t fm = 0;
  for (int f = 0; f < cx.n_free(); ++f)
    if ((orr.vertex >> cx.free_crossing(f)) & 1) fm |= uint64_t{1} << f;
  const VertexChoice& ch = cx.choice(fm);
  const int k = orr.res.size();
  // +1: the circle is labelled a (or abar), -1: b (or bbar).
  std::vector<int> sg(k);
  for (int c = 0; c < k; ++c) sg[c] = orr.induced.dir[c] == ch.orient[c] ? 1 : -1;
  LeeClass o{reversed, cx.degree_of(fm), {}}, ob{{}, o.degree, {}};
  for (int c = 0; c < cx.view().components(); ++c)
    if (std::find(reversed.begin(), reversed.end(), c) == reversed.end()) ob.reversed.push_back(c);
  for (uint32_t lab = 0; lab < (uint32_t{1} << k); ++lab) {
    int so = 1;
    for (int c = 0; c < k; ++c)
      if ((lab >> c) & 1) so *= sg[c];
    int sob = std::popcount(lab) % 2 ? -so : so;
    int idx = cx.index_of(fm, lab);
    o.chain.push_back({idx, mpq_class(so)});
    ob.chain.push_back({idx, mpq_class(sob)});
  }
  std::sort(o.chain.begin(), o.chain.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::sort(ob.chain.begin(), ob.chain.end(), [](auto& a, auto& b) { return a.first < b.first; });
  auto d = cx.differential_q(o.degree, CoeffSpec::lee());
  if (!mat_vec(d, o.chain).empty() || !mat_vec(d, ob.chain).empty())
    throw D2Error("Lee generator is not a cycle");
  return {o, ob};
}

bool in_adjoint_kernel(const Complex& cx, const LeeClass& z) {
  auto d = cx.differential_q(z.degree - 1, CoeffSpec::lee());
  return mat_vec(d.transpose(), z.chain).empty();
}

LeeReport lee_report(const DiagramView& view, const ResolutionChoices& choices) {
  auto cx = build_complex(view, choices, CoeffSpec::lee());
  LeeReport rep;
  rep.dim = homology_dim(*cx, CoeffSpec::lee());
  const int l = view.components();
  rep.orientations = 1 << l;
  rep.adjoint_cycles = true;
  for (uint32_t mask = 0; mask < (uint32_t{1} << l); mask += 2) {
    std::vector<int> rev;
    for (int c = 0; c < l; ++c)
      if ((mask >> c) & 1) rev.push_back(c);
    auto [o, ob] = lee_generators(*cx, rev);
    rep.adjoint_cycles = rep.adjoint_cycles && in_adjoint_kernel(*cx, o) && in_adjoint_kernel(*cx, ob);
    rep.classes.push_back(std::move(o));
    rep.classes.push_back(std::move(ob));
  }
  if (l == 0) rep.orientations = 0;
  std::map<int, std::vector<const LeeClass*>> by_degree;
  for (auto& c : rep.classes) by_degree[c.degree].push_back(&c);
  rep.independent = true;
  for (auto& [deg, cls] : by_degree) {
    std::vector<int> pos(cx->dim(deg));
    std::iota(pos.begin(), pos.end(), 0);
    EchelonBasis basis(pos);
    auto d = cx->differential_q(deg - 1, CoeffSpec::lee());
    for (auto& col : d.col) basis.insert(col);
    for (auto* c : cls) rep.independent = basis.insert(c->chain) && rep.independent;
  }
  return rep;
}

std::optional<std::vector<mpq_class>> lee_coordinates(const Complex& cx, int degree,
                                                      const std::vector<SparseVec<mpq_class>>& classes,
                                                      const SparseVec<mpq_class>& v) {
  const size_t K = classes.size();
  std::vector<int> owner(cx.dim(degree), -1);
  std::vector<SparseVec<mpq_class>> rows;
  std::vector<std::vector<mpq_class>> combo;
  auto reduce = [&](SparseVec<mpq_class> x, std::vector<mpq_class>& cmb) {
    while (!x.empty() && owner[x.front().first] >= 0) {
      int b = owner[x.front().first];
      mpq_class f = -x.front().second / rows[b].front().second;
      x = axpy(x, f, rows[b]);
      for (size_t k = 0; k < K; ++k) cmb[k] += f * combo[b][k];
    }
    return x;
  };
  auto insert = [&](const SparseVec<mpq_class>& x, std::vector<mpq_class> cmb) {
    auto r = reduce(x, cmb);
    if (r.empty()) return;
    owner[r.front().first] = static_cast<int>(rows.size());
    rows.push_back(std::move(r));
    combo.push_back(std::move(cmb));
  };
  auto d = cx.differential_q(degree - 1, CoeffSpec::lee());
  for (auto& col : d.col) insert(col, std::vector<mpq_class>(K));
  for (size_t k = 0; k < K; ++k) {
    std::vector<mpq_class> unit(K);
    unit[k] = 1;  // each row is congruent to sum combo_k class_k
    insert(classes[k], unit);
  }
  std::vector<mpq_class> acc(K);
  // v + sum f row = 0, so v is congruent to -acc
  if (!reduce(v, acc).empty()) return std::nullopt;
  for (auto& a : acc) a = -a;
  return acc;
}

FiltrationSolver::FiltrationSolver(std::shared_ptr<const Complex> cx, int degree, mpq_class tau)
    : cx_(std::move(cx)), degree_(degree), tau_(tau) {
  // outside [0, 2] some differential terms lower j - tau k
  if (tau_ < 0 || tau_ > 2) throw std::invalid_argument("tau must lie in [0, 2]");
  const int n = cx_->dim(degree_);
  lev_.resize(n);
  for (int g = 0; g < n; ++g) {
    GenInfo gi = cx_->generator(degree_, g);
    lev_[g] = gi.j - tau_ * gi.k;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lev_[a] < lev_[b]; });
  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[order[p]] = p;
  basis_ = std::make_unique<EchelonBasis>(pos);
  auto d = cx_->differential_q(degree_ - 1, CoeffSpec::lee());
  for (auto& col : d.col)
    if (!col.empty()) basis_->insert(col);
}

mpq_class FiltrationSolver::level_of(int gen) const { return lev_[gen]; }

mpq_class FiltrationSolver::level(const SparseVec<mpq_class>& z) const {
  auto r = basis_->reduce(z);
  if (r.empty()) throw std::domain_error("[z] = 0");
  mpq_class best = lev_[r.front().first];
  for (auto& [g, v] : r) best = std::min(best, lev_[g]);
  return best;
}

SReport s_invariant(const DiagramView& view, const ResolutionChoices& choices, const std::vector<mpq_class>& taus) {
  auto cx = build_complex(view, choices, CoeffSpec::lee());
  auto [o, ob] = lee_generators(*cx);
  auto plus = axpy(o.chain, mpq_class(1), ob.chain);
  auto minus = axpy(o.chain, mpq_class(-1), ob.chain);
  auto levels = [&](const mpq_class& tau) {
    FiltrationSolver fs(cx, o.degree, tau);
    return std::make_pair(fs.level(plus), fs.level(minus));
  };
  SReport rep;
  rep.link_class = view.diagram.link_class();
  rep.components = view.components();
  auto [qp, qm] = levels(0);
  if (abs(qp - qm) != 2) throw InvariantError("filtration levels of the two Lee classes do not differ by 2");
  rep.q_plus = static_cast<int>(qp.get_num().get_si());
  rep.q_minus = static_cast<int>(qm.get_num().get_si());
  rep.s_min = std::min(rep.q_plus, rep.q_minus);
  rep.s = rep.s_min + 1;
  for (const mpq_class& tau : taus) {
    auto [tp, tm] = levels(tau);
    mpq_class s = (tp + tm) / 2;
    rep.s_tau.push_back({tau, tp, tm, s});
  }
  return rep;
}

int positive_formula(const ProjDiagram& d) {
  if (d.n_minus() > 0) throw std::invalid_argument("diagram has negative crossings");
  return d.num_crossings() - oriented_resolution(DiagramView(d)).res.size() + 1;
}

BiPoly euler_poly(const DiagramView& view) {
  Complex cx(view);
  BiPoly e;
  for (uint64_t fm = 0; fm < (uint64_t{1} << cx.n_free()); ++fm) {
    const int k = cx.resolution(fm).size();
    const int sign = cx.degree_of(fm) % 2 ? -1 : 1;
    for (uint32_t lab = 0; lab < (uint32_t{1} << k); ++lab) {
      GenInfo g = cx.grading(fm, lab);
      e.add(g.j, g.k, sign);
    }
  }
  return e;
}

LaurentPoly drobotukhina(const DiagramView& view) {
  BiPoly e = euler_poly(view);
  if (view.diagram.link_class() == 0) {
    for (auto& [jk, v] : e.c)
      if (jk.second != 0) throw InvariantError("class-0 Euler characteristic has x terms");
    return e.at_x(0).div_q_plus_qinv();
  }
  LaurentPoly j = e.at_x(1).shifted(-1);
  BiPoly back;
  for (auto [q, v] : j.c) back.add(q + 1, 1, v), back.add(q - 1, -1, v);
  if (!(back == e)) throw std::domain_error("not divisible");
  return j;
}

LaurentPoly bracket_oracle(const ProjDiagram& d) {
  const int n = d.num_crossings();
  if (n > 24) throw std::invalid_argument("too many crossings for a state sum");
  const LaurentPoly delta = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  std::vector<LaurentPoly> dpow{LaurentPoly::monomial(0)};
  LaurentPoly br;  // in A
  for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
    const int k = resolve(d, v).size();
    if (k == 0) throw std::invalid_argument("empty diagram");
    while (static_cast<int>(dpow.size()) < k) dpow.push_back(dpow.back() * delta);
    const int b = std::popcount(v);
    br = br + dpow[k - 1].shifted(n - 2 * b);
  }
  const int w = d.n_plus() - d.n_minus();
  br = br * LaurentPoly::monomial(-3 * w, w % 2 ? -1 : 1);
  LaurentPoly j;
  for (auto [e, v] : br.c) {
    if (e % 2) throw InvariantError("odd power of A in the bracket");
    j.add(-e / 2, (e / 2) % 2 ? -v : v);
  }
  return j;
}

}  // namespace rpkh
