#include "rpkh/cobord.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

#include "rpkh/diagram_ops.hpp"
#include "rpkh/invariants.hpp"

namespace rpkh {

const char* kind_name(MorseStep::Kind k) {
  switch (k) {
    case MorseStep::Birth: return "birth";
    case MorseStep::Death: return "death";
    default: return "saddle";
  }
}

namespace {

// Union-find over arcs with parity: parity(a) xor parity(b) = flip(a) xor flip(b).
struct ParityUF {
  std::vector<int> p;
  std::vector<int> par;  // parity to parent
  bool ok = true;
  explicit ParityUF(int n) : p(n), par(n, 0) { std::iota(p.begin(), p.end(), 0); }
  std::pair<int, int> find(int x) {
    int acc = 0;
    int r = x;
    while (p[r] != r) acc ^= par[r], r = p[r];
    // path compression
    int cur = x, cur_par = acc;
    while (p[cur] != cur) {
      int next = p[cur], np = cur_par ^ par[cur];
      p[cur] = r, par[cur] = cur_par;
      cur = next, cur_par = np;
    }
    return {r, acc};
  }
  void relate(int a, int b, int diff) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != diff) ok = false;
      return;
    }
    p[rb] = ra, par[rb] = pa ^ pb ^ diff;
  }
};

}  // namespace

std::optional<std::vector<int8_t>> solve_orientation(const ProjDiagram& d, const std::vector<int8_t>& fixed,
                                                     const std::vector<int>& saddles) {
  ParityUF uf(d.num_arcs());
  // The two ports must be one incoming, one outgoing.
  auto opposite = [&](Port P, Port Q) {
    int a = d.arc_at(P), b = d.arc_at(Q);
    int diff = 1 ^ int(d.arrives_at(a, P)) ^ int(d.arrives_at(b, Q));
    uf.relate(a, b, diff);
  };
  for (int c = 0; c < d.num_crossings(); ++c) {
    auto pr = [&](int s, int t) { opposite(Port::cross(c, s), Port::cross(c, t)); };
    bool saddle = std::find(saddles.begin(), saddles.end(), c) != saddles.end();
    if (saddle) {
      pr(0, 1), pr(2, 3), pr(0, 3);
    } else if (fixed[c] < 0) {
      pr(0, 2), pr(1, 3);
    } else {
      pr(0, smoothing_partner(0, fixed[c])), pr(2, smoothing_partner(2, fixed[c]));
    }
  }
  for (int p = 0; p < d.m(); ++p) opposite(Port::wall(p), Port::wall(p + d.m()));
  if (!uf.ok) return std::nullopt;
  std::vector<int8_t> dir(d.num_arcs());
  for (int a = 0; a < d.num_arcs(); ++a) dir[a] = uf.find(a).second ? -1 : 1;
  return dir;
}

MovieState apply_step(const ProjDiagram& host, const MovieState& s, const MorseStep& step) {
  MovieState out = s;
  const std::string where = std::string(kind_name(step.kind)) + " at " + std::to_string(step.index);
  if (step.kind == MorseStep::Saddle) {
    if (step.index < 0 || step.index >= host.num_crossings()) throw DiagramError(where + ": no such crossing");
    if (s.fixed[step.index] < 0) throw DiagramError(where + ": crossing is not smoothed");
    out.fixed[step.index] = 1 - s.fixed[step.index];
    return out;
  }
  if (step.index < 0 || step.index >= host.num_arcs()) throw DiagramError(where + ": no such arc");
  if (!host.arc(step.index).free_loop()) throw DiagramError(where + ": births and deaths act on local circles only");
  const bool birth = step.kind == MorseStep::Birth;
  if (bool(s.hidden[step.index]) != birth) throw DiagramError(where + (birth ? ": loop already present" : ": loop absent"));
  out.hidden[step.index] = birth ? 0 : 1;
  return out;
}

bool MorseMap::zero() const {
  for (auto& [i, v] : entries)
    if (!v.empty()) return false;
  return true;
}

namespace {

int degree_shift(const MorseMap& m) { return m.source.n_minus() - m.target.n_minus(); }

// Mapping of circles of `small` into `big` (which has extra loop `loop`);
// returns the sign rearranging big's order into [small's order..., loop].
struct LoopCorrespondence {
  std::vector<int> to_big;
  int loop_big;
};

LoopCorrespondence correspond(const Resolution& small, const Resolution& big, int loop_arc) {
  LoopCorrespondence lc;
  for (auto& c : small.circles) lc.to_big.push_back(big.arc_circle[c.min_arc]);
  lc.loop_big = big.arc_circle[loop_arc];
  return lc;
}

int order_sign(const VertexChoice& big, const VertexChoice& small, const LoopCorrespondence& lc) {
  std::vector<int> target;
  for (int k : small.order) target.push_back(lc.to_big[k]);
  target.push_back(lc.loop_big);
  int inv = 0;
  for (size_t i = 0; i < target.size(); ++i)
    for (size_t j = i + 1; j < target.size(); ++j) inv += big.pos[target[i]] > big.pos[target[j]];
  return inv % 2 ? -1 : 1;
}

void loop_map(MorseMap& m, int loop_arc, bool birth) {
  const Complex& S = *m.src;
  const Complex& T = *m.tgt;
  const Complex& small = birth ? S : T;
  const Complex& big = birth ? T : S;
  for (int i = S.min_degree(); i <= S.max_degree(); ++i) {
    auto& out = m.entries[i];
    for (uint64_t fm : S.vertices(i)) {
      const Resolution& rs = small.resolution(fm);
      const Resolution& rb = big.resolution(fm);
      const VertexChoice& cs = small.choice(fm);
      const VertexChoice& cb = big.choice(fm);
      auto lc = correspond(rs, rb, loop_arc);
      const int base_sign = order_sign(cb, cs, lc);
      for (uint32_t lab = 0; lab < (uint32_t{1} << rs.size()); ++lab) {
        uint32_t blab = 0;
        int sg = base_sign;
        for (int k = 0; k < rs.size(); ++k) {
          if (!((lab >> k) & 1)) continue;
          blab |= uint32_t{1} << lc.to_big[k];
          if (cs.orient[k] != cb.orient[lc.to_big[k]]) sg = -sg;
        }
        if (birth) {
          out.push_back({T.index_of(fm, blab), S.index_of(fm, lab), {sg, 0, 0}});
        } else {
          // counit: only X on the loop survives
          blab |= uint32_t{1} << lc.loop_big;
          sg *= cb.orient[lc.loop_big];
          out.push_back({T.index_of(fm, lab), S.index_of(fm, blab), {sg, 0, 0}});
        }
      }
    }
  }
}

void saddle_map(MorseMap& m, const ProjDiagram& host, const MovieState& state, int c,
                const ResolutionChoices& choices) {
  // Run the edge 0 -> 1 of a host with c free; for 1 -> 0 the crossing change
  // swaps the two smoothings without touching anything else.
  const ProjDiagram D = state.fixed[c] == 0 ? host : flip_crossing(host, c);
  std::vector<int8_t> fx = state.fixed;
  fx[c] = -1;
  // Edge maps ignore the orientation, which need not exist with c free.
  DiagramView hv(D);
  hv.fixed = fx;
  hv.hidden = state.hidden;
  const Complex H(hv, choices);
  int hf = -1;
  for (int f = 0; f < H.n_free(); ++f)
    if (H.free_crossing(f) == c) hf = f;
  const Complex& S = *m.src;
  const Complex& T = *m.tgt;
  for (int i = S.min_degree(); i <= S.max_degree(); ++i) {
    auto& out = m.entries[i];
    for (uint64_t fm : S.vertices(i)) {
      // insert a zero bit at position hf
      const uint64_t low = fm & ((uint64_t{1} << hf) - 1);
      const uint64_t hm = low | ((fm ^ low) << 1);
      const int sg = std::popcount(fm) % 2 ? -1 : 1;
      for (auto& t : H.edge_map(hm, hf)) {
        Monomial mo = t.coeff;
        mo.sign *= sg;
        out.push_back({T.index_of(fm, t.to), S.index_of(fm, t.from), mo});
      }
    }
  }
}

}  // namespace

SparseMatrix<mpq_class> MorseMap::matrix(int i, const CoeffSpec& spec) const {
  SparseMatrix<mpq_class> mat(tgt->dim(i + degree_shift(*this)), src->dim(i));
  auto it = entries.find(i);
  if (it != entries.end())
    for (auto& e : it->second) {
      mpz_class v = spec.eval(e.coeff);
      if (v != 0) mat.add(e.row, e.col, mpq_class(v));
    }
  mat.normalize();
  return mat;
}

MorseMap morse_map_split(const ProjDiagram& host, const std::vector<int8_t>& source_dir,
                         const std::vector<int8_t>& target_dir, const MovieState& state, const MorseStep& step,
                         const ResolutionChoices& choices) {
  const MovieState after = apply_step(host, state, step);
  MorseMap m;
  m.step = step;
  m.source = DiagramView(host, state.fixed, source_dir, state.hidden);
  m.target = DiagramView(host, after.fixed, target_dir, after.hidden);
  m.src = std::make_shared<Complex>(m.source, choices);
  m.tgt = std::make_shared<Complex>(m.target, choices);
  if (step.kind == MorseStep::Saddle) {
    m.orientable = source_dir == target_dir;
    saddle_map(m, host, state, step.index, choices);
  } else {
    loop_map(m, step.index, step.kind == MorseStep::Birth);
  }
  return m;
}

MorseMap morse_map(const ProjDiagram& host, const std::vector<int8_t>& arc_dir, const MovieState& state,
                   const MorseStep& step, const ResolutionChoices& choices) {
  return morse_map_split(host, arc_dir, arc_dir, state, step, choices);
}

bool is_chain_map(const MorseMap& m, const CoeffSpec& spec) {
  const Complex& S = *m.src;
  const Complex& T = *m.tgt;
  const int shift = degree_shift(m);
  const bool symbolic = spec.ring == CoeffSpec::Polynomials;
  using Key = std::tuple<int, int, int, int>;
  for (int i = S.min_degree() - 1; i <= S.max_degree(); ++i) {
    std::map<Key, mpz_class> acc;
    auto add = [&](int row, int col, const Monomial& a, const Monomial& b, int sign) {
      Monomial p{a.sign * b.sign * sign, a.a + b.a, a.b + b.b};
      if (symbolic)
        acc[{row, col, p.a, p.b}] += p.sign;
      else
        acc[{row, col, 0, 0}] += spec.eval(p);
    };
    // d_T phi_i
    auto it = m.entries.find(i);
    if (it != m.entries.end()) {
      std::vector<std::vector<std::pair<int, Monomial>>> dT(T.dim(i + shift));
      for (auto& e : T.differential(i + shift)) dT[e.col].push_back({e.row, e.coeff});
      for (auto& e : it->second)
        for (auto& [r, mo] : dT[e.row]) add(r, e.col, e.coeff, mo, 1);
    }
    // phi_{i+1} d_S
    auto jt = m.entries.find(i + 1);
    if (jt != m.entries.end()) {
      std::vector<std::vector<std::pair<int, Monomial>>> ph(S.dim(i + 1));
      for (auto& e : jt->second) ph[e.col].push_back({e.row, e.coeff});
      for (auto& e : S.differential(i))
        for (auto& [r, mo] : ph[e.row]) add(r, e.col, e.coeff, mo, -1);
    }
    for (auto& [k, v] : acc)
      if (v != 0) return false;
  }
  return true;
}

std::optional<int> filtration_degree(const MorseMap& m) {
  const CoeffSpec lee = CoeffSpec::lee();
  const int shift = degree_shift(m);
  std::optional<int> best;
  for (auto& [i, list] : m.entries) {
    auto mat = m.matrix(i, lee);
    for (int c = 0; c < mat.cols; ++c) {
      if (mat.col[c].empty()) continue;
      const int j0 = m.src->generator(i, c).j;
      for (auto& [r, v] : mat.col[c]) {
        int d = m.tgt->generator(i + shift, r).j - j0;
        if (!best || d < *best) best = d;
      }
    }
  }
  return best;
}

int Movie::euler_characteristic() const {
  int chi = 0;
  for (auto& s : steps) chi += s.kind == MorseStep::Saddle ? -1 : 1;
  return chi;
}

GenusVerdict genus_bound_check(int s0, int s1, int chi) { return {s0, s1, chi, s1 - s0 >= chi}; }

std::string GenusVerdict::message() const {
  if (!applicable) return "not applicable (non-orientable cobordism)";
  return allowed ? "allowed" : "no such cobordism exists";
}

bool MovieAudit::ok() const {
  for (auto& s : steps)
    if (!s.chain_map) return false;
  if (composite_degree && *composite_degree < chi) return false;
  return true;
}

MovieAudit audit_movie(const std::vector<Movie>& segments) {
  MovieAudit audit;
  if (segments.empty()) throw DiagramError("empty movie");
  bool zero = false;
  std::optional<int> composite;
  for (size_t si = 0; si < segments.size(); ++si) {
    const Movie& mv = segments[si];
    audit.chi += mv.euler_characteristic();
    // One orientation for the whole segment when the surface allows it.
    std::vector<int> saddles;
    for (auto& st : mv.steps)
      if (st.kind == MorseStep::Saddle) saddles.push_back(st.index);
    std::optional<std::vector<int8_t>> global = mv.orientation;
    // saddle crossings are constrained by both smoothings, the rest keep their state
    if (!global) global = solve_orientation(mv.host, mv.initial.fixed, saddles);
    if (!global) audit.global_orientation = false;
    MovieState state = mv.initial;
    std::vector<MorseMap> maps;
    for (auto& st : mv.steps) {
      MovieState next = apply_step(mv.host, state, st);
      std::vector<int8_t> sd, td;
      if (global) {
        sd = td = *global;
      } else {
        auto a = solve_orientation(mv.host, state.fixed);
        auto b = solve_orientation(mv.host, next.fixed);
        if (!a || !b) throw DiagramError("a diagram in the movie has no orientation");
        sd = *a, td = *b;
      }
      MorseMap mm = morse_map_split(mv.host, sd, td, state, st);
      StepAudit sa;
      sa.step = st;
      sa.orientable = st.kind != MorseStep::Saddle ||
                      solve_orientation(mv.host, state.fixed, {st.index}).has_value();
      sa.chain_map = is_chain_map(mm, CoeffSpec::generic());
      sa.degree = filtration_degree(mm);
      if (!sa.degree) zero = true;
      audit.steps.push_back(sa);
      maps.push_back(std::move(mm));
      state = next;
    }
    if (maps.empty()) {
      DiagramView v(mv.host, mv.initial.fixed, global ? *global : *solve_orientation(mv.host, mv.initial.fixed),
                    mv.initial.hidden);
      int s = s_invariant(v).s;
      if (si == 0) audit.s0 = s;
      audit.s1 = s;
      continue;
    }
    if (si == 0) audit.s0 = s_invariant(maps.front().source).s;
    audit.s1 = s_invariant(maps.back().target).s;
    if (zero || !global) continue;
    // Composite on Lee coefficients, column by column.
    const CoeffSpec lee = CoeffSpec::lee();
    const Complex& S0 = *maps.front().src;
    std::optional<int> seg;
    for (int i = S0.min_degree(); i <= S0.max_degree(); ++i) {
      std::vector<SparseMatrix<mpq_class>> mats;
      for (auto& mm : maps) mats.push_back(mm.matrix(i, lee));
      for (int c = 0; c < S0.dim(i); ++c) {
        SparseVec<mpq_class> v{{c, mpq_class(1)}};
        for (auto& M : mats) v = mat_vec(M, v);
        const int j0 = S0.generator(i, c).j;
        for (auto& [r, x] : v) {
          int d = maps.back().tgt->generator(i, r).j - j0;
          if (!seg || d < *seg) seg = d;
        }
      }
    }
    if (!seg)
      zero = true;
    else
      composite = composite.value_or(0) + *seg;
  }
  audit.composite_degree = zero ? std::nullopt : composite;
  audit.verdict = genus_bound_check(audit.s0, audit.s1, audit.chi);
  audit.verdict.applicable = audit.global_orientation;
  return audit;
}

}  // namespace rpkh
