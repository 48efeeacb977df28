#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "corpus.hpp"
#include "rpkh/cube.hpp"
#include "rpkh/io.hpp"

using namespace rpkh;

namespace {

std::vector<ResolutionChoices> choice_sets() {
  std::vector<ResolutionChoices> out;
  ResolutionChoices c;
  out.push_back(c);
  c.order = ResolutionChoices::Reversed;
  c.dividing.direction = -1;
  out.push_back(c);
  c.order = ResolutionChoices::RandomOrder;
  c.orient = ResolutionChoices::RandomOrient;
  c.seed = 5;
  out.push_back(c);
  c.seed = 31;
  c.orient = ResolutionChoices::Traversal;
  out.push_back(c);
  return out;
}

std::set<std::tuple<int, int, int>> gradings(const Complex& cx, int i) {
  std::set<std::tuple<int, int, int>> g;
  for (int k = 0; k < cx.dim(i); ++k) {
    GenInfo x = cx.generator(i, k);
    g.insert({x.i, x.j, x.k});
  }
  return g;
}

}  // namespace

TEST_CASE("unknot generators") {
  Complex u1{DiagramView(corpus::unknot1())};
  CHECK(u1.min_degree() == 0);
  CHECK(u1.max_degree() == 0);
  CHECK(gradings(u1, 0) == std::set<std::tuple<int, int, int>>{{0, 1, 1}, {0, -1, -1}});
  Complex u0{DiagramView(corpus::unknot0())};
  CHECK(gradings(u0, 0) == std::set<std::tuple<int, int, int>>{{0, 1, 0}, {0, -1, 0}});
}

TEST_CASE("degree range and dimensions") {
  for (auto& e : corpus::all()) {
    if (e.d.num_crossings() > 8) continue;
    CAPTURE(e.name);
    Complex cx{DiagramView(e.d)};
    CHECK(cx.min_degree() == -e.d.n_minus());
    CHECK(cx.max_degree() == e.d.n_plus());
    long total = 0;
    for (int i = cx.min_degree(); i <= cx.max_degree(); ++i) total += cx.dim(i);
    long want = 0;
    for (uint64_t v = 0; v < (uint64_t(1) << e.d.num_crossings()); ++v) want += 1L << resolve(e.d, v).size();
    CHECK(total == want);
  }
}

TEST_CASE("d^2 = 0 symbolically for every choice set") {
  auto sets = choice_sets();
  for (auto& e : corpus::all()) {
    if (e.d.num_crossings() > 6) continue;
    for (size_t c = 0; c < sets.size(); ++c) {
      CAPTURE(e.name);
      CAPTURE(c);
      Complex cx(DiagramView(e.d), sets[c]);
      CHECK_NOTHROW(cx.verify_d2(CoeffSpec::generic()));
    }
  }
}

TEST_CASE("d^2 = 0 on random projective braids") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    int m = 2 + static_cast<int>(rng() % 4);
    auto w = corpus::random_word(rng, m, 1 + static_cast<int>(rng() % 6), false);
    CAPTURE(m);
    CAPTURE(w.size());
    ResolutionChoices ch;
    ch.order = ResolutionChoices::RandomOrder;
    ch.orient = ResolutionChoices::RandomOrient;
    ch.seed = rng();
    Complex cx(DiagramView(corpus::proj(w, m)), ch);
    CHECK_NOTHROW(cx.verify_d2(CoeffSpec::generic()));
  }
}

TEST_CASE("differential entries are bihomogeneous") {
  // s carries (j, k) degree (0, -2) and t carries (4, 2)
  for (auto& e : corpus::all()) {
    if (e.d.num_crossings() > 6) continue;
    CAPTURE(e.name);
    Complex cx{DiagramView(e.d)};
    for (int i = cx.min_degree(); i < cx.max_degree(); ++i)
      for (auto& s : cx.differential(i)) {
        GenInfo f = cx.generator(i, s.col), t = cx.generator(i + 1, s.row);
        CHECK(t.j - f.j == 4 * s.coeff.b);
        CHECK(t.k - f.k == 2 * s.coeff.b - 2 * s.coeff.a);
        if (e.d.link_class() == 0) CHECK(s.coeff.a == s.coeff.b);
      }
  }
}

TEST_CASE("choice change is a chain isomorphism") {
  auto sets = choice_sets();
  CoeffSpec spec = CoeffSpec::lee();
  for (auto& e : corpus::all()) {
    if (e.d.num_crossings() > 5) continue;
    Complex a(DiagramView(e.d), sets[0]);
    for (size_t c = 1; c < sets.size(); ++c) {
      CAPTURE(e.name);
      CAPTURE(c);
      Complex b(DiagramView(e.d), sets[c]);
      for (int i = a.min_degree(); i < a.max_degree(); ++i) {
        auto di = change_choices_map(a, b, i), dn = change_choices_map(a, b, i + 1);
        auto da = a.differential_q(i, spec), db = b.differential_q(i, spec);
        // db * D_i == D_{i+1} * da, entrywise
        bool ok = true;
        for (int col = 0; col < da.cols; ++col) {
          SparseVec<mpq_class> lhs = db.col[col], rhs = da.col[col];
          for (auto& [r, x] : lhs) x *= di[col];
          for (auto& [r, x] : rhs) x *= dn[r];
          if (lhs != rhs) ok = false;
        }
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("Theta is a chain map") {
  for (CoeffSpec spec : {CoeffSpec::khovanov(), CoeffSpec::lee(), CoeffSpec{CoeffSpec::Integers, 3, 3}}) {
    for (auto& e : corpus::all()) {
      if (e.d.num_crossings() > 5) continue;
      CAPTURE(e.name);
      Complex cx{DiagramView(e.d)};
      for (int i = cx.min_degree(); i < cx.max_degree(); ++i) {
        auto th = theta_map(cx, i, spec), tn = theta_map(cx, i + 1, spec);
        auto d = cx.differential_q(i, spec);
        bool ok = true;
        for (int col = 0; col < d.cols; ++col) {
          // d(Theta g) vs Theta(d g)
          SparseVec<mpq_class> lhs;
          for (auto& [r, x] : d.col[th[col].first]) lhs.push_back({r, x * th[col].second});
          SparseVec<mpq_class> rhs;
          for (auto& [r, x] : d.col[col]) rhs.push_back({tn[r].first, x * tn[r].second});
          std::sort(rhs.begin(), rhs.end(), [](auto& p, auto& q) { return p.first < q.first; });
          if (lhs != rhs) ok = false;
        }
        CHECK(ok);
        if (e.d.link_class() == 0)
          for (int g = 0; g < cx.dim(i); ++g) CHECK(th[g] == std::pair<int, int>{g, 1});
      }
    }
  }
}

TEST_CASE("complex dump") {
  Complex cx{DiagramView(corpus::planar({1, 1}, 2))};
  json j = complex_dump(cx);
  REQUIRE(j.contains("generators"));
  REQUIRE(j.contains("differential"));
  long total = 0;
  for (int i = cx.min_degree(); i <= cx.max_degree(); ++i) total += cx.dim(i);
  CHECK(static_cast<long>(j["generators"].size()) == total);
  for (auto& g : j["generators"])
    for (const char* k : {"vertex", "labels", "i", "j", "k"}) CHECK(g.contains(k));
  for (auto& e : j["differential"]) {
    CHECK(e["from"].size() == 2);
    CHECK(e["coefficient"].is_string());
  }
}
