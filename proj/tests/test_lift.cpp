#include <doctest.h>

#include "corpus.hpp"
#include "rpkh/invariants.hpp"
#include "rpkh/lift.hpp"

using namespace rpkh;

namespace {

int s_of(const ProjDiagram& d) { return s_invariant(DiagramView(d)).s; }

}  // namespace

TEST_CASE("flip word") {
  CHECK(flip_word({1, -2}, 3) == std::vector<int>{2, -1});
  CHECK(flip_word({1, 2, 3}, 4) == std::vector<int>{3, 2, 1});
  CHECK(flip_word({-1}, 2) == std::vector<int>{-1});
  CHECK(flip_word(flip_word({1, -3, 2, 4}, 5), 5) == std::vector<int>{1, -3, 2, 4});
}

TEST_CASE("half twist") {
  CHECK(half_twist(2) == std::vector<int>{1});
  CHECK(half_twist(3) == std::vector<int>{1, 2, 1});
  CHECK(half_twist(4).size() == 6);
  CHECK(half_twist(1).empty());
}

TEST_CASE("lift doubles the braid") {
  for (auto [w, m] : std::vector<std::pair<std::vector<int>, int>>{{{-1, -1}, 2}, {{1, 2}, 3}, {{1, -2, 1}, 3}, {{1, 2, 3}, 4}}) {
    BraidInput b{m, w, true};
    ProjDiagram l = lift_diagram(b);
    CHECK(l.m() == 0);
    CHECK(l.num_crossings() == 2 * static_cast<int>(w.size()));
    // each projective component lifts to one or two planar components
    ProjDiagram d = from_braid(b);
    CHECK(l.components() >= d.components());
    CHECK(l.components() <= 2 * d.components());
  }
}

TEST_CASE("both lift forms give the same invariants") {
  for (auto [w, m] : std::vector<std::pair<std::vector<int>, int>>{{{-1, -1}, 2}, {{1, 1, 1}, 2}, {{1, 2}, 3}, {{1, -2}, 3}}) {
    CAPTURE(m);
    BraidInput b{m, w, true};
    ProjDiagram f = lift_diagram(b, LiftForm::Flip), h = lift_diagram(b, LiftForm::HalfTwist);
    CHECK(f.components() == h.components());
    CHECK(s_of(f) == s_of(h));
    std::map<std::tuple<int, int>, int> kf, kh;
    for (auto& e : khovanov_table(DiagramView(f), false)) kf[{e.i, e.j}] += e.rank;
    for (auto& e : khovanov_table(DiagramView(h), false)) kh[{e.i, e.j}] += e.rank;
    CHECK(kf == kh);
  }
}

TEST_CASE("lift of a positive link: s doubles up to class") {
  for (auto [w, m] : std::vector<std::pair<std::vector<int>, int>>{{{1, 1, 1}, 2}, {{1, 2}, 3}, {{1, 1, 1}, 3}, {{1, 1}, 2}}) {
    CAPTURE(m);
    BraidInput b{m, w, true};
    ProjDiagram d = from_braid(b);
    REQUIRE(d.n_minus() == 0);
    CHECK(s_of(lift_diagram(b)) == 2 * s_of(d) + d.link_class() - 1);
  }
}

TEST_CASE("H_p links") {
  for (int p = 1; p <= 2; ++p) {
    ProjDiagram h = hp_link(p);
    CHECK(h.m() == 2 * p);
    CHECK(h.num_crossings() == p * (2 * p - 1));
    CHECK(h.components() == 2 * p);
    CHECK(h.link_class() == 0);
  }
  CHECK(s_of(hp_link(1)) == -1);
}
