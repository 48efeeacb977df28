#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rpkh/geometry.hpp"
#include "rpkh/linalg.hpp"
#include "rpkh/projdiag.hpp"

namespace rpkh {

// sign * s^a * t^b
struct Monomial {
  int sign = 1;
  int a = 0, b = 0;
};

struct CoeffSpec {
  enum Ring { Integers, Rationals, Polynomials };
  Ring ring = Integers;
  long s = 0, t = 0;  // ignored for Polynomials

  static CoeffSpec khovanov() { return {Integers, 0, 0}; }
  static CoeffSpec khovanov_q() { return {Rationals, 0, 0}; }
  static CoeffSpec lee() { return {Rationals, 1, 1}; }
  static CoeffSpec generic() { return {Polynomials, 0, 0}; }
  bool s_equals_t() const { return ring == Polynomials || s == t; }
  mpz_class eval(const Monomial& mo) const;
};

struct D2Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordering and orientation of the circles of one resolution.
struct VertexChoice {
  std::vector<int> order;  // order[p] = circle at position p
  std::vector<int> pos;    // inverse of order
  std::vector<int8_t> orient;
};

// A rule producing choices for every vertex of the cube.
struct ResolutionChoices {
  enum Order { Canonical, Reversed, RandomOrder };
  enum Orient { Dividing, Traversal, RandomOrient };
  Order order = Canonical;
  Orient orient = Dividing;
  DividingChoice dividing;
  uint64_t seed = 0;

  VertexChoice at(const Resolution& res, const Geometry& geo) const;
};

struct GenInfo {
  uint64_t vertex;  // free mask
  uint32_t labels;  // bit k set: circle k labelled X
  int i, j, k;
};

struct EdgeTerm {
  uint32_t from, to;  // labels
  Monomial coeff;
};

struct SignFactors {
  int P, O, C;
};

struct SymEntry {
  int row, col;
  Monomial coeff;
};

class Complex {
 public:
  explicit Complex(DiagramView view, ResolutionChoices choices = {});

  const DiagramView& view() const { return view_; }
  const ProjDiagram& diagram() const { return view_.diagram; }
  const ResolutionChoices& choices() const { return choices_; }
  const Geometry& geometry() const { return geo_; }
  int n_free() const { return static_cast<int>(free_.size()); }
  int free_crossing(int f) const { return free_[f]; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int min_degree() const { return -n_minus_; }
  int max_degree() const { return n_free() - n_minus_; }

  const Resolution& resolution(uint64_t fm) const;
  const VertexChoice& choice(uint64_t fm) const;
  uint64_t full_vertex(uint64_t fm) const { return view_.full_vertex(fm); }

  int dim(int i) const;
  const std::vector<uint64_t>& vertices(int i) const;
  GenInfo generator(int i, int idx) const;
  int index_of(uint64_t fm, uint32_t labels) const;  // within its degree
  int degree_of(uint64_t fm) const;
  GenInfo grading(uint64_t fm, uint32_t labels) const;

  // Edge at free position f from fm (bit f clear) to fm | bit f.
  Bifurcation bifurcation(uint64_t fm, int f) const;
  std::vector<EdgeTerm> edge_map(uint64_t fm, int f) const;
  SignFactors edge_sign_factors(uint64_t fm, int f, uint32_t g, uint32_t h) const;

  // Differential C^i -> C^{i+1}: rows index C^{i+1}, columns C^i.
  std::vector<SymEntry> differential(int i) const;
  SparseMatrix<mpq_class> differential_q(int i, const CoeffSpec& spec) const;
  SparseMatrix<mpz_class> differential_z(int i, const CoeffSpec& spec) const;

  // Throws D2Error listing the first offending generator.
  void verify_d2(const CoeffSpec& spec) const;

 private:
  struct VertexData {
    Resolution res;
    VertexChoice ch;
  };
  struct Layout {
    std::vector<uint64_t> verts;
    std::vector<int> offsets;  // size verts+1
  };
  const VertexData& data(uint64_t fm) const;
  const Layout& layout(int i) const;

  DiagramView view_;
  ResolutionChoices choices_;
  Geometry geo_;
  std::vector<int> free_;
  int n_plus_, n_minus_;
  mutable std::vector<std::unique_ptr<VertexData>> cache_;
  mutable std::vector<std::unique_ptr<Layout>> layouts_;
  mutable std::vector<int> vertex_offset_;
};

// Build with the default choices and check d^2 = 0 when the cube is small
// enough (or always when force_verify is set).
std::shared_ptr<const Complex> build_complex(const DiagramView& view, const ResolutionChoices& choices,
                                             const CoeffSpec& spec, bool force_verify = false);

// Per-generator signs of the natural isomorphism between two choice sets.
int change_choices_sign(const VertexChoice& from, const VertexChoice& to, uint32_t labels);

// Diagonal signs of the choice-change isomorphism C(a) -> C(b) on C^i.
std::vector<int> change_choices_map(const Complex& a, const Complex& b, int i);

// Theta swaps the labels of the essential circle, with a per-vertex sign;
// identity in class 0.
// Entry g of the result is (index of Theta(g), sign).
std::vector<std::pair<int, int>> theta_map(const Complex& c, int i, const CoeffSpec& spec);

int permutation_sign(const std::vector<int>& perm);

}  // namespace rpkh
