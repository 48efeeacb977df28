#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rpkh/cube.hpp"
#include "rpkh/linalg.hpp"
#include "rpkh/poly.hpp"
#include "rpkh/projdiag.hpp"

namespace rpkh {

// An identity that must always hold failed; points at a bug rather than bad input.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HomologyEntry {
  int i, j, k;
  int rank;
  std::vector<mpz_class> torsion;  // invariant factors > 1
};

// Nonzero groups, sorted by (i, j, k).
std::vector<HomologyEntry> khovanov_table(const DiagramView& view, bool integers,
                                          const ResolutionChoices& choices = {});

// Total rational homology dimension.
int homology_dim(const Complex& cx, const CoeffSpec& spec);

// A Lee generator: the view's orientation with `reversed` components turned
// around, and its chain in C^degree.
struct LeeClass {
  std::vector<int> reversed;
  int degree = 0;
  SparseVec<mpq_class> chain;
};

// (s_o, s_obar). Throws D2Error if either fails to be a cycle.
std::pair<LeeClass, LeeClass> lee_generators(const Complex& cx, const std::vector<int>& reversed = {});

// Is z killed by the transpose of the differential into its degree?
bool in_adjoint_kernel(const Complex& cx, const LeeClass& z);

struct LeeReport {
  int dim = 0;
  int orientations = 0;  // 2^components
  std::vector<LeeClass> classes;
  bool independent = false;  // classes independent modulo boundaries
  bool adjoint_cycles = false;
};

LeeReport lee_report(const DiagramView& view, const ResolutionChoices& choices = {});

// Coefficients c with [v] = sum c_k [classes_k] in homology of C^degree, or
// nullopt when [v] is outside their span.
std::optional<std::vector<mpq_class>> lee_coordinates(const Complex& cx, int degree,
                                                      const std::vector<SparseVec<mpq_class>>& classes,
                                                      const SparseVec<mpq_class>& v);

// Filtration levels for the (j - tau k) grading on C^degree, 0 <= tau <= 2.
class FiltrationSolver {
 public:
  FiltrationSolver(std::shared_ptr<const Complex> cx, int degree, mpq_class tau);
  mpq_class level_of(int gen) const;
  // Largest level of a cycle homologous to z; throws std::domain_error for [z] = 0.
  mpq_class level(const SparseVec<mpq_class>& z) const;

 private:
  std::shared_ptr<const Complex> cx_;
  int degree_;
  mpq_class tau_;
  std::vector<mpq_class> lev_;
  std::unique_ptr<EchelonBasis> basis_;
};

struct STau {
  mpq_class tau, q_plus, q_minus, s;
};

struct SReport {
  int link_class = 0;
  int components = 0;
  int s = 0, s_min = 0, q_plus = 0, q_minus = 0;
  std::vector<STau> s_tau;
};

SReport s_invariant(const DiagramView& view, const ResolutionChoices& choices = {},
                    const std::vector<mpq_class>& taus = {});

// n - k + 1 for a diagram whose crossings are all positive.
int positive_formula(const ProjDiagram& d);

BiPoly euler_poly(const DiagramView& view);
LaurentPoly drobotukhina(const DiagramView& view);

// Kauffman-style state sum, normalized to 1 on both unknots, in q = -A^-2.
LaurentPoly bracket_oracle(const ProjDiagram& d);

}  // namespace rpkh
