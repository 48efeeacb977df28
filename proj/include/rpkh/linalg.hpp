#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rpkh {

// Sorted by index, no stored zeros.
template <class T>
using SparseVec = std::vector<std::pair<int, T>>;

template <class T>
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<SparseVec<T>> col;  // column-major

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  void add(int r, int c, const T& v) { col[c].push_back({r, v}); }
  // Sort each column, sum duplicates, drop zeros.
  void normalize() {
    for (auto& v : col) {
      std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec<T> out;
      for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(e);
        if (out.back().second == 0) out.pop_back();
      }
      v.swap(out);
    }
  }
  size_t nnz() const {
    size_t k = 0;
    for (auto& v : col) k += v.size();
    return k;
  }
  SparseMatrix transpose() const {
    SparseMatrix t(cols, rows);
    for (int c = 0; c < cols; ++c)
      for (auto& [r, v] : col[c]) t.col[r].push_back({c, v});
    return t;
  }
};

template <class T>
SparseVec<T> mat_vec(const SparseMatrix<T>& m, const SparseVec<T>& x) {
  std::vector<T> acc(m.rows);
  std::vector<char> touched(m.rows, 0);
  for (auto& [c, v] : x)
    for (auto& [r, w] : m.col[c]) acc[r] += v * w, touched[r] = 1;
  SparseVec<T> out;
  for (int r = 0; r < m.rows; ++r)
    if (touched[r] && acc[r] != 0) out.push_back({r, acc[r]});
  return out;
}

// a + f*b
template <class T>
SparseVec<T> axpy(const SparseVec<T>& a, const T& f, const SparseVec<T>& b) {
  SparseVec<T> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, f * b[j].second});
      ++j;
    } else {
      T v = a[i].second + f * b[j].second;
      if (v != 0) out.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return out;
}

struct RankKernelImage {
  int rank = 0;
  std::vector<SparseVec<mpq_class>> kernel;
  std::vector<SparseVec<mpq_class>> image;
};

// Column elimination in column order, pivot on the lowest row.
RankKernelImage rank_kernel_image(const SparseMatrix<mpq_class>& m);

// Rank only; Markowitz-style sparse elimination.
int rank_q(const SparseMatrix<mpq_class>& m);

// Nonzero invariant factors d1 | d2 | ... (positive).
std::vector<mpz_class> smith_normal_form(const SparseMatrix<mpz_class>& m);

// Echelon basis of a subspace. Rows are ranked by a total order (position);
// the pivot of a vector is its entry of smallest position.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::vector<int> position);  // position[row]
  // Returns true if v was independent of the basis (and is now part of it).
  bool insert(const SparseVec<mpq_class>& v);
  // Greedily removes pivot entries; the result has the largest possible
  // smallest position among v + span.
  SparseVec<mpq_class> reduce(const SparseVec<mpq_class>& v) const;
  int rank() const { return static_cast<int>(basis_.size()); }
  // Conversions between row indices and positions.
  SparseVec<mpq_class> to_rows(const SparseVec<mpq_class>& v_in_positions) const;
  SparseVec<mpq_class> to_positions(const SparseVec<mpq_class>& v) const;

 private:
  SparseVec<mpq_class> reduce_pos(SparseVec<mpq_class> v) const;
  std::vector<int> position_, row_at_;
  std::vector<int> owner_;  // per position: basis index or -1
  std::vector<SparseVec<mpq_class>> basis_;
};

}  // namespace rpkh
