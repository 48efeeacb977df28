#include "rpkh/linalg.hpp"

#include <functional>
#include <queue>

namespace rpkh {

namespace {

bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }
bool is_unit(const mpq_class& v) { return v == 1 || v == -1; }

mpz_class pivot_factor(const mpz_class& entry, const mpz_class& pivot) { return -entry * pivot; }
mpq_class pivot_factor(const mpq_class& entry, const mpq_class& pivot) { return -entry / pivot; }

template <class T>
const T* find_entry(const SparseVec<T>& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](auto& e, int i) { return e.first < i; });
  return (it != v.end() && it->first == idx) ? &it->second : nullptr;
}

// Sparse Gaussian elimination picking short pivot rows in sparse columns.
// With UnitOnly, only +-1 pivots are used and the rest is left behind.
template <class T, bool UnitOnly>
struct Eliminator {
  std::vector<SparseVec<T>> rows;
  std::vector<std::vector<int>> col_rows;
  std::vector<int> col_count;
  std::vector<char> row_done, col_done;
  int rank = 0;
  using Key = std::pair<int, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;

  explicit Eliminator(const SparseMatrix<T>& m)
      : rows(m.rows), col_rows(m.cols), col_count(m.cols, 0), row_done(m.rows, 0), col_done(m.cols, 0) {
    for (int c = 0; c < m.cols; ++c)
      for (auto& [r, v] : m.col[c]) rows[r].push_back({c, v}), col_rows[c].push_back(r);
    for (int c = 0; c < m.cols; ++c) {
      col_count[c] = static_cast<int>(m.col[c].size());
      if (col_count[c]) heap.push({col_count[c], c});
    }
  }

  void run() {
    while (!heap.empty()) {
      auto [cnt, c] = heap.top();
      heap.pop();
      if (col_done[c] || cnt != col_count[c] || cnt == 0) continue;
      auto& cr = col_rows[c];
      std::vector<int> live;
      for (int r : cr)
        if (!row_done[r] && find_entry(rows[r], c)) live.push_back(r);
      std::sort(live.begin(), live.end());
      live.erase(std::unique(live.begin(), live.end()), live.end());
      cr = live;
      int p = -1;
      std::tuple<int, size_t, int> best{2, 0, 0};
      for (int r : live) {
        const T& v = *find_entry(rows[r], c);
        int u = is_unit(v) ? 0 : 1;
        if (UnitOnly && u) continue;
        std::tuple<int, size_t, int> key{u, rows[r].size(), r};
        if (p < 0 || key < best) p = r, best = key;
      }
      if (p < 0) continue;
      const T pv = *find_entry(rows[p], c);
      for (int r : live) {
        if (r == p) continue;
        T f = pivot_factor(*find_entry(rows[r], c), pv);
        SparseVec<T> nr = axpy(rows[r], f, rows[p]);
        // Track column counts.
        const auto& old = rows[r];
        size_t i = 0, j = 0;
        while (i < old.size() || j < nr.size()) {
          if (j == nr.size() || (i < old.size() && old[i].first < nr[j].first)) {
            int cc = old[i++].first;
            --col_count[cc];
            heap.push({col_count[cc], cc});
          } else if (i == old.size() || nr[j].first < old[i].first) {
            int cc = nr[j++].first;
            ++col_count[cc];
            col_rows[cc].push_back(r);
            heap.push({col_count[cc], cc});
          } else {
            ++i, ++j;
          }
        }
        rows[r].swap(nr);
      }
      row_done[p] = 1;
      col_done[c] = 1;
      for (auto& [cc, v] : rows[p]) {
        if (cc == c) continue;
        --col_count[cc];
        heap.push({col_count[cc], cc});
      }
      ++rank;
    }
  }
};

void normalize_factors(std::vector<mpz_class>& d) {
  for (auto& x : d) x = abs(x);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]);
      mpz_class l = lcm(d[i], d[j]);
      d[i] = g, d[j] = l;
    }
  std::sort(d.begin(), d.end());
}

std::vector<mpz_class> dense_diagonal(std::vector<std::vector<mpz_class>> a) {
  std::vector<mpz_class> diag;
  const size_t R = a.size(), C = R ? a[0].size() : 0;
  size_t t = 0;
  while (t < R && t < C) {
    // Smallest nonzero entry of the trailing block.
    size_t pr = R, pc = C;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (pr == R || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == R) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(a[t][t]);
    ++t;
  }
  return diag;
}

}  // namespace

RankKernelImage rank_kernel_image(const SparseMatrix<mpq_class>& m) {
  RankKernelImage out;
  std::vector<int> owner(m.rows, -1);
  std::vector<SparseVec<mpq_class>> combos;
  for (int j = 0; j < m.cols; ++j) {
    SparseVec<mpq_class> v = m.col[j];
    SparseVec<mpq_class> combo{{j, mpq_class(1)}};
    while (!v.empty() && owner[v.front().first] >= 0) {
      int b = owner[v.front().first];
      mpq_class f = -v.front().second / out.image[b].front().second;
      v = axpy(v, f, out.image[b]);
      combo = axpy(combo, f, combos[b]);
    }
    if (v.empty()) {
      out.kernel.push_back(combo);
    } else {
      owner[v.front().first] = static_cast<int>(out.image.size());
      out.image.push_back(v);
      combos.push_back(combo);
    }
  }
  out.rank = static_cast<int>(out.image.size());
  return out;
}

int rank_q(const SparseMatrix<mpq_class>& m) {
  Eliminator<mpq_class, false> e(m);
  e.run();
  return e.rank;
}

std::vector<mpz_class> smith_normal_form(const SparseMatrix<mpz_class>& m) {
  Eliminator<mpz_class, true> e(m);
  e.run();
  std::vector<mpz_class> factors(e.rank, mpz_class(1));
  std::vector<int> rr, cc;
  for (int r = 0; r < m.rows; ++r)
    if (!e.row_done[r] && !e.rows[r].empty()) rr.push_back(r);
  std::vector<int> col_index(m.cols, -1);
  for (int r : rr)
    for (auto& [c, v] : e.rows[r])
      if (col_index[c] < 0) col_index[c] = static_cast<int>(cc.size()), cc.push_back(c);
  if (!rr.empty()) {
    std::vector<std::vector<mpz_class>> dense(rr.size(), std::vector<mpz_class>(cc.size()));
    for (size_t i = 0; i < rr.size(); ++i)
      for (auto& [c, v] : e.rows[rr[i]]) dense[i][col_index[c]] = v;
    for (auto& d : dense_diagonal(std::move(dense))) factors.push_back(d);
  }
  normalize_factors(factors);
  return factors;
}

EchelonBasis::EchelonBasis(std::vector<int> position) : position_(std::move(position)) {
  row_at_.assign(position_.size(), -1);
  for (size_t r = 0; r < position_.size(); ++r) row_at_[position_[r]] = static_cast<int>(r);
  owner_.assign(position_.size(), -1);
}

SparseVec<mpq_class> EchelonBasis::to_positions(const SparseVec<mpq_class>& v) const {
  SparseVec<mpq_class> out;
  out.reserve(v.size());
  for (auto& [r, x] : v) out.push_back({position_[r], x});
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

SparseVec<mpq_class> EchelonBasis::to_rows(const SparseVec<mpq_class>& v) const {
  SparseVec<mpq_class> out;
  out.reserve(v.size());
  for (auto& [p, x] : v) out.push_back({row_at_[p], x});
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

SparseVec<mpq_class> EchelonBasis::reduce_pos(SparseVec<mpq_class> v) const {
  while (!v.empty() && owner_[v.front().first] >= 0) {
    const auto& b = basis_[owner_[v.front().first]];
    v = axpy(v, mpq_class(-v.front().second), b);  // basis pivots are 1
  }
  return v;
}

bool EchelonBasis::insert(const SparseVec<mpq_class>& v) {
  auto r = reduce_pos(to_positions(v));
  if (r.empty()) return false;
  mpq_class inv = 1 / r.front().second;
  for (auto& e : r) e.second *= inv;
  owner_[r.front().first] = static_cast<int>(basis_.size());
  basis_.push_back(std::move(r));
  return true;
}

SparseVec<mpq_class> EchelonBasis::reduce(const SparseVec<mpq_class>& v) const {
  return to_rows(reduce_pos(to_positions(v)));
}

}  // namespace rpkh
