#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace rpkh {

// Integer Laurent polynomial in one variable.
struct LaurentPoly {
  std::map<int, int64_t> c;

  static LaurentPoly monomial(int e, int64_t v = 1);
  void add(int e, int64_t v);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c == o.c; }
  bool zero() const { return c.empty(); }
  LaurentPoly shifted(int e) const;
  // Exact division by q + q^-1; throws std::domain_error("not divisible").
  LaurentPoly div_q_plus_qinv() const;
  std::string str(const char* var = "q") const;
};

// Integer Laurent polynomial in q and x, keyed by (q exponent, x exponent).
struct BiPoly {
  std::map<std::pair<int, int>, int64_t> c;

  void add(int j, int k, int64_t v);
  bool operator==(const BiPoly& o) const { return c == o.c; }
  LaurentPoly at_x(int k) const;
  LaurentPoly at_x_one() const;
  std::string str() const;
};

BiPoly operator*(const LaurentPoly& qpart, const BiPoly& b);

}  // namespace rpkh
