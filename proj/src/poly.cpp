#include "rpkh/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace rpkh {

LaurentPoly LaurentPoly::monomial(int e, int64_t v) {
  LaurentPoly p;
  p.add(e, v);
  return p;
}

void LaurentPoly::add(int e, int64_t v) {
  if (v == 0) return;
  auto& x = c[e];
  x += v;
  if (x == 0) c.erase(e);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto [e, v] : o.c) r.add(e, v);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto [e, v] : o.c) r.add(e, -v);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto [e1, v1] : c)
    for (auto [e2, v2] : o.c) r.add(e1 + e2, v1 * v2);
  return r;
}

LaurentPoly LaurentPoly::shifted(int e) const {
  LaurentPoly r;
  for (auto [k, v] : c) r.c[k + e] = v;
  return r;
}

LaurentPoly LaurentPoly::div_q_plus_qinv() const {
  // Peel off the top term: a q^e = a q^{e-1} (q + q^-1) - a q^{e-2}.
  LaurentPoly rem = *this, quot;
  while (!rem.zero()) {
    auto [e, v] = *rem.c.rbegin();
    if (rem.c.size() == 1 || e - 2 < rem.c.begin()->first) throw std::domain_error("not divisible");
    quot.add(e - 1, v);
    rem.add(e, -v);
    rem.add(e - 2, -v);
  }
  return quot;
}

static void term(std::ostringstream& os, int64_t v, bool first) {
  if (v < 0)
    os << (first ? "-" : " - ");
  else if (!first)
    os << " + ";
  int64_t a = v < 0 ? -v : v;
  if (a != 1) os << a;
}

std::string LaurentPoly::str(const char* var) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    auto [e, v] = *it;
    term(os, v, first);
    int64_t a = v < 0 ? -v : v;
    if (e == 0) {
      if (a == 1) os << 1;
    } else {
      if (a != 1) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

void BiPoly::add(int j, int k, int64_t v) {
  if (v == 0) return;
  auto& x = c[{j, k}];
  x += v;
  if (x == 0) c.erase({j, k});
}

LaurentPoly BiPoly::at_x(int k) const {
  LaurentPoly r;
  for (auto& [jk, v] : c)
    if (jk.second == k) r.add(jk.first, v);
  return r;
}

LaurentPoly BiPoly::at_x_one() const {
  LaurentPoly r;
  for (auto& [jk, v] : c) r.add(jk.first, v);
  return r;
}

std::string BiPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    auto [jk, v] = *it;
    term(os, v, first);
    int64_t a = v < 0 ? -v : v;
    bool any = false;
    auto factor = [&](const char* var, int e) {
      if (e == 0) return;
      os << (any || a != 1 ? "*" : "") << var;
      if (e != 1) os << "^" << e;
      any = true;
    };
    factor("q", jk.first);
    factor("x", jk.second);
    if (!any && a == 1) os << 1;
    first = false;
  }
  return os.str();
}

BiPoly operator*(const LaurentPoly& qpart, const BiPoly& b) {
  BiPoly r;
  for (auto [e, v] : qpart.c)
    for (auto& [jk, w] : b.c) r.add(jk.first + e, jk.second, v * w);
  return r;
}

}  // namespace rpkh
