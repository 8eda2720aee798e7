#pragma once

// Determinantal-ideal oracle for the level-0 degree. Works directly on relator
// letter sequences: abelianized Fox derivatives in Z[H_1/torsion], the gcd of
// the maximal nonvanishing minors, and its span under psi. Shares no code with
// the library beyond the presentation parser.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hodeg/presentation.hpp"

namespace oracle {

using Exp = std::vector<long>;
using Poly = std::map<Exp, mpz_class>;

inline void add_term(Poly& p, const Exp& e, const mpz_class& c) {
  if (c == 0) return;
  auto& x = p[e];
  x += c;
  if (x == 0) p.erase(e);
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b) add_term(r, e, c);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [e, c] : b) add_term(r, e, -c);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exp e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(r, e, ca * cb);
    }
  return r;
}

inline Poly constant(std::size_t vars, const mpz_class& c) {
  Poly p;
  add_term(p, Exp(vars, 0), c);
  return p;
}

// Multiply by a monomial so every exponent is nonnegative and each variable
// attains exponent zero.
inline Poly shift_to_origin(const Poly& p) {
  if (p.empty()) return p;
  std::size_t v = p.begin()->first.size();
  Exp lo = p.begin()->first;
  for (const auto& [e, c] : p)
    for (std::size_t i = 0; i < v; ++i) lo[i] = std::min(lo[i], e[i]);
  Poly r;
  for (const auto& [e, c] : p) {
    Exp s = e;
    for (std::size_t i = 0; i < v; ++i) s[i] -= lo[i];
    r[s] = c;
  }
  return r;
}

// Polynomials in variables [0, v); variable v - 1 is the main one.
inline long degree(const Poly& p, std::size_t v) {
  long d = -1;
  for (const auto& [e, c] : p) d = std::max(d, e[v - 1]);
  return d;
}

inline Poly coefficient(const Poly& p, std::size_t v, long k) {
  Poly r;
  for (const auto& [e, c] : p)
    if (e[v - 1] == k) {
      Exp s = e;
      s[v - 1] = 0;
      r[s] = c;
    }
  return r;
}

inline Poly shift_main(const Poly& p, std::size_t v, long k) {
  Poly r;
  for (const auto& [e, c] : p) {
    Exp s = e;
    s[v - 1] += k;
    r[s] = c;
  }
  return r;
}

// Exact quotient a / b, or nullopt.
inline std::optional<Poly> divide(Poly a, const Poly& b, std::size_t v) {
  if (b.empty()) throw std::domain_error("division by zero");
  if (v == 0) {
    mpz_class x = a.empty() ? mpz_class(0) : a.begin()->second;
    const mpz_class& y = b.begin()->second;
    if (x % y != 0) return std::nullopt;
    return a.empty() ? Poly{} : constant(a.begin()->first.size(), x / y);
  }
  Poly q;
  long db = degree(b, v);
  Poly lb = coefficient(b, v, db);
  while (!a.empty()) {
    long da = degree(a, v);
    if (da < db) return std::nullopt;
    auto c = divide(coefficient(a, v, da), lb, v - 1);
    if (!c) return std::nullopt;
    Poly term = shift_main(*c, v, da - db);
    q = add(q, term);
    a = sub(a, mul(term, b));
  }
  return q;
}

inline Poly gcd(const Poly& a, const Poly& b, std::size_t v);

inline Poly content(const Poly& p, std::size_t v) {
  Poly g;
  for (long k = 0; k <= degree(p, v); ++k) {
    Poly c = coefficient(p, v, k);
    if (!c.empty()) g = gcd(g, c, v - 1);
  }
  return g;
}

// Leading coefficient in lexicographic order made positive.
inline Poly normalize_sign(const Poly& p) {
  if (p.empty() || p.rbegin()->second > 0) return p;
  Poly r;
  for (const auto& [e, c] : p) r[e] = -c;
  return r;
}

inline Poly primitive_part(const Poly& p, std::size_t v) {
  if (p.empty()) return p;
  return normalize_sign(*divide(p, content(p, v), v));
}

inline Poly gcd(const Poly& a, const Poly& b, std::size_t v) {
  if (a.empty()) return normalize_sign(b);
  if (b.empty()) return normalize_sign(a);
  if (v == 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.begin()->second.get_mpz_t(), b.begin()->second.get_mpz_t());
    return constant(a.begin()->first.size(), g);
  }
  Poly g = gcd(content(a, v), content(b, v), v - 1);
  Poly x = primitive_part(a, v), y = primitive_part(b, v);
  if (degree(x, v) < degree(y, v)) std::swap(x, y);
  while (!y.empty()) {
    // pseudo-remainder of x by y
    Poly r = x;
    long dy = degree(y, v);
    Poly ly = coefficient(y, v, dy);
    while (!r.empty() && degree(r, v) >= dy) {
      long dr = degree(r, v);
      r = sub(mul(ly, r), mul(shift_main(coefficient(r, v, dr), v, dr - dy), y));
    }
    x = y;
    y = primitive_part(r, v);
  }
  return normalize_sign(mul(g, primitive_part(x, v)));
}

inline Poly laurent_gcd(const Poly& a, const Poly& b) {
  if (a.empty()) return shift_to_origin(normalize_sign(b));
  std::size_t v = a.begin()->first.size();
  return shift_to_origin(gcd(shift_to_origin(a), shift_to_origin(b), v));
}

using Matrix = std::vector<std::vector<Poly>>;

inline Poly det(const Matrix& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly total;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].empty()) continue;
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    Poly t = mul(m[0][j], det(minor));
    total = (j % 2 == 0) ? add(total, t) : sub(total, t);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Basis of {v in Z^k : E v = 0} by unimodular column operations.
inline std::vector<std::vector<mpz_class>> integer_kernel(std::vector<std::vector<mpz_class>> E, std::size_t k) {
  std::vector<std::vector<mpz_class>> U(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) U[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& f) {  // col dst -= f * col src
    for (auto& row : E) row[dst] -= f * row[src];
    for (auto& row : U) row[dst] -= f * row[src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : E) std::swap(row[a], row[b]);
    for (auto& row : U) std::swap(row[a], row[b]);
  };
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < E.size() && pivot < k; ++i) {
    for (;;) {
      std::size_t best = k;
      for (std::size_t j = pivot; j < k; ++j)
        if (E[i][j] != 0 && (best == k || abs(E[i][j]) < abs(E[i][best]))) best = j;
      if (best == k) break;
      col_swap(pivot, best);
      bool done = true;
      for (std::size_t j = pivot + 1; j < k; ++j) {
        if (E[i][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), E[i][j].get_mpz_t(), E[i][pivot].get_mpz_t());
        col_op(j, pivot, q);
        if (E[i][j] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t j = pivot; j < k; ++j) {
    std::vector<mpz_class> v(k);
    for (std::size_t r = 0; r < k; ++r) v[r] = U[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Coordinates c with sum c_i b_i = target, by rational elimination.
inline std::vector<mpq_class> solve_in_basis(const std::vector<std::vector<mpz_class>>& b, const std::vector<mpz_class>& target) {
  std::size_t n = b.size(), k = target.size();
  std::vector<std::vector<mpq_class>> a(k, std::vector<mpq_class>(n + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = b[c][r];
    a[r][n] = target[r];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = row;
    while (p < k && a[p][c] == 0) ++p;
    if (p == k) throw std::logic_error("dependent basis");
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[row][c];
      for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(row++);
  }
  for (std::size_t r = row; r < k; ++r)
    if (a[r][n] != 0) throw std::logic_error("target outside the span");
  std::vector<mpq_class> x(n);
  for (std::size_t c = 0; c < n; ++c) x[c] = a[pivots[c]][n] / a[pivots[c]][c];
  return x;
}

struct Result {
  std::size_t betti = 0;
  std::size_t rank = 0;        // of the abelianized Jacobian
  std::int64_t span = 0;       // psi-span of the gcd of maximal minors
  std::int64_t free_rank = 0;  // generators - rank - 1
};

inline Result level_zero(const hodeg::Presentation& p) {
  std::size_t k = p.generator_count(), l = p.relators().size();
  std::vector<std::vector<mpz_class>> E(l, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < l; ++i)
    for (auto letter : p.relators()[i].letters()) E[i][std::abs(letter) - 1] += letter > 0 ? 1 : -1;
  auto phi = integer_kernel(E, k);
  Result res;
  res.betti = phi.size();
  if (res.betti == 0) return res;
  std::vector<mpz_class> psi(k);
  for (std::size_t g = 0; g < k; ++g) psi[g] = p.weights()[g];
  auto c = solve_in_basis(phi, psi);

  std::size_t b = res.betti;
  auto project = [&](const std::vector<long>& free) {
    Exp e(b, 0);
    for (std::size_t i = 0; i < b; ++i) {
      mpz_class s = 0;
      for (std::size_t g = 0; g < k; ++g) s += phi[i][g] * free[g];
      e[i] = s.get_si();
    }
    return e;
  };
  // d r / d x_j: + prefix for x_j, - prefix * x_j^-1 for x_j^-1.
  Matrix J(l, std::vector<Poly>(k));
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<long> prefix(k, 0);
    for (auto letter : p.relators()[i].letters()) {
      std::size_t g = static_cast<std::size_t>(std::abs(letter) - 1);
      if (letter > 0) {
        add_term(J[i][g], project(prefix), 1);
        ++prefix[g];
      } else {
        --prefix[g];
        add_term(J[i][g], project(prefix), -1);
      }
    }
  }
  Poly g;
  for (std::size_t s = std::min(l, k); s >= 1; --s) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(l, s, 0, cur, rows);
    subsets(k, s, 0, cur, cols);
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        Matrix m;
        for (auto r : rs) {
          std::vector<Poly> row;
          for (auto cc : cs) row.push_back(J[r][cc]);
          m.push_back(std::move(row));
        }
        Poly d = det(m);
        if (!d.empty()) g = laurent_gcd(g, d);
      }
    if (!g.empty()) {
      res.rank = s;
      break;
    }
  }
  res.free_rank = static_cast<std::int64_t>(k - res.rank) - 1;
  if (g.empty()) return res;
  std::optional<mpq_class> lo, hi;
  for (const auto& [e, coef] : g) {
    mpq_class w = 0;
    for (std::size_t i = 0; i < b; ++i) w += c[i] * e[i];
    if (!lo || w < *lo) lo = w;
    if (!hi || w > *hi) hi = w;
  }
  mpq_class span = *hi - *lo;
  if (span.get_den() != 1) throw std::logic_error("fractional span");
  res.span = span.get_num().get_si();
  return res;
}

}  // namespace oracle
