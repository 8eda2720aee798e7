#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hodeg/integer.hpp"

namespace hodeg {

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  std::size_t rows = a.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  IntMatrix diagonal;
  IntMatrix U, V, V_inverse;
  std::vector<Integer> invariants;  // nonzero diagonal entries, positive
  std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& input, std::size_t cols) {
  SmithForm f;
  f.rows = input.size();
  f.cols = cols;
  IntMatrix a = input;
  for (auto& row : a) row.resize(cols, 0);
  IntMatrix u = identity_matrix(f.rows);
  IntMatrix v = identity_matrix(cols);
  IntMatrix vinv = identity_matrix(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
  };
  // row_i -= q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < f.rows; ++c) u[i][c] -= q * u[j][c];
  };
  // col_i -= q * col_j; V_inverse gets the inverse row operation.
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (auto& row : a) row[i] -= q * row[j];
    for (auto& row : v) row[i] -= q * row[j];
    for (std::size_t c = 0; c < cols; ++c) vinv[j][c] += q * vinv[i][c];
  };

  std::size_t t = 0;
  while (t < f.rows && t < cols) {
    std::size_t pi = 0, pj = 0;
    bool found = false;
    for (std::size_t i = t; i < f.rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < f.rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(i, t, q);
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(j, t, q);
        if (a[t][j] != 0) dirty = true;
      }
      if (!dirty) {
        // Divisibility: fold an offending row into the pivot row.
        for (std::size_t i = t + 1; i < f.rows && !dirty; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a[i][j] % a[t][t] != 0) {
              add_row(t, i, -1);
              dirty = true;
              break;
            }
        if (!dirty) break;
      }
      std::size_t mi = t, mj = t;
      for (std::size_t i = t; i < f.rows; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[mi][mj])) {
          mi = i;
          mj = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[mi][mj])) {
          mi = t;
          mj = j;
        }
      swap_rows(t, mi);
      swap_cols(t, mj);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    f.invariants.push_back(a[t][t]);
    ++t;
  }
  f.rank = t;
  f.diagonal = std::move(a);
  f.U = std::move(u);
  f.V = std::move(v);
  f.V_inverse = std::move(vinv);
  return f;
}

}  // namespace hodeg
