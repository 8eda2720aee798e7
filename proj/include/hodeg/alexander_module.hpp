#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "hodeg/abelian.hpp"
#include "hodeg/fox.hpp"
#include "hodeg/qpoly.hpp"

namespace hodeg {

using QVector = std::vector<QLaurent>;

// Q[t^±]^k modulo the span of given rows, kept in Hermite form: pivots are
// monic polynomials with nonzero constant term.
class RelativeModule {
 public:
  RelativeModule() = default;

  RelativeModule(std::vector<QVector> rows, std::size_t k) : k_(k) {
    for (auto& r : rows) r.resize(k);
    std::erase_if(rows, [](const QVector& r) { return std::all_of(r.begin(), r.end(), [](const QLaurent& x) { return x.is_zero(); }); });
    std::size_t cur = 0;
    for (std::size_t col = 0; col < k_ && cur < rows.size(); ++col) {
      for (;;) {
        std::size_t best = rows.size();
        for (std::size_t r = cur; r < rows.size(); ++r)
          if (!rows[r][col].is_zero() && (best == rows.size() || rows[r][col].span() < rows[best][col].span())) best = r;
        if (best == rows.size()) break;
        std::swap(rows[cur], rows[best]);
        bool clean = true;
        for (std::size_t r = cur + 1; r < rows.size(); ++r) {
          if (rows[r][col].is_zero()) continue;
          QLaurent q = laurent_quotient(rows[r][col], rows[cur][col]);
          subtract_multiple(rows[r], rows[cur], q);
          if (!rows[r][col].is_zero()) clean = false;
        }
        if (clean) {
          const QLaurent& p = rows[cur][col];
          QLaurent unit = QLaurent::monomial(-p.low(), Rational(1) / p.poly().lead());
          for (auto& x : rows[cur]) x = unit * x;
          pivot_cols_.push_back(col);
          ++cur;
          break;
        }
      }
    }
    rows.resize(cur);
    rows_ = std::move(rows);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const QPoly& p = rows_[i][pivot_cols_[i]].poly();
      inverse_t_.push_back(p.degree() > 0 ? inverse_of_t(p) : QPoly());
    }
  }

  std::size_t ambient_rank() const { return k_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<QVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }

  // Cokernel is Q[t^±] free of rank one.
  bool is_free_rank_one() const {
    if (k_ - rows_.size() != 1) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][pivot_cols_[i]].span() != 0) return false;
    return true;
  }

  // Canonical representative of the class of v.
  QVector reduce(QVector v) const {
    v.resize(k_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t c = pivot_cols_[i];
      if (v[c].is_zero()) continue;
      const QPoly& p = rows_[i][c].poly();
      QLaurent rem;
      if (p.degree() > 0) {
        QPoly a = v[c].poly();
        std::int64_t e = v[c].low();
        QPoly shift = e >= 0 ? QPoly::monomial(static_cast<std::size_t>(e)) : power_mod(inverse_t_[i], static_cast<std::size_t>(-e), p);
        rem = QLaurent(0, (shift * a).divmod(p).second);
      }
      QLaurent diff = v[c] - rem;
      if (!diff.is_zero()) subtract_multiple(v, rows_[i], exact_quotient(diff, rows_[i][c]));
    }
    return v;
  }

 private:
  // q with span(a - q b) < span(b).
  static QLaurent laurent_quotient(const QLaurent& a, const QLaurent& b) {
    auto [q, r] = a.poly().divmod(b.poly());
    return QLaurent(a.low() - b.low(), q);
  }

  static QLaurent exact_quotient(const QLaurent& a, const QLaurent& b) {
    auto [q, r] = a.poly().divmod(b.poly());
    if (!r.is_zero()) throw precondition_error("inexact Laurent division");
    return QLaurent(a.low() - b.low(), q);
  }

  static void subtract_multiple(QVector& target, const QVector& row, const QLaurent& q) {
    if (q.is_zero()) return;
    for (std::size_t j = 0; j < target.size(); ++j)
      if (!row[j].is_zero()) target[j] = target[j] - q * row[j];
  }

  // t^-1 mod p for p(0) != 0: p = t*q + p0 gives t*(-q/p0) = 1 mod p.
  static QPoly inverse_of_t(const QPoly& p) {
    Rational p0 = p.coeff(0);
    return Rational(-1) / p0 * p.shifted_down(1);
  }

  static QPoly power_mod(const QPoly& base, std::size_t e, const QPoly& p) {
    QPoly result = QPoly::constant(1), b = base;
    while (e > 0) {
      if (e & 1) result = (result * b).divmod(p).second;
      b = (b * b).divmod(p).second;
      e >>= 1;
    }
    return result;
  }

  std::size_t k_ = 0;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<QPoly> inverse_t_;
};

// Image of a word under w -> (ab(w), class of Fox(w) specialised by lambda).
struct MetabelianClass {
  ExpVec abelian;
  QVector fox;
  friend bool operator==(const MetabelianClass& a, const MetabelianClass& b) { return a.abelian == b.abelian && a.fox == b.fox; }
  friend bool operator<(const MetabelianClass& a, const MetabelianClass& b) {
    if (a.abelian != b.abelian) return a.abelian < b.abelian;
    return std::lexicographical_compare(a.fox.begin(), a.fox.end(), b.fox.begin(), b.fox.end());
  }
};

// Homomorphism G -> Z^r ⋉ M_lambda with M_lambda = Q[t^±]^k / <Fox(r_i)^lambda>,
// t acting through lambda: Gamma_0 -> Z. The target is metabelian with
// torsion-free kernel, so the map factors through Gamma_1.
class MetabelianMap {
 public:
  MetabelianMap() = default;

  MetabelianMap(const Presentation& p, const AbelianMap& ab, ExpVec lambda)
      : ab_(ab), lambda_(std::move(lambda)), k_(p.generator_count()) {
    std::vector<QVector> rows;
    for (const auto& r : p.relators()) rows.push_back(fox_vector(r));
    module_ = RelativeModule(std::move(rows), k_);
  }

  const ExpVec& lambda() const { return lambda_; }
  const RelativeModule& module() const { return module_; }

  // Fox gradient of w with every word u replaced by t^{lambda(ab(u))}.
  QVector fox_vector(const Word& w) const {
    QVector out(k_);
    std::int64_t prefix = 0;
    for (auto l : w.letters()) {
      GenId g = Word::letter_gen(l);
      std::int64_t lg = dot(ab_.generator_image(g), lambda_);
      if (l > 0) {
        out[g] = out[g] + QLaurent::monomial(prefix, 1);
        prefix += lg;
      } else {
        prefix -= lg;
        out[g] = out[g] - QLaurent::monomial(prefix, 1);
      }
    }
    return out;
  }

  MetabelianClass image(const Word& w) const { return {ab_.image(w), module_.reduce(fox_vector(w))}; }

 private:
  AbelianMap ab_;
  ExpVec lambda_;
  std::size_t k_ = 0;
  RelativeModule module_;
};

}  // namespace hodeg
