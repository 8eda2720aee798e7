#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/integer.hpp"

namespace hodeg {

// Dense polynomial over Q in t, coefficient i multiplies t^i.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static QPoly constant(const Rational& q) { return QPoly(std::vector<Rational>{q}); }
  static QPoly monomial(std::size_t deg, const Rational& q = 1) {
    std::vector<Rational> c(deg + 1, 0);
    c[deg] = q;
    return QPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  // Largest k with t^k dividing; 0 for the zero polynomial.
  std::size_t low_degree() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return k == c_.size() ? 0 : k;
  }

  QPoly& operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != 0)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }

  friend QPoly operator*(const Rational& q, const QPoly& a) {
    if (q == 0) return QPoly();
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= q;
    return QPoly(std::move(c));
  }

  QPoly shifted_up(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Rational> c(k, 0);
    c.insert(c.end(), c_.begin(), c_.end());
    return QPoly(std::move(c));
  }

  QPoly shifted_down(std::size_t k) const {
    if (k > c_.size()) return QPoly();
    return QPoly(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  // Euclidean division; divisor must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
    if (d.is_zero()) throw precondition_error("polynomial division by zero");
    QPoly r = *this;
    if (r.degree() < d.degree()) return {QPoly(), r};
    std::vector<Rational> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), 0);
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      Rational f = r.lead() / d.lead();
      q[shift] = f;
      r -= (f * d).shifted_up(shift);
    }
    return {QPoly(std::move(q)), r};
  }

  QPoly monic() const {
    if (is_zero()) return *this;
    return Rational(1) / lead() * *this;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const QPoly& a, const QPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Element t^low * p of Q[t, t^-1] with p(0) != 0, or zero.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(std::int64_t low, QPoly p) : low_(low), p_(std::move(p)) { normalize(); }

  static QLaurent monomial(std::int64_t e, const Rational& q = 1) { return QLaurent(e, QPoly::constant(q)); }

  bool is_zero() const { return p_.is_zero(); }
  std::int64_t low() const { return low_; }
  const QPoly& poly() const { return p_; }
  std::int64_t span() const { return p_.degree() < 0 ? 0 : p_.degree(); }

  friend QLaurent operator+(const QLaurent& a, const QLaurent& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t m = std::min(a.low_, b.low_);
    return QLaurent(m, a.p_.shifted_up(static_cast<std::size_t>(a.low_ - m)) + b.p_.shifted_up(static_cast<std::size_t>(b.low_ - m)));
  }
  QLaurent operator-() const { return QLaurent(low_, Rational(-1) * p_); }
  friend QLaurent operator-(const QLaurent& a, const QLaurent& b) { return a + (-b); }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    if (a.is_zero() || b.is_zero()) return QLaurent();
    return QLaurent(checked_add(a.low_, b.low_), a.p_ * b.p_);
  }

  friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.low_ == b.low_ && a.p_ == b.p_; }
  friend bool operator<(const QLaurent& a, const QLaurent& b) {
    if (a.low_ != b.low_) return a.low_ < b.low_;
    return a.p_ < b.p_;
  }

  std::string format() const {
    if (is_zero()) return "0";
    std::string out;
    const auto& c = p_.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      std::int64_t e = low_ + static_cast<std::int64_t>(i);
      Rational mag = abs(c[i]);
      out += out.empty() ? (c[i] < 0 ? "-" : "") : (c[i] < 0 ? " - " : " + ");
      if (e == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += e == 1 ? "t" : "t^" + std::to_string(e);
    }
    return out;
  }

 private:
  void normalize() {
    if (p_.is_zero()) {
      low_ = 0;
      return;
    }
    std::size_t k = p_.low_degree();
    if (k > 0) {
      p_ = p_.shifted_down(k);
      low_ = checked_add(low_, static_cast<std::int64_t>(k));
    }
  }
  std::int64_t low_ = 0;
  QPoly p_;
};

}  // namespace hodeg
