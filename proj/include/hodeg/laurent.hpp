#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hodeg/integer.hpp"

namespace hodeg {

using ExpVec = std::vector<std::int64_t>;

inline ExpVec add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline ExpVec scaled(const ExpVec& a, std::int64_t k) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], k);
  return r;
}

inline ExpVec negated(const ExpVec& a) { return scaled(a, -1); }

inline std::int64_t dot(const ExpVec& a, const ExpVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

inline bool is_zero_vec(const ExpVec& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

// Element of Z[Z^r]: integer Laurent polynomial in r commuting variables.
class LaurentPoly {
 public:
  using Terms = std::map<ExpVec, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t vars) : vars_(vars) {}

  static LaurentPoly monomial(ExpVec e, Integer c = 1) {
    LaurentPoly p(e.size());
    if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
    return p;
  }

  static LaurentPoly constant(std::size_t vars, Integer c) { return monomial(ExpVec(vars, 0), std::move(c)); }

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const ExpVec& e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  LaurentPoly operator-() const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(add(ea, eb), ca * cb);
    return r;
  }

  LaurentPoly shifted(const ExpVec& e) const {
    LaurentPoly r(vars_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(add(k, e), c);
    return r;
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& [e, c] : terms_) g = gcd(g, c);
    return g;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

  // Descending in the order of the exponent vectors.
  std::string format(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono = format_monomial(e, names);
      Integer mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

  static std::string format_monomial(const ExpVec& e, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += i < names.size() ? names[i] : "e" + std::to_string(i + 1);
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

 private:
  std::size_t vars_ = 0;
  Terms terms_;
};

}  // namespace hodeg
