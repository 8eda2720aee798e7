#pragma once

#include <map>
#include <string>
#include <utility>

#include "hodeg/integer.hpp"
#include "hodeg/word.hpp"

namespace hodeg {

// Finite Z-linear combination of free-group words.
class GroupRingElem {
 public:
  using Terms = std::map<Word, Integer>;

  GroupRingElem() = default;
  GroupRingElem(const Word& w, Integer c = 1) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(w, std::move(c));
  }

  static GroupRingElem one() { return GroupRingElem(Word()); }
  static GroupRingElem integer(Integer c) { return GroupRingElem(Word(), std::move(c)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(const Word& w, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Integer coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  Integer augmentation() const {
    Integer s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  GroupRingElem& operator+=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  GroupRingElem& operator-=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
  friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }

  GroupRingElem operator-() const {
    GroupRingElem r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }

  friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
    return r;
  }

  friend GroupRingElem operator*(const Integer& k, const GroupRingElem& a) {
    GroupRingElem r;
    if (k == 0) return r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, k * c);
    return r;
  }

  // Applies a map on words termwise and collects.
  template <class F>
  GroupRingElem map_words(F&& f) const {
    GroupRingElem r;
    for (const auto& [w, c] : terms_) r.add_term(f(w), c);
    return r;
  }

  friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const GroupRingElem& a, const GroupRingElem& b) { return a.terms_ < b.terms_; }

  // Terms in shortlex order: "x*y*x^-1 - y", "1 - y".
  std::string format(const Alphabet& alphabet) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      Integer mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (w.is_identity()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += format_word(w, alphabet);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

}  // namespace hodeg
