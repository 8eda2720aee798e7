#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hodeg/error.hpp"
#include "hodeg/oracle.hpp"

namespace hodeg {

// sum c_i t^i with coefficients on the left. Arithmetic that needs the twist
// lives in SkewArithmetic.
template <class E>
class SkewLaurent {
 public:
  using Terms = std::map<std::int64_t, E>;

  SkewLaurent() = default;

  static SkewLaurent monomial(E c, std::int64_t k = 0) {
    SkewLaurent p;
    if (!c.is_zero()) p.terms_.emplace(k, std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::int64_t low() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  std::int64_t high() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  std::int64_t span() const { return high() - low(); }
  const E& leading() const { return terms_.rbegin()->second; }
  const E& trailing() const { return terms_.begin()->second; }

  E coefficient(std::int64_t k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? E() : it->second;
  }

  void add_term(std::int64_t k, const E& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SkewLaurent& operator+=(const SkewLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  SkewLaurent& operator-=(const SkewLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend SkewLaurent operator+(SkewLaurent a, const SkewLaurent& b) { return a += b; }
  friend SkewLaurent operator-(SkewLaurent a, const SkewLaurent& b) { return a -= b; }
  SkewLaurent operator-() const {
    SkewLaurent r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend bool operator==(const SkewLaurent& a, const SkewLaurent& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

// Level 0, and levels n >= 1 once the derived series has stabilised:
// coefficients in Z[Gamma_0-bar], twist trivial.
class AbelianRing {
 public:
  using elem_type = LaurentPoly;
  static constexpr bool commutative = true;

  AbelianRing(const GroupContext& ctx, GenId splitting, std::size_t level = 0)
      : ctx_(&ctx), splitting_(splitting), level_(level), s_image_(ctx.abelian().generator_image(splitting)) {}

  const GroupContext& context() const { return *ctx_; }
  GenId splitting() const { return splitting_; }
  std::size_t level() const { return level_; }

  LaurentPoly zero() const { return LaurentPoly(ctx_->abelian().rank()); }
  LaurentPoly one() const { return LaurentPoly::constant(ctx_->abelian().rank(), 1); }

  // Coefficient of w in normal form (w s^-k) t^k with k = psi(w).
  std::pair<LaurentPoly, std::int64_t> split(const Word& w) const {
    std::int64_t k = ctx_->presentation().weight(w);
    return {LaurentPoly::monomial(add(ctx_->abelian().image(w), scaled(s_image_, -k))), k};
  }

  LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) const { return a * b; }
  LaurentPoly twist(const LaurentPoly& a, std::int64_t) const { return a; }
  LaurentPoly scalar(const Integer& k, const LaurentPoly& a) const { return LaurentPoly::constant(a.vars(), k) * a; }

  std::size_t term_count(const LaurentPoly& a) const { return a.term_count(); }

  std::optional<LaurentPoly> monomial_inverse(const LaurentPoly& a) const {
    if (a.term_count() != 1) return std::nullopt;
    const auto& [e, c] = *a.terms().begin();
    if (c != 1 && c != -1) return std::nullopt;
    return LaurentPoly::monomial(negated(e), c);
  }

  std::pair<LaurentPoly, Integer> first_term(const LaurentPoly& a) const {
    const auto& [e, c] = *a.terms().begin();
    return {LaurentPoly::monomial(e), c};
  }

  UnitVerdict classify(const LaurentPoly& a) const { return ctx_->is_unit(a); }

  bool certifies(const UnitCertificate& cert, const LaurentPoly& a) const {
    const auto* e = std::get_if<LaurentPoly>(&cert.element);
    return e && *e == a;
  }

  std::string format(const LaurentPoly& a) const { return a.format(ctx_->abelian().coordinate_names()); }

 private:
  const GroupContext* ctx_;
  GenId splitting_;
  std::size_t level_;
  ExpVec s_image_;
};

// Levels n >= 1: coefficients are chi-reduced combinations of weight-zero
// words, sigma(g) = s^-1 g s.
class WordRing {
 public:
  using elem_type = GroupRingElem;
  static constexpr bool commutative = false;

  WordRing(const GroupContext& ctx, GenId splitting, std::size_t level)
      : ctx_(&ctx), splitting_(splitting), level_(level), s_(Word::generator(splitting)) {}

  const GroupContext& context() const { return *ctx_; }
  GenId splitting() const { return splitting_; }
  std::size_t level() const { return level_; }

  GroupRingElem zero() const { return {}; }
  GroupRingElem one() const { return GroupRingElem::one(); }

  std::pair<GroupRingElem, std::int64_t> split(const Word& w) const {
    std::int64_t k = ctx_->presentation().weight(w);
    return {GroupRingElem(ctx_->rules().reduce(w * s_.pow(-k))), k};
  }

  GroupRingElem mul(const GroupRingElem& a, const GroupRingElem& b) const { return ctx_->chi_reduce(a * b); }

  // sigma^k(a) = s^-k a s^k.
  GroupRingElem twist(const GroupRingElem& a, std::int64_t k) const {
    if (k == 0) return a;
    Word left = s_.pow(-k), right = s_.pow(k);
    return a.map_words([&](const Word& w) { return ctx_->rules().reduce(left * w * right); });
  }

  GroupRingElem scalar(const Integer& k, const GroupRingElem& a) const { return k * a; }

  std::size_t term_count(const GroupRingElem& a) const { return a.term_count(); }

  std::optional<GroupRingElem> monomial_inverse(const GroupRingElem& a) const {
    if (a.term_count() != 1) return std::nullopt;
    const auto& [w, c] = *a.terms().begin();
    if (c != 1 && c != -1) return std::nullopt;
    return GroupRingElem(ctx_->rules().reduce(w.inverse()), c);
  }

  std::pair<GroupRingElem, Integer> first_term(const GroupRingElem& a) const {
    const auto& [w, c] = *a.terms().begin();
    return {GroupRingElem(w), c};
  }

  UnitVerdict classify(const GroupRingElem& a) const { return ctx_->is_unit(a, level_); }

  bool certifies(const UnitCertificate& cert, const GroupRingElem& a) const {
    const auto* e = std::get_if<GroupRingElem>(&cert.element);
    return e && *e == ctx_->chi_reduce(a);
  }

  std::string format(const GroupRingElem& a) const { return a.format(ctx_->alphabet()); }

 private:
  const GroupContext* ctx_;
  GenId splitting_;
  std::size_t level_;
  Word s_;
};

template <class Ring>
class SkewArithmetic {
 public:
  using E = typename Ring::elem_type;
  using Poly = SkewLaurent<E>;

  explicit SkewArithmetic(const Ring& ring) : ring_(ring) {}
  const Ring& ring() const { return ring_; }

  // (a t^i)(b t^j) = a sigma^-i(b) t^(i+j).
  Poly mul(const Poly& p, const Poly& q) const {
    Poly r;
    for (const auto& [i, a] : p.terms())
      for (const auto& [j, b] : q.terms()) r.add_term(checked_add(i, j), ring_.mul(a, ring_.twist(b, -i)));
    return r;
  }

  // Every word w becomes (w s^-psi(w)) t^psi(w).
  Poly normalize(const GroupRingElem& e) const {
    Poly r;
    for (const auto& [w, c] : e.terms()) {
      auto [coef, k] = ring_.split(w);
      r.add_term(k, ring_.scalar(c, coef));
    }
    return r;
  }

  Poly constant(const E& c) const { return Poly::monomial(c, 0); }

  std::size_t term_count(const Poly& p) const {
    std::size_t n = 0;
    for (const auto& [k, c] : p.terms()) n += ring_.term_count(c);
    return n;
  }

  bool is_one(const Poly& p) const { return p.is_monomial() && p.low() == 0 && p.leading() == ring_.one(); }

  // q with f = p q, by repeatedly cancelling a term of the lead coefficient.
  std::optional<Poly> right_quotient(const Poly& f, const Poly& p, std::size_t max_steps = 0) const {
    if (p.is_zero()) return std::nullopt;
    if (max_steps == 0) max_steps = 8 + 4 * term_count(f);
    Poly r = f, q;
    auto [alpha, ca] = ring_.first_term(p.leading());
    auto alpha_inv = ring_.monomial_inverse(alpha);
    for (std::size_t step = 0; step < max_steps && !r.is_zero(); ++step) {
      auto [beta, cb] = ring_.first_term(r.leading());
      if (cb % ca != 0) return std::nullopt;
      std::int64_t m = r.high(), k = p.high();
      Poly term = Poly::monomial(ring_.scalar(Integer(cb / ca), ring_.twist(ring_.mul(*alpha_inv, beta), k)), m - k);
      q += term;
      r -= mul(p, term);
    }
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  // q with f = q p.
  std::optional<Poly> left_quotient(const Poly& f, const Poly& p, std::size_t max_steps = 0) const {
    if (p.is_zero()) return std::nullopt;
    if (max_steps == 0) max_steps = 8 + 4 * term_count(f);
    Poly r = f, q;
    auto [alpha, ca] = ring_.first_term(p.leading());
    for (std::size_t step = 0; step < max_steps && !r.is_zero(); ++step) {
      auto [beta, cb] = ring_.first_term(r.leading());
      if (cb % ca != 0) return std::nullopt;
      std::int64_t m = r.high(), k = p.high();
      auto twisted_inv = ring_.monomial_inverse(ring_.twist(alpha, -(m - k)));
      Poly term = Poly::monomial(ring_.scalar(Integer(cb / ca), ring_.mul(beta, *twisted_inv)), m - k);
      q += term;
      r -= mul(term, p);
    }
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  std::string format(const Poly& p) const {
    if (p.is_zero()) return "0";
    std::string out;
    bool several = p.terms().size() > 1;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
      const auto& [k, c] = *it;
      std::string cs = ring_.format(c);
      bool compound = ring_.term_count(c) > 1;
      std::string tpart = k == 0 ? "" : k == 1 ? "t" : "t^" + std::to_string(k);
      std::string piece;
      bool negative = false;
      if (compound) {
        piece = (several || !tpart.empty()) ? "(" + cs + ")" : cs;
        if (!tpart.empty()) piece += "*" + tpart;
      } else {
        if (cs[0] == '-') {
          negative = true;
          cs = cs.substr(1);
        }
        if (tpart.empty()) piece = cs;
        else if (cs == "1") piece = tpart;
        else piece = cs + "*" + tpart;
      }
      if (out.empty()) out = negative ? "-" + piece : piece;
      else out += negative ? " - " + piece : " + " + piece;
    }
    return out;
  }

 private:
  const Ring& ring_;
};

}  // namespace hodeg
