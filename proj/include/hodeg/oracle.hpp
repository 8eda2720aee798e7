#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hodeg/abelian.hpp"
#include "hodeg/alexander_module.hpp"
#include "hodeg/fox.hpp"
#include "hodeg/group_ring.hpp"
#include "hodeg/laurent.hpp"

namespace hodeg {

enum class CertificateKind { AbelianNonzero, OneMinusNontrivial, Monomial, MetabelianDistinct, UserSupplied };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::AbelianNonzero: return "abelian-nonzero";
    case CertificateKind::OneMinusNontrivial: return "one-minus-nontrivial";
    case CertificateKind::Monomial: return "monomial";
    case CertificateKind::MetabelianDistinct: return "metabelian-distinct";
    case CertificateKind::UserSupplied: return "user-supplied";
  }
  return "?";
}

// Evidence that an element of Z[Gamma_n-bar] is nonzero, hence a unit in K_n.
// The element is either a combination of words or, at level 0, its abelian
// projection.
struct UnitCertificate {
  CertificateKind kind = CertificateKind::Monomial;
  std::size_t level = 0;
  std::variant<GroupRingElem, LaurentPoly> element;
  std::string element_text;
  std::string evidence;
  LaurentPoly projection;
  Word witness;
  ExpVec lambda;
  MetabelianClass witness_class;
  Integer witness_sum;
};

enum class Verdict { Zero, Unit, Undecided };

struct UnitVerdict {
  Verdict verdict = Verdict::Undecided;
  std::optional<UnitCertificate> certificate;
};

enum class Distinction { Distinct, Equal, Unknown };

// Coefficient oracle for one presentation: abelian projection, chi-rewriting
// and the metabelian maps used to certify nonvanishing at levels n >= 1.
class GroupContext {
 public:
  explicit GroupContext(Presentation p) : p_(std::move(p)), ab_(p_), rules_(p_.relators()) {
    std::vector<ExpVec> lambdas;
    auto push = [&](ExpVec v) {
      for (const auto& l : lambdas)
        if (l == v) return;
      lambdas.push_back(std::move(v));
    };
    std::size_t r = ab_.rank();
    push(ab_.psi_bar());
    if (r >= 2) {
      ExpVec generic(r);
      std::int64_t c = 1;
      for (std::size_t i = 0; i < r; ++i, c *= 11) generic[i] = c;
      push(generic);
      for (std::size_t i = 0; i < r; ++i) {
        ExpVec e(r, 0);
        e[i] = 1;
        push(e);
      }
    }
    for (auto& l : lambdas) maps_.emplace_back(p_, ab_, std::move(l));
    stabilized_ = r == 1 && maps_.front().module().is_free_rank_one();
  }

  const Presentation& presentation() const { return p_; }
  const Alphabet& alphabet() const { return p_.alphabet(); }
  const AbelianMap& abelian() const { return ab_; }
  const RewriteSystem& rules() const { return rules_; }
  const std::vector<MetabelianMap>& metabelian_maps() const { return maps_; }
  std::size_t betti() const { return ab_.rank(); }

  // First Betti number one and H1 of the infinite cyclic cover rationally
  // trivial: then Gamma_n = Gamma_0 for all n.
  bool stabilized() const { return stabilized_; }

  GroupRingElem chi_reduce(const GroupRingElem& e) const { return rules_.reduce(e); }

  LaurentPoly abelian_projection(const GroupRingElem& e) const {
    LaurentPoly out(ab_.rank());
    for (const auto& [w, c] : e.terms()) out.add_term(ab_.image(w), c);
    return out;
  }

  // Precondition: every word has weight zero.
  LaurentPoly project_to_abelian(const GroupRingElem& e) const {
    for (const auto& [w, c] : e.terms())
      if (p_.weight(w) != 0) throw precondition_error("project_to_abelian: " + p_.format(w) + " has nonzero weight");
    return abelian_projection(e);
  }

  void add_user_unit(const GroupRingElem& e, std::string label) { user_units_.emplace(chi_reduce(e), std::move(label)); }

  UnitVerdict is_unit(const GroupRingElem& raw, std::size_t n) const {
    GroupRingElem e = chi_reduce(raw);
    UnitCertificate cert;
    cert.level = n;
    cert.element = e;
    cert.element_text = e.format(alphabet());
    if (n == 0 || stabilized_) {
      LaurentPoly proj = abelian_projection(e);
      if (proj.is_zero()) return {Verdict::Zero, std::nullopt};
    } else if (e.is_zero()) {
      return {Verdict::Zero, std::nullopt};
    }
    if (e.is_monomial()) {
      cert.kind = CertificateKind::Monomial;
      cert.witness = e.terms().begin()->first;
      cert.evidence = "single term";
      return {Verdict::Unit, cert};
    }
    if (auto a = one_minus_witness(e)) {
      cert.kind = CertificateKind::OneMinusNontrivial;
      cert.witness = *a;
      cert.evidence = "abelian image of " + p_.format(*a) + " is nonzero";
      return {Verdict::Unit, cert};
    }
    LaurentPoly proj = abelian_projection(e);
    if (!proj.is_zero()) {
      cert.kind = CertificateKind::AbelianNonzero;
      cert.projection = proj;
      cert.evidence = "abelian projection " + proj.format(ab_.coordinate_names());
      return {Verdict::Unit, cert};
    }
    for (const auto& map : maps_) {
      std::map<MetabelianClass, Integer> sums;
      for (const auto& [w, c] : e.terms()) sums[map.image(w)] += c;
      for (const auto& [cls, s] : sums)
        if (s != 0) {
          cert.kind = CertificateKind::MetabelianDistinct;
          cert.lambda = map.lambda();
          cert.witness_class = cls;
          cert.witness_sum = s;
          cert.evidence = "metabelian class with coefficient sum " + s.get_str();
          return {Verdict::Unit, cert};
        }
    }
    if (auto it = user_units_.find(e); it != user_units_.end()) {
      cert.kind = CertificateKind::UserSupplied;
      cert.evidence = it->second;
      return {Verdict::Unit, cert};
    }
    return {Verdict::Undecided, std::nullopt};
  }

  // Level 0 coefficients are already abelian projections.
  UnitVerdict is_unit(const LaurentPoly& e) const {
    if (e.is_zero()) return {Verdict::Zero, std::nullopt};
    UnitCertificate cert;
    cert.level = 0;
    cert.element = e;
    cert.element_text = e.format(ab_.coordinate_names());
    cert.projection = e;
    cert.kind = e.term_count() == 1 ? CertificateKind::Monomial : CertificateKind::AbelianNonzero;
    cert.evidence = e.term_count() == 1 ? "single term" : "nonzero in Z[Gamma_0]";
    return {Verdict::Unit, cert};
  }

  // Both words must have trivial image in Gamma_0.
  Distinction metabelian_distinguisher(const Word& g, const Word& h) const {
    if (!is_zero_vec(ab_.image(g)) || !is_zero_vec(ab_.image(h)))
      throw precondition_error("metabelian_distinguisher: arguments must have trivial abelian image");
    if (rules_.reduce(g) == rules_.reduce(h)) return Distinction::Equal;
    for (const auto& map : maps_)
      if (!(map.image(g) == map.image(h))) return Distinction::Distinct;
    return Distinction::Unknown;
  }

  bool is_user_unit(const GroupRingElem& e) const { return user_units_.count(chi_reduce(e)) > 0; }

 private:
  // e = c(1 - a) with a of nonzero abelian image.
  std::optional<Word> one_minus_witness(const GroupRingElem& e) const {
    if (e.term_count() != 2) return std::nullopt;
    auto it = e.terms().begin();
    const auto& [w0, c0] = *it++;
    const auto& [w1, c1] = *it;
    if (!w0.is_identity() || c0 != -c1) return std::nullopt;
    if (is_zero_vec(ab_.image(w1))) return std::nullopt;
    return w1;
  }

  Presentation p_;
  AbelianMap ab_;
  RewriteSystem rules_;
  std::vector<MetabelianMap> maps_;
  bool stabilized_ = false;
  std::map<GroupRingElem, std::string> user_units_;
};

// Re-checks a certificate from its evidence without reusing the prover's
// intermediate state.
inline bool verify_certificate(const UnitCertificate& cert, const GroupContext& ctx) {
  const Presentation& p = ctx.presentation();
  const AbelianMap& ab = ctx.abelian();
  auto exponent_image = [&](const Word& w) {
    ExpVec v(ab.rank(), 0);
    for (GenId g = 0; g < p.generator_count(); ++g) {
      std::int64_t e = w.exponent_sum(g);
      if (e == 0) continue;
      v = add(v, scaled(ab.generator_image(g), e));
    }
    return v;
  };
  if (const auto* poly = std::get_if<LaurentPoly>(&cert.element)) {
    if (poly->is_zero()) return false;
    if (cert.kind == CertificateKind::Monomial) return poly->term_count() == 1;
    return cert.kind == CertificateKind::AbelianNonzero && cert.projection == *poly;
  }
  const auto& e = std::get<GroupRingElem>(cert.element);
  if (e.is_zero()) return false;
  switch (cert.kind) {
    case CertificateKind::Monomial:
      return e.term_count() == 1 && e.terms().begin()->first == cert.witness;
    case CertificateKind::OneMinusNontrivial: {
      if (e.term_count() != 2) return false;
      Integer c = e.coefficient(Word());
      return c != 0 && e.coefficient(cert.witness) == -c && !is_zero_vec(exponent_image(cert.witness));
    }
    case CertificateKind::AbelianNonzero: {
      LaurentPoly proj(ab.rank());
      for (const auto& [w, c] : e.terms()) proj.add_term(exponent_image(w), c);
      return !proj.is_zero() && proj == cert.projection;
    }
    case CertificateKind::MetabelianDistinct: {
      MetabelianMap fresh(p, ab, cert.lambda);
      Integer s = 0;
      for (const auto& [w, c] : e.terms())
        if (fresh.image(w) == cert.witness_class) s += c;
      return s != 0 && s == cert.witness_sum;
    }
    case CertificateKind::UserSupplied:
      return !cert.evidence.empty() && ctx.is_user_unit(e);
  }
  return false;
}

}  // namespace hodeg
