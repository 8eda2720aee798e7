#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/laurent.hpp"
#include "hodeg/presentation.hpp"
#include "hodeg/smith.hpp"

namespace hodeg {

struct AbelianStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors >= 2
  friend bool operator==(const AbelianStructure&, const AbelianStructure&) = default;
};

inline AbelianStructure abelianize(const Presentation& p) {
  SmithForm snf = smith_normal_form(p.exponent_matrix(), p.generator_count());
  AbelianStructure a;
  a.free_rank = p.generator_count() - snf.rank;
  for (const auto& d : snf.invariants)
    if (d != 1) a.torsion.push_back(d);
  return a;
}

// Projection of F onto Gamma_0 = H1(G)/torsion = Z^r, with psi-bar on Gamma_0.
class AbelianMap {
 public:
  AbelianMap() = default;

  explicit AbelianMap(const Presentation& p) {
    std::size_t k = p.generator_count();
    SmithForm snf = smith_normal_form(p.exponent_matrix(), k);
    rank_ = k - snf.rank;
    images_.assign(k, ExpVec(rank_, 0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < rank_; ++i) images_[j][i] = to_int64(snf.V[j][snf.rank + i]);
    psi_bar_.assign(rank_, 0);
    for (std::size_t i = 0; i < rank_; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < k; ++j) s += snf.V_inverse[snf.rank + i][j] * p.weights()[j];
      psi_bar_[i] = to_int64(s);
    }
    names_.resize(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      names_[i] = "e" + std::to_string(i + 1);
      for (std::size_t j = 0; j < k; ++j) {
        int sign = unit_sign(images_[j], i);
        if (sign == 0) continue;
        if (sign < 0) {
          for (auto& img : images_) img[i] = -img[i];
          psi_bar_[i] = -psi_bar_[i];
        }
        names_[i] = p.alphabet().name(static_cast<GenId>(j));
        break;
      }
    }
    for (std::size_t j = 0; j < k; ++j)
      if (dot(images_[j], psi_bar_) != p.weights()[j])
        throw input_error(p.name() + ": weights do not factor through the torsion-free abelianization");
  }

  std::size_t rank() const { return rank_; }
  const ExpVec& generator_image(GenId g) const { return images_.at(g); }
  const ExpVec& psi_bar() const { return psi_bar_; }
  const std::vector<std::string>& coordinate_names() const { return names_; }

  ExpVec image(const Word& w) const {
    ExpVec v(rank_, 0);
    for (auto l : w.letters()) {
      const ExpVec& g = images_[Word::letter_gen(l)];
      for (std::size_t i = 0; i < rank_; ++i) v[i] += l > 0 ? g[i] : -g[i];
    }
    return v;
  }

  std::int64_t psi_bar_of(const ExpVec& v) const { return dot(v, psi_bar_); }

 private:
  static int unit_sign(const ExpVec& v, std::size_t i) {
    for (std::size_t c = 0; c < v.size(); ++c)
      if (c != i && v[c] != 0) return 0;
    return v[i] == 1 ? 1 : v[i] == -1 ? -1 : 0;
  }

  std::size_t rank_ = 0;
  std::vector<ExpVec> images_;
  ExpVec psi_bar_;
  std::vector<std::string> names_;
};

struct TorsionQuotient {
  Presentation result;
  std::vector<std::string> killed;
};

// Kills generators g for which some relator is conjugate to g^k, k != 0,
// repeating until no relator has that shape. Relators reduced to the
// identity are dropped.
inline TorsionQuotient torsion_quotient_detail(const Presentation& p) {
  TorsionQuotient out{p, {}};
  for (;;) {
    const Presentation& cur = out.result;
    std::vector<bool> kill(cur.generator_count(), false);
    bool any = false;
    for (const auto& r : cur.relators()) {
      auto syl = r.cyclically_reduced().syllables();
      if (syl.size() == 1) {
        kill[syl[0].gen] = true;
        any = true;
      }
    }
    if (!any) {
      std::vector<Word> rels;
      for (const auto& r : cur.relators())
        if (!r.is_identity()) rels.push_back(r);
      if (rels.size() != cur.relators().size())
        out.result = Presentation(cur.name(), cur.alphabet(), std::move(rels), cur.weights(), cur.tags());
      return out;
    }
    std::vector<std::string> names;
    std::vector<std::int64_t> weights;
    std::vector<Word> images(cur.generator_count());
    for (GenId g = 0; g < cur.generator_count(); ++g) {
      if (kill[g]) {
        out.killed.push_back(cur.alphabet().name(g));
        continue;
      }
      images[g] = Word::generator(static_cast<GenId>(names.size()));
      names.push_back(cur.alphabet().name(g));
      weights.push_back(cur.weights()[g]);
    }
    std::vector<Word> rels;
    for (const auto& r : cur.relators()) {
      Word w = r.substitute(images);
      if (!w.is_identity()) rels.push_back(std::move(w));
    }
    out.result = Presentation(cur.name(), Alphabet(std::move(names)), std::move(rels), std::move(weights), cur.tags());
  }
}

inline Presentation torsion_quotient(const Presentation& p) { return torsion_quotient_detail(p).result; }

}  // namespace hodeg
