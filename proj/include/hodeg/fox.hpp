#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hodeg/group_ring.hpp"
#include "hodeg/presentation.hpp"

namespace hodeg {

// d(uv) = du + u dv, d(u^-1) = -u^-1 du.
inline GroupRingElem fox_derivative(const Word& w, GenId x) {
  GroupRingElem d;
  Word prefix;
  for (auto l : w.letters()) {
    if (Word::letter_gen(l) == x) {
      if (l > 0) {
        d.add_term(prefix, 1);
      } else {
        d.add_term(prefix * Word::generator(x, -1), -1);
      }
    }
    prefix *= Word::from_letters(std::span<const Word::letter_type>(&l, 1));
  }
  return d;
}

using FoxMatrix = std::vector<std::vector<GroupRingElem>>;

// Rows are relators, columns are generators.
inline FoxMatrix jacobian(const Presentation& p) {
  FoxMatrix m(p.relators().size(), std::vector<GroupRingElem>(p.generator_count()));
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (GenId j = 0; j < p.generator_count(); ++j) m[i][j] = fox_derivative(p.relators()[i], j);
  return m;
}

// sum_j (dr/dx_j)(x_j - 1) for one Jacobian row.
inline GroupRingElem fundamental_identity_lhs(const std::vector<GroupRingElem>& row) {
  GroupRingElem s;
  for (GenId j = 0; j < row.size(); ++j) s += row[j] * (GroupRingElem(Word::generator(j)) - GroupRingElem::one());
  return s;
}

struct RewriteRule {
  Word lhs;
  Word rhs;
  std::size_t relator = 0;
};

// Length-reducing rules u -> v^-1 from every factorisation u v of a cyclic
// permutation of a relator or its inverse, kept when u > v^-1 in shortlex.
// Rewriting only changes representatives; it never decides equality.
class RewriteSystem {
 public:
  RewriteSystem() = default;

  explicit RewriteSystem(const std::vector<Word>& relators) {
    std::map<Word, RewriteRule> best;
    for (std::size_t ri = 0; ri < relators.size(); ++ri) {
      Word c = relators[ri].cyclically_reduced();
      if (c.is_identity()) continue;
      for (const Word& base : {c, c.inverse()}) {
        for (std::size_t k = 0; k < base.length(); ++k) {
          Word q = base.rotated(k);
          for (std::size_t h = 1; h <= q.length(); ++h) {
            Word lhs = q.subword(0, h);
            Word rhs = q.subword(h, q.length() - h).inverse();
            if (!(rhs < lhs)) continue;
            auto it = best.find(lhs);
            if (it == best.end() || rhs < it->second.rhs) best[lhs] = RewriteRule{lhs, rhs, ri};
          }
        }
      }
    }
    for (auto& [lhs, rule] : best) rules_.push_back(std::move(rule));
    for (std::size_t i = 0; i < rules_.size(); ++i) by_first_[rules_[i].lhs.letters()[0]].push_back(i);
  }

  const std::vector<RewriteRule>& rules() const { return rules_; }

  Word reduce(const Word& w) const {
    if (rules_.empty()) return w;
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      if (auto it = cache_->map.find(w); it != cache_->map.end()) return it->second;
    }
    std::vector<Word::letter_type> cur(w.letters().begin(), w.letters().end());
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t pos = 0; pos < cur.size() && !changed; ++pos) {
        auto bucket = by_first_.find(cur[pos]);
        if (bucket == by_first_.end()) continue;
        for (std::size_t idx : bucket->second) {
          const auto& lhs = rules_[idx].lhs.letters();
          if (pos + lhs.size() > cur.size()) continue;
          if (!std::equal(lhs.begin(), lhs.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
          std::vector<Word::letter_type> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
          const auto& rhs = rules_[idx].rhs.letters();
          next.insert(next.end(), rhs.begin(), rhs.end());
          next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos + lhs.size()), cur.end());
          Word reduced = Word::from_letters(next);
          cur.assign(reduced.letters().begin(), reduced.letters().end());
          changed = true;
          break;
        }
      }
    }
    Word out = Word::from_letters(cur);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->map.size() < kCacheLimit) cache_->map.emplace(w, out);
    return out;
  }

  GroupRingElem reduce(const GroupRingElem& e) const {
    return e.map_words([this](const Word& w) { return reduce(w); });
  }

 private:
  static constexpr std::size_t kCacheLimit = 1 << 16;
  std::vector<RewriteRule> rules_;
  std::unordered_map<Word::letter_type, std::vector<std::size_t>> by_first_;
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Word, Word, WordHash> map;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline GroupRingElem chi_reduce(const GroupRingElem& e, const RewriteSystem& rules) { return rules.reduce(e); }

}  // namespace hodeg
