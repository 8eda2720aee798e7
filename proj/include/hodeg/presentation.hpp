#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/smith.hpp"
#include "hodeg/word.hpp"

namespace hodeg {

// Finite presentation with an integer weight psi on each generator.
//
// The constructor checks that every relator has weight zero, so psi induces a
// homomorphism G -> Z. Surjectivity is not required here; the degree pipeline
// demands it only when the first Betti number is positive.
class Presentation {
 public:
  Presentation() = default;

  Presentation(std::string name, Alphabet gens, std::vector<Word> relators, std::vector<std::int64_t> weights,
               std::vector<std::string> tags = {})
      : name_(std::move(name)), gens_(std::move(gens)), relators_(std::move(relators)), weights_(std::move(weights)),
        tags_(std::move(tags)) {
    if (weights_.size() != gens_.size())
      throw input_error(name_ + ": expected " + std::to_string(gens_.size()) + " weights, got " + std::to_string(weights_.size()));
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (relators_[i].max_gen_plus_one() > gens_.size())
        throw input_error(name_ + ": relator " + std::to_string(i + 1) + " uses an undeclared generator");
      if (weight(relators_[i]) != 0)
        throw input_error(name_ + ": relator " + format_word(relators_[i], gens_) + " has weight " +
                          std::to_string(weight(relators_[i])) + ", expected 0");
    }
  }

  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return gens_; }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  const std::vector<std::string>& tags() const { return tags_; }

  bool has_tag(const std::string& t) const {
    for (const auto& x : tags_)
      if (x == t) return true;
    return false;
  }

  std::int64_t weight(const Word& w) const {
    std::int64_t s = 0;
    for (auto l : w.letters()) s = checked_add(s, l > 0 ? weights_[Word::letter_gen(l)] : -weights_[Word::letter_gen(l)]);
    return s;
  }

  std::int64_t weight_gcd() const {
    std::int64_t g = 0;
    for (auto w : weights_) g = std::gcd(g, w);
    return g;
  }

  bool weights_surjective() const { return weight_gcd() == 1; }

  std::string format(const Word& w) const { return format_word(w, gens_); }

  // Relator exponent-sum matrix, rows are relators.
  IntMatrix exponent_matrix() const {
    IntMatrix m(relators_.size(), std::vector<Integer>(gens_.size(), 0));
    for (std::size_t i = 0; i < relators_.size(); ++i)
      for (auto l : relators_[i].letters()) m[i][Word::letter_gen(l)] += l > 0 ? 1 : -1;
    return m;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.name_ == b.name_ && a.gens_ == b.gens_ && a.relators_ == b.relators_ && a.weights_ == b.weights_ &&
           a.tags_ == b.tags_;
  }

 private:
  std::string name_;
  Alphabet gens_;
  std::vector<Word> relators_;
  std::vector<std::int64_t> weights_;
  std::vector<std::string> tags_;
};

// Weights induced by the abelianization when it has free rank one, oriented so
// that the first generator with nonzero weight is positive. All zero when the
// free rank is zero.
inline std::vector<std::int64_t> canonical_weights(const Alphabet& gens, const std::vector<Word>& relators) {
  IntMatrix m(relators.size(), std::vector<Integer>(gens.size(), 0));
  for (std::size_t i = 0; i < relators.size(); ++i)
    for (auto l : relators[i].letters()) m[i][Word::letter_gen(l)] += l > 0 ? 1 : -1;
  SmithForm snf = smith_normal_form(m, gens.size());
  std::size_t free_rank = gens.size() - snf.rank;
  std::vector<std::int64_t> w(gens.size(), 0);
  if (free_rank == 0) return w;
  if (free_rank > 1) throw input_error("weights are required when the abelianization has free rank " + std::to_string(free_rank));
  for (std::size_t j = 0; j < gens.size(); ++j) w[j] = to_int64(snf.V[j][snf.rank]);
  for (auto x : w)
    if (x != 0) {
      if (x < 0)
        for (auto& y : w) y = -y;
      break;
    }
  return w;
}

// Text format, one directive per line, '#' starts a comment:
//   group NAME        starts a new block
//   gens a b c
//   weights a=1 b=0   optional when the free rank of H1 is 0 or 1
//   rel WORD          or rel LHS = RHS
//   tag LABEL
inline std::vector<Presentation> parse_presentations(std::istream& in, const std::string& default_name = "G") {
  struct Block {
    std::string name;
    std::vector<std::string> gens;
    bool have_gens = false;
    std::vector<std::pair<std::string, std::int64_t>> weights;
    bool have_weights = false;
    std::vector<std::pair<std::string, std::size_t>> rels;
    std::vector<std::string> tags;
    std::size_t line = 0;
  };
  std::vector<Block> blocks;
  std::string line;
  std::size_t lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  auto current = [&]() -> Block& {
    if (blocks.empty()) blocks.push_back({default_name, {}, false, {}, false, {}, {}, lineno});
    return blocks.back();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "group") {
      std::string name(detail::trim(rest));
      if (name.empty()) throw input_error(where() + "group needs a name");
      blocks.push_back({name, {}, false, {}, false, {}, {}, lineno});
    } else if (key == "gens") {
      Block& b = current();
      if (b.have_gens) throw input_error(where() + "duplicate gens line");
      std::istringstream gs(rest);
      std::string g;
      while (gs >> g) b.gens.push_back(g);
      b.have_gens = true;
    } else if (key == "weights") {
      Block& b = current();
      if (b.have_weights) throw input_error(where() + "duplicate weights line");
      std::istringstream ws(rest);
      std::string item;
      while (ws >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error(where() + "expected name=int, got '" + item + "'");
        b.weights.emplace_back(item.substr(0, eq), detail::parse_int(item.substr(eq + 1), item));
      }
      b.have_weights = true;
    } else if (key == "rel") {
      current().rels.emplace_back(std::string(detail::trim(rest)), lineno);
    } else if (key == "tag") {
      std::istringstream ts(rest);
      std::string t;
      while (ts >> t) current().tags.push_back(t);
    } else {
      throw input_error(where() + "unknown directive '" + key + "'");
    }
  }

  std::vector<Presentation> out;
  for (auto& b : blocks) {
    auto ctx = [&](std::size_t l) { return b.name + " (line " + std::to_string(l) + "): "; };
    if (!b.have_gens) throw input_error(ctx(b.line) + "missing gens line");
    Alphabet alphabet = [&] {
      try {
        return Alphabet(b.gens);
      } catch (const input_error& e) {
        throw input_error(ctx(b.line) + e.what());
      }
    }();
    std::vector<Word> rels;
    for (const auto& [text, l] : b.rels) {
      try {
        auto eq = text.find('=');
        if (eq == std::string::npos) {
          rels.push_back(parse_word(text, alphabet));
        } else {
          Word lhs = parse_word(std::string_view(text).substr(0, eq), alphabet);
          Word rhs = parse_word(std::string_view(text).substr(eq + 1), alphabet);
          rels.push_back(lhs * rhs.inverse());
        }
      } catch (const input_error& e) {
        throw input_error(ctx(l) + e.what());
      }
    }
    std::vector<std::int64_t> weights(alphabet.size(), 0);
    if (b.have_weights) {
      std::vector<bool> seen(alphabet.size(), false);
      for (const auto& [name, w] : b.weights) {
        if (!alphabet.contains(name)) throw input_error(ctx(b.line) + "weight for unknown generator '" + name + "'");
        GenId g = alphabet.id(name);
        if (seen[g]) throw input_error(ctx(b.line) + "duplicate weight for '" + name + "'");
        seen[g] = true;
        weights[g] = w;
      }
      for (GenId g = 0; g < alphabet.size(); ++g)
        if (!seen[g]) throw input_error(ctx(b.line) + "missing weight for '" + alphabet.name(g) + "'");
    } else {
      try {
        weights = canonical_weights(alphabet, rels);
      } catch (const input_error& e) {
        throw input_error(ctx(b.line) + e.what());
      }
    }
    out.emplace_back(b.name, std::move(alphabet), std::move(rels), std::move(weights), std::move(b.tags));
  }
  return out;
}

inline std::vector<Presentation> parse_presentations(const std::string& text, const std::string& default_name = "G") {
  std::istringstream in(text);
  return parse_presentations(in, default_name);
}

inline std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "group " << p.name() << "\n";
  out << "gens";
  for (const auto& g : p.alphabet().names()) out << ' ' << g;
  out << "\nweights";
  for (GenId g = 0; g < p.generator_count(); ++g) out << ' ' << p.alphabet().name(g) << '=' << p.weights()[g];
  out << "\n";
  for (const auto& r : p.relators()) out << "rel " << p.format(r) << "\n";
  if (!p.tags().empty()) {
    out << "tag";
    for (const auto& t : p.tags()) out << ' ' << t;
    out << "\n";
  }
  return out.str();
}

// Change of free basis. forward[g] writes old generator g in the new
// generators; backward[x] writes new generator x in the old ones.
struct Substitution {
  Alphabet new_gens;
  std::vector<Word> forward;
  std::vector<Word> backward;
};

inline Presentation apply_substitution(const Presentation& p, const Substitution& s) {
  if (s.forward.size() != p.generator_count())
    throw input_error("substitution: need an image for each of the " + std::to_string(p.generator_count()) + " old generators");
  if (s.backward.size() != s.new_gens.size())
    throw input_error("substitution: need an inverse image for each of the " + std::to_string(s.new_gens.size()) + " new generators");
  for (const auto& w : s.forward)
    if (w.max_gen_plus_one() > s.new_gens.size()) throw input_error("substitution: forward image uses an unknown generator");
  for (const auto& w : s.backward)
    if (w.max_gen_plus_one() > p.generator_count()) throw input_error("substitution: backward image uses an unknown generator");
  for (GenId g = 0; g < p.generator_count(); ++g)
    if (s.forward[g].substitute(s.backward) != Word::generator(g))
      throw input_error("substitution is not invertible: backward(forward(" + p.alphabet().name(g) + ")) != " + p.alphabet().name(g));
  for (GenId x = 0; x < s.new_gens.size(); ++x)
    if (s.backward[x].substitute(s.forward) != Word::generator(x))
      throw input_error("substitution is not invertible: forward(backward(" + s.new_gens.name(x) + ")) != " + s.new_gens.name(x));
  std::vector<Word> rels;
  rels.reserve(p.relators().size());
  for (const auto& r : p.relators()) rels.push_back(r.substitute(s.forward));
  std::vector<std::int64_t> weights;
  for (const auto& w : s.backward) weights.push_back(p.weight(w));
  return Presentation(p.name(), s.new_gens, std::move(rels), std::move(weights), p.tags());
}

}  // namespace hodeg
