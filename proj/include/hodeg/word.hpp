#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/integer.hpp"

namespace hodeg {

using GenId = std::uint32_t;

struct Syllable {
  GenId gen;
  std::int64_t exp;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Element of a free group, always freely reduced.
//
// Letters are stored expanded: +(g+1) for g and -(g+1) for g^-1. Ordering is
// shortlex with g < g^-1 < (g+1) < (g+1)^-1 < ...
class Word {
 public:
  using letter_type = std::int32_t;

  Word() = default;

  static Word generator(GenId g, std::int64_t exp = 1) {
    Word w;
    letter_type l = static_cast<letter_type>(g) + 1;
    if (exp < 0) l = -l;
    w.letters_.assign(static_cast<std::size_t>(std::llabs(exp)), l);
    return w;
  }

  static Word from_syllables(std::span<const Syllable> syl) {
    Word w;
    for (const auto& s : syl) w.append_power(s.gen, s.exp);
    return w;
  }

  // Letters need not be reduced; the result is.
  static Word from_letters(std::span<const letter_type> raw) {
    Word w;
    for (letter_type l : raw) w.push(l);
    return w;
  }

  std::span<const letter_type> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  std::vector<Syllable> syllables() const {
    std::vector<Syllable> out;
    for (letter_type l : letters_) {
      GenId g = letter_gen(l);
      std::int64_t e = l > 0 ? 1 : -1;
      if (!out.empty() && out.back().gen == g && (out.back().exp > 0) == (e > 0)) {
        out.back().exp += e;
      } else {
        out.push_back({g, e});
      }
    }
    return out;
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  Word pow(std::int64_t e) const {
    if (e == 0) return Word();
    Word base = e > 0 ? *this : inverse();
    Word out;
    for (std::int64_t i = 0; i < std::llabs(e); ++i) out *= base;
    return out;
  }

  Word& operator*=(const Word& rhs) {
    for (letter_type l : rhs.letters_) push(l);
    return *this;
  }

  friend Word operator*(Word lhs, const Word& rhs) {
    lhs *= rhs;
    return lhs;
  }

  std::int64_t exponent_sum(GenId g) const {
    std::int64_t s = 0;
    for (letter_type l : letters_)
      if (letter_gen(l) == g) s += l > 0 ? 1 : -1;
    return s;
  }

  bool uses(GenId g) const {
    return std::any_of(letters_.begin(), letters_.end(), [g](letter_type l) { return letter_gen(l) == g; });
  }

  GenId max_gen_plus_one() const {
    GenId m = 0;
    for (letter_type l : letters_) m = std::max<GenId>(m, letter_gen(l) + 1);
    return m;
  }

  Word cyclically_reduced() const {
    std::size_t i = 0, j = letters_.size();
    while (j - i >= 2 && letters_[i] == -letters_[j - 1]) {
      ++i;
      --j;
    }
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(i),
                      letters_.begin() + static_cast<std::ptrdiff_t>(j));
    return w;
  }

  // Rotation by k letters; only meaningful on cyclically reduced words.
  Word rotated(std::size_t k) const {
    Word w;
    w.letters_ = letters_;
    if (!w.letters_.empty()) std::rotate(w.letters_.begin(), w.letters_.begin() + static_cast<std::ptrdiff_t>(k % letters_.size()), w.letters_.end());
    return w;
  }

  Word subword(std::size_t pos, std::size_t len) const {
    return from_letters(std::span<const letter_type>(letters_).subspan(pos, len));
  }

  // Substitutes images[g] for each generator g.
  Word substitute(const std::vector<Word>& images) const {
    Word out;
    for (letter_type l : letters_) {
      GenId g = letter_gen(l);
      if (g >= images.size()) throw precondition_error("substitution has no image for generator index " + std::to_string(g));
      out *= l > 0 ? images[g] : images[g].inverse();
    }
    return out;
  }

  static GenId letter_gen(letter_type l) { return static_cast<GenId>(std::abs(l) - 1); }
  static std::uint32_t letter_key(letter_type l) { return 2u * letter_gen(l) + (l < 0 ? 1u : 0u); }

  friend bool operator==(const Word&, const Word&) = default;

  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      if (auto c = letter_key(a.letters_[i]) <=> letter_key(b.letters_[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void push(letter_type l) {
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  void append_power(GenId g, std::int64_t e) {
    letter_type l = static_cast<letter_type>(g) + 1;
    if (e < 0) l = -l;
    for (std::int64_t i = 0; i < std::llabs(e); ++i) push(l);
  }

  std::vector<letter_type> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w.letters()) h = (h ^ static_cast<std::size_t>(l + 0x9e37)) * 1099511628211ull;
    return h;
  }
};

// Generator names, indexed by GenId.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (GenId i = 0; i < names_.size(); ++i) {
      if (!valid_name(names_[i])) throw input_error("invalid generator name '" + names_[i] + "'");
      if (!index_.emplace(names_[i], i).second) throw input_error("duplicate generator '" + names_[i] + "'");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(GenId g) const { return names_.at(g); }

  GenId id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw input_error("unknown generator '" + std::string(name) + "'");
    return it->second;
  }

  bool contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }

  static bool valid_name(std::string_view s) {
    if (s.empty() || s == "1") return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, GenId> index_;
};

// Reduces a raw sequence of (name, exponent) syllables.
inline Word reduce_word(const std::vector<std::pair<std::string, std::int64_t>>& raw, const Alphabet& alphabet) {
  std::vector<Syllable> syl;
  syl.reserve(raw.size());
  for (const auto& [name, e] : raw) syl.push_back({alphabet.id(name), e});
  return Word::from_syllables(syl);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::int64_t parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  if (s.empty()) throw input_error("missing integer in '" + std::string(context) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw input_error("malformed integer in '" + std::string(context) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw input_error("malformed integer '" + std::string(s) + "' in '" + std::string(context) + "'");
    v = checked_add(checked_mul(v, 10), s[i] - '0');
  }
  return neg ? -v : v;
}

}  // namespace detail

// Parses "x*y^-1*x^2" (also "x y^-1" and "x.y"); "1" or "" is the identity.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::string_view s = detail::trim(text);
  if (s.empty() || s == "1") return Word();
  std::vector<std::pair<std::string, std::int64_t>> raw;
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*' || s[i] == '.')) ++i;
  };
  skip_sep();
  while (i < s.size()) {
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    std::string name(s.substr(start, i - start));
    if (name.empty()) throw input_error("unexpected character '" + std::string(1, s[i]) + "' in word '" + std::string(s) + "'");
    std::int64_t e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t estart = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      e = detail::parse_int(s.substr(estart, i - estart), s);
    }
    if (name == "1") {
      if (e != 1) throw input_error("identity cannot carry an exponent in '" + std::string(s) + "'");
    } else {
      raw.emplace_back(std::move(name), e);
    }
    skip_sep();
  }
  return reduce_word(raw, alphabet);
}

inline std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += '*';
    out += alphabet.name(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

}  // namespace hodeg
