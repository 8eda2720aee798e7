#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hodeg/hodeg.hpp"

namespace support {

inline std::string data_path(const std::string& rel) { return std::string(HODEG_DATA_DIR) + "/" + rel; }

inline hodeg::Presentation load_group(const std::string& stem) {
  std::ifstream in(data_path("groups/" + stem + ".grp"));
  if (!in) throw std::runtime_error("missing corpus file " + stem);
  return hodeg::parse_presentations(in, stem).at(0);
}

// Expected degrees of the corpus. Infinite rows keep delta-bar and r.
struct Golden {
  std::string file;
  std::size_t n;
  hodeg::DegreeStatus status;
  std::int64_t delta_bar;
  std::int64_t r;
};

inline std::vector<Golden> golden_table() {
  using S = hodeg::DegreeStatus;
  std::vector<Golden> g;
  for (std::size_t n : {0, 1, 2}) g.push_back({"zxz", n, S::Exact, 0, 0});
  g.push_back({"trefoil", 0, S::Exact, 2, 0});
  g.push_back({"trefoil", 1, S::Exact, 1, 0});
  g.push_back({"trefoil", 2, S::Exact, 1, 0});
  g.push_back({"trefoil_ab", 0, S::Exact, 2, 0});
  g.push_back({"trefoil_ab", 1, S::Exact, 1, 0});
  for (std::int64_t m : {3, 4, 5})
    for (std::size_t n : {0, 1}) g.push_back({"lines" + std::to_string(m), n, S::Exact, m * (m - 2), 0});
  for (std::size_t n : {0, 1}) g.push_back({"cusp_line", n, S::Exact, 0, 0});
  for (std::size_t n : {0, 1}) g.push_back({"two_cusps", n, S::Exact, 0, 0});
  for (std::size_t n : {0, 1, 2}) g.push_back({"z2_z3", n, S::Exact, 0, 0});
  for (std::size_t n : {0, 1, 2}) g.push_back({"z3_z5", n, S::Exact, 0, 0});
  for (std::size_t n : {0, 1, 2}) g.push_back({"zariski_quartic", n, S::Exact, 0, 0});
  for (std::size_t n : {0, 1}) g.push_back({"free2", n, S::Infinite, 0, 1});
  return g;
}

inline std::vector<std::string> golden_files() {
  return {"zxz", "trefoil", "trefoil_ab", "lines3", "lines4", "lines5", "cusp_line",
          "two_cusps", "z2_z3", "z3_z5", "zariski_quartic", "free2"};
}

// Random Nielsen moves fixing the splitting generator, relator rotations and
// inversions, and consequence relators.
inline hodeg::Presentation tietze_variant(const hodeg::Presentation& p, std::mt19937_64& rng, int moves) {
  using hodeg::GenId;
  using hodeg::Word;
  hodeg::Presentation cur = p;
  const auto& w0 = p.weights();
  auto s_it = std::find(w0.begin(), w0.end(), 1);
  GenId s = s_it == w0.end() ? 0 : static_cast<GenId>(s_it - w0.begin());
  std::size_t k = p.generator_count();
  for (int step = 0; step < moves; ++step) {
    int kind = static_cast<int>(rng() % 4);
    if (kind <= 1 && k >= 2) {
      GenId g = static_cast<GenId>(rng() % k);
      if (g == s) g = static_cast<GenId>((g + 1) % k);
      GenId h = static_cast<GenId>(rng() % k);
      if (h == g) h = static_cast<GenId>((h + 1) % k);
      int e = rng() % 2 ? 1 : -1;
      std::vector<Word> fwd(k), back(k);
      for (GenId x = 0; x < k; ++x) fwd[x] = back[x] = Word::generator(x);
      if (kind == 0) {
        back[g] = Word::generator(g) * Word::generator(h, e);
        fwd[g] = Word::generator(g) * Word::generator(h, -e);
      } else {
        back[g] = Word::generator(h, e) * Word::generator(g);
        fwd[g] = Word::generator(h, -e) * Word::generator(g);
      }
      cur = hodeg::apply_substitution(cur, hodeg::Substitution{cur.alphabet(), fwd, back});
    } else if (kind == 2 && !cur.relators().empty()) {
      auto rels = cur.relators();
      std::size_t i = rng() % rels.size();
      Word r = rels[i].cyclically_reduced();
      if (r.length() > 0) r = r.rotated(rng() % r.length());
      rels[i] = rng() % 2 ? r.inverse() : r;
      cur = hodeg::Presentation(cur.name(), cur.alphabet(), rels, cur.weights(), cur.tags());
    } else if (!cur.relators().empty() && cur.relators().size() < p.relators().size() + 2) {
      auto rels = cur.relators();
      const Word& a = rels[rng() % rels.size()];
      const Word& b = rels[rng() % rels.size()];
      Word c = Word::generator(static_cast<GenId>(rng() % k), rng() % 2 ? 1 : -1);
      rels.push_back(a * c * b * c.inverse());
      cur = hodeg::Presentation(cur.name(), cur.alphabet(), rels, cur.weights(), cur.tags());
    }
  }
  return cur;
}

inline hodeg::Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t max_len) {
  std::vector<hodeg::Syllable> syl;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) syl.push_back({static_cast<hodeg::GenId>(rng() % gens), rng() % 2 ? 1 : -1});
  return hodeg::Word::from_syllables(syl);
}

inline hodeg::StratificationSpec random_spec(std::mt19937_64& rng, bool with_incidence) {
  hodeg::StratificationSpec s;
  s.m = 1 + static_cast<std::int64_t>(rng() % 3);
  std::size_t count = 1 + rng() % 4;
  for (std::size_t j = 0; j < count; ++j) {
    hodeg::Stratum st;
    st.id = "S" + std::to_string(j);
    st.dim = static_cast<std::int64_t>(rng() % (s.m + 1));
    for (std::int64_t a = 0; a <= 2 * st.dim; ++a) st.cells[a] = static_cast<std::int64_t>(rng() % 4);
    for (std::int64_t n = 0; n <= 2; ++n)
      for (std::int64_t c = 0; c <= s.m - st.dim; ++c) st.local_degrees[{n, c}] = static_cast<std::int64_t>(rng() % 5);
    s.strata.push_back(std::move(st));
  }
  if (with_incidence) {
    std::vector<std::size_t> order(count);
    for (std::size_t j = 0; j < count; ++j) order[j] = j;
    for (int c = 0; c < 3; ++c) {
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::size_t> pick(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(1 + rng() % count));
      std::sort(pick.begin(), pick.end(), [&](std::size_t x, std::size_t y) { return s.strata[x].dim < s.strata[y].dim; });
      std::vector<std::string> chain;
      for (std::size_t t = 0; t < pick.size(); ++t)
        if (t == 0 || s.strata[pick[t]].dim > s.strata[pick[t - 1]].dim) chain.push_back(s.strata[pick[t]].id);
      s.incidence.push_back(std::move(chain));
    }
  }
  hodeg::validate(s);
  return s;
}

}  // namespace support
