#include <catch_amalgamated.hpp>

#include "oracle/minor_gcd.hpp"
#include "support.hpp"

using namespace hodeg;

namespace {

GroupRingElem g(const Word& w) { return GroupRingElem(w); }

Word weight_zero_word(std::mt19937_64& rng, const Presentation& p, std::size_t max_len) {
  Word w = support::random_word(rng, p.generator_count(), max_len);
  return w * Word::generator(0, -p.weight(w));
}

LaurentPoly random_laurent(std::mt19937_64& rng, std::size_t vars) {
  LaurentPoly out(vars);
  std::size_t terms = rng() % 4;
  for (std::size_t i = 0; i < terms; ++i) {
    ExpVec e(vars);
    for (auto& x : e) x = static_cast<std::int64_t>(rng() % 5) - 2;
    out.add_term(e, static_cast<long>(rng() % 7) - 3);
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction", "[property]") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    Word a = support::random_word(rng, 3, 20), b = support::random_word(rng, 3, 20), c = support::random_word(rng, 3, 20);
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.inverse().inverse() == a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).inverse() == b.inverse() * a.inverse());
    CHECK(Word::from_syllables(a.syllables()) == a);
    auto l = a.letters();
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i] != -l[i - 1]);
    Word cr = a.cyclically_reduced();
    if (cr.length() > 0) CHECK(cr.rotated(rng() % cr.length()).length() == cr.length());
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) == a.inverse() * a.inverse());
  }
}

TEST_CASE("Fox calculus rules on random words", "[property]") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    std::size_t gens = 1 + rng() % 3;
    Word u = support::random_word(rng, gens, 15), v = support::random_word(rng, gens, 15);
    GroupRingElem lhs;
    for (GenId j = 0; j < gens; ++j) {
      CHECK(fox_derivative(u * v, j) == fox_derivative(u, j) + g(u) * fox_derivative(v, j));
      CHECK(fox_derivative(u.inverse(), j) == -(g(u.inverse()) * fox_derivative(u, j)));
      lhs += fox_derivative(u, j) * (g(Word::generator(j)) - GroupRingElem::one());
      CHECK(fox_derivative(u, j).augmentation() == u.exponent_sum(j));
    }
    CHECK(lhs == g(u) - GroupRingElem::one());
  }
}

TEST_CASE("Laurent ring axioms", "[property]") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    LaurentPoly a = random_laurent(rng, 2), b = random_laurent(rng, 2), c = random_laurent(rng, 2);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("conjugation by the splitting element is an automorphism", "[property]") {
  Presentation f = parse_presentations(std::string("group f\ngens x y z\nweights x=1 y=0 z=0\n")).at(0);
  GroupContext ctx(f);
  WordRing ring(ctx, 0, 1);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    GroupRingElem a = g(weight_zero_word(rng, f, 12)) + g(weight_zero_word(rng, f, 12));
    GroupRingElem b = g(weight_zero_word(rng, f, 12)) - g(weight_zero_word(rng, f, 12));
    std::int64_t k = static_cast<std::int64_t>(rng() % 5) - 2;
    CHECK(ring.twist(ring.mul(a, b), k) == ring.mul(ring.twist(a, k), ring.twist(b, k)));
    CHECK(ring.twist(ring.twist(a, k), -k) == a);
    CHECK(ring.twist(a + b, k) == ring.twist(a, k) + ring.twist(b, k));
  }
}

TEST_CASE("skew multiplication is associative", "[property]") {
  Presentation f = parse_presentations(std::string("group f\ngens x y z\nweights x=1 y=0 z=0\n")).at(0);
  GroupContext ctx(f);
  WordRing ring(ctx, 0, 1);
  SkewArithmetic<WordRing> arith(ring);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto rand_elem = [&] {
      return arith.normalize(g(support::random_word(rng, 3, 8)) - g(support::random_word(rng, 3, 8)));
    };
    auto a = rand_elem(), b = rand_elem(), c = rand_elem();
    CHECK(arith.mul(arith.mul(a, b), c) == arith.mul(a, arith.mul(b, c)));
  }
}

TEST_CASE("Smith normal form on random matrices", "[property]") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix a(rows, std::vector<Integer>(cols));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<long>(rng() % 13) - 6;
    SmithForm f = smith_normal_form(a, cols);
    CHECK(multiply(multiply(f.U, a, rows), f.V, cols) == f.diagonal);
    CHECK(multiply(f.V, f.V_inverse, cols) == identity_matrix(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(f.diagonal[i][j] == 0);
    for (std::size_t i = 1; i < f.invariants.size(); ++i) CHECK(f.invariants[i] % f.invariants[i - 1] == 0);
  }
}

TEST_CASE("abelianization is a presentation invariant", "[property]") {
  std::mt19937_64 rng(7);
  for (const auto& file : support::golden_files()) {
    Presentation p = support::load_group(file);
    AbelianStructure a = abelianize(p);
    for (int v = 0; v < 4; ++v) {
      INFO(file << " variant " << v);
      CHECK(abelianize(support::tietze_variant(p, rng, 3)) == a);
    }
    std::vector<std::string> names = p.alphabet().names();
    std::vector<std::int64_t> weights = p.weights();
    std::vector<GenId> perm(names.size());
    for (GenId i = 0; i < perm.size(); ++i) perm[i] = static_cast<GenId>(perm.size() - 1 - i);
    std::vector<std::string> pnames(names.size());
    std::vector<std::int64_t> pweights(names.size());
    std::vector<Word> images(names.size());
    for (GenId i = 0; i < perm.size(); ++i) {
      pnames[perm[i]] = names[i];
      pweights[perm[i]] = weights[i];
      images[i] = Word::generator(perm[i]);
    }
    std::vector<Word> rels;
    for (const auto& r : p.relators()) rels.push_back(r.substitute(images));
    Presentation q(p.name(), Alphabet(pnames), rels, pweights, p.tags());
    CHECK(abelianize(q) == a);
  }
}

TEST_CASE("move logs replay on presentation variants", "[property]") {
  std::mt19937_64 rng(8);
  for (const char* file : {"trefoil", "lines3", "cusp_line", "zariski_quartic", "free2"}) {
    Presentation base = support::load_group(file);
    for (int v = 0; v < 3; ++v) {
      Presentation p = torsion_quotient(support::tietze_variant(base, rng, 3));
      if (abelianize(p).free_rank == 0) continue;
      INFO(format_presentation(p));
      GroupContext ctx(p);
      auto s = static_cast<GenId>(std::find(p.weights().begin(), p.weights().end(), 1) - p.weights().begin());
      REQUIRE(s < p.generator_count());
      AbelianRing ring(ctx, s);
      SkewArithmetic<AbelianRing> arith(ring);
      auto form = compute_form(arith, p);
      CHECK(replay(form.initial, form.log, arith) == form.final);
    }
  }
}

TEST_CASE("level-zero result does not depend on pivot order", "[property]") {
  for (const auto& file : support::golden_files()) {
    Presentation p = support::load_group(file);
    DegreeResult ref = delta_n(p, 0);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
      INFO(file << " seed " << seed);
      DegreeOptions opts;
      opts.shuffle_seed = seed;
      DegreeResult r = delta_n(p, 0, opts);
      CHECK(r.status == ref.status);
      CHECK(r.delta_bar == ref.delta_bar);
      CHECK(r.r == ref.r);
    }
  }
}

TEST_CASE("level-zero degree matches the minor-gcd oracle on variants", "[property][oracle]") {
  std::mt19937_64 rng(9);
  for (const auto& file : support::golden_files()) {
    Presentation base = support::load_group(file);
    for (int v = 0; v < 3; ++v) {
      Presentation p = support::tietze_variant(base, rng, 2 + v);
      INFO(format_presentation(p));
      oracle::Result o = oracle::level_zero(p);
      DegreeResult r = delta_n(p, 0);
      if (o.betti == 0) {
        CHECK(r.delta == 0);
        continue;
      }
      CHECK(r.delta_bar == o.span);
      CHECK(r.r == o.free_rank);
    }
  }
}

TEST_CASE("higher levels agree across presentation variants when decided", "[property]") {
  std::mt19937_64 rng(10);
  for (const char* file : {"trefoil", "lines3", "cusp_line"}) {
    Presentation base = support::load_group(file);
    DegreeResult ref = delta_n(base, 1);
    std::size_t decided = 0;
    for (int v = 0; v < 3; ++v) {
      Presentation p = support::tietze_variant(base, rng, 2);
      INFO(format_presentation(p));
      DegreeResult r = delta_n(p, 1);
      if (r.status == DegreeStatus::Undecided) {
        CHECK(r.lower_bound <= *ref.delta_bar);
        continue;
      }
      ++decided;
      CHECK(r.status == ref.status);
      CHECK(r.delta_bar == ref.delta_bar);
      for (bool ok : audit_certificates(p, r)) CHECK(ok);
    }
    CHECK(decided > 0);
  }
}
