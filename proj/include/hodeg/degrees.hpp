#pragma once

#include <cstdint>
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hodeg/diagonalize.hpp"
#include "hodeg/fox.hpp"
#include "hodeg/milnor.hpp"

namespace hodeg {

enum class DegreeStatus { Exact, Infinite, Undecided };

inline const char* to_string(DegreeStatus s) {
  switch (s) {
    case DegreeStatus::Exact: return "exact";
    case DegreeStatus::Infinite: return "infinite";
    case DegreeStatus::Undecided: return "undecided";
  }
  return "?";
}

struct DegreeResult {
  std::string group;
  std::size_t n = 0;
  DegreeStatus status = DegreeStatus::Undecided;
  std::optional<std::int64_t> delta;      // Exact only
  std::optional<std::int64_t> delta_bar;  // Exact and Infinite
  std::int64_t lower_bound = 0;           // certified part of delta-bar
  std::optional<std::int64_t> r;
  std::vector<std::string> torsion_polys;
  std::vector<UnitCertificate> certificates;
  std::vector<std::string> undecided;
  std::vector<std::string> move_log;
  std::string move_log_digest = fnv1a_hex("");
  std::vector<std::string> notes;
};

struct DegreeOptions {
  std::optional<std::string> splitting;  // generator name; automatic when unset
  std::function<void(const std::string&)> trace;
  std::optional<std::uint64_t> shuffle_seed;
  bool fundamental_identity = true;
};

// Change of basis producing a generator of weight exactly 1, by a Euclidean
// algorithm on the weights. Returns the index of that generator.
inline std::pair<Presentation, GenId> ensure_weight_one(const Presentation& p, std::vector<std::string>& notes) {
  Presentation cur = p;
  for (std::size_t guard = 0; guard < 256; ++guard) {
    const auto& w = cur.weights();
    for (GenId g = 0; g < w.size(); ++g)
      if (w[g] == 1) return {cur, g};
    std::size_t k = cur.generator_count();
    std::vector<Word> fwd(k), back(k);
    for (GenId g = 0; g < k; ++g) fwd[g] = back[g] = Word::generator(g);
    auto neg = std::find(w.begin(), w.end(), -1);
    if (neg != w.end()) {
      GenId g = static_cast<GenId>(neg - w.begin());
      fwd[g] = back[g] = Word::generator(g, -1);
      notes.push_back("replaced " + cur.alphabet().name(g) + " by its inverse to obtain a weight-one generator");
    } else {
      GenId small = k;
      for (GenId g = 0; g < k; ++g)
        if (w[g] != 0 && (small == k || std::llabs(w[g]) < std::llabs(w[small]))) small = g;
      GenId big = k;
      for (GenId g = 0; g < k && big == k; ++g)
        if (g != small && small != k && w[g] % w[small] != 0) big = g;
      if (small == k || big == k) throw input_error(p.name() + ": weights are not surjective");
      std::int64_t q = w[big] / w[small];
      // new generator big' = big * small^-q, so big = big' * small^q
      back[big] = Word::generator(big) * Word::generator(small, -q);
      fwd[big] = Word::generator(big) * Word::generator(small, q);
      notes.push_back("substituted " + cur.alphabet().name(big) + " -> " + cur.alphabet().name(big) + "*" +
                      cur.alphabet().name(small) + "^" + std::to_string(-q) + " to reduce weights");
    }
    cur = apply_substitution(cur, Substitution{cur.alphabet(), fwd, back});
  }
  throw input_error(p.name() + ": could not produce a weight-one generator");
}

namespace detail {

template <class Ring>
PresentationMatrix<Ring> initial_matrix(const SkewArithmetic<Ring>& arith, const Presentation& p, const FoxMatrix& raw) {
  std::vector<std::vector<SkewLaurent<typename Ring::elem_type>>> entries;
  std::vector<std::string> rows, cols;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<SkewLaurent<typename Ring::elem_type>> row;
    for (const auto& e : raw[i]) row.push_back(arith.normalize(e));
    entries.push_back(std::move(row));
    rows.push_back("r" + std::to_string(i + 1));
  }
  for (const auto& g : p.alphabet().names()) cols.push_back(g);
  return PresentationMatrix<Ring>(std::move(entries), p.generator_count(), std::move(rows), std::move(cols));
}

template <class Ring>
std::string display_poly(const SkewArithmetic<Ring>& arith, SkewLaurent<typename Ring::elem_type> p) {
  using E = typename Ring::elem_type;
  if (p.low() != 0) p = arith.mul(SkewLaurent<E>::monomial(arith.ring().one(), -p.low()), p);
  if constexpr (Ring::commutative) {
    Integer g = 0;
    for (const auto& [k, c] : p.terms()) g = gcd(g, c.content());
    const auto& lead = p.leading().terms().rbegin()->second;
    if (lead < 0) g = -g;
    if (g != 1 && g != 0) {
      SkewLaurent<E> q;
      for (const auto& [k, c] : p.terms()) {
        LaurentPoly d(c.vars());
        for (const auto& [e, x] : c.terms()) d.add_term(e, Integer(x / g));
        q.add_term(k, d);
      }
      p = q;
    }
  }
  if (!p.is_zero() && arith.ring().first_term(p.leading()).second < 0) p = -p;
  return arith.format(p);
}

}  // namespace detail

// Runs the diagonalizer over the given ring, first trying the
// fundamental-identity kill on each eligible column, and returns the first
// complete form (or the first partial one).
template <class Ring>
DiagonalForm<Ring> compute_form(const SkewArithmetic<Ring>& arith, const Presentation& p, const DegreeOptions& opts = {}) {
  const Ring& ring = arith.ring();
  FoxMatrix raw = jacobian(p);
  auto base = detail::initial_matrix(arith, p, raw);

  // Each attempt buffers its trace; only the returned attempt is replayed.
  using Attempt = std::pair<DiagonalForm<Ring>, std::vector<std::string>>;
  auto attempt = [&](std::optional<GenId> kill, const std::vector<SkewLaurent<typename Ring::elem_type>>& gm1,
                     const UnitCertificate* cert) {
    std::vector<std::string> lines;
    DiagonalizeOptions dopts{20000, opts.shuffle_seed, nullptr};
    if (opts.trace) dopts.trace = [&lines](const std::string& s) { lines.push_back(s); };
    Diagonalizer<Ring> d(arith, base, dopts);
    if (kill) d.kill_column(*kill, gm1, *cert);
    DiagonalForm<Ring> form = d.run();
    form.initial = base;
    return Attempt{std::move(form), std::move(lines)};
  };
  auto finish = [&](Attempt a) {
    if (opts.trace)
      for (const auto& line : a.second) opts.trace(line);
    return std::move(a.first);
  };

  std::vector<SkewLaurent<typename Ring::elem_type>> gm1;
  for (GenId j = 0; j < p.generator_count(); ++j)
    gm1.push_back(arith.normalize(GroupRingElem(Word::generator(j)) - GroupRingElem::one()));

  std::optional<Attempt> first;
  if (opts.fundamental_identity && !raw.empty()) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (fundamental_identity_lhs(raw[i]) != GroupRingElem(p.relators()[i]) - GroupRingElem::one())
        throw std::logic_error("fundamental identity failed for relator " + std::to_string(i + 1));
    for (GenId c = 0; c < p.generator_count(); ++c) {
      if (p.weights()[c] != 0 || !gm1[c].is_monomial()) continue;
      UnitVerdict v = ring.classify(gm1[c].leading());
      if (v.verdict != Verdict::Unit) continue;
      Attempt a = attempt(c, gm1, &*v.certificate);
      if (a.first.status == FormStatus::Complete) return finish(std::move(a));
      if (!first) first = std::move(a);
    }
  }
  Attempt plain = attempt(std::nullopt, gm1, nullptr);
  if (plain.first.status == FormStatus::Complete || !first) return finish(std::move(plain));
  return finish(std::move(*first));
}

namespace detail {

template <class Ring>
void fill_result(DegreeResult& res, const SkewArithmetic<Ring>& arith, const DiagonalForm<Ring>& form) {
  for (const auto& m : form.log) res.move_log.push_back(format_move(m, arith));
  std::string joined;
  for (const auto& s : res.move_log) joined += s + "\n";
  res.move_log_digest = fnv1a_hex(joined);
  for (const auto& t : form.torsion) res.torsion_polys.push_back(display_poly(arith, t));
  res.certificates = form.certificates;
  res.lower_bound = form.confirmed_span;
  if (form.status == FormStatus::Partial) {
    res.status = DegreeStatus::Undecided;
    res.undecided = form.undecided;
    return;
  }
  if (form.free_rank_relative == 0) throw std::logic_error(res.group + ": relative module has rank zero");
  std::int64_t r = static_cast<std::int64_t>(form.free_rank_relative) - 1;
  res.r = r;
  res.delta_bar = form.confirmed_span;
  if (r > 0) {
    res.status = DegreeStatus::Infinite;
  } else {
    res.status = DegreeStatus::Exact;
    res.delta = form.confirmed_span;
  }
}

}  // namespace detail

// delta_n and delta-bar_n of G with respect to psi.
inline DegreeResult delta_n(const Presentation& input, std::size_t n, const DegreeOptions& opts = {}) {
  DegreeResult res;
  res.group = input.name();
  res.n = n;
  TorsionQuotient tq = torsion_quotient_detail(input);
  if (!tq.killed.empty()) {
    std::string names;
    for (const auto& k : tq.killed) names += (names.empty() ? "" : " ") + k;
    res.notes.push_back("killed torsion generators: " + names);
  }
  Presentation p = tq.result;
  AbelianStructure h1 = abelianize(p);
  if (h1.free_rank == 0) {
    res.notes.push_back("first Betti number is zero; Gamma_n is trivial");
    res.status = DegreeStatus::Exact;
    res.delta = 0;
    res.delta_bar = 0;
    res.r = 0;
    return res;
  }
  if (!p.weights_surjective()) throw input_error(p.name() + ": weights must generate Z (gcd is " + std::to_string(p.weight_gcd()) + ")");

  GenId s = 0;
  if (opts.splitting && *opts.splitting != "auto") {
    if (!p.alphabet().contains(*opts.splitting)) throw input_error(p.name() + ": unknown splitting generator '" + *opts.splitting + "'");
    s = p.alphabet().id(*opts.splitting);
    if (p.weights()[s] != 1) throw input_error(p.name() + ": splitting generator '" + *opts.splitting + "' must have weight 1");
  } else {
    const auto& w = p.weights();
    auto it = std::find(w.begin(), w.end(), 1);
    if (it == w.end())
      throw input_error(p.name() + ": no generator has weight 1; change generators (ensure_weight_one) or name a splitting");
    s = static_cast<GenId>(it - w.begin());
  }

  GroupContext ctx(p);
  if (n == 0 || ctx.stabilized()) {
    if (n > 0) res.notes.push_back("rational derived series stabilises: computing over Gamma_0");
    AbelianRing ring(ctx, s, n);
    SkewArithmetic<AbelianRing> arith(ring);
    detail::fill_result(res, arith, compute_form(arith, p, opts));
  } else {
    WordRing ring(ctx, s, n);
    SkewArithmetic<WordRing> arith(ring);
    detail::fill_result(res, arith, compute_form(arith, p, opts));
  }
  return res;
}

// Re-verifies every certificate of a result against a fresh context built
// from the input presentation.
inline std::vector<bool> audit_certificates(const Presentation& input, const DegreeResult& res) {
  std::vector<bool> out;
  if (res.certificates.empty()) return out;
  GroupContext ctx(torsion_quotient(input));
  for (const auto& c : res.certificates) out.push_back(verify_certificate(c, ctx));
  return out;
}

// Same pipeline; the argument is a group presented by its generators.
inline DegreeResult delta_n_group(const Presentation& p, std::size_t n, const DegreeOptions& opts = {}) { return delta_n(p, n, opts); }

// G * H where both factors contain elements of infinite order.
inline DegreeResult free_product_combine(const DegreeResult& a, const DegreeResult& b, bool both_have_non_torsion) {
  if (!both_have_non_torsion) throw precondition_error("free_product_combine: both factors need an element of infinite order");
  if (a.n != b.n) throw precondition_error("free_product_combine: levels differ");
  DegreeResult out;
  out.group = a.group + "*" + b.group;
  out.n = a.n;
  if (a.status == DegreeStatus::Undecided || b.status == DegreeStatus::Undecided) {
    out.status = DegreeStatus::Undecided;
    out.lower_bound = a.lower_bound + b.lower_bound;
    return out;
  }
  out.status = DegreeStatus::Infinite;
  out.delta_bar = *a.delta_bar + *b.delta_bar;
  out.lower_bound = *out.delta_bar;
  out.r = *a.r + *b.r + 1;
  return out;
}

struct ShortcutResult {
  std::int64_t milnor = 0;
  std::int64_t value = 0;
  bool inconsistent = false;
  std::optional<std::int64_t> alternative;
};

// Weighted homogeneous singularity of degree d: mu = prod(d - w_i) / prod w_i,
// delta_n = mu - 1 for n > 0 and mu for n = 0. With first Betti number above
// one the n = 0 value disagrees with the pipeline, which is flagged together
// with mu - 1.
inline ShortcutResult weighted_homogeneous_shortcut(std::size_t n, std::int64_t d, const std::vector<std::int64_t>& weights,
                                                    std::size_t betti) {
  ShortcutResult r;
  r.milnor = milnor_number(d, weights);
  if (n > 0) {
    r.value = r.milnor - 1;
  } else {
    r.value = r.milnor;
    if (betti > 1) {
      r.inconsistent = true;
      r.alternative = r.milnor - 1;
    }
  }
  return r;
}

}  // namespace hodeg
