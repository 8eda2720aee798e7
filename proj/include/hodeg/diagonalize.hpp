#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hodeg/matrix.hpp"

namespace hodeg {

enum class FormStatus { Complete, Partial };

template <class Ring>
struct DiagonalForm {
  using E = typename Ring::elem_type;
  using Poly = SkewLaurent<E>;

  FormStatus status = FormStatus::Partial;
  PresentationMatrix<Ring> initial;
  PresentationMatrix<Ring> final;
  std::vector<Move<E>> log;
  std::vector<Poly> torsion;           // isolated diagonal entries of positive span
  std::vector<std::int64_t> spans;     // span of each, when both ends are certified
  std::int64_t confirmed_span = 0;
  std::size_t free_rank_relative = 0;  // zero columns
  std::vector<UnitCertificate> certificates;
  std::vector<std::string> undecided;  // coefficients the oracle could not decide
};

struct DiagonalizeOptions {
  std::size_t max_iterations = 20000;
  std::optional<std::uint64_t> shuffle_seed;  // randomises pivot tie-breaking
  std::function<void(const std::string&)> trace;
};

// Greedy Smith-style reduction over a skew Laurent ring. Every step is one of
// the logged moves; a pivot is used only when the multipliers it needs can be
// written down with certified units.
template <class Ring>
class Diagonalizer {
 public:
  using E = typename Ring::elem_type;
  using Poly = SkewLaurent<E>;
  using Matrix = PresentationMatrix<Ring>;

  Diagonalizer(const SkewArithmetic<Ring>& arith, Matrix m, DiagonalizeOptions opts = {})
      : arith_(arith), ring_(arith.ring()), initial_(m), M_(std::move(m)), opts_(std::move(opts)),
        finished_row_(M_.rows(), false), finished_col_(M_.cols(), false) {
    if (opts_.shuffle_seed) rng_.seed(*opts_.shuffle_seed);
    if (opts_.trace) opts_.trace("initial\n" + M_.format(arith_));
  }

  const Matrix& matrix() const { return M_; }

  // Column c times the unit (x_c - 1), plus column j times (x_j - 1) for all
  // j != c, is the column of r_i - 1, which vanishes in Z[G]. Call before any
  // other move; the caller checks the identity on the raw Fox matrix.
  void kill_column(std::size_t c, const std::vector<Poly>& generator_minus_one, const UnitCertificate& cert) {
    if (!log_.empty()) throw precondition_error("kill_column must be the first move");
    Move<E> scale{MoveKind::ScaleColumn, c, 0, generator_minus_one[c], false, cert};
    apply(scale);
    certificates_.push_back(cert);
    for (std::size_t j = 0; j < M_.cols(); ++j)
      if (j != c) apply({MoveKind::AddColumn, j, c, generator_minus_one[j], false, std::nullopt});
    apply({MoveKind::IdentityRewrite, c, 0, {}, false, std::nullopt});
  }

  DiagonalForm<Ring> run() {
    std::size_t iter = 0;
    for (bool progress = true; progress && iter < opts_.max_iterations; ++iter) {
      progress = delete_zero_rows() | delete_lonely_units() || exact_clear() || smith_step();
    }
    return finish();
  }

 private:
  struct Candidate {
    std::int64_t span;
    std::size_t terms;
    std::size_t row, col;
    std::uint64_t salt;
    bool operator<(const Candidate& o) const { return std::tie(span, terms, salt, row, col) < std::tie(o.span, o.terms, o.salt, o.row, o.col); }
  };

  void apply(const Move<E>& m) {
    apply_move_in_place(M_, m, arith_);
    log_.push_back(m);
    switch (m.kind) {
      case MoveKind::DeleteZeroRow:
        finished_row_.erase(finished_row_.begin() + static_cast<std::ptrdiff_t>(m.a));
        break;
      case MoveKind::DeletePivotColumn:
      case MoveKind::DeletePivotRow:
        finished_row_.erase(finished_row_.begin() + static_cast<std::ptrdiff_t>(m.a));
        finished_col_.erase(finished_col_.begin() + static_cast<std::ptrdiff_t>(m.b));
        break;
      default:
        break;
    }
    if (opts_.trace) opts_.trace(format_move(m, arith_) + "\n" + M_.format(arith_));
  }

  const UnitVerdict& classify(const E& c) {
    auto it = verdicts_.find(c);
    if (it == verdicts_.end()) it = verdicts_.emplace(c, ring_.classify(c)).first;
    return it->second;
  }

  std::optional<UnitCertificate> unit_certificate(const E& c) {
    const UnitVerdict& v = classify(c);
    if (v.verdict == Verdict::Unit) return v.certificate;
    if (v.verdict == Verdict::Undecided) note_undecided(c);
    return std::nullopt;
  }

  void note_undecided(const E& c) {
    std::string s = ring_.format(c);
    if (std::find(undecided_.begin(), undecided_.end(), s) == undecided_.end()) undecided_.push_back(s);
  }

  bool active(std::size_t i, std::size_t j) const { return !finished_row_[i] && !finished_col_[j]; }

  std::vector<Candidate> candidates(bool units_only) {
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < M_.rows(); ++i)
      for (std::size_t j = 0; j < M_.cols(); ++j) {
        const Poly& e = M_.at(i, j);
        if (e.is_zero() || !active(i, j)) continue;
        if (units_only && e.span() != 0) continue;
        std::uint64_t salt = opts_.shuffle_seed ? rng_() % 4 : 0;
        out.push_back({e.span(), arith_.term_count(e), i, j, salt});
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool delete_zero_rows() {
    bool any = false;
    for (std::size_t i = M_.rows(); i-- > 0;)
      if (M_.row_is_zero(i)) {
        apply({MoveKind::DeleteZeroRow, i, 0, {}, false, std::nullopt});
        any = true;
      }
    return any;
  }

  // A unit alone in its row or column is scaled to 1 and deleted.
  bool delete_lonely_units() {
    for (const auto& c : candidates(true)) {
      bool row_alone = M_.row_nonzeros(c.row) == 1;
      bool col_alone = M_.col_nonzeros(c.col) == 1;
      if (!row_alone && !col_alone) continue;
      Poly u = M_.at(c.row, c.col);
      auto cert = unit_certificate(u.leading());
      if (!cert) continue;
      certificates_.push_back(*cert);
      if (!arith_.is_one(u)) {
        if (row_alone) apply({MoveKind::ScaleRow, c.row, 0, u, true, cert});
        else apply({MoveKind::ScaleColumn, c.col, 0, u, true, cert});
      }
      if (row_alone) apply({MoveKind::DeletePivotRow, c.row, c.col, {}, false, std::nullopt});
      else apply({MoveKind::DeletePivotColumn, c.row, c.col, {}, false, std::nullopt});
      return true;
    }
    return false;
  }

  // Clears the row or column of a unit pivot when every other entry is an
  // exact multiple of it, which avoids fill-in.
  bool exact_clear() {
    for (const auto& c : candidates(true)) {
      const Poly u = M_.at(c.row, c.col);
      if (!unit_certificate(u.leading())) continue;
      std::vector<std::pair<std::size_t, Poly>> ops;
      bool ok = true;
      for (std::size_t l = 0; l < M_.cols() && ok; ++l) {
        if (l == c.col || M_.at(c.row, l).is_zero()) continue;
        auto q = arith_.right_quotient(M_.at(c.row, l), u);
        if (q) ops.emplace_back(l, -*q);
        else ok = false;
      }
      if (ok && !ops.empty()) {
        for (auto& [l, q] : ops) apply({MoveKind::AddColumn, c.col, l, q, false, std::nullopt});
        return true;
      }
      ops.clear();
      ok = true;
      for (std::size_t l = 0; l < M_.rows() && ok; ++l) {
        if (l == c.row || M_.at(l, c.col).is_zero()) continue;
        auto q = arith_.left_quotient(M_.at(l, c.col), u);
        if (q) ops.emplace_back(l, -*q);
        else ok = false;
      }
      if (ok && !ops.empty()) {
        for (auto& [l, q] : ops) apply({MoveKind::AddRow, c.row, l, q, false, std::nullopt});
        return true;
      }
    }
    return false;
  }

  enum class Side { Row, Column };

  // One Euclid step on f by the pivot d sharing a column (row ops) or a row
  // (column ops), cancelling the top or bottom term. Returns false if no
  // multiplier can be materialised.
  bool euclid_step(std::size_t pr, std::size_t pc, std::size_t target, Side side) {
    const Poly d = M_.at(pr, pc);
    const Poly f = side == Side::Row ? M_.at(target, pc) : M_.at(pr, target);
    for (bool top : {true, false}) {
      std::int64_t m = top ? f.high() : f.low();
      std::int64_t k = top ? d.high() : d.low();
      const E& b = top ? f.leading() : f.trailing();
      const E& a = top ? d.leading() : d.trailing();
      std::int64_t shift = m - k;
      if (side == Side::Row) {
        // c b = e sigma^-(m-k)(a)
        E ta = ring_.twist(a, -shift);
        if (auto inv = ring_.monomial_inverse(ta)) {
          E e = ring_.mul(b, *inv);
          apply({MoveKind::AddRow, pr, target, Poly::monomial(-e, shift), false, std::nullopt});
          return true;
        }
        E c, e;
        if (auto binv = ring_.monomial_inverse(b)) {
          c = ring_.mul(ta, *binv);
          e = ring_.one();
        } else if constexpr (Ring::commutative) {
          c = ta;
          e = b;
        } else {
          continue;
        }
        if (!unit_certificate(a)) continue;
        auto cert = unit_certificate(c);
        if (!cert) continue;
        certificates_.push_back(*cert);
        apply({MoveKind::ScaleRow, target, 0, Poly::monomial(c, 0), false, cert});
        apply({MoveKind::AddRow, pr, target, Poly::monomial(-e, shift), false, std::nullopt});
        normalize_content(Side::Row, target);
        return true;
      } else {
        // b sigma^-m(c) = a sigma^-k(e)
        if (auto ainv = ring_.monomial_inverse(a)) {
          E e = ring_.twist(ring_.mul(*ainv, b), k);
          apply({MoveKind::AddColumn, pc, target, Poly::monomial(-e, shift), false, std::nullopt});
          return true;
        }
        E c, e;
        if (auto binv = ring_.monomial_inverse(b)) {
          c = ring_.twist(ring_.mul(*binv, a), m);
          e = ring_.one();
        } else if constexpr (Ring::commutative) {
          c = a;
          e = b;
        } else {
          continue;
        }
        if (!unit_certificate(a)) continue;
        auto cert = unit_certificate(c);
        if (!cert) continue;
        certificates_.push_back(*cert);
        apply({MoveKind::ScaleColumn, target, 0, Poly::monomial(c, 0), false, cert});
        apply({MoveKind::AddColumn, pc, target, Poly::monomial(-e, shift), false, std::nullopt});
        normalize_content(Side::Column, target);
        return true;
      }
    }
    return false;
  }

  // Divides a row or column by the integer content of its entries.
  void normalize_content(Side side, std::size_t idx) {
    if constexpr (Ring::commutative) {
      Integer g = 0;
      std::size_t n = side == Side::Row ? M_.cols() : M_.rows();
      for (std::size_t l = 0; l < n; ++l) {
        const Poly& e = side == Side::Row ? M_.at(idx, l) : M_.at(l, idx);
        for (const auto& [k, c] : e.terms()) g = gcd(g, c.content());
      }
      if (g <= 1) return;
      E gc = ring_.scalar(g, ring_.one());
      auto cert = unit_certificate(gc);
      if (!cert) return;
      apply({side == Side::Row ? MoveKind::ScaleRow : MoveKind::ScaleColumn, idx, 0, Poly::monomial(gc, 0), true, cert});
    } else {
      (void)side;
      (void)idx;
    }
  }

  // Reduces the other entries in the pivot's column and row. Returns true on
  // any change.
  bool reduce_around(std::size_t pr, std::size_t pc) {
    bool changed = false;
    std::int64_t dspan = M_.at(pr, pc).span();
    for (std::size_t l = 0; l < M_.rows(); ++l) {
      if (l == pr || M_.at(l, pc).is_zero()) continue;
      if (auto q = arith_.left_quotient(M_.at(l, pc), M_.at(pr, pc))) {
        apply({MoveKind::AddRow, pr, l, -*q, false, std::nullopt});
        return true;
      }
      while (!M_.at(l, pc).is_zero() && M_.at(l, pc).span() >= dspan) {
        if (!euclid_step(pr, pc, l, Side::Row)) break;
        changed = true;
      }
      if (changed) return true;
    }
    for (std::size_t l = 0; l < M_.cols(); ++l) {
      if (l == pc || M_.at(pr, l).is_zero()) continue;
      if (auto q = arith_.right_quotient(M_.at(pr, l), M_.at(pr, pc))) {
        apply({MoveKind::AddColumn, pc, l, -*q, false, std::nullopt});
        return true;
      }
      while (!M_.at(pr, l).is_zero() && M_.at(pr, l).span() >= dspan) {
        if (!euclid_step(pr, pc, l, Side::Column)) break;
        changed = true;
      }
      if (changed) return true;
    }
    return changed;
  }

  bool smith_step() {
    for (const auto& c : candidates(false)) {
      if (M_.row_nonzeros(c.row) == 1 && M_.col_nonzeros(c.col) == 1) {
        if (M_.at(c.row, c.col).span() == 0) continue;  // lonely unit pass owns these
        finished_row_[c.row] = true;
        finished_col_[c.col] = true;
        return true;
      }
      if (reduce_around(c.row, c.col)) return true;
    }
    return false;
  }

  DiagonalForm<Ring> finish() {
    DiagonalForm<Ring> out;
    out.initial = initial_;
    out.final = M_;
    out.log = log_;
    bool complete = true;
    for (std::size_t i = 0; i < M_.rows(); ++i)
      for (std::size_t j = 0; j < M_.cols(); ++j) {
        const Poly& e = M_.at(i, j);
        if (e.is_zero()) continue;
        bool isolated = M_.row_nonzeros(i) == 1 && M_.col_nonzeros(j) == 1;
        if (!isolated) {
          complete = false;
          continue;
        }
        auto lead = unit_certificate(e.leading());
        auto trail = e.span() == 0 ? lead : unit_certificate(e.trailing());
        if (e.span() == 0 || !lead || !trail) {
          complete = false;
          continue;
        }
        out.torsion.push_back(e);
        out.spans.push_back(e.span());
        out.confirmed_span += e.span();
        certificates_.push_back(*lead);
        certificates_.push_back(*trail);
      }
    for (std::size_t j = 0; j < M_.cols(); ++j) out.free_rank_relative += M_.col_is_zero(j);
    out.status = complete ? FormStatus::Complete : FormStatus::Partial;
    out.certificates = certificates_;
    out.undecided = complete ? std::vector<std::string>{} : undecided_;
    return out;
  }

  const SkewArithmetic<Ring>& arith_;
  const Ring& ring_;
  Matrix initial_;
  Matrix M_;
  DiagonalizeOptions opts_;
  std::vector<bool> finished_row_, finished_col_;
  std::vector<Move<E>> log_;
  std::vector<UnitCertificate> certificates_;
  std::vector<std::string> undecided_;
  std::map<E, UnitVerdict> verdicts_;
  std::mt19937_64 rng_;
};

struct ReadOff {
  std::int64_t delta_relative = 0;
  std::size_t free_rank_relative = 0;
};

template <class Ring>
ReadOff read_off(const DiagonalForm<Ring>& d) {
  if (d.status != FormStatus::Complete) throw precondition_error("read_off: diagonal form is partial");
  return {d.confirmed_span, d.free_rank_relative};
}

}  // namespace hodeg
