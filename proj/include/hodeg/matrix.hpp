#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hodeg/error.hpp"
#include "hodeg/skew.hpp"

namespace hodeg {

// The nine module-preserving moves, plus the rewrite that zeroes a column
// equal to the images of r_i - 1 after the fundamental-identity kill.
enum class MoveKind {
  ScaleColumn = 1,
  SwapColumns,
  AddColumn,
  ScaleRow,
  SwapRows,
  AddRow,
  DeleteZeroRow,
  DeletePivotColumn,
  DeletePivotRow,
  IdentityRewrite,
};

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::ScaleColumn: return "scale-column";
    case MoveKind::SwapColumns: return "swap-columns";
    case MoveKind::AddColumn: return "add-column";
    case MoveKind::ScaleRow: return "scale-row";
    case MoveKind::SwapRows: return "swap-rows";
    case MoveKind::AddRow: return "add-row";
    case MoveKind::DeleteZeroRow: return "delete-zero-row";
    case MoveKind::DeletePivotColumn: return "delete-pivot-column";
    case MoveKind::DeletePivotRow: return "delete-pivot-row";
    case MoveKind::IdentityRewrite: return "identity-rewrite";
  }
  return "?";
}

// Index conventions:
//   ScaleColumn/ScaleRow: a, factor (or its inverse when inverse is set)
//   Swap*: a <-> b
//   AddColumn: col b += col a * factor;  AddRow: row b += factor * row a
//   DeleteZeroRow: row a;  DeletePivot*: row a, column b
//   IdentityRewrite: column a set to zero
template <class E>
struct Move {
  MoveKind kind = MoveKind::SwapRows;
  std::size_t a = 0;
  std::size_t b = 0;
  SkewLaurent<E> factor;
  bool inverse = false;
  std::optional<UnitCertificate> certificate;
};

template <class Ring>
class PresentationMatrix {
 public:
  using E = typename Ring::elem_type;
  using Poly = SkewLaurent<E>;

  PresentationMatrix() = default;
  PresentationMatrix(std::vector<std::vector<Poly>> entries, std::size_t cols, std::vector<std::string> row_labels,
                     std::vector<std::string> col_labels)
      : entries_(std::move(entries)), cols_(cols), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    for (auto& r : entries_) r.resize(cols_);
  }

  std::size_t rows() const { return entries_.size(); }
  std::size_t cols() const { return cols_; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  Poly& at(std::size_t i, std::size_t j) { return entries_[i][j]; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  bool row_is_zero(std::size_t i) const {
    for (const auto& e : entries_[i])
      if (!e.is_zero()) return false;
    return true;
  }
  bool col_is_zero(std::size_t j) const {
    for (const auto& r : entries_)
      if (!r[j].is_zero()) return false;
    return true;
  }
  std::size_t row_nonzeros(std::size_t i) const {
    std::size_t n = 0;
    for (const auto& e : entries_[i]) n += !e.is_zero();
    return n;
  }
  std::size_t col_nonzeros(std::size_t j) const {
    std::size_t n = 0;
    for (const auto& r : entries_) n += !r[j].is_zero();
    return n;
  }

  void erase_row(std::size_t i) {
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
    row_labels_.erase(row_labels_.begin() + static_cast<std::ptrdiff_t>(i));
  }
  void erase_col(std::size_t j) {
    for (auto& r : entries_) r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
    col_labels_.erase(col_labels_.begin() + static_cast<std::ptrdiff_t>(j));
    --cols_;
  }
  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(entries_[i], entries_[j]);
    std::swap(row_labels_[i], row_labels_[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : entries_) std::swap(r[i], r[j]);
    std::swap(col_labels_[i], col_labels_[j]);
  }

  friend bool operator==(const PresentationMatrix& a, const PresentationMatrix& b) {
    return a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::string format(const SkewArithmetic<Ring>& arith) const {
    std::ostringstream out;
    out << "[" << rows() << "x" << cols() << "]";
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : " cols: ") << col_labels_[j];
    out << "\n";
    for (std::size_t i = 0; i < rows(); ++i) {
      out << "  " << row_labels_[i] << ": (";
      for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << arith.format(entries_[i][j]);
      out << ")\n";
    }
    return out.str();
  }

 private:
  std::vector<std::vector<Poly>> entries_;
  std::size_t cols_ = 0;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

template <class Ring>
std::string format_move(const Move<typename Ring::elem_type>& m, const SkewArithmetic<Ring>& arith) {
  std::ostringstream out;
  out << to_string(m.kind) << ' ' << m.a;
  switch (m.kind) {
    case MoveKind::ScaleColumn:
    case MoveKind::ScaleRow:
      out << " by " << (m.inverse ? "inverse of " : "") << arith.format(m.factor);
      if (m.certificate) out << " [" << to_string(m.certificate->kind) << "]";
      break;
    case MoveKind::AddColumn:
    case MoveKind::AddRow:
      out << " -> " << m.b << " times " << arith.format(m.factor);
      break;
    case MoveKind::SwapColumns:
    case MoveKind::SwapRows:
    case MoveKind::DeletePivotColumn:
    case MoveKind::DeletePivotRow:
      out << ' ' << m.b;
      break;
    case MoveKind::DeleteZeroRow:
    case MoveKind::IdentityRewrite:
      break;
  }
  return out.str();
}

namespace detail {

template <class Ring>
void check_unit_factor(const Move<typename Ring::elem_type>& m, const SkewArithmetic<Ring>& arith) {
  if (!m.factor.is_monomial()) throw precondition_error(std::string(to_string(m.kind)) + ": factor must be a single term c*t^k");
  if (!m.certificate) throw precondition_error(std::string(to_string(m.kind)) + ": scaling requires a unit certificate");
  if (!arith.ring().certifies(*m.certificate, m.factor.leading()))
    throw precondition_error(std::string(to_string(m.kind)) + ": certificate does not match the factor");
}

}  // namespace detail

// In-place application; throws precondition_error on an illegal move.
template <class Ring>
void apply_move_in_place(PresentationMatrix<Ring>& M, const Move<typename Ring::elem_type>& m, const SkewArithmetic<Ring>& arith) {
  auto need_row = [&](std::size_t i) {
    if (i >= M.rows()) throw precondition_error(std::string(to_string(m.kind)) + ": row index out of range");
  };
  auto need_col = [&](std::size_t j) {
    if (j >= M.cols()) throw precondition_error(std::string(to_string(m.kind)) + ": column index out of range");
  };
  switch (m.kind) {
    case MoveKind::ScaleColumn: {
      need_col(m.a);
      detail::check_unit_factor(m, arith);
      for (std::size_t i = 0; i < M.rows(); ++i) {
        auto& e = M.at(i, m.a);
        if (e.is_zero()) continue;
        if (m.inverse) {
          auto q = arith.left_quotient(e, m.factor);
          if (!q) throw precondition_error("scale-column: entry is not a right multiple of the factor");
          e = *q;
        } else {
          e = arith.mul(e, m.factor);
        }
      }
      break;
    }
    case MoveKind::ScaleRow: {
      need_row(m.a);
      detail::check_unit_factor(m, arith);
      for (std::size_t j = 0; j < M.cols(); ++j) {
        auto& e = M.at(m.a, j);
        if (e.is_zero()) continue;
        if (m.inverse) {
          auto q = arith.right_quotient(e, m.factor);
          if (!q) throw precondition_error("scale-row: entry is not a left multiple of the factor");
          e = *q;
        } else {
          e = arith.mul(m.factor, e);
        }
      }
      break;
    }
    case MoveKind::SwapColumns:
      need_col(m.a);
      need_col(m.b);
      M.swap_cols(m.a, m.b);
      break;
    case MoveKind::SwapRows:
      need_row(m.a);
      need_row(m.b);
      M.swap_rows(m.a, m.b);
      break;
    case MoveKind::AddColumn:
      need_col(m.a);
      need_col(m.b);
      if (m.a == m.b) throw precondition_error("add-column: source equals target");
      for (std::size_t i = 0; i < M.rows(); ++i)
        if (!M.at(i, m.a).is_zero()) M.at(i, m.b) += arith.mul(M.at(i, m.a), m.factor);
      break;
    case MoveKind::AddRow:
      need_row(m.a);
      need_row(m.b);
      if (m.a == m.b) throw precondition_error("add-row: source equals target");
      for (std::size_t j = 0; j < M.cols(); ++j)
        if (!M.at(m.a, j).is_zero()) M.at(m.b, j) += arith.mul(m.factor, M.at(m.a, j));
      break;
    case MoveKind::DeleteZeroRow:
      need_row(m.a);
      if (!M.row_is_zero(m.a)) throw precondition_error("delete-zero-row: row is not zero");
      M.erase_row(m.a);
      break;
    case MoveKind::DeletePivotColumn:
      need_row(m.a);
      need_col(m.b);
      if (!arith.is_one(M.at(m.a, m.b)) || M.col_nonzeros(m.b) != 1)
        throw precondition_error("delete-pivot-column: column must have a single nonzero entry equal to 1");
      M.erase_row(m.a);
      M.erase_col(m.b);
      break;
    case MoveKind::DeletePivotRow:
      need_row(m.a);
      need_col(m.b);
      if (!arith.is_one(M.at(m.a, m.b)) || M.row_nonzeros(m.a) != 1)
        throw precondition_error("delete-pivot-row: row must have a single nonzero entry equal to 1");
      M.erase_row(m.a);
      M.erase_col(m.b);
      break;
    case MoveKind::IdentityRewrite:
      need_col(m.a);
      for (std::size_t i = 0; i < M.rows(); ++i) M.at(i, m.a) = {};
      break;
  }
}

template <class Ring>
PresentationMatrix<Ring> apply_move(const PresentationMatrix<Ring>& M, const Move<typename Ring::elem_type>& m,
                                    const SkewArithmetic<Ring>& arith) {
  PresentationMatrix<Ring> out = M;
  apply_move_in_place(out, m, arith);
  return out;
}

template <class Ring>
PresentationMatrix<Ring> replay(const PresentationMatrix<Ring>& initial, const std::vector<Move<typename Ring::elem_type>>& log,
                                const SkewArithmetic<Ring>& arith) {
  PresentationMatrix<Ring> M = initial;
  for (const auto& m : log) apply_move_in_place(M, m, arith);
  return M;
}

// FNV-1a 64 over the serialized log, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

}  // namespace hodeg
