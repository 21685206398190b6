#pragma once

// Bott matrices and the purely combinatorial invariants of the real Bott
// manifolds they define.
//
// Indices in the public interface are 1-based, matching the usual a_{ij}
// notation. Internally row i is a mask whose bit (j-1) is a_{ij}; the column
// mask of j has bit (i-1) set iff a_{ij} = 1.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbm/errors.hpp"

namespace rbm {

class BottMatrix {
 public:
  using mask_type = std::uint64_t;
  static constexpr std::size_t kMinDim = 2;
  static constexpr std::size_t kMaxDim = 64;

  // Zero matrix of dimension n (the n-torus).
  explicit BottMatrix(std::size_t n) : n_(check_dim(n)), rows_(n, 0), cols_(n, 0) {}

  // rows[i-1] holds row i; throws if any bit sits on or below the diagonal or
  // outside the matrix.
  static BottMatrix from_rows(std::size_t n, std::vector<mask_type> rows) {
    BottMatrix a(n);
    if (rows.size() != n)
      throw DimensionMismatch("BottMatrix: expected " + std::to_string(n) + " rows, got " +
                              std::to_string(rows.size()));
    for (std::size_t i = 0; i < n; ++i) {
      const mask_type allowed = upper_mask(n, i);
      if ((rows[i] & ~allowed) != 0)
        throw PreconditionError("BottMatrix: row " + std::to_string(i + 1) +
                                " has entries on or below the diagonal");
    }
    a.rows_ = std::move(rows);
    a.rebuild_columns();
    return a;
  }

  // Matrix with a_{ij} = 1 exactly at the listed (i, j) pairs.
  static BottMatrix from_entries(std::size_t n,
                                 std::initializer_list<std::pair<std::size_t, std::size_t>> ones) {
    std::vector<mask_type> rows(n, 0);
    for (auto [i, j] : ones) {
      if (i < 1 || j < 1 || i > n || j > n)
        throw BoundsError("BottMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      rows[i - 1] |= mask_type{1} << (j - 1);
    }
    return from_rows(n, std::move(rows));
  }

  std::size_t size() const noexcept { return n_; }

  mask_type row(std::size_t i) const { return rows_[check_index(i) - 1]; }
  mask_type column(std::size_t j) const { return cols_[check_index(j) - 1]; }
  bool entry(std::size_t i, std::size_t j) const {
    return (row(i) >> (check_index(j) - 1)) & 1u;
  }

  const std::vector<mask_type>& rows() const noexcept { return rows_; }
  const std::vector<mask_type>& columns() const noexcept { return cols_; }

  friend bool operator==(const BottMatrix& a, const BottMatrix& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

  // Bits of columns i+1..n in row i (0-based i).
  static constexpr mask_type upper_mask(std::size_t n, std::size_t i) {
    const mask_type all = n == 64 ? ~mask_type{0} : (mask_type{1} << n) - 1;
    const mask_type low = (mask_type{1} << i << 1) - 1;
    return all & ~low;
  }

 private:
  static std::size_t check_dim(std::size_t n) {
    if (n < kMinDim || n > kMaxDim)
      throw BoundsError("BottMatrix: dimension " + std::to_string(n) + " outside [2, 64]");
    return n;
  }

  std::size_t check_index(std::size_t i) const {
    if (i < 1 || i > n_)
      throw BoundsError("BottMatrix: index " + std::to_string(i) + " outside [1, " +
                        std::to_string(n_) + "]");
    return i;
  }

  void rebuild_columns() {
    std::fill(cols_.begin(), cols_.end(), 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (mask_type r = rows_[i]; r != 0; r &= r - 1)
        cols_[static_cast<std::size_t>(std::countr_zero(r))] |= mask_type{1} << i;
  }

  std::size_t n_;
  std::vector<mask_type> rows_;
  std::vector<mask_type> cols_;
};

// ---------------------------------------------------------------------------
// Text format: n lines of n tokens from {0,1}; '#' lines and blank lines are
// skipped.

inline BottMatrix parse(std::string_view text) {
  struct Token {
    char symbol;
    std::size_t column;
  };
  std::vector<std::vector<Token>> lines;
  std::vector<std::size_t> line_numbers;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::vector<Token> tokens;
    std::size_t k = 0;
    while (k < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[k]))) {
        ++k;
        continue;
      }
      std::size_t tok_end = k;
      while (tok_end < line.size() && !std::isspace(static_cast<unsigned char>(line[tok_end])))
        ++tok_end;
      if (tok_end - k != 1 || (line[k] != '0' && line[k] != '1'))
        throw ParseError(ParseError::Kind::Token, line_no, k + 1,
                         "expected '0' or '1', got '" + std::string(line.substr(k, tok_end - k)) + "'");
      tokens.push_back({line[k], k + 1});
      k = tok_end;
    }
    lines.push_back(std::move(tokens));
    line_numbers.push_back(line_no);
    if (end == text.size()) break;
  }

  const std::size_t n = lines.size();
  if (n < BottMatrix::kMinDim || n > BottMatrix::kMaxDim)
    throw ParseError(ParseError::Kind::Shape, 0, 0,
                     "matrix has " + std::to_string(n) + " rows; dimension must lie in [2, 64]");

  std::vector<BottMatrix::mask_type> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (lines[i].size() != n)
      throw ParseError(ParseError::Kind::Shape, line_numbers[i], 1,
                       "row " + std::to_string(i + 1) + " has " + std::to_string(lines[i].size()) +
                           " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (lines[i][j].symbol != '1') continue;
      if (j <= i)
        throw ParseError(ParseError::Kind::Triangularity, line_numbers[i], lines[i][j].column,
                         "entry a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") must be 0: a Bott matrix is strictly upper triangular");
      rows[i] |= BottMatrix::mask_type{1} << j;
    }
  }
  return BottMatrix::from_rows(n, std::move(rows));
}

// Canonical rendering: single spaces, newline after every row, no comments.
inline std::string to_text(const BottMatrix& a) {
  std::string out;
  const std::size_t n = a.size();
  out.reserve(n * 2 * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (j > 1) out += ' ';
      out += a.entry(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinatorial invariants.

// Every row has an even number of ones.
inline bool is_orientable(const BottMatrix& a) {
  for (auto r : a.rows())
    if (std::popcount(r) & 1) return false;
  return true;
}

// Number of zero columns.
inline std::size_t betti1(const BottMatrix& a) {
  std::size_t b = 0;
  for (auto c : a.columns())
    if (c == 0) ++b;
  return b;
}

// Number of pairs i < j with equal columns.
inline std::size_t betti2(const BottMatrix& a) {
  const auto& cols = a.columns();
  std::size_t b = 0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      if (cols[i] == cols[j]) ++b;
  return b;
}

// Ranks of the free and 2-torsion parts of H_1 and H^2(-, Z), plus the
// dimension of the image of reduction mod 2 in H^2(-, F_2).
struct HomologyReport {
  std::size_t h1_free = 0;
  std::size_t h1_torsion = 0;
  std::size_t h2_free = 0;
  std::size_t h2_torsion = 0;
  std::size_t dim_img_rho2 = 0;

  friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

inline HomologyReport homology_report(const BottMatrix& a) {
  const std::size_t n = a.size();
  const std::size_t b1 = betti1(a);
  const std::size_t b2 = betti2(a);
  return {b1, n - b1, b2, n - b1, n - b1 + b2};
}

// "Z^a + (Z/2)^b" with zero-rank factors dropped; "0" for the trivial group.
inline std::string render_group(std::size_t free_rank, std::size_t torsion_rank) {
  std::string s;
  if (free_rank > 0) s = "Z^" + std::to_string(free_rank);
  if (torsion_rank > 0) {
    if (!s.empty()) s += " + ";
    s += "(Z/2)^" + std::to_string(torsion_rank);
  }
  return s.empty() ? "0" : s;
}

// Scalar product of rows k and l over F_2.
inline bool row_dot(const BottMatrix& a, std::size_t k, std::size_t l) {
  return std::popcount(a.row(k) & a.row(l)) & 1;
}

namespace detail {
inline void require_orientable(const BottMatrix& a, const char* op) {
  if (!is_orientable(a))
    throw PreconditionError(std::string(op) + ": matrix is not orientable (some row has odd weight)");
}
}  // namespace detail

// A' with a'_{ij} = <A_(i), A_(j)> for i < j and A^(i) != A^(j), zero
// otherwise. Column j of A' is the coefficient vector of alpha'_j.
inline BottMatrix derived_matrix(const BottMatrix& a) {
  detail::require_orientable(a, "derived_matrix");
  const std::size_t n = a.size();
  const auto& cols = a.columns();
  std::vector<BottMatrix::mask_type> rows(n, 0);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (cols[i - 1] != cols[j - 1] && row_dot(a, i, j))
        rows[i - 1] |= BottMatrix::mask_type{1} << (j - 1);
  return BottMatrix::from_rows(n, std::move(rows));
}

// Spin^c criterion on columns: for 3 <= j <= n-2, column j of A' is zero or
// equal to column j of A. The remaining columns never fail.
inline bool has_spinc_combinatorial(const BottMatrix& a) {
  const BottMatrix d = derived_matrix(a);
  const std::size_t n = a.size();
  for (std::size_t j = 3; j + 2 <= n; ++j) {
    const auto c = d.column(j);
    if (c != 0 && c != a.column(j)) return false;
  }
  return true;
}

// Closed form in dimension 5: A_(3) = 0, or a_12 = 0, or a_23 = 0.
inline bool has_spinc_dim5(const BottMatrix& a) {
  if (a.size() != 5)
    throw PreconditionError("has_spinc_dim5: dimension is " + std::to_string(a.size()) + ", not 5");
  detail::require_orientable(a, "has_spinc_dim5");
  return a.row(3) == 0 || !a.entry(1, 2) || !a.entry(2, 3);
}

}  // namespace rbm
