#pragma once

// The mod-2 cohomology ring of a real Bott manifold,
//
//   H*(M; F_2) = F_2[x_1..x_n] / (x_j^2 + alpha_j x_j),
//   alpha_j = sum_{i<j} a_{ij} x_i,
//
// kept in square-free normal form, together with its Stiefel-Whitney classes,
// the Bockstein beta2 : H^2 -> H^3 for Z/2 -> Z/4 -> Z/2, and the spin and
// spin^c decision procedures that live at the cohomological level.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "rbm/bott_matrix.hpp"
#include "rbm/errors.hpp"
#include "rbm/f2linalg.hpp"

namespace rbm {

// Square-free monomial; bit (i-1) of `vars` stands for x_i.
struct Monomial {
  std::uint64_t vars = 0;

  static Monomial of(std::initializer_list<std::size_t> indices) {
    Monomial m;
    for (auto i : indices) m.vars |= std::uint64_t{1} << (i - 1);
    return m;
  }

  std::size_t degree() const noexcept { return static_cast<std::size_t>(std::popcount(vars)); }
  bool contains(std::size_t i) const noexcept { return (vars >> (i - 1)) & 1u; }

  friend bool operator==(Monomial, Monomial) = default;
};

// Lexicographic order on the ascending index sequences: x1 < x1*x2 < x1*x3 < x2.
inline bool lex_less(Monomial a, Monomial b) noexcept {
  if (a.vars == b.vars) return false;
  const int p = std::countr_zero(a.vars ^ b.vars);
  const std::uint64_t at_or_above = ~((std::uint64_t{1} << p) - 1);
  if ((a.vars >> p) & 1u) return (b.vars & at_or_above) != 0;
  return (a.vars & at_or_above) == 0;
}

struct MonomialLexLess {
  bool operator()(Monomial a, Monomial b) const noexcept { return lex_less(a, b); }
};

// Polynomial over F_2 in x_1..x_n stored as a set of square-free monomials,
// sorted lexicographically.
class F2Poly {
 public:
  explicit F2Poly(std::size_t n) : n_(n) {}

  std::size_t variables() const noexcept { return n_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool contains(Monomial m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m, MonomialLexLess{});
  }

  // Adds m with coefficient 1 (so an existing term cancels).
  void toggle(Monomial m) {
    if (n_ < 64 && (m.vars >> n_) != 0)
      throw BoundsError("F2Poly: monomial uses a variable beyond x" + std::to_string(n_));
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, MonomialLexLess{});
    if (it != terms_.end() && *it == m)
      terms_.erase(it);
    else
      terms_.insert(it, m);
  }

  F2Poly& operator+=(const F2Poly& other) {
    check_same(other);
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                  other.terms_.end(), std::back_inserter(out), MonomialLexLess{});
    terms_ = std::move(out);
    return *this;
  }

  friend F2Poly operator+(F2Poly lhs, const F2Poly& rhs) { return lhs += rhs; }
  friend bool operator==(const F2Poly&, const F2Poly&) = default;

  // "x1*x3 + x2*x3"; "0" for the zero polynomial and "1" for the unit.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      if (t > 0) s += " + ";
      const auto v = terms_[t].vars;
      if (v == 0) {
        s += '1';
        continue;
      }
      bool first = true;
      for (auto r = v; r != 0; r &= r - 1) {
        if (!first) s += '*';
        s += 'x' + std::to_string(std::countr_zero(r) + 1);
        first = false;
      }
    }
    return s;
  }

  void check_same(const F2Poly& other) const {
    if (other.n_ != n_)
      throw DimensionMismatch("F2Poly: polynomials in " + std::to_string(n_) + " and " +
                              std::to_string(other.n_) + " variables");
  }

 private:
  std::size_t n_;
  std::vector<Monomial> terms_;
};

// ---------------------------------------------------------------------------
// Coordinates in the monomial bases B2 = {x_i x_j : i<j} and
// B3 = {x_i x_j x_k : i<j<k}, both in ascending lexicographic order.

inline std::size_t binomial2(std::size_t n) { return n * (n - 1) / 2; }
inline std::size_t binomial3(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// 0-based position of x_i x_j (1 <= i < j <= n) in B2.
inline std::size_t b2_index(std::size_t n, std::size_t i, std::size_t j) {
  return (i - 1) * (2 * n - i) / 2 + (j - i) - 1;
}

// 0-based position of x_i x_j x_k (1 <= i < j < k <= n) in B3.
inline std::size_t b3_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t before = binomial3(n) - binomial3(n - i + 1);
  return before + b2_index(n - i, j - i, k - i);
}

inline F2Vector b2_coordinates(const F2Poly& p) {
  const std::size_t n = p.variables();
  F2Vector v(binomial2(n));
  for (auto m : p.terms()) {
    if (m.degree() != 2)
      throw PreconditionError("b2_coordinates: polynomial " + p.to_string() +
                              " is not homogeneous of degree 2");
    const auto i = static_cast<std::size_t>(std::countr_zero(m.vars)) + 1;
    const auto j = static_cast<std::size_t>(63 - std::countl_zero(m.vars)) + 1;
    v.set(b2_index(n, i, j));
  }
  return v;
}

inline F2Vector b3_coordinates(const F2Poly& p) {
  const std::size_t n = p.variables();
  F2Vector v(binomial3(n));
  for (auto m : p.terms()) {
    if (m.degree() != 3)
      throw PreconditionError("b3_coordinates: polynomial " + p.to_string() +
                              " is not homogeneous of degree 3");
    auto r = m.vars;
    const auto i = static_cast<std::size_t>(std::countr_zero(r)) + 1;
    r &= r - 1;
    const auto j = static_cast<std::size_t>(std::countr_zero(r)) + 1;
    r &= r - 1;
    const auto k = static_cast<std::size_t>(std::countr_zero(r)) + 1;
    v.set(b3_index(n, i, j, k));
  }
  return v;
}

// Largest n for which degree-3 computations are supported.
inline constexpr std::size_t kMaxCohomologyDim = 24;

// ---------------------------------------------------------------------------
// Ring operations.

inline F2Poly alpha(const BottMatrix& a, std::size_t j) {
  F2Poly p(a.size());
  for (auto c = a.column(j); c != 0; c &= c - 1) p.toggle(Monomial{c & (~c + 1)});
  return p;
}

namespace detail {

// A monomial that may carry repeated variables: ascending 0-based indices.
using RawTerm = std::vector<std::uint8_t>;

inline void toggle_raw(std::set<RawTerm>& pending, RawTerm t) {
  auto [it, inserted] = pending.insert(std::move(t));
  if (!inserted) pending.erase(it);
}

// Normal form of a raw term: repeatedly rewrite x_j^2 -> alpha_j x_j at the
// highest repeated index j. Each rewrite only introduces indices below j.
inline F2Poly reduce_raw(const BottMatrix& a, RawTerm start) {
  F2Poly out(a.size());
  std::set<RawTerm> pending;
  pending.insert(std::move(start));
  while (!pending.empty()) {
    RawTerm t = std::move(pending.extract(std::prev(pending.end())).value());
    int repeated = -1;
    for (std::size_t k = 1; k < t.size(); ++k)
      if (t[k] == t[k - 1]) repeated = t[k];
    if (repeated < 0) {
      Monomial m;
      for (auto v : t) m.vars |= std::uint64_t{1} << v;
      out.toggle(m);
      continue;
    }
    const auto j = static_cast<std::size_t>(repeated);
    auto pos = std::find(t.begin(), t.end(), static_cast<std::uint8_t>(j));
    t.erase(pos);
    for (auto c = a.columns()[j]; c != 0; c &= c - 1) {
      RawTerm next = t;
      const auto i = static_cast<std::uint8_t>(std::countr_zero(c));
      next.insert(std::upper_bound(next.begin(), next.end(), i), i);
      toggle_raw(pending, std::move(next));
    }
  }
  return out;
}

inline RawTerm merge_raw(Monomial p, Monomial q) {
  RawTerm t;
  for (auto r = p.vars; r != 0; r &= r - 1) t.push_back(static_cast<std::uint8_t>(std::countr_zero(r)));
  for (auto r = q.vars; r != 0; r &= r - 1) t.push_back(static_cast<std::uint8_t>(std::countr_zero(r)));
  std::sort(t.begin(), t.end());
  return t;
}

inline void check_vars(const BottMatrix& a, const F2Poly& p) {
  if (p.variables() != a.size())
    throw DimensionMismatch("polynomial in " + std::to_string(p.variables()) +
                            " variables against a matrix of dimension " + std::to_string(a.size()));
}

}  // namespace detail

// p * q in square-free normal form.
inline F2Poly mul_reduced(const BottMatrix& a, const F2Poly& p, const F2Poly& q) {
  detail::check_vars(a, p);
  detail::check_vars(a, q);
  F2Poly out(a.size());
  for (auto m1 : p.terms())
    for (auto m2 : q.terms()) {
      if ((m1.vars & m2.vars) == 0) {
        out.toggle(Monomial{m1.vars | m2.vars});
        continue;
      }
      out += detail::reduce_raw(a, detail::merge_raw(m1, m2));
    }
  return out;
}

// First Stiefel-Whitney class, sum of all alpha_j.
inline F2Poly w1(const BottMatrix& a) {
  F2Poly p(a.size());
  for (std::size_t j = 1; j <= a.size(); ++j) p += alpha(a, j);
  return p;
}

// Second Stiefel-Whitney class: the degree-2 part of prod_j (1 + alpha_j),
// i.e. sum_{i<j} alpha_i alpha_j, reduced into B2.
inline F2Poly w2_reduced(const BottMatrix& a) {
  const std::size_t n = a.size();
  std::vector<F2Poly> alphas;
  alphas.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) alphas.push_back(alpha(a, j));
  F2Poly w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i].is_zero()) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!alphas[j].is_zero()) w += mul_reduced(a, alphas[i], alphas[j]);
  }
  return w;
}

// Square-free degree-2 part of prod_j (1 + alpha_j), expanded without the ring
// relations: monomials x_k^2 are dropped, x_k x_l (k != l) counted mod 2.
inline F2Poly w2_square_free(const BottMatrix& a) {
  detail::require_orientable(a, "w2_square_free");
  const auto& cols = a.columns();
  const std::size_t n = a.size();
  F2Poly w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (auto ci = cols[i]; ci != 0; ci &= ci - 1)
        for (auto cj = cols[j]; cj != 0; cj &= cj - 1) {
          const auto bk = ci & (~ci + 1);
          const auto bl = cj & (~cj + 1);
          if (bk != bl) w.toggle(Monomial{bk | bl});
        }
  return w;
}

inline bool has_spin(const BottMatrix& a) {
  detail::require_orientable(a, "has_spin");
  return w2_reduced(a).is_zero();
}

// {alpha_j x_j : A^(j) != 0}
inline std::vector<F2Poly> s1_basis(const BottMatrix& a) {
  std::vector<F2Poly> out;
  for (std::size_t j = 1; j <= a.size(); ++j) {
    const auto c = a.column(j);
    if (c == 0) continue;
    F2Poly p(a.size());
    const auto xj = std::uint64_t{1} << (j - 1);
    for (auto r = c; r != 0; r &= r - 1) p.toggle(Monomial{(r & (~r + 1)) | xj});
    out.push_back(std::move(p));
  }
  return out;
}

// {x_k x_l : k < l, A^(k) = A^(l)}
inline std::vector<F2Poly> s2_basis(const BottMatrix& a) {
  std::vector<F2Poly> out;
  const auto& cols = a.columns();
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t l = k + 1; l < cols.size(); ++l)
      if (cols[k] == cols[l]) {
        F2Poly p(a.size());
        p.toggle(Monomial{(std::uint64_t{1} << k) | (std::uint64_t{1} << l)});
        out.push_back(std::move(p));
      }
  return out;
}

// Coordinate vectors of S1 followed by S2; a basis of the image of reduction
// mod 2, H^2(M; Z) -> H^2(M; F_2).
inline std::vector<F2Vector> img_rho2_vectors(const BottMatrix& a) {
  std::vector<F2Vector> out;
  for (const auto& p : s1_basis(a)) out.push_back(b2_coordinates(p));
  for (const auto& p : s2_basis(a)) out.push_back(b2_coordinates(p));
  return out;
}

// Spin^c iff w2 lies in the image of reduction mod 2, tested as span
// membership over the S1 u S2 basis.
inline bool has_spinc_linear(const BottMatrix& a) {
  detail::require_orientable(a, "has_spinc_linear");
  EchelonBasis basis(binomial2(a.size()));
  for (const auto& v : img_rho2_vectors(a)) basis.insert(v);
  return basis.contains(b2_coordinates(w2_reduced(a)));
}

// beta2(x_i x_j) = x_i^2 x_j + x_i x_j^2 = (alpha_i + alpha_j) x_i x_j in B3.
inline F2Poly beta2_image(const BottMatrix& a, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j || j > a.size())
    throw BoundsError("beta2_image: need 1 <= i < j <= " + std::to_string(a.size()) + ", got (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
  F2Poly xij(a.size());
  xij.toggle(Monomial::of({i, j}));
  return mul_reduced(a, alpha(a, i) + alpha(a, j), xij);
}

// Linear extension of beta2 over the B2 coordinates of p.
inline F2Poly beta2(const BottMatrix& a, const F2Poly& p) {
  detail::check_vars(a, p);
  F2Poly out(a.size());
  for (auto m : p.terms()) {
    if (m.degree() != 2)
      throw PreconditionError("beta2: polynomial " + p.to_string() + " is not homogeneous of degree 2");
    const auto i = static_cast<std::size_t>(std::countr_zero(m.vars)) + 1;
    const auto j = static_cast<std::size_t>(63 - std::countl_zero(m.vars)) + 1;
    out += beta2_image(a, i, j);
  }
  return out;
}

// dim ker(beta2 : H^2 -> H^3) = C(n,2) - rank of beta2 on B2.
inline std::size_t beta2_kernel_dim(const BottMatrix& a) {
  const std::size_t n = a.size();
  if (n > kMaxCohomologyDim)
    throw BoundsError("beta2_kernel_dim: dimension " + std::to_string(n) + " exceeds " +
                      std::to_string(kMaxCohomologyDim));
  EchelonBasis image(binomial3(n));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) image.insert(b3_coordinates(beta2_image(a, i, j)));
  return binomial2(n) - image.rank();
}

// Spin^c iff beta2(w2) = 0, since ker beta2 equals the image of reduction mod 2.
inline bool has_spinc_bockstein(const BottMatrix& a) {
  detail::require_orientable(a, "has_spinc_bockstein");
  if (a.size() > kMaxCohomologyDim)
    throw BoundsError("has_spinc_bockstein: dimension " + std::to_string(a.size()) + " exceeds " +
                      std::to_string(kMaxCohomologyDim));
  return beta2(a, w2_reduced(a)).is_zero();
}

// Writes the square-free part of w2, minus its S2 monomials, as
// sum_j alpha'_j x_j and checks that every alpha'_j is 0 or alpha_j.
inline bool alpha_prime_condition(const BottMatrix& a) {
  const F2Poly w = w2_square_free(a);
  const auto& cols = a.columns();
  std::vector<std::uint64_t> alpha_prime(a.size(), 0);
  for (auto m : w.terms()) {
    const auto k = static_cast<std::size_t>(std::countr_zero(m.vars));
    const auto l = static_cast<std::size_t>(63 - std::countl_zero(m.vars));
    if (cols[k] == cols[l]) continue;
    alpha_prime[l] |= std::uint64_t{1} << k;
  }
  for (std::size_t j = 0; j < a.size(); ++j)
    if (alpha_prime[j] != 0 && alpha_prime[j] != cols[j]) return false;
  return true;
}

}  // namespace rbm
