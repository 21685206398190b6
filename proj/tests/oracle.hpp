#pragma once

// Test-only reference implementations. They share no code path with the
// library beyond BottMatrix::entry and the F2Poly container used to compare
// results.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rbm/bott_matrix.hpp"
#include "rbm/cohomology.hpp"
#include "rbm/f2linalg.hpp"

namespace rbm::oracle {

// Exponent vector (index 0 is x_1) -> coefficient mod 2.
using ExpPoly = std::map<std::vector<int>, bool>;

inline void add_term(ExpPoly& p, const std::vector<int>& e) {
  auto [it, inserted] = p.emplace(e, true);
  if (!inserted) p.erase(it);
}

// Rewrites x_k^2 -> (sum_{i<k} a_ik x_i) x_k at the LOWEST squared index k
// first, reading a_ik entry by entry.
inline ExpPoly reduce_lowest_first(const BottMatrix& a, ExpPoly p) {
  const int n = static_cast<int>(a.size());
  ExpPoly done;
  while (!p.empty()) {
    auto node = p.extract(p.begin());
    std::vector<int> e = node.key();
    int k = -1;
    for (int v = 0; v < n; ++v)
      if (e[v] >= 2) {
        k = v;
        break;
      }
    if (k < 0) {
      add_term(done, e);
      continue;
    }
    e[k] -= 1;
    for (int i = 0; i < k; ++i) {
      if (!a.entry(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(k + 1))) continue;
      std::vector<int> f = e;
      f[i] += 1;
      add_term(p, f);
    }
  }
  return done;
}

inline ExpPoly from_poly(const F2Poly& q) {
  ExpPoly p;
  const auto n = q.variables();
  for (auto m : q.terms()) {
    std::vector<int> e(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if ((m.vars >> i) & 1u) e[i] = 1;
    add_term(p, e);
  }
  return p;
}

inline F2Poly to_poly(std::size_t n, const ExpPoly& p) {
  F2Poly q(n);
  for (const auto& [e, c] : p) {
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 1) throw Error("oracle::to_poly: term is not square-free");
      if (e[i] == 1) m.vars |= std::uint64_t{1} << i;
    }
    q.toggle(m);
  }
  return q;
}

inline ExpPoly multiply(const ExpPoly& p, const ExpPoly& q) {
  ExpPoly out;
  for (const auto& [e1, c1] : p)
    for (const auto& [e2, c2] : q) {
      std::vector<int> e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      add_term(out, e);
    }
  return out;
}

inline F2Poly mul_lowest_first(const BottMatrix& a, const F2Poly& p, const F2Poly& q) {
  return to_poly(a.size(), reduce_lowest_first(a, multiply(from_poly(p), from_poly(q))));
}

inline ExpPoly alpha_exp(const BottMatrix& a, std::size_t j) {
  ExpPoly p;
  for (std::size_t i = 1; i < j; ++i)
    if (a.entry(i, j)) {
      std::vector<int> e(a.size(), 0);
      e[i - 1] = 1;
      add_term(p, e);
    }
  return p;
}

// Expands prod_j (1 + alpha_j) with exponents, truncated to degree <= 2.
inline ExpPoly total_sw_upto2(const BottMatrix& a) {
  const std::size_t n = a.size();
  ExpPoly w;
  add_term(w, std::vector<int>(n, 0));
  for (std::size_t j = 1; j <= n; ++j) {
    ExpPoly factor = alpha_exp(a, j);
    add_term(factor, std::vector<int>(n, 0));
    ExpPoly next;
    for (const auto& [e, c] : multiply(w, factor)) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg <= 2) add_term(next, e);
    }
    w = std::move(next);
  }
  return w;
}

inline ExpPoly degree_part(const ExpPoly& p, int degree) {
  ExpPoly out;
  for (const auto& [e, c] : p) {
    int deg = 0;
    for (int x : e) deg += x;
    if (deg == degree) add_term(out, e);
  }
  return out;
}

// w2 from the total class, reduced in the lowest-first order.
inline F2Poly w2(const BottMatrix& a) {
  return to_poly(a.size(), reduce_lowest_first(a, degree_part(total_sw_upto2(a), 2)));
}

// Square-free part of the unreduced degree-2 component.
inline F2Poly w2_square_free(const BottMatrix& a) {
  F2Poly q(a.size());
  for (const auto& [e, c] : degree_part(total_sw_upto2(a), 2)) {
    bool square_free = true;
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 1) square_free = false;
      if (e[i] == 1) m.vars |= std::uint64_t{1} << i;
    }
    if (square_free) q.toggle(m);
  }
  return q;
}

// Columns and Betti numbers straight from the entries.
inline std::vector<std::vector<bool>> columns(const BottMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> cols(n, std::vector<bool>(n));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) cols[j - 1][i - 1] = a.entry(i, j);
  return cols;
}

inline std::size_t betti1(const BottMatrix& a) {
  std::size_t b = 0;
  for (const auto& c : columns(a)) {
    bool zero = true;
    for (bool x : c) zero = zero && !x;
    b += zero;
  }
  return b;
}

inline std::size_t betti2(const BottMatrix& a) {
  const auto cols = columns(a);
  std::size_t b = 0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j) b += cols[i] == cols[j];
  return b;
}

// Membership by enumerating all 2^k combinations.
inline bool span_contains(const std::vector<F2Vector>& gens, const F2Vector& v) {
  const std::size_t k = gens.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    F2Vector acc(v.size());
    for (std::size_t t = 0; t < k; ++t)
      if ((s >> t) & 1u) acc ^= gens[t];
    if (acc == v) return true;
  }
  return false;
}

}  // namespace rbm::oracle
