#pragma once

// Exhaustive enumeration of orientable Bott matrices with a bit-level
// spin / spin^c classifier, plus a harness that cross-checks every
// classification route on exhaustive and sampled inputs.

#include <array>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rbm/analysis.hpp"
#include "rbm/bott_matrix.hpp"
#include "rbm/cohomology.hpp"
#include "rbm/errors.hpp"
#include "rbm/f2linalg.hpp"

namespace rbm {

inline constexpr std::size_t kCensusMinDim = 4;
inline constexpr std::size_t kCensusMaxDim = 10;

// 2^C(n-1, 2): every row but the last two has a free even-weight pattern.
inline std::uint64_t orientable_count(std::size_t n) {
  return std::uint64_t{1} << ((n - 1) * (n - 2) / 2);
}

// ---------------------------------------------------------------------------
// Bit-level classifiers. `rows[i]` / `cols[i]` are the 0-based row and column
// masks of an orientable matrix of dimension n.

namespace fast {

template <class Mask>
inline bool dot(Mask r, Mask s) {
  return std::popcount(static_cast<Mask>(r & s)) & 1;
}

// Derived-matrix column test for 3 <= j <= n-2.
template <class Mask>
inline bool spinc(const Mask* rows, const Mask* cols, std::size_t n) {
  for (std::size_t j = 2; j + 2 < n; ++j) {
    const Mask cj = cols[j];
    Mask derived = 0;
    for (std::size_t i = 0; i < j; ++i)
      if (cols[i] != cj && dot(rows[i], rows[j])) derived |= Mask{1} << i;
    if (derived != 0 && derived != cj) return false;
  }
  return true;
}

// w2 vanishes in B2. The coefficient of x_i x_j (i < j) is
// <A_(i), A_(j)> + C(|A_(j)|, 2) a_{ij}: the first term is the square-free
// part, the second comes from x_j^2 = alpha_j x_j.
template <class Mask>
inline bool spin(const Mask* rows, std::size_t n) {
  for (std::size_t j = 1; j + 2 < n; ++j) {
    const auto w = static_cast<unsigned>(std::popcount(rows[j]));
    const bool square = (w * (w - 1) / 2) & 1u;
    for (std::size_t i = 0; i < j; ++i) {
      const bool a_ij = (rows[i] >> j) & 1u;
      if (dot(rows[i], rows[j]) != (square && a_ij)) return false;
    }
  }
  return true;
}

struct Verdict {
  bool spinc = false;
  bool spin = false;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline Verdict classify(const BottMatrix& a) {
  detail::require_orientable(a, "fast::classify");
  return {spinc(a.rows().data(), a.columns().data(), a.size()), spin(a.rows().data(), a.size())};
}

}  // namespace fast

namespace detail {

struct Frame {
  std::array<std::uint32_t, kCensusMaxDim> rows{};
  std::array<std::uint32_t, kCensusMaxDim> cols{};
};

// Even-weight mask of row r (0-based): `code` fills columns r+1..n-2, the last
// column restores even parity.
inline std::uint32_t even_row_mask(std::size_t n, std::size_t r, std::uint32_t code) {
  std::uint32_t mask = code << (r + 1);
  mask |= static_cast<std::uint32_t>(std::popcount(code) & 1) << (n - 1);
  return mask;
}

// Number of even-weight choices for row r of an n x n matrix, as a power of 2.
inline std::size_t even_row_bits(std::size_t n, std::size_t r) { return r + 2 >= n ? 0 : n - 2 - r; }

inline void place_row(Frame& f, std::size_t r, std::uint32_t mask) {
  f.rows[r] = mask;
  for (auto m = mask; m != 0; m &= m - 1) f.cols[static_cast<std::size_t>(std::countr_zero(m))] |= 1u << r;
}

// Visits every completion of rows r..n-3; rows n-2 and n-1 stay zero.
template <class Visit>
inline void enumerate_from(const Frame& f, std::size_t n, std::size_t r, Visit& visit) {
  if (r + 2 >= n) {
    visit(f);
    return;
  }
  const std::uint32_t count = 1u << even_row_bits(n, r);
  for (std::uint32_t code = 0; code < count; ++code) {
    Frame g = f;
    place_row(g, r, even_row_mask(n, r, code));
    enumerate_from(g, n, r + 1, visit);
  }
}

inline BottMatrix to_matrix(const Frame& f, std::size_t n) {
  std::vector<BottMatrix::mask_type> rows(f.rows.begin(), f.rows.begin() + static_cast<std::ptrdiff_t>(n));
  return BottMatrix::from_rows(n, std::move(rows));
}

inline void check_census_dim(std::size_t n) {
  if (n < kCensusMinDim || n > kCensusMaxDim)
    throw BoundsError("census: dimension " + std::to_string(n) + " outside [4, 10]");
}

// Work units: one per choice of the first two rows, 2^(2n-5) in total.
inline std::uint64_t chunk_count(std::size_t n) {
  return std::uint64_t{1} << (even_row_bits(n, 0) + even_row_bits(n, 1));
}

inline Frame chunk_frame(std::size_t n, std::uint64_t chunk) {
  const std::size_t row1_bits = even_row_bits(n, 1);
  Frame f;
  place_row(f, 0, even_row_mask(n, 0, static_cast<std::uint32_t>(chunk >> row1_bits)));
  place_row(f, 1, even_row_mask(n, 1, static_cast<std::uint32_t>(chunk & ((1u << row1_bits) - 1))));
  return f;
}

}  // namespace detail

// Calls visit(const BottMatrix&) once per orientable n x n Bott matrix and
// returns how many were visited.
template <class Visit>
std::uint64_t enumerate_orientable(std::size_t n, Visit&& visit) {
  detail::check_census_dim(n);
  std::uint64_t count = 0;
  auto leaf = [&](const detail::Frame& f) {
    visit(detail::to_matrix(f, n));
    ++count;
  };
  detail::enumerate_from(detail::Frame{}, n, 0, leaf);
  return count;
}

struct CensusRow {
  std::size_t n = 0;
  std::uint64_t orientable_count = 0;
  std::uint64_t spinc_count = 0;
  std::uint64_t spin_count = 0;
  double elapsed_s = 0.0;
  // Matrices re-classified with the cohomology oracles and how many disagreed
  // with the bit-level path. Zero unless crosscheck was requested.
  std::uint64_t crosschecked = 0;
  std::uint64_t crosscheck_mismatches = 0;
};

struct CensusOptions {
  unsigned workers = 1;
  bool crosscheck = false;
  // Every crosscheck_stride-th matrix in enumeration order is re-classified.
  std::uint64_t crosscheck_stride = 1024;
};

inline CensusRow census(std::size_t n, const CensusOptions& options) {
  detail::check_census_dim(n);
  if (options.workers == 0) throw BoundsError("census: need at least one worker");
  if (options.crosscheck && options.crosscheck_stride == 0)
    throw BoundsError("census: crosscheck stride must be positive");

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t chunks = detail::chunk_count(n);
  const std::uint64_t chunk_size = orientable_count(n) / chunks;

  struct Tally {
    std::uint64_t total = 0, spinc = 0, spin = 0, crosschecked = 0, mismatches = 0;
  };
  std::vector<Tally> tallies(options.workers);

  auto work = [&](unsigned w) {
    Tally& t = tallies[w];
    for (std::uint64_t c = w; c < chunks; c += options.workers) {
      std::uint64_t index = c * chunk_size;
      auto leaf = [&](const detail::Frame& f) {
        const bool sc = fast::spinc(f.rows.data(), f.cols.data(), n);
        const bool sp = fast::spin(f.rows.data(), n);
        ++t.total;
        t.spinc += sc;
        t.spin += sp;
        if (options.crosscheck && index % options.crosscheck_stride == 0) {
          const BottMatrix a = detail::to_matrix(f, n);
          ++t.crosschecked;
          const SpincOracles o = spinc_oracles(a);
          if (!o.agree() || o.combinatorial != sc || has_spin(a) != sp) ++t.mismatches;
        }
        ++index;
      };
      detail::enumerate_from(detail::chunk_frame(n, c), n, 2, leaf);
    }
  };

  if (options.workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(options.workers);
    for (unsigned w = 0; w < options.workers; ++w) threads.emplace_back(work, w);
  }

  CensusRow row;
  row.n = n;
  for (const auto& t : tallies) {
    row.orientable_count += t.total;
    row.spinc_count += t.spinc;
    row.spin_count += t.spin;
    row.crosschecked += t.crosschecked;
    row.crosscheck_mismatches += t.mismatches;
  }
  row.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

inline CensusRow census(std::size_t n, unsigned workers = 1) {
  CensusOptions options;
  options.workers = workers;
  return census(n, options);
}

// ---------------------------------------------------------------------------
// Random matrices.

// Uniform over all strictly upper-triangular n x n matrices.
template <class Rng>
BottMatrix random_bott(std::size_t n, Rng& rng) {
  std::vector<BottMatrix::mask_type> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = rng() & BottMatrix::upper_mask(n, i);
  return BottMatrix::from_rows(n, std::move(rows));
}

// Uniform over orientable n x n matrices.
template <class Rng>
BottMatrix random_orientable(std::size_t n, Rng& rng) {
  std::vector<BottMatrix::mask_type> rows(n, 0);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const BottMatrix::mask_type last = BottMatrix::mask_type{1} << (n - 1);
    BottMatrix::mask_type r = rng() & BottMatrix::upper_mask(n, i) & ~last;
    if (std::popcount(r) & 1) r |= last;
    rows[i] = r;
  }
  return BottMatrix::from_rows(n, std::move(rows));
}

// ---------------------------------------------------------------------------
// Oracle harness.

using MatrixPredicate = std::function<bool(const BottMatrix&)>;

// The decision procedures under test; replaceable so the harness itself can
// be tested against a broken oracle.
struct OracleSet {
  MatrixPredicate combinatorial = has_spinc_combinatorial;
  MatrixPredicate alpha_condition = alpha_prime_condition;
  MatrixPredicate linear = has_spinc_linear;
  MatrixPredicate bockstein = has_spinc_bockstein;
  MatrixPredicate spin = has_spin;
  MatrixPredicate dim5 = has_spinc_dim5;
};

struct VerifyReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string failure;
  std::optional<BottMatrix> counterexample;
};

// Empty string when every check passes on `a`, otherwise a description of the
// first failed check.
inline std::string check_matrix(const BottMatrix& a, const OracleSet& oracles = {}) {
  const bool comb = oracles.combinatorial(a);
  const bool alpha = oracles.alpha_condition(a);
  const bool lin = oracles.linear(a);
  const bool bock = oracles.bockstein(a);
  const bool sp = oracles.spin(a);
  if (comb != alpha || alpha != lin || lin != bock)
    return "spin^c oracles disagree: combinatorial=" + std::to_string(comb) +
           " alpha_condition=" + std::to_string(alpha) + " linear=" + std::to_string(lin) +
           " bockstein=" + std::to_string(bock);
  if (sp && !comb) return "spin without spin^c";

  const fast::Verdict v = fast::classify(a);
  if (v.spinc != comb || v.spin != sp)
    return "bit-level classifier disagrees: spinc=" + std::to_string(v.spinc) +
           " spin=" + std::to_string(v.spin);

  const std::size_t n = a.size();
  const std::size_t expected = n - betti1(a) + betti2(a);
  const auto vectors = img_rho2_vectors(a);
  const std::size_t r = rank(vectors);
  if (vectors.size() != expected || r != expected)
    return "S1 u S2 has " + std::to_string(vectors.size()) + " elements of rank " + std::to_string(r) +
           ", expected " + std::to_string(expected);
  const std::size_t kernel = beta2_kernel_dim(a);
  if (kernel != expected)
    return "dim ker beta2 = " + std::to_string(kernel) + ", expected " + std::to_string(expected);

  if (n == 5 && oracles.dim5(a) != comb) return "dimension-5 closed form disagrees";
  return {};
}

// Exhaustive over 4 <= n <= n_exhaustive_max, then samples_per_dim seeded
// random orientable matrices for each remaining n up to 10.
inline VerifyReport verify_oracles(std::size_t n_exhaustive_max, std::uint64_t samples_per_dim,
                                   std::uint64_t seed, const OracleSet& oracles = {}) {
  if (n_exhaustive_max > 7)
    throw BoundsError("verify_oracles: exhaustive range is capped at n = 7, got " +
                      std::to_string(n_exhaustive_max));
  VerifyReport report;
  auto check = [&](const BottMatrix& a) {
    if (!report.ok) return;
    ++report.checked;
    std::string why = check_matrix(a, oracles);
    if (!why.empty()) {
      report.ok = false;
      report.failure = "n=" + std::to_string(a.size()) + ": " + why;
      report.counterexample = a;
    }
  };

  for (std::size_t n = kCensusMinDim; n <= n_exhaustive_max && report.ok; ++n)
    enumerate_orientable(n, check);

  std::mt19937_64 rng(seed);
  const std::size_t first_sampled = std::max(kCensusMinDim, n_exhaustive_max + 1);
  for (std::size_t n = first_sampled; n <= kCensusMaxDim && report.ok; ++n)
    for (std::uint64_t s = 0; s < samples_per_dim && report.ok; ++s) check(random_orientable(n, rng));
  return report;
}

}  // namespace rbm
