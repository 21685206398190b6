#pragma once

// Bit-packed vectors over GF(2) and an incrementally maintained reduced
// row-echelon basis for rank and span-membership queries.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbm/errors.hpp"

namespace rbm {

class F2Vector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  F2Vector() = default;
  explicit F2Vector(std::size_t length)
      : length_(length), words_((length + kWordBits - 1) / kWordBits, 0) {}

  static F2Vector unit(std::size_t length, std::size_t k) {
    F2Vector v(length);
    v.set(k);
    return v;
  }

  std::size_t size() const noexcept { return length_; }

  bool test(std::size_t k) const {
    check_index(k);
    return (words_[k / kWordBits] >> (k % kWordBits)) & 1u;
  }

  void set(std::size_t k, bool value = true) {
    check_index(k);
    const word_type bit = word_type{1} << (k % kWordBits);
    if (value)
      words_[k / kWordBits] |= bit;
    else
      words_[k / kWordBits] &= ~bit;
  }

  void flip(std::size_t k) {
    check_index(k);
    words_[k / kWordBits] ^= word_type{1} << (k % kWordBits);
  }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Index of the lowest set coordinate, or npos for the zero vector.
  std::size_t lowest_set() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return npos;
  }

  F2Vector& operator^=(const F2Vector& other) {
    if (other.length_ != length_)
      throw DimensionMismatch("F2Vector: xor of lengths " + std::to_string(length_) + " and " +
                              std::to_string(other.length_));
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend F2Vector operator^(F2Vector lhs, const F2Vector& rhs) { return lhs ^= rhs; }
  friend bool operator==(const F2Vector&, const F2Vector&) = default;

  std::span<const word_type> words() const noexcept { return words_; }

  // "0110..." with coordinate 0 first.
  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t k = 0; k < length_; ++k)
      if (test(k)) s[k] = '1';
    return s;
  }

 private:
  void check_index(std::size_t k) const {
    if (k >= length_)
      throw BoundsError("F2Vector: coordinate " + std::to_string(k) + " out of range for length " +
                        std::to_string(length_));
  }

  std::size_t length_ = 0;
  std::vector<word_type> words_;
};

// Reduced row-echelon set of independent vectors. Row k has its lowest set
// coordinate at pivot(k), pivots are strictly increasing, and no other row has
// a bit at pivot(k).
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t length) : length_(length) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<F2Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // Residual of v after elimination; zero iff v lies in the span.
  F2Vector reduce(F2Vector v) const {
    check_length(v);
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (v.test(pivots_[k])) v ^= rows_[k];
    return v;
  }

  bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }

  // Adds the residual of v if it is nonzero. Returns whether the rank grew.
  bool insert(const F2Vector& v) {
    F2Vector r = reduce(v);
    const std::size_t p = r.lowest_set();
    if (p == F2Vector::npos) return false;
    for (auto& row : rows_)
      if (row.test(p)) row ^= r;
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto offset = at - pivots_.begin();
    pivots_.insert(at, p);
    rows_.insert(rows_.begin() + offset, std::move(r));
    return true;
  }

 private:
  void check_length(const F2Vector& v) const {
    if (v.size() != length_)
      throw DimensionMismatch("EchelonBasis: vector of length " + std::to_string(v.size()) +
                              " against basis of length " + std::to_string(length_));
  }

  std::size_t length_;
  std::vector<F2Vector> rows_;
  std::vector<std::size_t> pivots_;
};

// Dimension of the span of `vectors`. All lengths must agree.
inline std::size_t rank(std::span<const F2Vector> vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis basis(vectors.front().size());
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

}  // namespace rbm
