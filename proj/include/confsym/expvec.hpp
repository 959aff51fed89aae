#pragma once

#include <compare>
#include <cstdint>

#include "confsym/errors.hpp"

namespace confsym {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxExponent = 15;

// Exponent vector over at most kMaxVars variables, packed four bits per
// variable. Bits 32..39 hold the total degree and variable 0 sits in the most
// significant nibble, so plain integer comparison is graded-lex.
class ExpVec {
 public:
  constexpr ExpVec() = default;

  static ExpVec unit(int var) {
    ExpVec e;
    e.set(var, 1);
    return e;
  }

  int operator[](int var) const {
    return static_cast<int>((bits_ >> shift(var)) & 0xFu);
  }

  int degree() const { return static_cast<int>((bits_ >> 32) & 0xFFu); }

  void set(int var, int value) {
    if (value < 0 || value > kMaxExponent) {
      throw DegreeOverflow("exponent out of range (0..15)");
    }
    const int old = (*this)[var];
    bits_ &= ~(std::uint64_t{0xF} << shift(var));
    bits_ |= static_cast<std::uint64_t>(value) << shift(var);
    const int deg = degree() - old + value;
    bits_ &= ~(std::uint64_t{0xFF} << 32);
    bits_ |= static_cast<std::uint64_t>(deg) << 32;
  }

  // Returns false when some exponent would exceed kMaxExponent.
  bool try_add(ExpVec other, ExpVec& out) const {
    const std::uint64_t lo_a = bits_ & 0xFFFFFFFFu;
    const std::uint64_t lo_b = other.bits_ & 0xFFFFFFFFu;
    // Nibble-wise overflow: compare against the per-nibble sums.
    const std::uint64_t sum = lo_a + lo_b;
    const std::uint64_t carries = (sum ^ lo_a ^ lo_b) & 0x111111110ull;
    if (carries != 0) return false;
    out.bits_ = bits_ + other.bits_;
    return true;
  }

  ExpVec operator+(ExpVec other) const {
    ExpVec out;
    if (!try_add(other, out)) throw DegreeOverflow("exponent overflow (max 15 per variable)");
    return out;
  }

  // Requires other <= *this componentwise.
  ExpVec minus(ExpVec other) const {
    ExpVec out;
    out.bits_ = bits_ - other.bits_;
    return out;
  }

  bool divides(ExpVec other) const {
    for (int i = 0; i < kMaxVars; ++i) {
      if ((*this)[i] > other[i]) return false;
    }
    return true;
  }

  std::uint64_t raw() const { return bits_; }

  friend bool operator==(ExpVec a, ExpVec b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(ExpVec a, ExpVec b) { return a.bits_ <=> b.bits_; }

 private:
  static constexpr int shift(int var) { return 28 - 4 * var; }
  std::uint64_t bits_ = 0;
};

}  // namespace confsym
