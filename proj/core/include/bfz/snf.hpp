#pragma once

// Smith normal form over Z with arbitrary-precision entries, plus the
// homology summary of a Z/2-graded integer chain complex.

#include <cstdint>
#include <string>
#include <vector>

namespace bfz {

// Minimal arbitrary-precision signed integer; enough arithmetic for
// unimodular row/column reduction.
class BigInt {
 public:
  BigInt() = default;
  BigInt(int64_t v);

  bool is_zero() const { return mag_.empty(); }
  int sign() const { return mag_.empty() ? 0 : sign_; }
  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  // Truncated division (quotient rounds toward zero).
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator<(const BigInt& a, const BigInt& b);

  std::string str() const;
  int64_t to_i64() const;  // aborts on overflow

 private:
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  void trim();

  int sign_ = +1;
  std::vector<uint32_t> mag_;  // little-endian base 2^32; empty = zero
};

using Matrix = std::vector<std::vector<BigInt>>;  // row major

struct SnfResult {
  std::vector<BigInt> factors;  // nonzero invariant factors, d_i | d_{i+1}
  Matrix u, v;                  // unimodular certificates: u * m * v = diag(factors)
};

SnfResult smith_normal_form(const Matrix& m);

struct HomologyGroup {
  long free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  std::string str() const;      // "Z^r + Z/d1 + ..."
};

}  // namespace bfz
