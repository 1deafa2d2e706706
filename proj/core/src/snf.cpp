#include "bfz/snf.hpp"

#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace bfz {

BigInt::BigInt(int64_t v) {
  sign_ = v < 0 ? -1 : +1;
  uint64_t m = v < 0 ? -static_cast<uint64_t>(v) : static_cast<uint64_t>(v);
  while (m) {
    mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = +1;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  uint64_t carry = 0;
  for (size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    out.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  // requires a >= b
  std::vector<uint32_t> out;
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += int64_t(1) << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<uint32_t>(s));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.mag_.empty()) r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.sign_ = +1;
  if (r.mag_.empty()) r.sign_ = +1;
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.sign_ == b.sign_) {
    r.sign_ = a.sign_;
    r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
  } else {
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.sign_ = a.sign_;
      r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
    } else {
      r.sign_ = b.sign_;
      r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
    }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.is_zero() || b.is_zero()) return BigInt();
  BigInt r;
  r.sign_ = a.sign_ * b.sign_;
  r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
  for (size_t i = 0; i < a.mag_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.mag_.size() || carry; ++j) {
      uint64_t cur = r.mag_[i + j] + carry;
      if (j < b.mag_.size()) cur += static_cast<uint64_t>(a.mag_[i]) * b.mag_[j];
      r.mag_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
  }
  r.trim();
  return r;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  assert(!b.is_zero());
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  if (c < 0) return BigInt();
  // long division on magnitudes, bitwise
  std::vector<uint32_t> rem, quo;
  size_t bits = a.mag_.size() * 32;
  quo.assign(a.mag_.size(), 0);
  for (size_t i = bits; i-- > 0;) {
    // rem = rem*2 + bit i of a
    uint32_t carry = (a.mag_[i / 32] >> (i % 32)) & 1;
    for (size_t w = 0; w < rem.size(); ++w) {
      uint32_t next = rem[w] >> 31;
      rem[w] = (rem[w] << 1) | carry;
      carry = next;
    }
    if (carry) rem.push_back(carry);
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (BigInt::cmp_mag(rem, b.mag_) >= 0) {
      rem = BigInt::sub_mag(rem, b.mag_);
      quo[i / 32] |= uint32_t(1) << (i % 32);
    }
  }
  BigInt r;
  r.sign_ = a.sign_ * b.sign_;
  r.mag_ = std::move(quo);
  r.trim();
  return r;
}

BigInt operator%(const BigInt& a, const BigInt& b) { return a - (a / b) * b; }

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign() == b.sign() && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign() != b.sign()) return a.sign() < b.sign();
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  return a.sign() >= 0 ? c < 0 : c > 0;
}

std::string BigInt::str() const {
  if (is_zero()) return "0";
  BigInt v = abs();
  std::string digits;
  BigInt ten(10);
  while (!v.is_zero()) {
    BigInt q = v / ten;
    BigInt d = v - q * ten;
    digits += static_cast<char>('0' + d.to_i64());
    v = q;
  }
  if (sign_ < 0) digits += '-';
  return {digits.rbegin(), digits.rend()};
}

int64_t BigInt::to_i64() const {
  if (mag_.size() > 2) {
    std::fprintf(stderr, "bfz: BigInt out of int64 range\n");
    std::abort();
  }
  uint64_t m = 0;
  for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
  if (m > static_cast<uint64_t>(INT64_MAX)) {
    std::fprintf(stderr, "bfz: BigInt out of int64 range\n");
    std::abort();
  }
  return sign_ < 0 ? -static_cast<int64_t>(m) : static_cast<int64_t>(m);
}

SnfResult smith_normal_form(const Matrix& m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  Matrix a = m;
  SnfResult res;
  res.u.assign(rows, std::vector<BigInt>(rows));
  res.v.assign(cols, std::vector<BigInt>(cols));
  for (size_t i = 0; i < rows; ++i) res.u[i][i] = BigInt(1);
  for (size_t i = 0; i < cols; ++i) res.v[i][i] = BigInt(1);

  auto row_op = [&](size_t dst, size_t src, const BigInt& q) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] = a[dst][j] - q * a[src][j];
    for (size_t j = 0; j < rows; ++j) res.u[dst][j] = res.u[dst][j] - q * res.u[src][j];
  };
  auto col_op = [&](size_t dst, size_t src, const BigInt& q) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] = a[i][dst] - q * a[i][src];
    for (size_t i = 0; i < cols; ++i) res.v[i][dst] = res.v[i][dst] - q * res.v[i][src];
  };
  auto row_swap = [&](size_t x, size_t y) {
    std::swap(a[x], a[y]);
    std::swap(res.u[x], res.u[y]);
  };
  auto col_swap = [&](size_t x, size_t y) {
    for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (size_t i = 0; i < cols; ++i) std::swap(res.v[i][x], res.v[i][y]);
  };
  auto row_negate = [&](size_t x) {
    for (size_t j = 0; j < cols; ++j) a[x][j] = -a[x][j];
    for (size_t j = 0; j < rows; ++j) res.u[x][j] = -res.u[x][j];
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest absolute value nonzero entry, leftmost on ties
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t j = t; j < cols; ++j)
      for (size_t i = t; i < rows; ++i) {
        if (a[i][j].is_zero()) continue;
        if (!found || a[i][j].abs() < a[pi][pj].abs()) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);
    if (a[t][t].sign() < 0) row_negate(t);

    bool dirty = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (a[i][t].is_zero()) continue;
      BigInt q = a[i][t] / a[t][t];
      row_op(i, t, q);
      if (!a[i][t].is_zero()) dirty = true;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (a[t][j].is_zero()) continue;
      BigInt q = a[t][j] / a[t][t];
      col_op(j, t, q);
      if (!a[t][j].is_zero()) dirty = true;
    }
    if (dirty) continue;  // smaller remainders appeared; redo the pivot

    // divisibility: d_t must divide everything below-right
    bool fixed = false;
    for (size_t i = t + 1; i < rows && !fixed; ++i)
      for (size_t j = t + 1; j < cols && !fixed; ++j) {
        if ((a[i][j] % a[t][t]).is_zero()) continue;
        // add row i to row t, then restart the pivot step
        for (size_t jj = 0; jj < cols; ++jj) a[t][jj] = a[t][jj] + a[i][jj];
        for (size_t jj = 0; jj < rows; ++jj) res.u[t][jj] = res.u[t][jj] + res.u[i][jj];
        fixed = true;
      }
    if (fixed) continue;
    ++t;
  }
  for (size_t i = 0; i < t; ++i) res.factors.push_back(a[i][i]);
  return res;
}

std::string HomologyGroup::str() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " \xe2\x8a\x95 ";  // direct sum sign
    os << "Z/" << d.str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace bfz
