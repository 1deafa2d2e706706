#include "bfz/gf2.hpp"

#include <bit>
#include <cassert>

namespace bfz {

namespace {
uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Gf2System::Gf2System(int nvars)
    : nvars_(nvars), words_((nvars + 63) / 64), rows_(nvars), rhs_(nvars, 0), has_(nvars, 0) {
  scratch_.resize(words_);
}

void Gf2System::add(std::span<const uint32_t> vars, int parity) {
  if (contradiction_) return;
  std::fill(scratch_.begin(), scratch_.end(), 0);
  for (uint32_t v : vars) scratch_[v >> 6] ^= 1ULL << (v & 63);
  uint8_t r = static_cast<uint8_t>(parity & 1);
  for (;;) {
    int pivot = -1;
    for (int w = 0; w < words_; ++w) {
      if (scratch_[w]) {
        pivot = w * 64 + std::countr_zero(scratch_[w]);
        break;
      }
    }
    if (pivot < 0) {
      if (r) contradiction_ = true;
      return;
    }
    if (!has_[pivot]) {
      rows_[pivot] = scratch_;
      rhs_[pivot] = r;
      has_[pivot] = 1;
      ++rank_;
      return;
    }
    const auto& row = rows_[pivot];
    for (int w = pivot >> 6; w < words_; ++w) scratch_[w] ^= row[w];
    r ^= rhs_[pivot];
  }
}

void Gf2System::add2(uint32_t a, uint32_t b, int parity) {
  const uint32_t v[2] = {a, b};
  add(std::span<const uint32_t>(v, 2), parity);
}

void Gf2System::pin(uint32_t var, int value) {
  add(std::span<const uint32_t>(&var, 1), value);
}

void Gf2System::back_substitute(std::vector<uint8_t>& val) const {
  for (int p = nvars_ - 1; p >= 0; --p) {
    if (!has_[p]) continue;
    const auto& row = rows_[p];
    uint8_t v = rhs_[p];
    for (int w = p >> 6; w < words_; ++w) {
      uint64_t bits = row[w];
      if (w == (p >> 6)) bits &= ~((2ULL << (p & 63)) - 1);  // vars strictly above pivot
      while (bits) {
        int q = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        v ^= val[q];
      }
    }
    val[p] = v;
  }
}

std::vector<uint8_t> Gf2System::solve(uint64_t seed) const {
  assert(!contradiction_);
  std::vector<uint8_t> val(nvars_, 0);
  for (int v = 0; v < nvars_; ++v)
    if (!has_[v]) val[v] = seed == 0 ? 0 : static_cast<uint8_t>(splitmix(seed ^ v) & 1);
  back_substitute(val);
  return val;
}

std::vector<std::vector<uint32_t>> Gf2System::kernel_basis() const {
  std::vector<std::vector<uint32_t>> basis;
  for (int f = 0; f < nvars_; ++f) {
    if (has_[f]) continue;
    std::vector<uint8_t> val(nvars_, 0);
    val[f] = 1;
    // homogeneous back substitution
    for (int p = nvars_ - 1; p >= 0; --p) {
      if (!has_[p]) continue;
      const auto& row = rows_[p];
      uint8_t v = 0;
      for (int w = p >> 6; w < words_; ++w) {
        uint64_t bits = row[w];
        if (w == (p >> 6)) bits &= ~((2ULL << (p & 63)) - 1);
        while (bits) {
          int q = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          v ^= val[q];
        }
      }
      val[p] = v;
    }
    std::vector<uint32_t> support;
    for (int v = 0; v < nvars_; ++v)
      if (val[v]) support.push_back(v);
    basis.push_back(std::move(support));
  }
  return basis;
}

}  // namespace bfz
