#pragma once

// Incremental GF(2) linear system: parity constraints over flow variables,
// reduced row by row into a pivot basis (lowest set bit as pivot).

#include <cstdint>
#include <span>
#include <vector>

namespace bfz {

class Gf2System {
 public:
  explicit Gf2System(int nvars);

  int nvars() const { return nvars_; }
  bool contradiction() const { return contradiction_; }
  int rank() const { return rank_; }
  int kernel_dim() const { return nvars_ - rank_; }

  // Adds sum of vars = parity (mod 2).  Duplicated variables cancel.
  void add(std::span<const uint32_t> vars, int parity);
  void add2(uint32_t a, uint32_t b, int parity);
  void pin(uint32_t var, int value);

  // Solution with free variables set from the seed (bit i of a splitmix of
  // the seed and variable index).  Requires !contradiction().
  std::vector<uint8_t> solve(uint64_t seed = 0) const;

  // Basis of the homogeneous solution space, one support list per free var.
  std::vector<std::vector<uint32_t>> kernel_basis() const;

 private:
  int nvars_;
  int words_;
  int rank_ = 0;
  bool contradiction_ = false;
  std::vector<std::vector<uint64_t>> rows_;  // by pivot; empty when absent
  std::vector<uint8_t> rhs_;
  std::vector<uint8_t> has_;
  mutable std::vector<uint64_t> scratch_;

  void back_substitute(std::vector<uint8_t>& val) const;
};

}  // namespace bfz
