#pragma once

// The integral torus algebra A_P: two idempotents i1, i2 and six arc
// elements rho1, rho2, rho3, rho12, rho23, rho123, with integer
// coefficients.  A sign sequence P in {-,+}^2 decorates the four marked
// points of the genus-1 pointed matched circle and selects one of the two
// Z/2 gradings on the algebra.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace bfz {

// Sign sequence P = (P1, P2), one sign per matched pair of points.
struct SignSeq {
  int8_t p1 = +1;
  int8_t p2 = +1;

  constexpr bool operator==(const SignSeq&) const = default;
  std::string str() const;                      // "++", "+-", "-+", "--"
  static std::optional<SignSeq> parse(std::string_view s);
};

// Basis elements in the canonical serialization order.
enum class Basis : uint8_t {
  I1 = 0, I2, R1, R2, R3, R12, R23, R123,
};
inline constexpr int kBasisCount = 8;

constexpr bool is_idempotent(Basis b) { return b == Basis::I1 || b == Basis::I2; }

const char* basis_name(Basis b);                 // "i1", "rho12", ...
std::optional<Basis> basis_from_name(std::string_view s);

// Idempotent compatibility: rho_I = i_left(rho_I) * rho_I * i_right(rho_I).
// For idempotents both sides are the element itself.
int left_idem(Basis b);                          // 1 or 2
int right_idem(Basis b);

// Structure constants: basis product, or nullopt when the product is zero.
// (Products not listed in the defining table are zero.)
std::optional<Basis> basis_mul(Basis a, Basis b);

// The two Z/2 gradings.  Idempotents are graded 0.
enum class GradingVariant : uint8_t { Gr1 = 0, Gr2 = 1 };
int grading(Basis b, GradingVariant g);

// The grading attached to a signed pointed matched circle Z_P: Gr1 when the
// two signs agree, Gr2 otherwise.
GradingVariant grading_for_sequence(SignSeq p);
inline int grading(Basis b, SignSeq p) { return grading(b, grading_for_sequence(p)); }

// Marked points of Z_P in boundary order a1,a2,a3,a4: matched pairs
// {a1,a3} -> 1 and {a2,a4} -> 2; per pair the first point carries the sign
// from P and the second the opposite one.
int point_pair(int point);                       // point in 1..4
int point_sign(int point, SignSeq p);            // +1 / -1

// Endpoints (marked point indices) of the Z-segment representing an arc
// element; idempotents have no segment.
int segment_start(Basis b);
int segment_end(Basis b);

// Product of the inherited endpoint signs of the segment of rho; equals
// (-1)^grading(rho, P).  Rejects idempotents.
int endpoint_sign_product(Basis rho, SignSeq p);

// An integer linear combination of the eight basis elements.
class AlgebraElement {
 public:
  AlgebraElement() { coeff_.fill(0); }
  static AlgebraElement zero() { return {}; }
  static AlgebraElement unit();                  // i1 + i2
  static AlgebraElement basis(Basis b, int64_t c = 1);

  int64_t coeff(Basis b) const { return coeff_[static_cast<int>(b)]; }
  void set_coeff(Basis b, int64_t c) { coeff_[static_cast<int>(b)] = c; }
  bool is_zero() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(int64_t c, AlgebraElement a);
  bool operator==(const AlgebraElement&) const = default;

  // Homogeneous of the given degree: every nonzero term has that grading.
  bool homogeneous(GradingVariant g, int* degree_out = nullptr) const;

  // Signed-sum rendering, e.g. "-2*rho12 + rho3"; "0" for zero.  parse()
  // accepts the same grammar.
  std::string str() const;
  static std::optional<AlgebraElement> parse(std::string_view text);

 private:
  std::array<int64_t, kBasisCount> coeff_;
};

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace bfz
