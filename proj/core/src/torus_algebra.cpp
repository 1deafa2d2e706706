#include "bfz/torus_algebra.hpp"

#include <cassert>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace bfz {

std::string SignSeq::str() const {
  std::string s;
  s += p1 > 0 ? '+' : '-';
  s += p2 > 0 ? '+' : '-';
  return s;
}

std::optional<SignSeq> SignSeq::parse(std::string_view s) {
  if (s.size() != 2) return std::nullopt;
  SignSeq p;
  for (int i = 0; i < 2; ++i) {
    int8_t v;
    if (s[i] == '+') v = +1;
    else if (s[i] == '-') v = -1;
    else return std::nullopt;
    (i == 0 ? p.p1 : p.p2) = v;
  }
  return p;
}

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::I1: return "i1";
    case Basis::I2: return "i2";
    case Basis::R1: return "rho1";
    case Basis::R2: return "rho2";
    case Basis::R3: return "rho3";
    case Basis::R12: return "rho12";
    case Basis::R23: return "rho23";
    case Basis::R123: return "rho123";
  }
  return "?";
}

std::optional<Basis> basis_from_name(std::string_view s) {
  for (int i = 0; i < kBasisCount; ++i) {
    Basis b = static_cast<Basis>(i);
    if (s == basis_name(b)) return b;
  }
  return std::nullopt;
}

// Segment endpoints on Z\z: rho1: a1->a2, rho2: a2->a3, rho3: a3->a4,
// concatenations accordingly.
int segment_start(Basis b) {
  switch (b) {
    case Basis::R1: case Basis::R12: case Basis::R123: return 1;
    case Basis::R2: case Basis::R23: return 2;
    case Basis::R3: return 3;
    default: return 0;
  }
}

int segment_end(Basis b) {
  switch (b) {
    case Basis::R1: return 2;
    case Basis::R2: case Basis::R12: return 3;
    case Basis::R3: case Basis::R23: case Basis::R123: return 4;
    default: return 0;
  }
}

int point_pair(int point) {
  assert(point >= 1 && point <= 4);
  return (point == 1 || point == 3) ? 1 : 2;
}

int point_sign(int point, SignSeq p) {
  assert(point >= 1 && point <= 4);
  int base = point_pair(point) == 1 ? p.p1 : p.p2;
  // First point of each pair along Z\z carries the sign from P.
  return (point <= 2) ? base : -base;
}

int left_idem(Basis b) {
  if (b == Basis::I1) return 1;
  if (b == Basis::I2) return 2;
  return point_pair(segment_start(b));
}

int right_idem(Basis b) {
  if (b == Basis::I1) return 1;
  if (b == Basis::I2) return 2;
  return point_pair(segment_end(b));
}

std::optional<Basis> basis_mul(Basis a, Basis b) {
  const bool ia = is_idempotent(a), ib = is_idempotent(b);
  if (ia && ib) return a == b ? std::optional<Basis>(a) : std::nullopt;
  if (ia) return left_idem(b) == (a == Basis::I1 ? 1 : 2) ? std::optional<Basis>(b) : std::nullopt;
  if (ib) return right_idem(a) == (b == Basis::I1 ? 1 : 2) ? std::optional<Basis>(a) : std::nullopt;
  // Concatenation of Z-segments: the nonzero products are
  // rho1*rho2, rho2*rho3, rho1*rho23, rho12*rho3.
  if (segment_end(a) != segment_start(b)) return std::nullopt;
  if (a == Basis::R1 && b == Basis::R2) return Basis::R12;
  if (a == Basis::R2 && b == Basis::R3) return Basis::R23;
  if (a == Basis::R1 && b == Basis::R23) return Basis::R123;
  if (a == Basis::R12 && b == Basis::R3) return Basis::R123;
  return std::nullopt;
}

int grading(Basis b, GradingVariant g) {
  // Table of the two Z/2 gradings; rho12 and rho23 are graded 1 in both.
  static constexpr int gr1[kBasisCount] = {0, 0, 0, 1, 0, 1, 1, 1};
  static constexpr int gr2[kBasisCount] = {0, 0, 1, 0, 1, 1, 1, 0};
  return (g == GradingVariant::Gr1 ? gr1 : gr2)[static_cast<int>(b)];
}

GradingVariant grading_for_sequence(SignSeq p) {
  return p.p1 == p.p2 ? GradingVariant::Gr1 : GradingVariant::Gr2;
}

int endpoint_sign_product(Basis rho, SignSeq p) {
  if (is_idempotent(rho)) {
    std::fprintf(stderr, "bfz: endpoint_sign_product rejects idempotents\n");
    std::abort();
  }
  return point_sign(segment_start(rho), p) * point_sign(segment_end(rho), p);
}

AlgebraElement AlgebraElement::unit() {
  AlgebraElement e;
  e.set_coeff(Basis::I1, 1);
  e.set_coeff(Basis::I2, 1);
  return e;
}

AlgebraElement AlgebraElement::basis(Basis b, int64_t c) {
  AlgebraElement e;
  e.set_coeff(b, c);
  return e;
}

bool AlgebraElement::is_zero() const {
  for (int64_t c : coeff_)
    if (c != 0) return false;
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (int i = 0; i < kBasisCount; ++i) coeff_[i] += o.coeff_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (int i = 0; i < kBasisCount; ++i) coeff_[i] -= o.coeff_[i];
  return *this;
}

AlgebraElement operator*(int64_t c, AlgebraElement a) {
  for (int i = 0; i < kBasisCount; ++i) a.coeff_[i] *= c;
  return a;
}

bool AlgebraElement::homogeneous(GradingVariant g, int* degree_out) const {
  int deg = -1;
  for (int i = 0; i < kBasisCount; ++i) {
    if (coeff_[i] == 0) continue;
    int d = grading(static_cast<Basis>(i), g);
    if (deg == -1) deg = d;
    else if (deg != d) return false;
  }
  if (deg == -1) deg = 0;  // zero is homogeneous of any degree
  if (degree_out) *degree_out = deg;
  return true;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (int i = 0; i < kBasisCount; ++i) {
    if (a.coeff(static_cast<Basis>(i)) == 0) continue;
    for (int j = 0; j < kBasisCount; ++j) {
      if (b.coeff(static_cast<Basis>(j)) == 0) continue;
      auto p = basis_mul(static_cast<Basis>(i), static_cast<Basis>(j));
      if (!p) continue;
      out.set_coeff(*p, out.coeff(*p) +
                            a.coeff(static_cast<Basis>(i)) * b.coeff(static_cast<Basis>(j)));
    }
  }
  return out;
}

std::string AlgebraElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kBasisCount; ++i) {
    int64_t c = coeff_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    int64_t a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << basis_name(static_cast<Basis>(i));
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::optional<AlgebraElement> AlgebraElement::parse(std::string_view text) {
  AlgebraElement out;
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i >= text.size()) return std::nullopt;
  if (text.substr(i) == "0") return out;
  bool expect_term = true;
  int64_t sign = +1;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (!expect_term) {
      if (text[i] == '+') sign = +1;
      else if (text[i] == '-') sign = -1;
      else return std::nullopt;
      ++i;
      expect_term = true;
      continue;
    }
    if (text[i] == '-') { sign = -sign; ++i; skip_ws(); }
    else if (text[i] == '+') { ++i; skip_ws(); }
    int64_t mag = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mag = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        mag = mag * 10 + (text[i++] - '0');
      skip_ws();
      if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
    }
    size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])))) ++j;
    auto b = basis_from_name(text.substr(i, j - i));
    if (!b) return std::nullopt;
    out.set_coeff(*b, out.coeff(*b) + sign * mag);
    i = j;
    sign = +1;
    expect_term = false;
  }
  if (expect_term) return std::nullopt;
  return out;
}

}  // namespace bfz
