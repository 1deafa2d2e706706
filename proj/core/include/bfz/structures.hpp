#pragma once

// CFA and CFD over Z, their relation validators, the box tensor product,
// the closed complex of a glued diagram, Smith-normal-form homology, type D
// morphisms, homotopy reduction, and the surgery-triangle obstruction
// computation on the built-in diagrams.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfz/diagram.hpp"
#include "bfz/formal.hpp"
#include "bfz/sign.hpp"
#include "bfz/snf.hpp"
#include "bfz/torus_algebra.hpp"

namespace bfz {

struct StructGen {
  std::string name;
  int idem = 0;     // acting idempotent index
  int grading = 0;  // Z/2
};

// Sparse integer table entry: src --(algebra basis element)--> dst.
struct MapEntry {
  int src = 0;
  Basis alg = Basis::I1;
  int dst = 0;
  int64_t coef = 0;
};

struct TypeAStructure {
  SignSeq p;         // algebra A_P the structure is a right module over
  std::vector<StructGen> gens;  // idem = o(x): x * i_t = x iff t = idem
  std::vector<MapEntry> m1;     // alg field unused
  std::vector<MapEntry> m2;     // rho entries only

  // m2(x, a) for a basis element, as a coefficient vector over generators.
  std::vector<int64_t> mul(int x, Basis a) const;
  std::string str() const;
};

struct TypeDStructure {
  SignSeq p;
  std::vector<StructGen> gens;  // idem: i_t * x = x iff t = idem
  std::vector<MapEntry> delta;  // idempotent entries carry the internal flows

  std::string str() const;
};

// Structure relation validators; false means the construction is broken.
bool validate_typeA(const TypeAStructure& a, std::string* why = nullptr);
bool validate_typeD(const TypeDStructure& d, std::string* why = nullptr);

// Builders from a diagram.  CFA uses the type A reading (sign sequence
// swap(H.p)) and requires sa over that sequence of power genus(H); CFD uses
// H.p directly.
TypeAStructure build_CFA(const BorderedDiagram& h, const SignAssignment& sa);
TypeDStructure build_CFD(const BorderedDiagram& h, const SignAssignment& sd);

struct ChainComplex {
  std::vector<StructGen> basis;
  Matrix d;  // column j = differential of basis j; d[i][j] integer coefficient
  std::string str() const;
};

bool validate_d_squared(const ChainComplex& c, std::string* why = nullptr);

// Box tensor product: basis pairs with o(x1) != o(x2); the differential is
// m1 (x) id + terms pairing m2 with delta, with the Koszul sign
// (-1)^{|x| + |a|}.
ChainComplex box_tensor(const TypeAStructure& a, const TypeDStructure& d);

// The closed complex of a glued diagram under a closed sign assignment of
// power g1 + g2.
ChainComplex tilde_CF(const ClosedDiagram& h, const SignAssignment& s);

struct HomologyResult {
  HomologyGroup h[2];  // by Z/2 grading
  std::string str() const;
  std::string machine() const;  // stable key=value lines
  bool operator==(const HomologyResult& o) const;
};

HomologyResult homology(const ChainComplex& c);

// Cancels +-1 idempotent-labeled entries of delta until none remain.
TypeDStructure reduce(const TypeDStructure& d);

// Type D morphisms f: M -> A (x) N with a Z/2 degree.
struct DMorphism {
  std::vector<MapEntry> table;
  int degree = 0;
};

DMorphism d_differential(const DMorphism& f, const TypeDStructure& src,
                         const TypeDStructure& dst);
bool is_homomorphism(const DMorphism& f, const TypeDStructure& src,
                     const TypeDStructure& dst);

// Brute-force search over the sign tuples (S3, S4, S7, S8) of the candidate
// exact-triangle maps between the reduced built-in structures.
struct TriangleReport {
  int s_phi[9] = {0};             // S(phi_1..phi_8) in [1..8]
  int s1 = 0, s2 = 0, s5 = 0, s6 = 0;
  bool degeneration_identity = false;  // S1 S2 S5 S6 == (-1)^{|rho2|}
  std::vector<std::array<int, 4>> hom_tuples;    // both maps homomorphisms
  std::vector<std::array<int, 4>> exact_tuples;  // homomorphisms + exactness
  TypeDStructure n_inf, n_m1, n_0;
  std::string str() const;
};

TriangleReport triangle_obstruction(SignSeq p, ClassLabel cls);

// Generator relabeling x -> sign * y certifying two structures equal up to
// basis signs and a bijection; used by the independence tests.
struct Isomorphism {
  std::vector<int> map;      // generator index in the target
  std::vector<int8_t> sign;  // +-1 per source generator
};
std::optional<Isomorphism> find_isomorphism(const TypeDStructure& a,
                                            const TypeDStructure& b);
std::optional<Isomorphism> find_isomorphism(const TypeAStructure& a,
                                            const TypeAStructure& b);

}  // namespace bfz
