#pragma once

// Combinatorial nice bordered Heegaard diagrams with torus boundary: curves,
// signed intersection points, elementary domains, the three built-in
// diagrams, generator/flow enumeration, formalization and gluing.
//
// File data is given in the boundary reading used for the type D structure:
// the sign-sequence field is the signed circle that -dH is identified with,
// arc indices a1/a2 follow that reading, and each half strip's rho tag is
// the algebra element appearing in delta^1.  The type A side reads the same
// diagram through the opposite boundary orientation: arc indices complement,
// tags map under rho1<->rho3, rho12<->rho23, and the sign sequence swaps its
// two coordinates.

#include <optional>
#include <string>
#include <vector>

#include "bfz/formal.hpp"
#include "bfz/torus_algebra.hpp"

namespace bfz {

struct DiagramPoint {
  std::string name;
  bool on_arc = false;  // alpha arc vs alpha circle
  int alpha = 0;        // arc index 1..2 or circle index 1..g-1
  int beta = 0;         // beta circle index 1..g
  int sign = +1;        // intersection sign, alpha first
};

enum class DomainKind : uint8_t { Bigon, Rect, HalfStrip };

struct DiagramDomain {
  DomainKind kind = DomainKind::Bigon;
  // corners by point index: bigon/half: {start, end};
  // rect: {start1, start2, end-sharing-alpha-of-start1, end-sharing-alpha-of-start2}
  std::vector<int> corners;
  std::vector<int> blocked;  // point indices that must be unoccupied
  Basis rho = Basis::I1;     // half strips only
  std::vector<int8_t> flags; // bigon: 2, rect: 4 (fb fr ft fl with start1 at SW), half: 1
};

struct BorderedDiagram {
  std::string name;
  SignSeq p;      // type D side sign sequence
  int alpha_circles = 0;
  int beta_circles = 0;
  std::vector<DiagramPoint> points;
  std::vector<DiagramDomain> domains;

  int genus() const { return beta_circles; }
  int point_index(const std::string& name) const;  // -1 when absent
  SignSeq p_typeA() const { return SignSeq{p.p2, p.p1}; }
};

// Tag translation between the two boundary readings.
Basis opposite_reading_tag(Basis t);

// Parsing and serialization of the line-oriented text format; parse errors
// carry a line number and message.
struct ParseError {
  int line = 0;
  std::string message;
};
std::optional<BorderedDiagram> parse_diagram(const std::string& text, ParseError* err);
std::string serialize_diagram(const BorderedDiagram& d);

// The three solid-torus built-ins.
BorderedDiagram builtin_diagram(const std::string& name, SignSeq p);
std::vector<std::string> builtin_names();

// A generator: one point per beta circle satisfying the curve constraints.
struct DiagramGenerator {
  std::vector<int> points;  // point index per beta circle, beta order
  int occupied_arc = 0;     // 1 or 2, file reading
  std::string str(const BorderedDiagram& d) const;
};

struct DiagramFlow {
  int domain = 0;  // index into domains
  int src = 0, dst = 0;  // generator indices
};

std::vector<DiagramGenerator> generators(const BorderedDiagram& d);
std::vector<DiagramFlow> flows(const BorderedDiagram& d,
                               const std::vector<DiagramGenerator>& gens);

// Formalization.  Right objects live in FlowUniverse(Right, g, swap(P)),
// left objects in FlowUniverse(Left, g, P).
Gen formalize_left_gen(const BorderedDiagram& d, const DiagramGenerator& x);
Gen formalize_right_gen(const BorderedDiagram& d, const DiagramGenerator& x);
Flow formalize_left(const BorderedDiagram& d, const std::vector<DiagramGenerator>& gens,
                    const DiagramFlow& f, const FlowUniverse& left_u);
Flow formalize_right(const BorderedDiagram& d, const std::vector<DiagramGenerator>& gens,
                     const DiagramFlow& f, const FlowUniverse& right_u);

// Test transforms for the independence theorems.
BorderedDiagram flip_beta_orientation(const BorderedDiagram& d, int beta_index);
BorderedDiagram permute_beta_order(const BorderedDiagram& d, const std::vector<int>& perm);

// A glued closed diagram: generators are compatible pairs, flows are lifted
// internal flows plus strip pairs of matching tag.
struct ClosedDiagram {
  const BorderedDiagram* left;   // type A side
  const BorderedDiagram* right;  // type D side
  std::vector<DiagramGenerator> gens_a, gens_d;
  std::vector<std::pair<int, int>> gens;  // (index into gens_a, index into gens_d)
  struct GluedFlow {
    int src = 0, dst = 0;        // indices into gens
    int domain_a = -1;           // contributing domain(s)
    int domain_d = -1;
  };
  std::vector<GluedFlow> flows;
};

// Glues H1 (read as the type A side) to H2 (type D side); requires
// swap(H1.p) == H2.p.  Returns nullopt on boundary mismatch.
std::optional<ClosedDiagram> glue(const BorderedDiagram& h1, const BorderedDiagram& h2);

}  // namespace bfz
