#pragma once

// Sign assignments on flow universes: the closed constraint solver, the
// explicit type A / type D constructions, axiom validation, gauge
// equivalence, class labels, compatibility of a type A / type D pair, and
// the extension of a compatible pair to a closed assignment.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfz/formal.hpp"
#include "bfz/relations.hpp"

namespace bfz {

struct SignAssignment {
  const FlowUniverse* universe = nullptr;
  std::vector<int8_t> val;  // one sign per flow id; identity flows implicit +1

  int at(uint32_t flow_id) const { return val[flow_id]; }
  int at(const Flow& f) const {
    return f.kind == FlowKind::Identity ? +1 : val[universe->flow_id(f)];
  }
};

struct AxiomInstance {
  std::string axiom;            // "S-1", "A-4", ...
  std::vector<uint32_t> flows;  // ids in the instance's universe
  int expected_product;         // +1 / -1 (for A-5: product of the three)
};

struct ValidationReport {
  bool ok = true;
  long instances = 0;
  std::vector<std::pair<std::string, long>> counts;  // per axiom
  std::vector<AxiomInstance> violations;             // capped
  std::string summary() const;
};

// Enumerates every axiom instance for the universe's flavor and checks the
// assignment against it.  Closed: S-1..S-3.  Right: A-1..A-5.  Left:
// D-1..D-4 (rho12/rho23 flows are skipped).
ValidationReport validate(const SignAssignment& s, int max_violations = 16);

// Also reports Lemma-2.8-style further square products (closed flavor).
ValidationReport check_further_squares(const SignAssignment& s, int max_violations = 16);

// Closed sign assignment by GF(2) solving of S-1..S-3; free variables are
// seeded deterministically.  Aborts if the system is infeasible.
SignAssignment solve_closed(const FlowUniverse& u, uint64_t seed = 0);

// The kernel of the closed system equals the gauge subspace; exposed for
// tests (dimensions and a membership check).
struct ClosedKernelInfo {
  int kernel_dim = 0;
  int gauge_dim = 0;
  bool kernel_is_gauge = false;
};
ClosedKernelInfo closed_kernel_info(const FlowUniverse& u);

// Explicit bordered constructions; both validate before returning.
SignAssignment construct_typeA(const FlowUniverse& right_u);
SignAssignment construct_typeD(const FlowUniverse& left_u);

struct ClassLabel {
  int8_t c1 = +1, c2 = +1;
  bool operator==(const ClassLabel&) const = default;
  std::string str() const;
};

ClassLabel classify_A(const SignAssignment& s);
ClassLabel classify_D(const SignAssignment& s);

// Valid assignment in the requested class, obtained by multiplying each rho
// tag's flows by a character consistent with the triangle relation.
SignAssignment retune_A(const SignAssignment& s, ClassLabel target);
SignAssignment retune_D(const SignAssignment& s, ClassLabel target);

// Gauge witness u with S1(f) = u(x) S2(f) u(y) for all (active) flows.
std::optional<std::vector<int8_t>> gauge_equivalent(const SignAssignment& s1,
                                                    const SignAssignment& s2);

// Applies a gauge map to produce an equivalent assignment (test helper).
SignAssignment apply_gauge(const SignAssignment& s, const std::vector<int8_t>& u);

// ---- Pairing ----------------------------------------------------------

// The paired sign function on compatible flow pairs, indexed by the closed
// flow they union to.
struct PairedSigns {
  const FlowUniverse* closed = nullptr;
  std::vector<int8_t> sign;     // 0 when the closed flow is not in the image
  std::vector<uint8_t> in_dom;  // 1 when in the image of compatible pairs
  long pair_count = 0;
};

PairedSigns pair_signs(const SignAssignment& sa, const SignAssignment& sd,
                       const FlowUniverse& closed_u);

// Exhaustively checks S-1..S-3 on instances lying inside the paired domain.
bool compatible(const SignAssignment& sa, const SignAssignment& sd,
                const FlowUniverse& closed_u, std::string* why = nullptr);

// A type D assignment compatible with sa, derived by pinning the type A
// side of the paired domain in the closed system and reading the solution
// off the remaining union flows.
SignAssignment compatible_partner(const SignAssignment& sa, const FlowUniverse& left_u,
                                  const FlowUniverse& closed_u);
ClassLabel compatible_partner_class(const SignAssignment& sa, const FlowUniverse& left_u);

struct Extension {
  SignAssignment closed;
  bool unique = false;  // pinned system had a zero-dimensional kernel
};

// Closed assignment of power m+n extending the paired function; nullopt if
// the pinned system is infeasible (a compatibility violation).
std::optional<Extension> extend_pairing(const SignAssignment& sa, const SignAssignment& sd,
                                        const FlowUniverse& closed_u);

}  // namespace bfz
