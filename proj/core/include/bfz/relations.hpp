#pragma once

// Structural relations between formal flows: boundary degenerations,
// squares, bordered triangles, simple flips, and unions of left/right pairs.
//
// Square conventions.  A composable pair (f1: x->y, f2: y->z) and a second
// pair (f3: x->y', f4: y'->z) form a square when both decompose the same
// decorated union domain.  Three internal shapes arise:
//   - disjoint moving slots: the partner swaps the two decorated domains;
//   - two rectangles sharing one moving slot: an L-shaped hexagon, cut the
//     other way;
//   - a bigon and a rectangle sharing the bigon's slot, attached across the
//     shared beta edge: a pentagon, re-cut with the bigon at the other
//     moving slot.
// A bigon/rectangle junction attached along the shared alpha edge admits no
// second cut; those composites are the "further" configurations whose sign
// product is forced to -1 by the axioms rather than imposed.
//
// Bordered squares pair (bordered, internal) against (internal, bordered)
// with equal rho tags.  When the internal flows move the arc slot, the
// partner's internal flow flips the co-orientation of its arc edge exactly
// when the tag's grading is odd.

#include <optional>
#include <utility>
#include <vector>

#include "bfz/formal.hpp"

namespace bfz {

// Degeneration partners (internal flows only; each has exactly one of each).
std::optional<Flow> alpha_partner(const FlowUniverse& u, const Flow& f);
std::optional<Flow> beta_partner(const FlowUniverse& u, const Flow& f);
bool is_alpha_degeneration(const FlowUniverse& u, const Flow& f1, const Flow& f2);
bool is_beta_degeneration(const FlowUniverse& u, const Flow& f1, const Flow& f2);

// Square partner for a composable internal pair; nullopt when the pair is a
// degeneration, not composable, or a further-type configuration.
std::optional<std::pair<Flow, Flow>> internal_square_partner(const FlowUniverse& u,
                                                             const Flow& f1, const Flow& f2);

// Bordered square partner: exactly one of (f1, f2) is bordered; the partner
// pair carries the bordered flow in the complementary position.
std::optional<std::pair<Flow, Flow>> bordered_square_partner(const FlowUniverse& u,
                                                             const Flow& f1, const Flow& f2);

enum class SquareClass { NotSquare, InternalSquare, BorderedSquare, FurtherSquare };
SquareClass classify_square(const FlowUniverse& u, const Flow& f1, const Flow& f2,
                            const Flow& f3, const Flow& f4);

// Further-type partner: composable internal pairs that admit no square but
// cancel in pairs with sign product -1 (checked, never imposed).
std::optional<std::pair<Flow, Flow>> further_square_partner(const FlowUniverse& u,
                                                            const Flow& f1, const Flow& f2);

// Bordered triangles: for composable bordered flows whose tags multiply,
// the unique third flow with rho(f1)rho(f2) = rho(f3).
std::optional<Flow> triangle_third(const FlowUniverse& u, const Flow& f1, const Flow& f2);
bool is_bordered_triangle(const FlowUniverse& u, const Flow& f1, const Flow& f2,
                          const Flow& f3);

// Simple flip of a rectangle at a non-moving slot.
std::optional<Flow> simple_flip(const FlowUniverse& u, const Flow& f, int slot);

// Unions of compatible right/left data into the closed universe of power
// m+n.  Right slots keep their index, the right arc goes to slot m+s-1; left
// slots i>=2 go to m+i, the left arc to m+s-1; left beta curves shift by m.
std::optional<Gen> union_gens(const FlowUniverse& ru, const FlowUniverse& lu,
                              uint32_t x1, uint32_t x2);
// f1 or f2 may be identity flows; exactly one internal plus one identity, or
// two bordered flows of one tag (rho12/rho23 unions are not closed flows).
std::optional<Flow> union_flows(const FlowUniverse& ru, const FlowUniverse& lu,
                                const FlowUniverse& cu, const Flow& f1, const Flow& f2);

}  // namespace bfz
