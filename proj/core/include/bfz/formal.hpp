#pragma once

// Formal generators and formal flows.  A generator of power n is a
// permutation sigma of {1..n} with a sign profile eps in {±1}^n; bordered
// generators additionally occupy one of the two boundary arcs (s in {1,2}),
// thought of as the last slot (right) or the first slot (left).
//
// Flows are decorated planar domains between generators:
//   Bigon        one moving slot, flags (f1,f2) = ccw co-orientations of the
//                alpha and beta edge; validity eps_i(x) = -f1*f2.
//   Rect         two moving slots a<b, flags (fb,fr,ft,fl) for the bottom/
//                right/top/left edges in the presentation with slot a at the
//                bottom; corner signs  eps_a(x) = -fb*fl,  eps_b(x) = -ft*fr,
//                eps_a(y) = fb*fr,  eps_b(y) = ft*fl.
//   BorderedRect one moving slot (the arc slot), a rho tag; the two arc-edge
//                flags are pinned by the signed pointed matched circle, the
//                beta flag by the start sign profile.
//   Identity     no moving slots; used only when pairing.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bfz/torus_algebra.hpp"

namespace bfz {

enum class Flavor : uint8_t { Closed, Right, Left };

struct Gen {
  std::vector<uint8_t> sigma;  // sigma[i] = beta index of slot i+1 (1-based values)
  std::vector<int8_t> eps;     // +1 / -1 per slot
  uint8_t s = 0;               // occupied arc, 0 for closed

  int n() const { return static_cast<int>(sigma.size()); }
  int sigma_at(int slot) const { return sigma[slot - 1]; }
  int eps_at(int slot) const { return eps[slot - 1]; }
  int perm_sign() const;

  bool operator==(const Gen&) const = default;
  std::string str() const;
};

enum class FlowKind : uint8_t { Bigon, Rect, BorderedRect, Identity };

struct Flow {
  FlowKind kind = FlowKind::Identity;
  uint32_t from = 0, to = 0;  // generator ids in the universe
  uint8_t a = 0, b = 0;       // moving slots; bigon/bordered use a; rect a<b
  Basis tag = Basis::I1;      // bordered rho tag
  int8_t f1 = 0, f2 = 0, f3 = 0, f4 = 0;  // flags, see header comment

  bool operator==(const Flow&) const = default;

  bool is_internal() const { return kind == FlowKind::Bigon || kind == FlowKind::Rect; }

  // ccw co-orientation flag of the edge lying on the given alpha slot /
  // beta curve (rect or bigon; for bordered rects alpha_flag takes the
  // role "start" (bottom) or "end" (top) arc edge instead of a slot).
  int alpha_flag(int slot) const;
  int beta_flag_col(int col, const Gen& from_gen) const;
};

// Arc slot of a bordered universe of power n: n for right, 1 for left.
inline int arc_slot(Flavor fl, int n) { return fl == Flavor::Right ? n : 1; }

class FlowUniverse {
 public:
  // P is ignored for the closed flavor.
  FlowUniverse(Flavor flavor, int n, SignSeq p = {});

  Flavor flavor() const { return flavor_; }
  int power() const { return n_; }
  SignSeq seq() const { return p_; }
  int arc_slot() const { return bfz::arc_slot(flavor_, n_); }

  int gen_count() const { return static_cast<int>(gens_.size()); }
  int flow_count() const { return static_cast<int>(flows_.size()); }
  const Gen& gen(uint32_t id) const { return gens_[id]; }
  const Flow& flow(uint32_t id) const { return flows_[id]; }
  const std::vector<uint32_t>& flows_from(uint32_t gen_id) const { return from_[gen_id]; }

  uint32_t gen_id(const Gen& g) const;
  std::optional<uint32_t> find_flow(const Flow& f) const;
  uint32_t flow_id(const Flow& f) const;  // aborts if absent

  // Flow constructors.  They fill in the forced flags and return nullopt on
  // constraint violations (wrong idempotent for the tag, etc.).
  std::optional<Flow> make_bigon(uint32_t x, int slot, int f1) const;
  std::optional<Flow> make_rect(uint32_t x, int slot_a, int slot_b, bool flip_both,
                                int fb) const;
  std::optional<Flow> make_bordered(uint32_t x, Basis tag) const;
  Flow make_identity(uint32_t x) const;

  // Rect constructor anchored by the flag of the edge on a given slot
  // (anchor_is_alpha) or on a given beta curve.
  std::optional<Flow> make_rect_anchored(uint32_t x, int slot_a, int slot_b,
                                         bool flip_both, bool anchor_is_alpha,
                                         int anchor_key, int anchor_flag) const;

  // Z/2 gradings of generators: right uses sign(sigma)*prod(eps); left
  // carries the extra factor (-1)^s.
  int gen_grading(uint32_t id) const;

  // One flow per line, canonical form, deterministic order.
  std::string dump() const;
  std::string flow_str(const Flow& f) const;

  // True for flows the type D theory uses (excludes rho12/rho23 tags).
  bool active_for_d(const Flow& f) const;

 private:
  void enumerate();
  uint64_t gen_key(const Gen& g) const;
  uint64_t flow_key(const Flow& f) const;

  Flavor flavor_;
  int n_;
  SignSeq p_;
  std::vector<Gen> gens_;
  std::vector<Flow> flows_;
  std::vector<std::vector<uint32_t>> from_;
  std::unordered_map<uint64_t, uint32_t> gen_index_;
  std::unordered_map<uint64_t, uint32_t> flow_index_;
};

}  // namespace bfz
