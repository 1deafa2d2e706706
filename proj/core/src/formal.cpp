#include "bfz/formal.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace bfz {

int Gen::perm_sign() const {
  int sign = 1;
  std::vector<uint8_t> v = sigma;
  for (size_t i = 0; i < v.size(); ++i) {
    while (v[i] != i + 1) {
      std::swap(v[i], v[v[i] - 1]);
      sign = -sign;
    }
  }
  return sign;
}

std::string Gen::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < n(); ++i) os << (i ? " " : "") << int(sigma[i]);
  os << " |";
  for (int i = 0; i < n(); ++i) os << (eps[i] > 0 ? " +" : " -");
  if (s) os << " | s" << int(s);
  os << ")";
  return os.str();
}

int Flow::alpha_flag(int slot) const {
  if (kind == FlowKind::Bigon) {
    assert(slot == a);
    return f1;
  }
  assert(kind == FlowKind::Rect);
  if (slot == a) return f1;  // bottom
  assert(slot == b);
  return f3;  // top
}

int Flow::beta_flag_col(int col, const Gen& from_gen) const {
  if (kind == FlowKind::Bigon) {
    assert(col == from_gen.sigma_at(a));
    return f2;
  }
  assert(kind == FlowKind::Rect || kind == FlowKind::BorderedRect);
  if (kind == FlowKind::BorderedRect) {
    assert(col == from_gen.sigma_at(a));
    return f4;  // the single beta edge
  }
  if (col == from_gen.sigma_at(a)) return f4;  // left
  assert(col == from_gen.sigma_at(b));
  return f2;  // right
}

FlowUniverse::FlowUniverse(Flavor flavor, int n, SignSeq p)
    : flavor_(flavor), n_(n), p_(p) {
  if (n < 1) {
    std::fprintf(stderr, "bfz: universe power must be positive\n");
    std::abort();
  }
  enumerate();
}

uint64_t FlowUniverse::gen_key(const Gen& g) const {
  uint64_t k = g.s;
  for (int i = 0; i < g.n(); ++i) k = k * 8 + g.sigma[i];
  for (int i = 0; i < g.n(); ++i) k = k * 2 + (g.eps[i] > 0 ? 1 : 0);
  return k;
}

uint64_t FlowUniverse::flow_key(const Flow& f) const {
  auto bit = [](int8_t v) -> uint64_t { return v > 0 ? 1 : 0; };
  uint64_t k = static_cast<uint64_t>(f.kind);
  k = k * 64 + static_cast<uint64_t>(f.tag);
  k = (k << 20) ^ f.from;
  k = (k << 20) ^ f.to;
  k = k * 8 + f.a;
  k = k * 8 + f.b;
  k = k * 16 + (bit(f.f1) << 3 | bit(f.f2) << 2 | bit(f.f3) << 1 | bit(f.f4));
  return k;
}

uint32_t FlowUniverse::gen_id(const Gen& g) const {
  auto it = gen_index_.find(gen_key(g));
  assert(it != gen_index_.end());
  return it->second;
}

std::optional<uint32_t> FlowUniverse::find_flow(const Flow& f) const {
  auto it = flow_index_.find(flow_key(f));
  if (it == flow_index_.end()) return std::nullopt;
  if (!(flows_[it->second] == f)) return std::nullopt;
  return it->second;
}

uint32_t FlowUniverse::flow_id(const Flow& f) const {
  auto id = find_flow(f);
  if (!id) {
    std::fprintf(stderr, "bfz: flow not found in universe: %s\n", flow_str(f).c_str());
    std::abort();
  }
  return *id;
}

std::optional<Flow> FlowUniverse::make_bigon(uint32_t x, int slot, int f1) const {
  const Gen& g = gens_[x];
  Flow f;
  f.kind = FlowKind::Bigon;
  f.from = x;
  f.a = static_cast<uint8_t>(slot);
  f.f1 = static_cast<int8_t>(f1);
  f.f2 = static_cast<int8_t>(-g.eps_at(slot) * f1);
  Gen y = g;
  y.eps[slot - 1] = static_cast<int8_t>(-y.eps[slot - 1]);
  f.to = gen_id(y);
  return f;
}

std::optional<Flow> FlowUniverse::make_rect(uint32_t x, int slot_a, int slot_b,
                                            bool flip_both, int fb) const {
  assert(slot_a < slot_b);
  const Gen& g = gens_[x];
  Flow f;
  f.kind = FlowKind::Rect;
  f.from = x;
  f.a = static_cast<uint8_t>(slot_a);
  f.b = static_cast<uint8_t>(slot_b);
  int ea_x = g.eps_at(slot_a), eb_x = g.eps_at(slot_b);
  int ea_y = flip_both ? -ea_x : ea_x;
  int eb_y = flip_both ? -eb_x : eb_x;
  f.f1 = static_cast<int8_t>(fb);
  f.f4 = static_cast<int8_t>(-ea_x * fb);  // fl
  f.f2 = static_cast<int8_t>(ea_y * fb);   // fr
  f.f3 = static_cast<int8_t>(-eb_x * f.f2);  // ft
  assert(f.f3 * f.f4 == eb_y);
  Gen y = g;
  std::swap(y.sigma[slot_a - 1], y.sigma[slot_b - 1]);
  y.eps[slot_a - 1] = static_cast<int8_t>(ea_y);
  y.eps[slot_b - 1] = static_cast<int8_t>(eb_y);
  f.to = gen_id(y);
  return f;
}

std::optional<Flow> FlowUniverse::make_rect_anchored(uint32_t x, int slot_a, int slot_b,
                                                     bool flip_both, bool anchor_is_alpha,
                                                     int anchor_key, int anchor_flag) const {
  auto f = make_rect(x, std::min(slot_a, slot_b), std::max(slot_a, slot_b), flip_both, +1);
  if (!f) return std::nullopt;
  int have;
  if (anchor_is_alpha) {
    have = f->alpha_flag(anchor_key);
  } else {
    have = f->beta_flag_col(anchor_key, gens_[x]);
  }
  if (have != anchor_flag) {
    f->f1 = -f->f1;
    f->f2 = -f->f2;
    f->f3 = -f->f3;
    f->f4 = -f->f4;
  }
  return f;
}

std::optional<Flow> FlowUniverse::make_bordered(uint32_t x, Basis tag) const {
  if (flavor_ == Flavor::Closed || is_idempotent(tag)) return std::nullopt;
  const Gen& g = gens_[x];
  const int start = segment_start(tag), end = segment_end(tag);
  // Right flows start on the arc matched to the segment's start point, left
  // flows on the arc matched to its end point.
  const int need_s = flavor_ == Flavor::Right ? point_pair(start) : point_pair(end);
  if (g.s != need_s) return std::nullopt;
  const int slot = arc_slot();
  Flow f;
  f.kind = FlowKind::BorderedRect;
  f.from = x;
  f.tag = tag;
  f.a = static_cast<uint8_t>(slot);
  // Bottom arc edge carries the start-point sign, top edge minus the
  // end-point sign, per the rule "label the intersection point ... and
  // orient the unlabeled edge from bottom to top".
  f.f1 = static_cast<int8_t>(point_sign(start, p_));   // fb
  f.f3 = static_cast<int8_t>(-point_sign(end, p_));    // ft
  Gen y = g;
  y.s = static_cast<uint8_t>(flavor_ == Flavor::Right ? point_pair(end) : point_pair(start));
  if (flavor_ == Flavor::Right) {
    // start corner is the bottom-left one: eps_n(x) = -fb*fl
    f.f4 = static_cast<int8_t>(-g.eps_at(slot) * f.f1);
    y.eps[slot - 1] = static_cast<int8_t>(f.f3 * f.f4);
  } else {
    // start corner is the top-right one: eps_1(x) = -ft*fr
    f.f4 = static_cast<int8_t>(-g.eps_at(slot) * f.f3);
    y.eps[slot - 1] = static_cast<int8_t>(f.f1 * f.f4);
  }
  f.to = gen_id(y);
  return f;
}

Flow FlowUniverse::make_identity(uint32_t x) const {
  Flow f;
  f.kind = FlowKind::Identity;
  f.from = f.to = x;
  return f;
}

int FlowUniverse::gen_grading(uint32_t id) const {
  const Gen& g = gens_[id];
  int s = g.perm_sign();
  for (int i = 0; i < g.n(); ++i) s *= g.eps[i];
  if (flavor_ == Flavor::Left && g.s == 1) s = -s;  // factor (-1)^{o(x)}
  return s > 0 ? 0 : 1;
}

bool FlowUniverse::active_for_d(const Flow& f) const {
  if (f.kind != FlowKind::BorderedRect) return true;
  return f.tag != Basis::R12 && f.tag != Basis::R23;
}

void FlowUniverse::enumerate() {
  // Generators in lexicographic order: permutation, sign profile, arc.
  std::vector<uint8_t> perm(n_);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (int bits = 0; bits < (1 << n_); ++bits) {
      Gen g;
      g.sigma = perm;
      g.eps.resize(n_);
      for (int i = 0; i < n_; ++i) g.eps[i] = (bits >> (n_ - 1 - i)) & 1 ? -1 : +1;
      if (flavor_ == Flavor::Closed) {
        gen_index_[gen_key(g)] = static_cast<uint32_t>(gens_.size());
        gens_.push_back(g);
      } else {
        for (uint8_t s = 1; s <= 2; ++s) {
          g.s = s;
          gen_index_[gen_key(g)] = static_cast<uint32_t>(gens_.size());
          gens_.push_back(g);
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  from_.resize(gens_.size());
  auto add = [&](const std::optional<Flow>& f) {
    if (!f) return;
    uint32_t id = static_cast<uint32_t>(flows_.size());
    flow_index_[flow_key(*f)] = id;
    flows_.push_back(*f);
    from_[f->from].push_back(id);
  };

  for (uint32_t x = 0; x < gens_.size(); ++x) {
    for (int i = 1; i <= n_; ++i)
      for (int f1 : {+1, -1}) add(make_bigon(x, i, f1));
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        for (int flip : {0, 1})
          for (int fb : {+1, -1}) add(make_rect(x, i, j, flip, fb));
    if (flavor_ != Flavor::Closed) {
      for (Basis t : {Basis::R1, Basis::R2, Basis::R3, Basis::R12, Basis::R23, Basis::R123})
        add(make_bordered(x, t));
    }
  }
}

std::string FlowUniverse::flow_str(const Flow& f) const {
  std::ostringstream os;
  auto pm = [](int8_t v) { return v > 0 ? '+' : '-'; };
  switch (f.kind) {
    case FlowKind::Bigon:
      os << "bigon  slot " << int(f.a) << " [" << pm(f.f1) << pm(f.f2) << "] ";
      break;
    case FlowKind::Rect:
      os << "rect   slots " << int(f.a) << "," << int(f.b) << " [" << pm(f.f1) << pm(f.f2)
         << pm(f.f3) << pm(f.f4) << "] ";
      break;
    case FlowKind::BorderedRect:
      os << "border " << basis_name(f.tag) << " [" << pm(f.f1) << pm(f.f3) << pm(f.f4) << "] ";
      break;
    case FlowKind::Identity:
      os << "id     ";
      break;
  }
  os << gens_[f.from].str() << " -> " << gens_[f.to].str();
  return os.str();
}

std::string FlowUniverse::dump() const {
  std::ostringstream os;
  for (uint32_t i = 0; i < flows_.size(); ++i)
    os << i << ": " << flow_str(flows_[i]) << "\n";
  return os.str();
}

}  // namespace bfz
