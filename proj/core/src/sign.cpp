#include "bfz/sign.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "bfz/gf2.hpp"

namespace bfz {

namespace {

[[noreturn]] void die(const std::string& what) {
  std::fprintf(stderr, "bfz: %s\n", what.c_str());
  std::abort();
}

// Canonical key for an unordered pair of ordered flow pairs.
uint64_t pair_key(uint32_t a, uint32_t b) { return (uint64_t(a) << 32) | b; }

// Visits each axiom instance once: cb(axiom, flows, expected_product).
// For "A-5" the contract is S(f1)S(f2)S(f3) = +1.
void for_each_instance(const FlowUniverse& u, bool type_d_filter,
                       const std::function<void(const char*, const std::vector<uint32_t>&,
                                                int)>& cb) {
  const Flavor fl = u.flavor();
  const bool bordered = fl != Flavor::Closed;
  auto active = [&](const Flow& f) { return !type_d_filter || u.active_for_d(f); };

  // Degenerations: each internal flow has exactly one alpha and one beta
  // partner; emit each unordered pair once.
  for (uint32_t i = 0; i < static_cast<uint32_t>(u.flow_count()); ++i) {
    const Flow& f = u.flow(i);
    if (!f.is_internal()) continue;
    if (auto p = alpha_partner(u, f)) {
      uint32_t j = u.flow_id(*p);
      if (i <= j) cb(bordered ? (fl == Flavor::Right ? "A-1" : "D-1") : "S-1", {i, j}, +1);
    }
    if (auto p = beta_partner(u, f)) {
      uint32_t j = u.flow_id(*p);
      if (i <= j) cb(bordered ? (fl == Flavor::Right ? "A-2" : "D-2") : "S-2", {i, j}, -1);
    }
  }

  // Squares and triangles, via composable pairs.
  std::unordered_set<uint64_t> seen;
  for (uint32_t x = 0; x < static_cast<uint32_t>(u.gen_count()); ++x) {
    for (uint32_t i : u.flows_from(x)) {
      const Flow& f1 = u.flow(i);
      if (!active(f1)) continue;
      for (uint32_t j : u.flows_from(f1.to)) {
        const Flow& f2 = u.flow(j);
        if (!active(f2)) continue;
        if (f1.is_internal() && f2.is_internal()) {
          auto p = internal_square_partner(u, f1, f2);
          if (!p) continue;
          uint32_t k = u.flow_id(p->first), l = u.flow_id(p->second);
          if (!seen.insert(std::min(pair_key(i, j), pair_key(k, l))).second) continue;
          cb(bordered ? (fl == Flavor::Right ? "A-3" : "D-3") : "S-3", {i, j, k, l}, -1);
        } else if (bordered && (f1.kind == FlowKind::BorderedRect) !=
                                   (f2.kind == FlowKind::BorderedRect)) {
          auto p = bordered_square_partner(u, f1, f2);
          if (!p) continue;
          uint32_t k = u.flow_id(p->first), l = u.flow_id(p->second);
          if (!seen.insert(std::min(pair_key(i, j), pair_key(k, l))).second) continue;
          if (fl == Flavor::Right) {
            cb("A-4", {i, j, k, l}, +1);
          } else {
            Basis tag = f1.kind == FlowKind::BorderedRect ? f1.tag : f2.tag;
            int e = grading(tag, u.seq());
            // (-1)^{|rho|} S1 S2 S3 S4 = -1
            cb("D-4", {i, j, k, l}, e ? +1 : -1);
          }
        } else if (fl == Flavor::Right && f1.kind == FlowKind::BorderedRect &&
                   f2.kind == FlowKind::BorderedRect) {
          auto t = triangle_third(u, f1, f2);
          if (!t) continue;
          cb("A-5", {i, j, u.flow_id(*t)}, +1);
        }
      }
    }
  }
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& [axiom, count] : counts) os << axiom << ": " << count << " instances\n";
  os << (ok ? "all satisfied" : "VIOLATIONS: " + std::to_string(violations.size()) + "+")
     << "\n";
  return os.str();
}

ValidationReport validate(const SignAssignment& s, int max_violations) {
  const FlowUniverse& u = *s.universe;
  ValidationReport rep;
  std::vector<std::pair<std::string, long>>& counts = rep.counts;
  auto bump = [&](const char* axiom) {
    for (auto& [a, c] : counts)
      if (a == axiom) { ++c; return; }
    counts.emplace_back(axiom, 1);
  };
  for_each_instance(u, u.flavor() == Flavor::Left, [&](const char* axiom,
                                                       const std::vector<uint32_t>& flows,
                                                       int expected) {
    ++rep.instances;
    bump(axiom);
    int prod = 1;
    for (uint32_t f : flows) prod *= s.at(f);
    if (prod != expected) {
      rep.ok = false;
      if (static_cast<int>(rep.violations.size()) < max_violations)
        rep.violations.push_back({axiom, flows, expected});
    }
  });
  return rep;
}

ValidationReport check_further_squares(const SignAssignment& s, int max_violations) {
  const FlowUniverse& u = *s.universe;
  ValidationReport rep;
  std::unordered_set<uint64_t> seen;
  for (uint32_t x = 0; x < static_cast<uint32_t>(u.gen_count()); ++x) {
    for (uint32_t i : u.flows_from(x)) {
      const Flow& f1 = u.flow(i);
      for (uint32_t j : u.flows_from(f1.to)) {
        const Flow& f2 = u.flow(j);
        auto p = further_square_partner(u, f1, f2);
        if (!p) continue;
        uint32_t k = u.flow_id(p->first), l = u.flow_id(p->second);
        if (!seen.insert(std::min(pair_key(i, j), pair_key(k, l))).second) continue;
        ++rep.instances;
        int prod = s.at(i) * s.at(j) * s.at(k) * s.at(l);
        if (prod != -1) {
          rep.ok = false;
          if (static_cast<int>(rep.violations.size()) < max_violations)
            rep.violations.push_back({"further", {i, j, k, l}, -1});
        }
      }
    }
  }
  rep.counts.emplace_back("further", rep.instances);
  return rep;
}

namespace {

Gf2System closed_system(const FlowUniverse& u) {
  Gf2System sys(u.flow_count());
  for_each_instance(u, false, [&](const char*, const std::vector<uint32_t>& flows,
                                  int expected) {
    sys.add(std::span<const uint32_t>(flows.data(), flows.size()), expected < 0 ? 1 : 0);
  });
  return sys;
}

// Normalization of bigon values: the gauge representative with
// S(bigon) = f1 * prod_{k<i} eps_k(x).  The bordered constructions pair
// their explicit boundary formulas with internal values S(f(phi)); those
// formulas are written against this representative.
int bigon_normal_value(const FlowUniverse& u, const Flow& f) {
  const Gen& g = u.gen(f.from);
  int v = f.f1;
  for (int k = 1; k < f.a; ++k) v *= g.eps_at(k);
  return v;
}

}  // namespace

SignAssignment solve_closed(const FlowUniverse& u, uint64_t seed) {
  assert(u.flavor() == Flavor::Closed);
  Gf2System sys = closed_system(u);
  for (uint32_t i = 0; i < static_cast<uint32_t>(u.flow_count()); ++i) {
    const Flow& f = u.flow(i);
    if (f.kind == FlowKind::Bigon) sys.pin(i, bigon_normal_value(u, f) < 0 ? 1 : 0);
  }
  if (sys.contradiction()) die("closed sign system infeasible");
  auto bits = sys.solve(seed);
  SignAssignment s;
  s.universe = &u;
  s.val.resize(u.flow_count());
  for (int i = 0; i < u.flow_count(); ++i) s.val[i] = bits[i] ? -1 : +1;
  auto rep = validate(s);
  if (!rep.ok) die("solved closed assignment fails validation");
  return s;
}

ClosedKernelInfo closed_kernel_info(const FlowUniverse& u) {
  Gf2System sys = closed_system(u);
  ClosedKernelInfo info;
  info.kernel_dim = sys.kernel_dim();

  // Gauge subspace dimension: #generators - #components of the flow graph.
  std::vector<int> comp(u.gen_count(), -1);
  int ncomp = 0;
  for (uint32_t g = 0; g < static_cast<uint32_t>(u.gen_count()); ++g) {
    if (comp[g] >= 0) continue;
    std::deque<uint32_t> q{g};
    comp[g] = ncomp;
    while (!q.empty()) {
      uint32_t v = q.front();
      q.pop_front();
      for (uint32_t fi : u.flows_from(v)) {
        uint32_t w = u.flow(fi).to;
        if (comp[w] < 0) { comp[w] = ncomp; q.push_back(w); }
      }
      // flows are emitted from every generator; reverse edges share components
    }
    ++ncomp;
  }
  info.gauge_dim = u.gen_count() - ncomp;

  // Kernel vectors must be gauge vectors: consistent 2-colorings.
  info.kernel_is_gauge = info.kernel_dim == info.gauge_dim;
  if (info.kernel_is_gauge) {
    for (const auto& support : sys.kernel_basis()) {
      std::vector<uint8_t> flip(u.flow_count(), 0);
      for (uint32_t f : support) flip[f] = 1;
      // BFS for u with u(x)+u(y) = flip(f) over all flows
      std::vector<int8_t> uval(u.gen_count(), 0);
      std::vector<uint8_t> vis(u.gen_count(), 0);
      bool okvec = true;
      for (uint32_t g = 0; g < static_cast<uint32_t>(u.gen_count()) && okvec; ++g) {
        if (vis[g]) continue;
        vis[g] = 1;
        uval[g] = 0;
        std::deque<uint32_t> q{g};
        while (!q.empty() && okvec) {
          uint32_t v = q.front();
          q.pop_front();
          for (uint32_t fi : u.flows_from(v)) {
            uint32_t w = u.flow(fi).to;
            uint8_t want = static_cast<uint8_t>(uval[v] ^ flip[fi]);
            if (!vis[w]) {
              vis[w] = 1;
              uval[w] = want;
              q.push_back(w);
            } else if (uval[w] != want) {
              okvec = false;
              break;
            }
          }
        }
      }
      if (!okvec) {
        info.kernel_is_gauge = false;
        break;
      }
    }
  }
  return info;
}

namespace {

// Right-universe flow -> flow of the (++) right universe: flip the
// orientation of each boundary arc whose coordinate in P is negative.
Flow pprime_map(const FlowUniverse& from_u, const FlowUniverse& to_u, const Flow& f) {
  const SignSeq p = from_u.seq();
  auto flips_arc = [&](int arc) { return (arc == 1 ? p.p1 : p.p2) < 0; };
  const int slot = from_u.arc_slot();
  auto map_gen = [&](uint32_t id) {
    Gen g = from_u.gen(id);
    if (flips_arc(g.s)) g.eps[slot - 1] = static_cast<int8_t>(-g.eps[slot - 1]);
    return to_u.gen_id(g);
  };
  Flow out = f;
  out.from = map_gen(f.from);
  out.to = map_gen(f.to);
  const Gen& gx = from_u.gen(f.from);
  if (f.kind == FlowKind::Bigon && f.a == slot && flips_arc(gx.s)) {
    out.f1 = static_cast<int8_t>(-f.f1);
  } else if (f.kind == FlowKind::Rect && (f.a == slot || f.b == slot) && flips_arc(gx.s)) {
    if (f.a == slot) out.f1 = static_cast<int8_t>(-f.f1);
    else out.f3 = static_cast<int8_t>(-f.f3);
  } else if (f.kind == FlowKind::BorderedRect) {
    const Gen& gy = from_u.gen(f.to);
    if (flips_arc(gx.s)) out.f1 = static_cast<int8_t>(-f.f1);  // bottom arc edge
    if (flips_arc(gy.s)) out.f3 = static_cast<int8_t>(-f.f3);  // top arc edge
  }
  return out;
}

// Right embedding f_s into the closed universe of power n+1.
Flow embed_right(const FlowUniverse& ru, const FlowUniverse& cu, const Flow& f) {
  auto map_gen = [&](uint32_t id) {
    const Gen& g = ru.gen(id);
    Gen out;
    out.sigma = g.sigma;
    out.sigma.push_back(static_cast<uint8_t>(ru.power() + 1));
    out.eps = g.eps;
    out.eps.push_back(+1);
    return cu.gen_id(out);
  };
  Flow out = f;
  out.from = map_gen(f.from);
  out.to = map_gen(f.to);
  return out;
}

// Left embedding f_s: new positive cross in front, everything shifted.
Flow embed_left(const FlowUniverse& lu, const FlowUniverse& cu, const Flow& f) {
  auto map_gen = [&](uint32_t id) {
    const Gen& g = lu.gen(id);
    Gen out;
    out.sigma.assign(g.n() + 1, 0);
    out.eps.assign(g.n() + 1, 0);
    out.sigma[0] = 1;
    out.eps[0] = +1;
    for (int i = 1; i <= g.n(); ++i) {
      out.sigma[i] = static_cast<uint8_t>(g.sigma_at(i) + 1);
      out.eps[i] = static_cast<int8_t>(g.eps_at(i));
    }
    return cu.gen_id(out);
  };
  Flow out = f;
  out.from = map_gen(f.from);
  out.to = map_gen(f.to);
  out.a = static_cast<uint8_t>(f.a + 1);
  if (f.kind == FlowKind::Rect) out.b = static_cast<uint8_t>(f.b + 1);
  return out;
}

}  // namespace

SignAssignment construct_typeA(const FlowUniverse& right_u) {
  assert(right_u.flavor() == Flavor::Right);
  const int n = right_u.power();
  FlowUniverse closed(Flavor::Closed, n + 1);
  SignAssignment internal = solve_closed(closed);
  const bool is_pp = right_u.seq() == SignSeq{+1, +1};
  std::unique_ptr<FlowUniverse> pp;
  if (!is_pp) pp = std::make_unique<FlowUniverse>(Flavor::Right, n, SignSeq{+1, +1});
  const FlowUniverse& ppu = is_pp ? right_u : *pp;

  SignAssignment s;
  s.universe = &right_u;
  s.val.resize(right_u.flow_count());
  for (int i = 0; i < right_u.flow_count(); ++i) {
    Flow f = right_u.flow(i);
    Flow g = is_pp ? f : pprime_map(right_u, ppu, f);
    if (g.is_internal()) {
      s.val[i] = static_cast<int8_t>(internal.at(closed.flow_id(embed_right(ppu, closed, g))));
    } else {
      const Gen& gx = ppu.gen(g.from);
      const Gen& gy = ppu.gen(g.to);
      const int slot = ppu.arc_slot();
      if (gx.eps_at(slot) == gy.eps_at(slot)) {
        s.val[i] = +1;
      } else {
        s.val[i] = static_cast<int8_t>(gx.perm_sign() * gx.eps_at(slot));
      }
    }
  }
  auto rep = validate(s);
  if (!rep.ok) die("construct_typeA fails validation:\n" + rep.summary());
  return s;
}

SignAssignment construct_typeD(const FlowUniverse& left_u) {
  assert(left_u.flavor() == Flavor::Left);
  const int n = left_u.power();
  FlowUniverse closed(Flavor::Closed, n + 1);
  SignAssignment internal = solve_closed(closed);

  SignAssignment s;
  s.universe = &left_u;
  s.val.resize(left_u.flow_count());
  for (int i = 0; i < left_u.flow_count(); ++i) {
    const Flow& f = left_u.flow(i);
    if (f.is_internal()) {
      s.val[i] =
          static_cast<int8_t>(internal.at(closed.flow_id(embed_left(left_u, closed, f))));
    } else {
      const Gen& gx = left_u.gen(f.from);
      int v = gx.perm_sign();
      for (int k = 1; k <= n; ++k) v *= gx.eps_at(k);
      s.val[i] = static_cast<int8_t>(v);
    }
  }
  auto rep = validate(s);
  if (!rep.ok) die("construct_typeD fails validation:\n" + rep.summary());
  return s;
}

std::string ClassLabel::str() const {
  std::string out = "(";
  out += c1 > 0 ? '+' : '-';
  out += ',';
  out += c2 > 0 ? '+' : '-';
  out += ')';
  return out;
}

namespace {

// The reference bordered flow of the given tag out of (id, 1, s).
uint32_t reference_flow(const FlowUniverse& u, Basis tag) {
  Gen g;
  g.sigma.resize(u.power());
  g.eps.assign(u.power(), +1);
  for (int i = 0; i < u.power(); ++i) g.sigma[i] = static_cast<uint8_t>(i + 1);
  g.s = static_cast<uint8_t>(u.flavor() == Flavor::Right ? point_pair(segment_start(tag))
                                                         : point_pair(segment_end(tag)));
  auto f = u.make_bordered(u.gen_id(g), tag);
  if (!f) die("reference flow construction");
  return u.flow_id(*f);
}

}  // namespace

ClassLabel classify_A(const SignAssignment& s) {
  const FlowUniverse& u = *s.universe;
  int c1 = s.at(reference_flow(u, Basis::R1));
  int c2 = s.at(reference_flow(u, Basis::R2));
  int c3 = s.at(reference_flow(u, Basis::R3));
  return {static_cast<int8_t>(c1 * c2), static_cast<int8_t>(c2 * c3)};
}

ClassLabel classify_D(const SignAssignment& s) {
  const FlowUniverse& u = *s.universe;
  int c1 = s.at(reference_flow(u, Basis::R1));
  int c2 = s.at(reference_flow(u, Basis::R2));
  int c3 = s.at(reference_flow(u, Basis::R3));
  int c123 = s.at(reference_flow(u, Basis::R123));
  return {static_cast<int8_t>(c1 * c3), static_cast<int8_t>(c2 * c123)};
}

namespace {

// Multiplies all flows of each tag by a character chi; chi multiplicative on
// tags keeps A-4/A-5 (and D-1..D-4) intact.
SignAssignment apply_character(const SignAssignment& s, int chi1, int chi2, int chi3) {
  const FlowUniverse& u = *s.universe;
  auto chi = [&](Basis tag) {
    switch (tag) {
      case Basis::R1: return chi1;
      case Basis::R2: return chi2;
      case Basis::R3: return chi3;
      case Basis::R12: return chi1 * chi2;
      case Basis::R23: return chi2 * chi3;
      case Basis::R123: return chi1 * chi2 * chi3;
      default: return 1;
    }
  };
  SignAssignment out = s;
  for (int i = 0; i < u.flow_count(); ++i) {
    const Flow& f = u.flow(i);
    if (f.kind == FlowKind::BorderedRect)
      out.val[i] = static_cast<int8_t>(out.val[i] * chi(f.tag));
  }
  return out;
}

}  // namespace

SignAssignment retune_A(const SignAssignment& s, ClassLabel target) {
  ClassLabel cur = classify_A(s);
  int chi1 = cur.c1 == target.c1 ? +1 : -1;
  int chi3 = cur.c2 == target.c2 ? +1 : -1;
  SignAssignment out = apply_character(s, chi1, +1, chi3);
  auto rep = validate(out);
  if (!rep.ok) die("retune_A broke validity");
  if (!(classify_A(out) == target)) die("retune_A missed target class");
  return out;
}

SignAssignment retune_D(const SignAssignment& s, ClassLabel target) {
  ClassLabel cur = classify_D(s);
  // c1 and c2 multipliers act on the two label coordinates independently.
  const FlowUniverse& u = *s.universe;
  SignAssignment out = s;
  for (int i = 0; i < u.flow_count(); ++i) {
    const Flow& f = u.flow(i);
    if (f.kind != FlowKind::BorderedRect) continue;
    int chi = 1;
    if (f.tag == Basis::R1 && cur.c1 != target.c1) chi = -1;
    if (f.tag == Basis::R2 && cur.c2 != target.c2) chi = -1;
    out.val[i] = static_cast<int8_t>(out.val[i] * chi);
  }
  auto rep = validate(out);
  if (!rep.ok) die("retune_D broke validity");
  if (!(classify_D(out) == target)) die("retune_D missed target class");
  return out;
}

std::optional<std::vector<int8_t>> gauge_equivalent(const SignAssignment& s1,
                                                    const SignAssignment& s2) {
  const FlowUniverse& u = *s1.universe;
  if (s2.universe != &u) return std::nullopt;
  const bool dfilter = u.flavor() == Flavor::Left;
  std::vector<int8_t> uval(u.gen_count(), 0);
  std::vector<uint8_t> vis(u.gen_count(), 0);
  for (uint32_t g = 0; g < static_cast<uint32_t>(u.gen_count()); ++g) {
    if (vis[g]) continue;
    vis[g] = 1;
    uval[g] = +1;
    std::deque<uint32_t> q{g};
    while (!q.empty()) {
      uint32_t v = q.front();
      q.pop_front();
      for (uint32_t fi : u.flows_from(v)) {
        const Flow& f = u.flow(fi);
        if (dfilter && !u.active_for_d(f)) continue;
        int8_t want = static_cast<int8_t>(uval[v] * s1.at(fi) * s2.at(fi));
        if (!vis[f.to]) {
          vis[f.to] = 1;
          uval[f.to] = want;
          q.push_back(f.to);
        } else if (uval[f.to] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return uval;
}

SignAssignment apply_gauge(const SignAssignment& s, const std::vector<int8_t>& uval) {
  const FlowUniverse& u = *s.universe;
  SignAssignment out = s;
  for (int i = 0; i < u.flow_count(); ++i) {
    const Flow& f = u.flow(i);
    out.val[i] = static_cast<int8_t>(out.val[i] * uval[f.from] * uval[f.to]);
  }
  return out;
}

// ---- Pairing ------------------------------------------------------------

PairedSigns pair_signs(const SignAssignment& sa, const SignAssignment& sd,
                       const FlowUniverse& closed_u) {
  const FlowUniverse& ru = *sa.universe;
  const FlowUniverse& lu = *sd.universe;
  if (ru.flavor() != Flavor::Right || lu.flavor() != Flavor::Left ||
      !(ru.seq() == lu.seq()) ||
      closed_u.power() != ru.power() + lu.power())
    die("pair_signs: mismatched universes");
  PairedSigns out;
  out.closed = &closed_u;
  out.sign.assign(closed_u.flow_count(), 0);
  out.in_dom.assign(closed_u.flow_count(), 0);

  auto put = [&](const Flow& uf, int sign) {
    uint32_t id = closed_u.flow_id(uf);
    if (out.in_dom[id]) die("paired flow image collision");
    out.in_dom[id] = 1;
    out.sign[id] = static_cast<int8_t>(sign);
    ++out.pair_count;
  };

  // internal right + identity left
  for (int i = 0; i < ru.flow_count(); ++i) {
    const Flow& f1 = ru.flow(i);
    if (!f1.is_internal()) continue;
    for (uint32_t y = 0; y < static_cast<uint32_t>(lu.gen_count()); ++y) {
      auto uf = union_flows(ru, lu, closed_u, f1, lu.make_identity(y));
      if (uf) put(*uf, sa.at(i));
    }
  }
  // identity right + internal left: Koszul factor (-1)^{|x1|}
  for (uint32_t x = 0; x < static_cast<uint32_t>(ru.gen_count()); ++x) {
    for (int j = 0; j < lu.flow_count(); ++j) {
      const Flow& f2 = lu.flow(j);
      if (!f2.is_internal()) continue;
      auto uf = union_flows(ru, lu, closed_u, ru.make_identity(x), f2);
      if (uf) put(*uf, sd.at(j) * (ru.gen_grading(x) ? -1 : +1));
    }
  }
  // bordered + bordered of one tag; the Koszul sign is anchored at the end
  // generator of the right flow, (-1)^{|y1|} = (-1)^{|x1| + |rho|}.
  for (int i = 0; i < ru.flow_count(); ++i) {
    const Flow& f1 = ru.flow(i);
    if (f1.kind != FlowKind::BorderedRect) continue;
    for (int j = 0; j < lu.flow_count(); ++j) {
      const Flow& f2 = lu.flow(j);
      if (f2.kind != FlowKind::BorderedRect || f2.tag != f1.tag) continue;
      auto uf = union_flows(ru, lu, closed_u, f1, f2);
      if (uf) put(*uf, sa.at(i) * sd.at(j) * (ru.gen_grading(f1.to) ? -1 : +1));
    }
  }
  return out;
}

bool compatible(const SignAssignment& sa, const SignAssignment& sd,
                const FlowUniverse& closed_u, std::string* why) {
  PairedSigns ps = pair_signs(sa, sd, closed_u);
  const FlowUniverse& u = closed_u;
  bool ok = true;
  auto fail = [&](const char* axiom, const std::vector<uint32_t>& flows) {
    ok = false;
    if (why && why->empty()) {
      std::ostringstream os;
      os << axiom << " violated on paired flows:";
      for (uint32_t f : flows) os << "\n  " << u.flow_str(u.flow(f));
      *why = os.str();
    }
  };
  for (uint32_t i = 0; i < static_cast<uint32_t>(u.flow_count()) && ok; ++i) {
    if (!ps.in_dom[i]) continue;
    const Flow& f = u.flow(i);
    if (auto p = alpha_partner(u, f)) {
      uint32_t j = u.flow_id(*p);
      if (ps.in_dom[j] && i <= j && ps.sign[i] * ps.sign[j] != +1) fail("S-1", {i, j});
    }
    if (auto p = beta_partner(u, f)) {
      uint32_t j = u.flow_id(*p);
      if (ps.in_dom[j] && i <= j && ps.sign[i] * ps.sign[j] != -1) fail("S-2", {i, j});
    }
  }
  std::unordered_set<uint64_t> seen;
  for (uint32_t x = 0; x < static_cast<uint32_t>(u.gen_count()) && ok; ++x) {
    for (uint32_t i : u.flows_from(x)) {
      if (!ps.in_dom[i]) continue;
      const Flow& f1 = u.flow(i);
      for (uint32_t j : u.flows_from(f1.to)) {
        if (!ps.in_dom[j]) continue;
        auto p = internal_square_partner(u, f1, u.flow(j));
        if (!p) continue;
        uint32_t k = u.flow_id(p->first), l = u.flow_id(p->second);
        if (!ps.in_dom[k] || !ps.in_dom[l]) continue;
        if (!seen.insert(std::min(pair_key(i, j), pair_key(k, l))).second) continue;
        if (ps.sign[i] * ps.sign[j] * ps.sign[k] * ps.sign[l] != -1) {
          fail("S-3", {i, j, k, l});
          break;
        }
      }
      if (!ok) break;
    }
  }
  return ok;
}

SignAssignment compatible_partner(const SignAssignment& sa, const FlowUniverse& left_u,
                                  const FlowUniverse& closed_u) {
  const FlowUniverse& ru = *sa.universe;
  if (!(ru.seq() == left_u.seq())) die("compatible_partner: sign sequences differ");
  // Pin the type A side of the paired domain and solve the closed system;
  // the solution's values on the remaining union flows determine a
  // compatible type D assignment.
  Gf2System sys = closed_system(closed_u);
  for (int i = 0; i < ru.flow_count(); ++i) {
    const Flow& f1 = ru.flow(i);
    if (!f1.is_internal()) continue;
    for (uint32_t y = 0; y < static_cast<uint32_t>(left_u.gen_count()); ++y) {
      auto uf = union_flows(ru, left_u, closed_u, f1, left_u.make_identity(y));
      if (uf) sys.pin(closed_u.flow_id(*uf), sa.at(i) < 0 ? 1 : 0);
    }
  }
  if (sys.contradiction()) die("type A side does not extend to the glued power");
  auto bits = sys.solve(0);
  auto closed_val = [&](const Flow& f) { return bits[closed_u.flow_id(f)] ? -1 : +1; };

  SignAssignment sd;
  sd.universe = &left_u;
  sd.val.assign(left_u.flow_count(), +1);
  for (int j = 0; j < left_u.flow_count(); ++j) {
    const Flow& f2 = left_u.flow(j);
    if (f2.is_internal()) {
      // any right generator works; take the first compatible one
      for (uint32_t x = 0; x < static_cast<uint32_t>(ru.gen_count()); ++x) {
        auto uf = union_flows(ru, left_u, closed_u, ru.make_identity(x), f2);
        if (!uf) continue;
        sd.val[j] = static_cast<int8_t>(closed_val(*uf) * (ru.gen_grading(x) ? -1 : +1));
        break;
      }
    } else if (left_u.active_for_d(f2)) {
      for (int i = 0; i < ru.flow_count(); ++i) {
        const Flow& f1 = ru.flow(i);
        if (f1.kind != FlowKind::BorderedRect || f1.tag != f2.tag) continue;
        auto uf = union_flows(ru, left_u, closed_u, f1, f2);
        if (!uf) continue;
        sd.val[j] = static_cast<int8_t>(closed_val(*uf) * sa.at(i) *
                                        (ru.gen_grading(f1.to) ? -1 : +1));
        break;
      }
    }
  }
  auto rep = validate(sd);
  if (!rep.ok) die("derived partner assignment fails type D validation");
  std::string why;
  if (!compatible(sa, sd, closed_u, &why)) die("derived partner not compatible:\n" + why);
  return sd;
}

ClassLabel compatible_partner_class(const SignAssignment& sa, const FlowUniverse& left_u) {
  FlowUniverse closed(Flavor::Closed, sa.universe->power() + left_u.power());
  return classify_D(compatible_partner(sa, left_u, closed));
}

std::optional<Extension> extend_pairing(const SignAssignment& sa, const SignAssignment& sd,
                                        const FlowUniverse& closed_u) {
  PairedSigns ps = pair_signs(sa, sd, closed_u);
  Gf2System sys = closed_system(closed_u);
  for (uint32_t i = 0; i < static_cast<uint32_t>(closed_u.flow_count()); ++i)
    if (ps.in_dom[i]) sys.pin(i, ps.sign[i] < 0 ? 1 : 0);
  if (sys.contradiction()) return std::nullopt;
  auto bits = sys.solve(0);
  Extension ext;
  ext.closed.universe = &closed_u;
  ext.closed.val.resize(closed_u.flow_count());
  for (int i = 0; i < closed_u.flow_count(); ++i) ext.closed.val[i] = bits[i] ? -1 : +1;
  ext.unique = sys.kernel_dim() == 0;
  for (uint32_t i = 0; i < static_cast<uint32_t>(closed_u.flow_count()); ++i)
    if (ps.in_dom[i] && ext.closed.val[i] != ps.sign[i]) die("extension restriction mismatch");
  auto rep = validate(ext.closed);
  if (!rep.ok) die("extension fails closed validation");
  return ext;
}

}  // namespace bfz
