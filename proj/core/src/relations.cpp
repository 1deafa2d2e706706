#include "bfz/relations.hpp"

#include <cassert>
#include <cstdio>
#include <cstdlib>

namespace bfz {

namespace {

[[noreturn]] void die(const char* what) {
  std::fprintf(stderr, "bfz: internal inconsistency: %s\n", what);
  std::abort();
}

// The two bigons of a shared-alpha-germ pentagon square carry equal alpha
// co-orientations; the opposite linking makes the sign system infeasible.
constexpr int kP2Theta = +1;

bool moving_contains(const Flow& f, int slot) {
  if (f.kind == FlowKind::Identity) return false;
  if (f.kind == FlowKind::Rect) return f.a == slot || f.b == slot;
  return f.a == slot;
}

bool movings_disjoint(const Flow& f1, const Flow& f2) {
  auto slots = [](const Flow& f) {
    std::vector<int> v;
    if (f.kind == FlowKind::Rect) v = {f.a, f.b};
    else if (f.kind != FlowKind::Identity) v = {f.a};
    return v;
  };
  for (int s : slots(f1))
    if (moving_contains(f2, s)) return false;
  return true;
}

bool rect_flips(const Flow& f) {
  // fl == -fr exactly when the sign profile is unchanged at the moving slots
  return f.f4 == f.f2;
}

// Rebuild f's decorated domain as a flow from x (valid when x agrees with
// f's start at the moving slots' data that the domain pins).
std::optional<Flow> copy_domain_from(const FlowUniverse& u, const Flow& f, uint32_t x) {
  switch (f.kind) {
    case FlowKind::Bigon: {
      auto g = u.make_bigon(x, f.a, f.f1);
      if (g && g->f2 != f.f2) return std::nullopt;
      return g;
    }
    case FlowKind::Rect: {
      auto g = u.make_rect(x, f.a, f.b, rect_flips(f), f.f1);
      if (!g) return std::nullopt;
      if (g->f2 != f.f2 || g->f3 != f.f3 || g->f4 != f.f4) return std::nullopt;
      if (u.gen(x).sigma_at(f.a) != u.gen(f.from).sigma_at(f.a) ||
          u.gen(x).sigma_at(f.b) != u.gen(f.from).sigma_at(f.b))
        return std::nullopt;  // beta labels must match
      return g;
    }
    case FlowKind::BorderedRect: {
      auto g = u.make_bordered(x, f.tag);
      if (!g) return std::nullopt;
      if (g->f4 != f.f4) return std::nullopt;
      if (u.gen(x).sigma_at(f.a) != u.gen(f.from).sigma_at(f.a)) return std::nullopt;
      return g;
    }
    case FlowKind::Identity:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Flow> beta_partner(const FlowUniverse& u, const Flow& f) {
  if (f.kind == FlowKind::Bigon) {
    auto g = u.make_bigon(f.to, f.a, -f.f1);
    if (g && g->f2 == f.f2) return g;
    return std::nullopt;
  }
  if (f.kind == FlowKind::Rect) {
    // Glue along the two alpha edges into an annulus; the partner appears
    // 180-degree rotated, so both alpha flags negate and the beta flags swap.
    auto g = u.make_rect(f.to, f.a, f.b, rect_flips(f), -f.f1);
    if (g && g->f3 == -f.f3 && g->f2 == f.f4 && g->f4 == f.f2) return g;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Flow> alpha_partner(const FlowUniverse& u, const Flow& f) {
  if (f.kind == FlowKind::Bigon) {
    auto g = u.make_bigon(f.to, f.a, f.f1);
    if (g && g->f2 == -f.f2) return g;
    return std::nullopt;
  }
  if (f.kind == FlowKind::Rect) {
    // Glue along the two beta edges; same orientation of alpha edges, beta
    // flags swap negated.
    auto g = u.make_rect(f.to, f.a, f.b, rect_flips(f), f.f1);
    if (g && g->f3 == f.f3 && g->f4 == -f.f2 && g->f2 == -f.f4) return g;
    return std::nullopt;
  }
  return std::nullopt;
}

bool is_beta_degeneration(const FlowUniverse& u, const Flow& f1, const Flow& f2) {
  if (f1.kind != f2.kind) return false;
  auto p = beta_partner(u, f1);
  return p && *p == f2;
}

bool is_alpha_degeneration(const FlowUniverse& u, const Flow& f1, const Flow& f2) {
  if (f1.kind != f2.kind) return false;
  auto p = alpha_partner(u, f1);
  return p && *p == f2;
}

std::optional<std::pair<Flow, Flow>> internal_square_partner(const FlowUniverse& u,
                                                             const Flow& f1, const Flow& f2) {
  if (!f1.is_internal() || !f2.is_internal()) return std::nullopt;
  if (f2.from != f1.to) return std::nullopt;
  const uint32_t x = f1.from, z = f2.to;
  const Gen& gx = u.gen(x);
  const Gen& gy = u.gen(f1.to);

  if (movings_disjoint(f1, f2)) {
    auto f3 = copy_domain_from(u, f2, x);
    if (!f3) die("disjoint square: domain copy failed");
    auto f4 = copy_domain_from(u, f1, f3->to);
    if (!f4 || f4->to != z) die("disjoint square: closing flow failed");
    return std::make_pair(*f3, *f4);
  }
  if (x == z) return std::nullopt;  // degeneration configuration

  if (f1.kind == FlowKind::Rect && f2.kind == FlowKind::Rect) {
    // Shared slots: both shared would force x == z or a further double-flip.
    int shared = 0, j = 0;
    for (int s : {(int)f1.a, (int)f1.b})
      if (moving_contains(f2, s)) { ++shared; j = s; }
    if (shared == 2) return std::nullopt;  // further family
    const int i = f1.a == j ? f1.b : f1.a;
    const int k = f2.a == j ? f2.b : f2.a;
    const int c_shared = gx.sigma_at(i);  // junction column (= sigma_y(j))
    const int A1 = f1.alpha_flag(j), A2 = f2.alpha_flag(j);
    const int B1 = f1.beta_flag_col(c_shared, gx), B2 = f2.beta_flag_col(c_shared, gy);
    if ((A2 == -A1) == (B2 == -B1)) die("hexagon: junction dichotomy failed");
    const bool flip1 = rect_flips(f1), flip2 = rect_flips(f2);
    if (A2 == -A1) {
      // Shared alpha germ: partner moves {i,k} then {i,j}.
      auto f3 = u.make_rect_anchored(x, i, k, flip2, true, i, f1.alpha_flag(i));
      if (!f3) die("hexagon B1: f3");
      if (f3->alpha_flag(k) != f2.alpha_flag(k) ||
          f3->beta_flag_col(c_shared, gx) != B1 ||
          f3->beta_flag_col(gx.sigma_at(k), gx) != f2.beta_flag_col(gx.sigma_at(k), gy))
        die("hexagon B1: f3 flags");
      auto f4 = u.make_rect_anchored(f3->to, i, j, flip1 != flip2, true, i, f1.alpha_flag(i));
      if (!f4 || f4->to != z) die("hexagon B1: f4");
      if (f4->alpha_flag(j) != A1 ||
          f4->beta_flag_col(gx.sigma_at(k), u.gen(f3->to)) !=
              -f2.beta_flag_col(gx.sigma_at(k), gy) ||
          f4->beta_flag_col(gx.sigma_at(j), u.gen(f3->to)) !=
              f1.beta_flag_col(gx.sigma_at(j), gx))
        die("hexagon B1: f4 flags");
      return std::make_pair(*f3, *f4);
    }
    // Shared beta germ: partner moves {j,k} then {i,k}.
    auto f3 = u.make_rect_anchored(x, j, k, flip1 != flip2, true, j, A1);
    if (!f3) die("hexagon B2: f3");
    if (f3->alpha_flag(k) != f2.alpha_flag(k) ||
        f3->beta_flag_col(gx.sigma_at(k), gx) != f2.beta_flag_col(gx.sigma_at(k), gy) ||
        f3->beta_flag_col(gx.sigma_at(j), gx) != f1.beta_flag_col(gx.sigma_at(j), gx))
      die("hexagon B2: f3 flags");
    auto f4 = u.make_rect_anchored(f3->to, i, k, flip1, true, i, f1.alpha_flag(i));
    if (!f4 || f4->to != z) die("hexagon B2: f4");
    if (f4->alpha_flag(k) != -f2.alpha_flag(k) ||
        f4->beta_flag_col(c_shared, u.gen(f3->to)) != B1 ||
        f4->beta_flag_col(gx.sigma_at(j), u.gen(f3->to)) !=
            f1.beta_flag_col(gx.sigma_at(j), gx))
      die("hexagon B2: f4 flags");
    return std::make_pair(*f3, *f4);
  }

  if (f1.kind == FlowKind::Bigon && f2.kind == FlowKind::Rect) {
    const int j = f1.a;
    const int k = f2.a == j ? f2.b : f2.a;
    const int c_shared = gx.sigma_at(j);
    const int B2 = f2.beta_flag_col(c_shared, gy);
    if (B2 != -f1.f2) {
      // Shared alpha germ: the partner rectangle keeps the geometric domain
      // with the alpha edge at the shared slot reversed, and the closing
      // bigon sits at the same slot on the other column.
      auto f3 = u.make_rect_anchored(x, j, k, rect_flips(f2), true, k, f2.alpha_flag(k));
      if (!f3) die("pentagon P2: f3");
      if (f3->alpha_flag(j) != -f2.alpha_flag(j) ||
          f3->beta_flag_col(c_shared, gx) != f2.beta_flag_col(c_shared, gy) ||
          f3->beta_flag_col(gx.sigma_at(k), gx) != f2.beta_flag_col(gx.sigma_at(k), gy))
        die("pentagon P2: f3 flags");
      auto f4 = u.make_bigon(f3->to, j, kP2Theta * f1.f1);
      if (!f4 || f4->to != z) die("pentagon P2: f4");
      return std::make_pair(*f3, *f4);
    }
    auto f3 = u.make_rect_anchored(x, j, k, !rect_flips(f2), true, j, f2.alpha_flag(j));
    if (!f3) die("pentagon P1: f3");
    if (f3->alpha_flag(k) != f2.alpha_flag(k) ||
        f3->beta_flag_col(c_shared, gx) != f1.f2 ||
        f3->beta_flag_col(gx.sigma_at(k), gx) != f2.beta_flag_col(gx.sigma_at(k), gy))
      die("pentagon P1: f3 flags");
    auto f4 = u.make_bigon(f3->to, k, -f2.alpha_flag(k));
    if (!f4 || f4->to != z) die("pentagon P1: f4");
    if (f4->f2 != f1.f2) die("pentagon P1: f4 flags");
    return std::make_pair(*f3, *f4);
  }

  if (f1.kind == FlowKind::Rect && f2.kind == FlowKind::Bigon) {
    const int j = f2.a;
    const int i = f1.a == j ? f1.b : f1.a;
    const int c_shared = gx.sigma_at(i);  // = sigma_y(j)
    const int B1 = f1.beta_flag_col(c_shared, gx);
    if (f2.f2 == -B1) {
      // Shared beta germ: inverse of the same-slot (P2) construction.
      auto f3 = u.make_bigon(x, j, kP2Theta * f2.f1);
      if (!f3) die("pentagon P2': f3");
      auto f4 =
          u.make_rect_anchored(f3->to, i, j, rect_flips(f1), true, i, f1.alpha_flag(i));
      if (!f4 || f4->to != z) die("pentagon P2': f4");
      if (f4->alpha_flag(j) != -f1.alpha_flag(j) ||
          f4->beta_flag_col(c_shared, u.gen(f3->to)) != B1 ||
          f4->beta_flag_col(gx.sigma_at(j), u.gen(f3->to)) !=
              f1.beta_flag_col(gx.sigma_at(j), gx))
        die("pentagon P2': f4 flags");
      return std::make_pair(*f3, *f4);
    }
    // Shared alpha germ: inverse of the pentagon (P1) construction.
    auto f3 = u.make_bigon(x, i, -gx.eps_at(i) * B1);
    if (!f3 || f3->f2 != B1) die("pentagon P1': f3");
    auto f4 = u.make_rect_anchored(f3->to, i, j, !rect_flips(f1), true, i, f1.alpha_flag(i));
    if (!f4 || f4->to != z) die("pentagon P1': f4");
    if (f4->alpha_flag(j) != -f2.f1 ||
        f4->beta_flag_col(c_shared, u.gen(f3->to)) != -B1 ||
        f4->beta_flag_col(gx.sigma_at(j), u.gen(f3->to)) !=
            f1.beta_flag_col(gx.sigma_at(j), gx))
      die("pentagon P1': f4 flags");
    return std::make_pair(*f3, *f4);
  }

  // bigon+bigon sharing a slot means x == z, handled above
  return std::nullopt;
}

std::optional<std::pair<Flow, Flow>> bordered_square_partner(const FlowUniverse& u,
                                                             const Flow& f1, const Flow& f2) {
  if (f2.from != f1.to) return std::nullopt;
  const bool b1 = f1.kind == FlowKind::BorderedRect;
  const bool b2 = f2.kind == FlowKind::BorderedRect;
  if (b1 == b2) return std::nullopt;
  const uint32_t x = f1.from, z = f2.to;
  const int slot = u.arc_slot();

  if (b1) {
    // (bordered, internal) -> (internal, bordered)
    const Flow& in = f2;
    const int e_ratio = u.gen(x).eps_at(slot) * u.gen(f1.to).eps_at(slot);
    std::optional<Flow> f3;
    if (!moving_contains(in, slot)) {
      f3 = copy_domain_from(u, in, x);
      if (!f3) die("bordered square, disjoint: f3");
    } else if (in.kind == FlowKind::Bigon) {
      f3 = u.make_bigon(x, slot, in.f1 * e_ratio);
      if (!f3 || f3->f2 != in.f2) die("bordered square, bigon: f3");
    } else {
      const int i = in.a == slot ? in.b : in.a;
      f3 = u.make_rect_anchored(x, i, slot, rect_flips(in), true, i, in.alpha_flag(i));
      if (!f3) die("bordered square, rect: f3");
      if (f3->alpha_flag(slot) != e_ratio * in.alpha_flag(slot))
        die("bordered square, rect: arc edge flag");
      const Gen& gx = u.gen(x);
      const Gen& gm = u.gen(f1.to);
      if (f3->beta_flag_col(gx.sigma_at(i), gx) != in.beta_flag_col(gm.sigma_at(i), gm) ||
          f3->beta_flag_col(gx.sigma_at(slot), gx) != in.beta_flag_col(gm.sigma_at(slot), gm))
        die("bordered square, rect: beta flags");
    }
    auto f4 = u.make_bordered(f3->to, f1.tag);
    if (!f4 || f4->to != z) die("bordered square: closing bordered flow");
    return std::make_pair(*f3, *f4);
  }

  // (internal, bordered) -> (bordered, internal)
  const Flow& in = f1;
  auto f3 = u.make_bordered(x, f2.tag);
  if (!f3) return std::nullopt;
  const int e_ratio = u.gen(x).eps_at(slot) * u.gen(f3->to).eps_at(slot);
  std::optional<Flow> f4;
  if (!moving_contains(in, slot)) {
    f4 = copy_domain_from(u, in, f3->to);
    if (!f4) die("bordered square rev, disjoint: f4");
  } else if (in.kind == FlowKind::Bigon) {
    f4 = u.make_bigon(f3->to, slot, in.f1 * e_ratio);
    if (!f4 || f4->f2 != in.f2) die("bordered square rev, bigon: f4");
  } else {
    const int i = in.a == slot ? in.b : in.a;
    f4 = u.make_rect_anchored(f3->to, i, slot, rect_flips(in), true, i, in.alpha_flag(i));
    if (!f4) die("bordered square rev, rect: f4");
    if (f4->alpha_flag(slot) != e_ratio * in.alpha_flag(slot))
      die("bordered square rev, rect: arc edge flag");
  }
  if (f4->to != z) die("bordered square rev: endpoint");
  return std::make_pair(*f3, *f4);
}

SquareClass classify_square(const FlowUniverse& u, const Flow& f1, const Flow& f2,
                            const Flow& f3, const Flow& f4) {
  if (f2.from != f1.to || f4.from != f3.to) return SquareClass::NotSquare;
  if (f1.from != f3.from || f2.to != f4.to) return SquareClass::NotSquare;
  if (f1 == f3 && f2 == f4) return SquareClass::NotSquare;
  if (f1.is_internal() && f2.is_internal()) {
    auto p = internal_square_partner(u, f1, f2);
    if (p && p->first == f3 && p->second == f4) return SquareClass::InternalSquare;
    auto q = further_square_partner(u, f1, f2);
    if (q && q->first == f3 && q->second == f4) return SquareClass::FurtherSquare;
    return SquareClass::NotSquare;
  }
  auto p = bordered_square_partner(u, f1, f2);
  if (p && p->first == f3 && p->second == f4) return SquareClass::BorderedSquare;
  return SquareClass::NotSquare;
}

std::optional<std::pair<Flow, Flow>> further_square_partner(const FlowUniverse& u,
                                                            const Flow& f1, const Flow& f2) {
  if (!f1.is_internal() || !f2.is_internal()) return std::nullopt;
  if (f2.from != f1.to) return std::nullopt;
  const uint32_t x = f1.from, z = f2.to;
  if (x == z) return std::nullopt;

  // Two rectangles over the same slot pair with the sign profile flipped at
  // both moving slots; the partner swaps which leg flips.
  if (f1.kind == FlowKind::Rect && f2.kind == FlowKind::Rect && f1.a == f2.a &&
      f1.b == f2.b) {
    auto f3 = u.make_rect_anchored(x, f1.a, f1.b, !rect_flips(f1), true, f1.a,
                                   f1.alpha_flag(f1.a));
    if (!f3) return std::nullopt;
    auto f4 = u.make_rect_anchored(f3->to, f1.a, f1.b, !rect_flips(f2), true, f1.a,
                                   f2.alpha_flag(f1.a));
    if (!f4 || f4->to != z) return std::nullopt;
    return std::make_pair(*f3, *f4);
  }
  return std::nullopt;
}

std::optional<Flow> triangle_third(const FlowUniverse& u, const Flow& f1, const Flow& f2) {
  if (f1.kind != FlowKind::BorderedRect || f2.kind != FlowKind::BorderedRect)
    return std::nullopt;
  if (f2.from != f1.to) return std::nullopt;
  auto prod = basis_mul(f1.tag, f2.tag);
  if (!prod) return std::nullopt;
  auto f3 = u.make_bordered(f1.from, *prod);
  if (!f3 || f3->to != f2.to) die("triangle: composite flow");
  if (f3->f4 != f1.f4 || f1.f4 != f2.f4) die("triangle: beta edge mismatch");
  return f3;
}

bool is_bordered_triangle(const FlowUniverse& u, const Flow& f1, const Flow& f2,
                          const Flow& f3) {
  auto t = triangle_third(u, f1, f2);
  return t && *t == f3;
}

std::optional<Flow> simple_flip(const FlowUniverse& u, const Flow& f, int slot) {
  if (f.kind != FlowKind::Rect) return std::nullopt;
  if (moving_contains(f, slot)) return std::nullopt;
  Gen g = u.gen(f.from);
  g.eps[slot - 1] = static_cast<int8_t>(-g.eps[slot - 1]);
  auto r = u.make_rect(u.gen_id(g), f.a, f.b, rect_flips(f), f.f1);
  if (!r || r->f2 != f.f2 || r->f3 != f.f3 || r->f4 != f.f4) die("simple flip");
  return r;
}

std::optional<Gen> union_gens(const FlowUniverse& ru, const FlowUniverse& lu,
                              uint32_t x1, uint32_t x2) {
  const Gen& a = ru.gen(x1);
  const Gen& b = lu.gen(x2);
  if (ru.seq() != lu.seq() || a.s == b.s) return std::nullopt;
  const int m = ru.power(), n = lu.power();
  Gen g;
  g.sigma.assign(m + n, 0);
  g.eps.assign(m + n, 0);
  auto put = [&](int row, int col, int eps) {
    g.sigma[row - 1] = static_cast<uint8_t>(col);
    g.eps[row - 1] = static_cast<int8_t>(eps);
  };
  for (int i = 1; i < m; ++i) put(i, a.sigma_at(i), a.eps_at(i));
  put(m + a.s - 1, a.sigma_at(m), a.eps_at(m));
  put(m + b.s - 1, m + b.sigma_at(1), b.eps_at(1));
  for (int i = 2; i <= n; ++i) put(m + i, m + b.sigma_at(i), b.eps_at(i));
  return g;
}

std::optional<Flow> union_flows(const FlowUniverse& ru, const FlowUniverse& lu,
                                const FlowUniverse& cu, const Flow& f1, const Flow& f2) {
  const int m = ru.power();
  auto gx = union_gens(ru, lu, f1.from, f2.from);
  auto gz = union_gens(ru, lu, f1.to, f2.to);
  if (!gx || !gz) return std::nullopt;
  const uint32_t x = cu.gen_id(*gx);

  const bool id1 = f1.kind == FlowKind::Identity;
  const bool id2 = f2.kind == FlowKind::Identity;
  if (id1 && id2) return std::nullopt;
  if (id1 != id2) {
    if (!(id1 ? f2 : f1).is_internal()) return std::nullopt;
    const Flow& in = id1 ? f2 : f1;
    auto map_slot = [&](int s) {
      if (id1) return s == 1 ? m + lu.gen(f2.from).s - 1 : m + s;  // left side
      return s == ru.power() ? m + ru.gen(f1.from).s - 1 : s;     // right side
    };
    std::optional<Flow> g;
    if (in.kind == FlowKind::Bigon) {
      g = cu.make_bigon(x, map_slot(in.a), in.f1);
      if (!g || g->f2 != in.f2) die("union: bigon flags");
    } else {
      g = cu.make_rect(x, map_slot(in.a), map_slot(in.b), rect_flips(in), in.f1);
      if (!g || g->f2 != in.f2 || g->f3 != in.f3 || g->f4 != in.f4) die("union: rect flags");
    }
    if (!(cu.gen(g->to) == *gz)) die("union: endpoint");
    return g;
  }

  if (f1.kind != FlowKind::BorderedRect || f2.kind != FlowKind::BorderedRect ||
      f1.tag != f2.tag)
    return std::nullopt;
  const int lo = point_pair(segment_start(f1.tag));
  const int hi = point_pair(segment_end(f1.tag));
  if (lo == hi) return std::nullopt;  // rho12 / rho23: not a closed rectangle
  const int row_b = m + lo - 1, row_t = m + hi - 1;
  // eps changes at the two rows: bottom row carries the right start / left
  // end, top row the right end / left start.
  const int eb_x = gx->eps_at(row_b), eb_z = gz->eps_at(row_b);
  auto g = cu.make_rect(x, std::min(row_b, row_t), std::max(row_b, row_t),
                        eb_x != eb_z, row_b < row_t ? f1.f1 : f1.f3);
  if (!g) return std::nullopt;
  if (!(cu.gen(g->to) == *gz)) die("union: bordered endpoint");
  // Gluing consistency: shared arc-edge flags and the two beta flags.
  const int fb = g->alpha_flag(row_b < row_t ? g->a : g->b);
  const int ft = g->alpha_flag(row_b < row_t ? g->b : g->a);
  if (fb != f1.f1 || ft != f1.f3 || fb != f2.f1 || ft != f2.f3) die("union: arc flags");
  const Gen& cgx = cu.gen(x);
  if (g->beta_flag_col(ru.gen(f1.from).sigma_at(ru.power()), cgx) != f1.f4 ||
      g->beta_flag_col(m + lu.gen(f2.from).sigma_at(1), cgx) != f2.f4)
    die("union: beta flags");
  return g;
}

}  // namespace bfz
