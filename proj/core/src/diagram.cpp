#include "bfz/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace bfz {

namespace {

[[noreturn]] void die(const std::string& what) {
  std::fprintf(stderr, "bfz: %s\n", what.c_str());
  std::abort();
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::optional<int8_t> parse_pm(char c) {
  if (c == '+') return +1;
  if (c == '-') return -1;
  return std::nullopt;
}

}  // namespace

int BorderedDiagram::point_index(const std::string& n) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i].name == n) return static_cast<int>(i);
  return -1;
}

Basis opposite_reading_tag(Basis t) {
  switch (t) {
    case Basis::R1: return Basis::R3;
    case Basis::R3: return Basis::R1;
    case Basis::R12: return Basis::R23;
    case Basis::R23: return Basis::R12;
    default: return t;  // rho2, rho123 are symmetric
  }
}

std::optional<BorderedDiagram> parse_diagram(const std::string& text, ParseError* err) {
  auto fail = [&](int line, const std::string& msg) -> std::optional<BorderedDiagram> {
    if (err) *err = {line, msg};
    return std::nullopt;
  };
  BorderedDiagram d;
  enum class Section { None, Diagram, Points, Domains } section = Section::None;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "[diagram]") { section = Section::Diagram; continue; }
    if (toks[0] == "[points]") { section = Section::Points; continue; }
    if (toks[0] == "[domains]") { section = Section::Domains; continue; }
    switch (section) {
      case Section::None:
        return fail(lineno, "content before any section header");
      case Section::Diagram: {
        if (toks.size() != 2) return fail(lineno, "expected 'key value'");
        if (toks[0] == "name") d.name = toks[1];
        else if (toks[0] == "sign-sequence") {
          auto p = SignSeq::parse(toks[1]);
          if (!p) return fail(lineno, "bad sign sequence");
          d.p = *p;
        } else if (toks[0] == "alpha-circles") d.alpha_circles = std::stoi(toks[1]);
        else if (toks[0] == "beta-circles") d.beta_circles = std::stoi(toks[1]);
        else return fail(lineno, "unknown diagram attribute: " + toks[0]);
        break;
      }
      case Section::Points: {
        if (toks.size() != 4) return fail(lineno, "expected 'name alpha beta sign'");
        DiagramPoint pt;
        pt.name = toks[0];
        const std::string& al = toks[1];
        if (al.size() < 2 || (al[0] != 'a' && al[0] != 'c'))
          return fail(lineno, "alpha curve must be aK or cK");
        pt.on_arc = al[0] == 'a';
        pt.alpha = std::stoi(al.substr(1));
        if (pt.on_arc && (pt.alpha < 1 || pt.alpha > 2))
          return fail(lineno, "arc index out of range");
        if (!pt.on_arc && (pt.alpha < 1 || pt.alpha > d.alpha_circles))
          return fail(lineno, "alpha circle index out of range");
        if (toks[2].size() < 2 || toks[2][0] != 'b')
          return fail(lineno, "beta curve must be bK");
        pt.beta = std::stoi(toks[2].substr(1));
        if (pt.beta < 1 || pt.beta > d.beta_circles)
          return fail(lineno, "beta index out of range");
        auto s = toks[3].size() == 1 ? parse_pm(toks[3][0]) : std::nullopt;
        if (!s) return fail(lineno, "sign must be + or -");
        pt.sign = *s;
        if (d.point_index(pt.name) >= 0) return fail(lineno, "duplicate point name");
        d.points.push_back(pt);
        break;
      }
      case Section::Domains: {
        DiagramDomain dom;
        if (toks[0] == "bigon") dom.kind = DomainKind::Bigon;
        else if (toks[0] == "rect") dom.kind = DomainKind::Rect;
        else if (toks[0] == "half") dom.kind = DomainKind::HalfStrip;
        else return fail(lineno, "unknown domain kind: " + toks[0]);
        if (toks.size() < 2) return fail(lineno, "missing corners");
        // corners: "p,q>r,s" or "p>q"
        std::string corner_spec = toks[1];
        auto gt = corner_spec.find('>');
        if (gt == std::string::npos) return fail(lineno, "corners need '>'");
        auto names = [&](const std::string& part) {
          std::vector<std::string> out;
          std::string cur;
          for (char c : part) {
            if (c == ',') { out.push_back(cur); cur.clear(); }
            else cur += c;
          }
          out.push_back(cur);
          return out;
        };
        for (const auto& group : {names(corner_spec.substr(0, gt)), names(corner_spec.substr(gt + 1))})
          for (const auto& n : group) {
            int idx = d.point_index(n);
            if (idx < 0) return fail(lineno, "unknown corner point: " + n);
            dom.corners.push_back(idx);
          }
        size_t want = dom.kind == DomainKind::Rect ? 4 : 2;
        if (dom.corners.size() != want) return fail(lineno, "wrong corner count");
        for (size_t t = 2; t < toks.size(); ++t) {
          const std::string& opt = toks[t];
          if (opt.rfind("rho=", 0) == 0) {
            auto b = basis_from_name("rho" + opt.substr(4));
            if (!b) return fail(lineno, "bad rho tag");
            dom.rho = *b;
          } else if (opt.rfind("blocked=", 0) == 0) {
            for (const auto& n : names(opt.substr(8))) {
              if (n.empty()) continue;
              int idx = d.point_index(n);
              if (idx < 0) return fail(lineno, "unknown blocked point: " + n);
              dom.blocked.push_back(idx);
            }
          } else if (opt.rfind("flags=", 0) == 0) {
            for (char c : opt.substr(6)) {
              auto s = parse_pm(c);
              if (!s) return fail(lineno, "flags must be + or -");
              dom.flags.push_back(*s);
            }
          } else {
            return fail(lineno, "unknown option: " + opt);
          }
        }
        if (dom.kind == DomainKind::HalfStrip && is_idempotent(dom.rho))
          return fail(lineno, "half strip needs rho=");
        size_t nflags = dom.kind == DomainKind::Bigon ? 2
                        : dom.kind == DomainKind::Rect ? 4 : 1;
        if (dom.flags.size() != nflags) return fail(lineno, "wrong flag count");
        d.domains.push_back(dom);
        break;
      }
    }
  }
  // validation
  auto bad = [&](const std::string& msg) { return fail(0, msg); };
  if (d.beta_circles < 1) return bad("beta-circles must be >= 1");
  if (d.alpha_circles != d.beta_circles - 1)
    return bad("alpha-circles must equal beta-circles - 1 (torus boundary)");
  for (int b = 1; b <= d.beta_circles; ++b) {
    bool any = false;
    for (auto& pt : d.points) any = any || pt.beta == b;
    if (!any) return bad("beta circle b" + std::to_string(b) + " hosts no point");
  }
  for (int c = 1; c <= d.alpha_circles; ++c) {
    bool any = false;
    for (auto& pt : d.points) any = any || (!pt.on_arc && pt.alpha == c);
    if (!any) return bad("alpha circle c" + std::to_string(c) + " hosts no point");
  }
  for (size_t di = 0; di < d.domains.size(); ++di) {
    const DiagramDomain& dom = d.domains[di];
    auto where = "domain " + std::to_string(di + 1);
    auto& P = d.points;
    auto same_alpha = [&](int x, int y) {
      return P[x].on_arc == P[y].on_arc && P[x].alpha == P[y].alpha;
    };
    switch (dom.kind) {
      case DomainKind::Bigon: {
        int p = dom.corners[0], q = dom.corners[1];
        if (!same_alpha(p, q) || P[p].beta != P[q].beta)
          return bad(where + ": bigon corners must share both curves");
        if (P[p].sign != -P[q].sign)
          return bad(where + ": bigon corner signs must be opposite");
        if (P[p].sign != -dom.flags[0] * dom.flags[1])
          return bad(where + ": bigon flags inconsistent with corner sign");
        break;
      }
      case DomainKind::Rect: {
        int p = dom.corners[0], q = dom.corners[1], r = dom.corners[2], s = dom.corners[3];
        if (!same_alpha(p, r) || !same_alpha(q, s))
          return bad(where + ": rect end corners must lie on the start alpha curves");
        if (P[p].beta != P[s].beta || P[q].beta != P[r].beta)
          return bad(where + ": rect beta pairing broken");
        if (same_alpha(p, q) || P[p].beta == P[q].beta)
          return bad(where + ": rect start corners must be on distinct curves");
        int fb = dom.flags[0], fr = dom.flags[1], ft = dom.flags[2], fl = dom.flags[3];
        if (P[p].sign != -fb * fl || P[q].sign != -ft * fr || P[r].sign != fb * fr ||
            P[s].sign != ft * fl)
          return bad(where + ": rect flags inconsistent with corner signs");
        break;
      }
      case DomainKind::HalfStrip: {
        int p = dom.corners[0], q = dom.corners[1];
        if (!P[p].on_arc || !P[q].on_arc) return bad(where + ": half corners must be on arcs");
        if (P[p].beta != P[q].beta) return bad(where + ": half corners must share a beta");
        if (P[p].alpha != point_pair(segment_end(dom.rho)) ||
            P[q].alpha != point_pair(segment_start(dom.rho)))
          return bad(where + ": rho tag inconsistent with arc labels");
        // beta-edge flag is pinned by the start sign and the tag
        int st = static_cast<int8_t>(-point_sign(segment_end(dom.rho), d.p));
        int want = -P[p].sign * st;
        if (dom.flags[0] != want)
          return bad(where + ": half strip flag inconsistent with start sign");
        break;
      }
    }
  }
  return d;
}

std::string serialize_diagram(const BorderedDiagram& d) {
  std::ostringstream os;
  os << "[diagram]\n";
  os << "name " << d.name << "\n";
  os << "sign-sequence " << d.p.str() << "\n";
  os << "alpha-circles " << d.alpha_circles << "\n";
  os << "beta-circles " << d.beta_circles << "\n";
  os << "[points]\n";
  auto pm = [](int v) { return v > 0 ? '+' : '-'; };
  for (const auto& pt : d.points)
    os << pt.name << " " << (pt.on_arc ? "a" : "c") << pt.alpha << " b" << pt.beta << " "
       << pm(pt.sign) << "\n";
  os << "[domains]\n";
  for (const auto& dom : d.domains) {
    auto corner = [&](int i) { return d.points[dom.corners[i]].name; };
    switch (dom.kind) {
      case DomainKind::Bigon: os << "bigon " << corner(0) << ">" << corner(1); break;
      case DomainKind::Rect:
        os << "rect " << corner(0) << "," << corner(1) << ">" << corner(2) << ","
           << corner(3);
        break;
      case DomainKind::HalfStrip:
        os << "half " << corner(0) << ">" << corner(1) << " rho="
           << std::string(basis_name(dom.rho)).substr(3);
        break;
    }
    os << " blocked=";
    for (size_t i = 0; i < dom.blocked.size(); ++i)
      os << (i ? "," : "") << d.points[dom.blocked[i]].name;
    os << " flags=";
    for (int8_t f : dom.flags) os << pm(f);
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> builtin_names() { return {"Hinf", "Hm1", "H0"}; }

BorderedDiagram builtin_diagram(const std::string& name, SignSeq p) {
  // Genus-1 diagrams for the solid tori of slopes infinity, -1 and 0; flow
  // and generator names follow the surgery-triangle discussion.  Along a
  // half strip of tag rho the sign profile changes by the endpoint product
  // (-1)^{gr(rho, P)}, so the intersection signs depend on P.
  auto pm = [](int v) { return v > 0 ? std::string("+") : std::string("-"); };
  auto strip_ratio = [&](Basis rho) { return grading(rho, p) ? -1 : +1; };
  auto half_line = [&](const std::string& from, const std::string& to, Basis rho,
                       int from_sign) {
    int st = -point_sign(segment_end(rho), p);
    int flag = -from_sign * st;
    return "half " + from + ">" + to + " rho=" +
           std::string(basis_name(rho)).substr(3) + " flags=" + pm(flag) + "\n";
  };
  std::string text;
  if (name == "Hinf") {
    int r = +1;
    int t = r * strip_ratio(Basis::R2);
    int s = -t;
    // the bigon's alpha co-orientation keeps the beta-degeneration partners
    // of phi_1 and phi_8 in one bordered square across all sequences
    int b1 = strip_ratio(Basis::R1);
    text = "[diagram]\nname Hinf\nsign-sequence " + p.str() +
           "\nalpha-circles 0\nbeta-circles 1\n[points]\n" +
           "r a1 b1 " + pm(r) + "\ns a2 b1 " + pm(s) + "\nt a2 b1 " + pm(t) +
           "\n[domains]\n" +
           "bigon s>t flags=" + pm(b1) + pm(-s * b1) + "\n" +  // phi_1
           half_line("r", "t", Basis::R2, r) +            // phi_2
           half_line("s", "r", Basis::R3, s) +            // phi_3
           // composite of phi_3 and phi_2: counted by the type A side only
           half_line("s", "t", Basis::R23, s);
  } else if (name == "Hm1") {
    // epsilon(a) matches epsilon(s) on Hinf so that phi_3 and phi_4 carry
    // the same formal flow, as in the consistently oriented figure
    int a = -strip_ratio(Basis::R2);
    int b = a * strip_ratio(Basis::R3);
    text = "[diagram]\nname Hm1\nsign-sequence " + p.str() +
           "\nalpha-circles 0\nbeta-circles 1\n[points]\n" +
           "a a2 b1 " + pm(a) + "\nb a1 b1 " + pm(b) + "\n[domains]\n" +
           half_line("a", "b", Basis::R3, a) +            // phi_4
           half_line("a", "b", Basis::R1, a);             // phi_5
  } else if (name == "H0") {
    int pp = +1;
    int n = pp * strip_ratio(Basis::R2);
    int q = -pp;
    text = "[diagram]\nname H0\nsign-sequence " + p.str() +
           "\nalpha-circles 0\nbeta-circles 1\n[points]\n" +
           "n a2 b1 " + pm(n) + "\np a1 b1 " + pm(pp) + "\nq a1 b1 " + pm(q) +
           "\n[domains]\n" +
           half_line("p", "n", Basis::R2, pp) +           // phi_6
           half_line("n", "q", Basis::R1, n) +            // phi_7
           "bigon p>q flags=+" + pm(-pp) + "\n" +         // phi_8
           // composite of phi_6 and phi_7: counted by the type A side only
           half_line("p", "q", Basis::R12, pp);
  } else {
    die("unknown builtin diagram: " + name);
  }
  ParseError err;
  auto d = parse_diagram(text, &err);
  if (!d) die("builtin " + name + " failed to parse: " + err.message);
  return *d;
}

std::string DiagramGenerator::str(const BorderedDiagram& d) const {
  std::string out;
  for (int p : points) {
    if (!out.empty()) out += ",";
    out += d.points[p].name;
  }
  return out;
}

std::vector<DiagramGenerator> generators(const BorderedDiagram& d) {
  std::vector<DiagramGenerator> out;
  const int g = d.beta_circles;
  std::vector<std::vector<int>> per_beta(g);
  for (size_t i = 0; i < d.points.size(); ++i) per_beta[d.points[i].beta - 1].push_back(i);
  std::vector<int> pick(g, 0);
  std::function<void(int)> rec = [&](int b) {
    if (b == g) {
      std::vector<int> circle_used(d.alpha_circles + 1, 0);
      int arc = 0;
      for (int i = 0; i < g; ++i) {
        const auto& pt = d.points[pick[i]];
        if (pt.on_arc) {
          if (arc) return;  // at most one arc point
          arc = pt.alpha;
        } else if (circle_used[pt.alpha]++) {
          return;
        }
      }
      if (!arc) return;
      for (int c = 1; c <= d.alpha_circles; ++c)
        if (!circle_used[c]) return;
      DiagramGenerator gen;
      gen.points.assign(pick.begin(), pick.end());
      gen.occupied_arc = arc;
      out.push_back(gen);
      return;
    }
    for (int p : per_beta[b]) {
      pick[b] = p;
      rec(b + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<DiagramFlow> flows(const BorderedDiagram& d,
                               const std::vector<DiagramGenerator>& gens) {
  std::vector<DiagramFlow> out;
  auto index_of = [&](const std::vector<int>& pts) -> int {
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i].points == pts) return static_cast<int>(i);
    return -1;
  };
  for (size_t di = 0; di < d.domains.size(); ++di) {
    const DiagramDomain& dom = d.domains[di];
    const int ncorner = dom.kind == DomainKind::Rect ? 2 : 1;
    std::vector<int> starts(dom.corners.begin(), dom.corners.begin() + ncorner);
    std::vector<int> ends(dom.corners.begin() + ncorner, dom.corners.end());
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      const auto& gen = gens[gi];
      bool has = true;
      for (int c : starts)
        has = has && std::find(gen.points.begin(), gen.points.end(), c) != gen.points.end();
      if (!has) continue;
      bool blocked = false;
      for (int b : dom.blocked)
        blocked = blocked ||
                  std::find(gen.points.begin(), gen.points.end(), b) != gen.points.end();
      if (blocked) continue;
      std::vector<int> target = gen.points;
      for (int k = 0; k < ncorner; ++k)
        for (auto& pp : target)
          if (pp == starts[k]) pp = ends[k];
      // moving corners may change beta circles; re-bucket by beta index
      std::vector<int> by_beta(d.beta_circles, -1);
      bool consistent = true;
      for (int pp : target) {
        int b = d.points[pp].beta - 1;
        if (by_beta[b] >= 0) consistent = false;
        by_beta[b] = pp;
      }
      for (int pp : by_beta) consistent = consistent && pp >= 0;
      if (!consistent) continue;
      target = by_beta;
      int ti = index_of(target);
      if (ti < 0) continue;  // target violates the generator constraints
      out.push_back({static_cast<int>(di), static_cast<int>(gi), ti});
    }
  }
  return out;
}

namespace {

// slot of an alpha curve: left universes put the arc first, right last.
int slot_of(const BorderedDiagram& d, const DiagramPoint& pt, bool left) {
  if (left) return pt.on_arc ? 1 : pt.alpha + 1;
  return pt.on_arc ? d.beta_circles : pt.alpha;
}

Gen formal_gen(const BorderedDiagram& d, const DiagramGenerator& x, bool left) {
  const int g = d.beta_circles;
  Gen out;
  out.sigma.assign(g, 0);
  out.eps.assign(g, 0);
  for (int pi : x.points) {
    const auto& pt = d.points[pi];
    int slot = slot_of(d, pt, left);
    out.sigma[slot - 1] = static_cast<uint8_t>(pt.beta);
    out.eps[slot - 1] = static_cast<int8_t>(pt.sign);
  }
  out.s = static_cast<uint8_t>(left ? x.occupied_arc : 3 - x.occupied_arc);
  return out;
}

Flow formal_flow(const BorderedDiagram& d, const std::vector<DiagramGenerator>& gens,
                 const DiagramFlow& f, const FlowUniverse& u, bool left) {
  const DiagramDomain& dom = d.domains[f.domain];
  uint32_t from = u.gen_id(formal_gen(d, gens[f.src], left));
  uint32_t to = u.gen_id(formal_gen(d, gens[f.dst], left));
  std::optional<Flow> out;
  switch (dom.kind) {
    case DomainKind::Bigon: {
      int slot = slot_of(d, d.points[dom.corners[0]], left);
      out = u.make_bigon(from, slot, dom.flags[0]);
      if (out && out->f2 != dom.flags[1]) out = std::nullopt;
      break;
    }
    case DomainKind::Rect: {
      const auto& p = d.points[dom.corners[0]];
      const auto& q = d.points[dom.corners[1]];
      int sp = slot_of(d, p, left), sq = slot_of(d, q, left);
      int fb = dom.flags[0], fr = dom.flags[1], ft = dom.flags[2], fl = dom.flags[3];
      if (sp > sq) {  // canonical presentation wants the lower slot at the bottom
        std::swap(fb, ft);
        std::swap(fr, fl);
        std::swap(sp, sq);
      }
      bool flips = fl == fr;
      out = u.make_rect(from, sp, sq, flips, fb);
      if (out && (out->f2 != fr || out->f3 != ft || out->f4 != fl)) out = std::nullopt;
      break;
    }
    case DomainKind::HalfStrip: {
      Basis tag = left ? dom.rho : opposite_reading_tag(dom.rho);
      out = u.make_bordered(from, tag);
      break;
    }
  }
  if (!out || out->to != to) die("diagram flow does not formalize: " + d.name);
  return *out;
}

}  // namespace

Gen formalize_left_gen(const BorderedDiagram& d, const DiagramGenerator& x) {
  return formal_gen(d, x, true);
}

Gen formalize_right_gen(const BorderedDiagram& d, const DiagramGenerator& x) {
  return formal_gen(d, x, false);
}

Flow formalize_left(const BorderedDiagram& d, const std::vector<DiagramGenerator>& gens,
                    const DiagramFlow& f, const FlowUniverse& left_u) {
  assert(left_u.flavor() == Flavor::Left && left_u.seq() == d.p);
  return formal_flow(d, gens, f, left_u, true);
}

Flow formalize_right(const BorderedDiagram& d, const std::vector<DiagramGenerator>& gens,
                     const DiagramFlow& f, const FlowUniverse& right_u) {
  assert(right_u.flavor() == Flavor::Right && right_u.seq() == d.p_typeA());
  return formal_flow(d, gens, f, right_u, false);
}

BorderedDiagram flip_beta_orientation(const BorderedDiagram& d, int beta_index) {
  BorderedDiagram out = d;
  for (auto& pt : out.points)
    if (pt.beta == beta_index) pt.sign = -pt.sign;
  for (auto& dom : out.domains) {
    switch (dom.kind) {
      case DomainKind::Bigon:
        if (d.points[dom.corners[0]].beta == beta_index) dom.flags[1] = -dom.flags[1];
        break;
      case DomainKind::Rect:
        // left edge lies on beta(p), right edge on beta(q)
        if (d.points[dom.corners[0]].beta == beta_index) dom.flags[3] = -dom.flags[3];
        if (d.points[dom.corners[1]].beta == beta_index) dom.flags[1] = -dom.flags[1];
        break;
      case DomainKind::HalfStrip:
        if (d.points[dom.corners[0]].beta == beta_index) dom.flags[0] = -dom.flags[0];
        break;
    }
  }
  return out;
}

BorderedDiagram permute_beta_order(const BorderedDiagram& d, const std::vector<int>& perm) {
  BorderedDiagram out = d;
  for (auto& pt : out.points) pt.beta = perm[pt.beta - 1];
  return out;
}

std::optional<ClosedDiagram> glue(const BorderedDiagram& h1, const BorderedDiagram& h2) {
  if (h1.p_typeA() != h2.p) return std::nullopt;
  ClosedDiagram out;
  out.left = &h1;
  out.right = &h2;
  out.gens_a = generators(h1);
  out.gens_d = generators(h2);
  // pairs: right-formal s of x1 differs from left-formal s of x2
  for (size_t i = 0; i < out.gens_a.size(); ++i)
    for (size_t j = 0; j < out.gens_d.size(); ++j)
      if (3 - out.gens_a[i].occupied_arc != out.gens_d[j].occupied_arc)
        out.gens.emplace_back(i, j);
  auto pair_index = [&](int a, int b) -> int {
    for (size_t k = 0; k < out.gens.size(); ++k)
      if (out.gens[k] == std::make_pair(a, b)) return static_cast<int>(k);
    return -1;
  };
  auto fa = flows(h1, out.gens_a);
  auto fd = flows(h2, out.gens_d);
  for (const auto& f : fa) {
    const auto& dom = h1.domains[f.domain];
    if (dom.kind == DomainKind::HalfStrip) continue;
    for (size_t j = 0; j < out.gens_d.size(); ++j) {
      int s = pair_index(f.src, j), t = pair_index(f.dst, j);
      if (s >= 0 && t >= 0) out.flows.push_back({s, t, f.domain, -1});
    }
  }
  for (const auto& f : fd) {
    const auto& dom = h2.domains[f.domain];
    if (dom.kind == DomainKind::HalfStrip) continue;
    for (size_t i = 0; i < out.gens_a.size(); ++i) {
      int s = pair_index(i, f.src), t = pair_index(i, f.dst);
      if (s >= 0 && t >= 0) out.flows.push_back({s, t, -1, f.domain});
    }
  }
  for (const auto& f1 : fa) {
    const auto& d1 = h1.domains[f1.domain];
    if (d1.kind != DomainKind::HalfStrip) continue;
    for (const auto& f2 : fd) {
      const auto& d2 = h2.domains[f2.domain];
      if (d2.kind != DomainKind::HalfStrip) continue;
      if (opposite_reading_tag(d1.rho) != d2.rho) continue;
      if (d2.rho == Basis::R12 || d2.rho == Basis::R23) continue;  // no closed rectangle
      int s = pair_index(f1.src, f2.src), t = pair_index(f1.dst, f2.dst);
      if (s >= 0 && t >= 0) out.flows.push_back({s, t, f1.domain, f2.domain});
    }
  }
  return out;
}

}  // namespace bfz
