#include "bfz/structures.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "bfz/relations.hpp"

namespace bfz {

namespace {

[[noreturn]] void die(const std::string& what) {
  std::fprintf(stderr, "bfz: %s\n", what.c_str());
  std::abort();
}

using Coeffs = std::map<std::pair<int, int>, int64_t>;  // (basis elt, gen) -> coef

void add_entry(std::vector<MapEntry>& table, int src, Basis a, int dst, int64_t c) {
  if (c == 0) return;
  for (auto& e : table) {
    if (e.src == src && e.alg == a && e.dst == dst) {
      e.coef += c;
      if (e.coef == 0) {
        e = table.back();
        table.pop_back();
      }
      return;
    }
  }
  table.push_back({src, a, dst, c});
}

}  // namespace

std::vector<int64_t> TypeAStructure::mul(int x, Basis a) const {
  std::vector<int64_t> out(gens.size(), 0);
  if (is_idempotent(a)) {
    int t = a == Basis::I1 ? 1 : 2;
    if (gens[x].idem == t) out[x] = 1;
    return out;
  }
  for (const auto& e : m2)
    if (e.src == x && e.alg == a) out[e.dst] += e.coef;
  return out;
}

std::string TypeAStructure::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < gens.size(); ++i) {
    os << gens[i].name << " (i" << gens[i].idem << ", gr " << gens[i].grading << "): m1 = ";
    bool any = false;
    for (const auto& e : m1)
      if (e.src == static_cast<int>(i)) {
        os << (any ? " + " : "") << (e.coef == 1 ? "" : e.coef == -1 ? "-" : std::to_string(e.coef) + "*")
           << gens[e.dst].name;
        any = true;
      }
    if (!any) os << "0";
    for (const auto& e : m2)
      if (e.src == static_cast<int>(i))
        os << ", m2(" << gens[i].name << ", " << basis_name(e.alg) << ") = "
           << (e.coef == 1 ? "" : e.coef == -1 ? "-" : std::to_string(e.coef) + "*")
           << gens[e.dst].name;
    os << "\n";
  }
  return os.str();
}

std::string TypeDStructure::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < gens.size(); ++i) {
    os << "delta(" << gens[i].name << ") = ";
    bool any = false;
    for (const auto& e : delta)
      if (e.src == static_cast<int>(i)) {
        if (any) os << " + ";
        if (e.coef == -1) os << "-";
        else if (e.coef != 1) os << e.coef << "*";
        os << basis_name(e.alg) << "(x)" << gens[e.dst].name;
        any = true;
      }
    if (!any) os << "0";
    os << "\n";
  }
  return os.str();
}

bool validate_typeA(const TypeAStructure& a, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const GradingVariant gv = grading_for_sequence(a.p);
  for (const auto& e : a.m1) {
    if (a.gens[e.src].idem != a.gens[e.dst].idem) return fail("m1 changes the idempotent");
    if ((a.gens[e.src].grading + 1) % 2 != a.gens[e.dst].grading)
      return fail("m1 is not odd");
  }
  for (const auto& e : a.m2) {
    if (is_idempotent(e.alg)) return fail("m2 table carries an idempotent entry");
    if (left_idem(e.alg) != a.gens[e.src].idem || right_idem(e.alg) != a.gens[e.dst].idem)
      return fail("m2 entry violates idempotent compatibility");
    if ((a.gens[e.src].grading + grading(e.alg, gv)) % 2 != a.gens[e.dst].grading)
      return fail("m2 entry grading mismatch");
  }
  const int n = static_cast<int>(a.gens.size());
  // m1^2 = 0
  std::vector<std::vector<int64_t>> d(n, std::vector<int64_t>(n, 0));
  for (const auto& e : a.m1) d[e.dst][e.src] += e.coef;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int64_t s = 0;
      for (int k = 0; k < n; ++k) s += d[i][k] * d[k][j];
      if (s != 0) return fail("m1^2 != 0");
    }
  // m1(m2(x,a)) = m2(m1(x),a)
  for (int x = 0; x < n; ++x)
    for (int bi = 0; bi < kBasisCount; ++bi) {
      Basis b = static_cast<Basis>(bi);
      if (is_idempotent(b)) continue;
      std::vector<int64_t> lhs(n, 0), rhs(n, 0);
      auto mx = a.mul(x, b);
      for (int y = 0; y < n; ++y)
        if (mx[y])
          for (int z = 0; z < n; ++z) lhs[z] += mx[y] * d[z][y];
      for (int y = 0; y < n; ++y)
        if (d[y][x]) {
          auto my = a.mul(y, b);
          for (int z = 0; z < n; ++z) rhs[z] += d[y][x] * my[z];
        }
      if (lhs != rhs) return fail("m1 m2 = m2 m1 fails at " + a.gens[x].name);
    }
  // m2(x, ab) = m2(m2(x,a), b)
  for (int x = 0; x < n; ++x)
    for (int ai = 0; ai < kBasisCount; ++ai)
      for (int bi = 0; bi < kBasisCount; ++bi) {
        Basis ba = static_cast<Basis>(ai), bb = static_cast<Basis>(bi);
        auto prod = basis_mul(ba, bb);
        std::vector<int64_t> lhs(n, 0), rhs(n, 0);
        if (prod) lhs = a.mul(x, *prod);
        auto mx = a.mul(x, ba);
        for (int y = 0; y < n; ++y)
          if (mx[y]) {
            auto my = a.mul(y, bb);
            for (int z = 0; z < n; ++z) rhs[z] += mx[y] * my[z];
          }
        if (lhs != rhs) return fail("m2 associativity fails");
      }
  return true;
}

bool validate_typeD(const TypeDStructure& d, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const GradingVariant gv = grading_for_sequence(d.p);
  for (const auto& e : d.delta) {
    if (left_idem(e.alg) != d.gens[e.src].idem || right_idem(e.alg) != d.gens[e.dst].idem)
      return fail("delta entry violates idempotent compatibility");
    int deg = is_idempotent(e.alg) ? 1 : (grading(e.alg, gv) + 1) % 2;
    if ((d.gens[e.src].grading + deg) % 2 != d.gens[e.dst].grading)
      return fail("delta entry grading mismatch");
  }
  // (mu2 (x) id) o (id (x) delta) o delta = 0 with the graded tensor sign
  Coeffs acc;
  for (const auto& e1 : d.delta)
    for (const auto& e2 : d.delta) {
      if (e2.src != e1.dst) continue;
      auto prod = basis_mul(e1.alg, e2.alg);
      if (!prod) continue;
      int koszul = grading(e1.alg, gv) ? -1 : 1;
      acc[{static_cast<int>(*prod) * 1000 + e1.src, e2.dst}] += koszul * e1.coef * e2.coef;
    }
  for (const auto& [k, v] : acc)
    if (v != 0) return fail("type D relation fails");
  return true;
}

TypeAStructure build_CFA(const BorderedDiagram& h, const SignAssignment& sa) {
  const FlowUniverse& u = *sa.universe;
  if (u.flavor() != Flavor::Right || u.power() != h.genus() || !(u.seq() == h.p_typeA()))
    die("build_CFA: sign assignment universe does not match the diagram");
  TypeAStructure out;
  out.p = h.p_typeA();
  auto gens = generators(h);
  for (const auto& g : gens) {
    StructGen sg;
    sg.name = g.str(h);
    sg.idem = 3 - g.occupied_arc;
    sg.grading = u.gen_grading(u.gen_id(formalize_right_gen(h, g)));
    out.gens.push_back(sg);
  }
  for (const auto& f : flows(h, gens)) {
    const auto& dom = h.domains[f.domain];
    Flow ff = formalize_right(h, gens, f, u);
    int64_t c = sa.at(ff);
    if (dom.kind == DomainKind::HalfStrip)
      add_entry(out.m2, f.src, opposite_reading_tag(dom.rho), f.dst, c);
    else
      add_entry(out.m1, f.src, Basis::I1, f.dst, c);
  }
  std::string why;
  if (!validate_typeA(out, &why)) die("CFA(" + h.name + ") relation failure: " + why);
  return out;
}

TypeDStructure build_CFD(const BorderedDiagram& h, const SignAssignment& sd) {
  const FlowUniverse& u = *sd.universe;
  if (u.flavor() != Flavor::Left || u.power() != h.genus() || !(u.seq() == h.p))
    die("build_CFD: sign assignment universe does not match the diagram");
  TypeDStructure out;
  out.p = h.p;
  auto gens = generators(h);
  for (const auto& g : gens) {
    StructGen sg;
    sg.name = g.str(h);
    sg.idem = 3 - g.occupied_arc;
    sg.grading = u.gen_grading(u.gen_id(formalize_left_gen(h, g)));
    out.gens.push_back(sg);
  }
  for (const auto& f : flows(h, gens)) {
    const auto& dom = h.domains[f.domain];
    if (dom.kind == DomainKind::HalfStrip &&
        (dom.rho == Basis::R12 || dom.rho == Basis::R23)) {
      // the term rho * i_{idem(y)} vanishes in A (x)_I N: right_idem(rho)
      // is the occupied arc of y, never its complement
      continue;
    }
    Flow ff = formalize_left(h, gens, f, u);
    int64_t c = sd.at(ff);
    if (dom.kind == DomainKind::HalfStrip)
      add_entry(out.delta, f.src, dom.rho, f.dst, c);
    else
      add_entry(out.delta, f.src,
                out.gens[f.src].idem == 1 ? Basis::I1 : Basis::I2, f.dst, c);
  }
  std::string why;
  if (!validate_typeD(out, &why)) die("CFD(" + h.name + ") relation failure: " + why);
  return out;
}

std::string ChainComplex::str() const {
  std::ostringstream os;
  for (size_t j = 0; j < basis.size(); ++j) {
    os << "d(" << basis[j].name << ") =";
    bool any = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (d[i][j].is_zero()) continue;
      os << " " << (any ? "+ " : "") << d[i][j].str() << "*" << basis[i].name;
      any = true;
    }
    if (!any) os << " 0";
    os << "\n";
  }
  return os.str();
}

bool validate_d_squared(const ChainComplex& c, std::string* why) {
  const size_t n = c.basis.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      BigInt s;
      for (size_t k = 0; k < n; ++k) s = s + c.d[i][k] * c.d[k][j];
      if (!s.is_zero()) {
        if (why)
          *why = "d^2 nonzero from " + c.basis[j].name + " to " + c.basis[i].name;
        return false;
      }
    }
  return true;
}

ChainComplex box_tensor(const TypeAStructure& a, const TypeDStructure& d) {
  if (!(a.p == d.p)) die("box_tensor: algebra sign sequences differ");
  const GradingVariant gv = grading_for_sequence(a.p);
  ChainComplex out;
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < a.gens.size(); ++i)
    for (size_t j = 0; j < d.gens.size(); ++j)
      if (a.gens[i].idem == d.gens[j].idem) {
        pairs.emplace_back(i, j);
        StructGen g;
        g.name = a.gens[i].name + "|" + d.gens[j].name;
        g.idem = a.gens[i].idem;
        g.grading = (a.gens[i].grading + d.gens[j].grading) % 2;
        out.basis.push_back(g);
      }
  auto pidx = [&](int i, int j) -> int {
    for (size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k] == std::make_pair(i, j)) return static_cast<int>(k);
    return -1;
  };
  const size_t n = pairs.size();
  out.d.assign(n, std::vector<BigInt>(n));
  auto add = [&](int src, int dst, int64_t c) {
    if (src >= 0 && dst >= 0 && c) out.d[dst][src] = out.d[dst][src] + BigInt(c);
  };
  for (size_t k = 0; k < n; ++k) {
    auto [i, j] = pairs[k];
    for (const auto& e : a.m1)
      if (e.src == i) add(k, pidx(e.dst, j), e.coef);
    // internal delta terms and strip pairings carry the Koszul sign
    // (-1)^{|x1| + |a|}
    for (const auto& e : d.delta) {
      if (e.src != j) continue;
      if (is_idempotent(e.alg)) {
        int sign = a.gens[i].grading ? -1 : 1;
        add(k, pidx(i, e.dst), sign * e.coef);
      } else {
        for (const auto& f : a.m2) {
          if (f.src != i || f.alg != e.alg) continue;
          int sign = (a.gens[i].grading + grading(e.alg, gv)) % 2 ? -1 : 1;
          add(k, pidx(f.dst, e.dst), sign * f.coef * e.coef);
        }
      }
    }
  }
  std::string why;
  if (!validate_d_squared(out, &why)) die("box tensor: " + why);
  return out;
}

ChainComplex tilde_CF(const ClosedDiagram& h, const SignAssignment& s) {
  const FlowUniverse& cu = *s.universe;
  const BorderedDiagram& ha = *h.left;
  const BorderedDiagram& hd = *h.right;
  FlowUniverse ru(Flavor::Right, ha.genus(), ha.p_typeA());
  FlowUniverse lu(Flavor::Left, hd.genus(), hd.p);
  if (cu.flavor() != Flavor::Closed || cu.power() != ha.genus() + hd.genus())
    die("tilde_CF: closed assignment power mismatch");

  ChainComplex out;
  auto fa = flows(ha, h.gens_a);
  auto fd = flows(hd, h.gens_d);
  for (auto [i, j] : h.gens) {
    StructGen g;
    g.name = h.gens_a[i].str(ha) + "|" + h.gens_d[j].str(hd);
    g.idem = 3 - h.gens_a[i].occupied_arc;
    Gen ug = *union_gens(ru, lu, ru.gen_id(formalize_right_gen(ha, h.gens_a[i])),
                         lu.gen_id(formalize_left_gen(hd, h.gens_d[j])));
    g.grading = cu.gen_grading(cu.gen_id(ug));
    out.basis.push_back(g);
  }
  const size_t n = h.gens.size();
  out.d.assign(n, std::vector<BigInt>(n));
  auto diagram_flow = [&](const std::vector<DiagramFlow>& fl, int domain, int src,
                          int dst) -> const DiagramFlow* {
    for (const auto& f : fl)
      if (f.domain == domain && f.src == src && f.dst == dst) return &f;
    return nullptr;
  };
  for (const auto& gf : h.flows) {
    auto [si, sj] = h.gens[gf.src];
    auto [ti, tj] = h.gens[gf.dst];
    std::optional<Flow> f1, f2;
    if (gf.domain_a >= 0) {
      const DiagramFlow* f = diagram_flow(fa, gf.domain_a, si, ti);
      if (!f) die("tilde_CF: missing type A side flow");
      f1 = formalize_right(ha, h.gens_a, *f, ru);
    } else {
      f1 = ru.make_identity(ru.gen_id(formalize_right_gen(ha, h.gens_a[si])));
    }
    if (gf.domain_d >= 0) {
      const DiagramFlow* f = diagram_flow(fd, gf.domain_d, sj, tj);
      if (!f) die("tilde_CF: missing type D side flow");
      f2 = formalize_left(hd, h.gens_d, *f, lu);
    } else {
      f2 = lu.make_identity(lu.gen_id(formalize_left_gen(hd, h.gens_d[sj])));
    }
    auto uf = union_flows(ru, lu, cu, *f1, *f2);
    if (!uf) die("tilde_CF: glued flow does not union");
    out.d[gf.dst][gf.src] = out.d[gf.dst][gf.src] + BigInt(s.at(*uf));
  }
  std::string why;
  if (!validate_d_squared(out, &why)) die("tilde_CF: " + why);
  return out;
}

std::string HomologyResult::str() const {
  return "grading 0: " + h[0].str() + "\ngrading 1: " + h[1].str();
}

std::string HomologyResult::machine() const {
  std::ostringstream os;
  for (int g = 0; g < 2; ++g) {
    os << "h" << g << ".free=" << h[g].free_rank << "\n";
    os << "h" << g << ".torsion=";
    for (size_t i = 0; i < h[g].torsion.size(); ++i)
      os << (i ? "," : "") << h[g].torsion[i].str();
    os << "\n";
  }
  return os.str();
}

bool HomologyResult::operator==(const HomologyResult& o) const {
  for (int g = 0; g < 2; ++g) {
    if (h[g].free_rank != o.h[g].free_rank) return false;
    if (h[g].torsion.size() != o.h[g].torsion.size()) return false;
    for (size_t i = 0; i < h[g].torsion.size(); ++i)
      if (!(h[g].torsion[i] == o.h[g].torsion[i])) return false;
  }
  return true;
}

HomologyResult homology(const ChainComplex& c) {
  std::vector<int> idx[2];
  for (size_t i = 0; i < c.basis.size(); ++i) idx[c.basis[i].grading].push_back(i);
  // block from grading g to grading 1-g
  auto block = [&](int g) {
    Matrix m(idx[1 - g].size(), std::vector<BigInt>(idx[g].size()));
    for (size_t r = 0; r < idx[1 - g].size(); ++r)
      for (size_t cc = 0; cc < idx[g].size(); ++cc) m[r][cc] = c.d[idx[1 - g][r]][idx[g][cc]];
    return m;
  };
  HomologyResult out;
  SnfResult snf[2] = {smith_normal_form(block(0)), smith_normal_form(block(1))};
  for (int g = 0; g < 2; ++g) {
    long dim = static_cast<long>(idx[g].size());
    long rank_out = 0;
    for (const auto& f : snf[g].factors)
      if (!f.is_zero()) ++rank_out;
    long rank_in = 0;
    for (const auto& f : snf[1 - g].factors)
      if (!f.is_zero()) ++rank_in;
    out.h[g].free_rank = dim - rank_out - rank_in;
    for (const auto& f : snf[1 - g].factors)
      if (!(f == BigInt(1)) && !f.is_zero()) out.h[g].torsion.push_back(f.abs());
  }
  return out;
}

TypeDStructure reduce(const TypeDStructure& d0) {
  TypeDStructure d = d0;
  for (;;) {
    int which = -1;
    for (size_t i = 0; i < d.delta.size(); ++i) {
      const auto& e = d.delta[i];
      if (is_idempotent(e.alg) && (e.coef == 1 || e.coef == -1) && e.src != e.dst) {
        which = static_cast<int>(i);
        break;
      }
    }
    if (which < 0) break;
    const MapEntry cancel = d.delta[which];
    const int x = cancel.src, y = cancel.dst;
    const int64_t eps = cancel.coef;
    TypeDStructure next;
    next.p = d.p;
    std::vector<int> remap(d.gens.size(), -1);
    for (size_t i = 0; i < d.gens.size(); ++i) {
      if (static_cast<int>(i) == x || static_cast<int>(i) == y) continue;
      remap[i] = static_cast<int>(next.gens.size());
      next.gens.push_back(d.gens[i]);
    }
    for (const auto& e : d.delta) {
      if (e.src == x || e.src == y || e.dst == x || e.dst == y) continue;
      add_entry(next.delta, remap[e.src], e.alg, remap[e.dst], e.coef);
    }
    for (const auto& in : d.delta) {  // w -> y
      if (in.dst != y || in.src == x || in.src == y) continue;
      for (const auto& outE : d.delta) {  // x -> v
        if (outE.src != x || outE.dst == x || outE.dst == y) continue;
        auto prod = basis_mul(in.alg, outE.alg);
        if (!prod) continue;
        add_entry(next.delta, remap[in.src], *prod, remap[outE.dst],
                  -eps * in.coef * outE.coef);
      }
    }
    d = std::move(next);
  }
  std::string why;
  if (!validate_typeD(d, &why)) die("reduce broke the type D relation: " + why);
  return d;
}

DMorphism d_differential(const DMorphism& f, const TypeDStructure& src,
                         const TypeDStructure& dst) {
  const GradingVariant gv = grading_for_sequence(src.p);
  DMorphism out;
  out.degree = (f.degree + 1) % 2;
  for (const auto& e : f.table) {
    for (const auto& de : dst.delta) {
      if (de.src != e.dst) continue;
      auto prod = basis_mul(e.alg, de.alg);
      if (!prod) continue;
      int koszul = grading(e.alg, gv) ? -1 : 1;  // (id (x) delta) past e.alg
      add_entry(out.table, e.src, *prod, de.dst, koszul * e.coef * de.coef);
    }
  }
  for (const auto& de : src.delta) {
    for (const auto& e : f.table) {
      if (e.src != de.dst) continue;
      auto prod = basis_mul(de.alg, e.alg);
      if (!prod) continue;
      int koszul = (grading(de.alg, gv) * f.degree) % 2 ? -1 : 1;  // (id (x) f)
      add_entry(out.table, de.src, *prod, e.dst, -koszul * de.coef * e.coef);
    }
  }
  return out;
}

bool is_homomorphism(const DMorphism& f, const TypeDStructure& src,
                     const TypeDStructure& dst) {
  return d_differential(f, src, dst).table.empty();
}

std::string TriangleReport::str() const {
  std::ostringstream os;
  os << "flow signs:";
  for (int i = 1; i <= 8; ++i) os << " S(phi" << i << ")=" << (s_phi[i] > 0 ? "+1" : "-1");
  os << "\nN_inf:\n" << n_inf.str() << "N_-1:\n" << n_m1.str() << "N_0:\n" << n_0.str();
  os << "shorthand: S1=" << s1 << " S2=" << s2 << " S5=" << s5 << " S6=" << s6 << "\n";
  os << "degeneration identity S1*S2*S5*S6 = (-1)^{|rho2|}: "
     << (degeneration_identity ? "holds" : "FAILS") << "\n";
  os << "homomorphism tuples (S3,S4,S7,S8): " << hom_tuples.size() << "\n";
  for (auto& t : hom_tuples)
    os << "  (" << t[0] << "," << t[1] << "," << t[2] << "," << t[3] << ")\n";
  os << "homomorphism + exactness tuples: " << exact_tuples.size() << "\n";
  for (auto& t : exact_tuples)
    os << "  (" << t[0] << "," << t[1] << "," << t[2] << "," << t[3] << ")\n";
  return os.str();
}

TriangleReport triangle_obstruction(SignSeq p, ClassLabel cls) {
  TriangleReport rep;
  FlowUniverse lu(Flavor::Left, 1, p);
  SignAssignment sd = retune_D(construct_typeD(lu), cls);

  auto hinf = builtin_diagram("Hinf", p);
  auto hm1 = builtin_diagram("Hm1", p);
  auto h0 = builtin_diagram("H0", p);
  auto cfd_inf = build_CFD(hinf, sd);
  auto cfd_m1 = build_CFD(hm1, sd);
  auto cfd_0 = build_CFD(h0, sd);

  // flow signs in the labelling of the three diagrams
  auto sign_of = [&](const BorderedDiagram& h, int domain) {
    auto gens = generators(h);
    for (const auto& f : flows(h, gens))
      if (f.domain == domain) return sd.at(formalize_left(h, gens, f, lu));
    die("triangle: missing flow");
  };
  rep.s_phi[1] = sign_of(hinf, 0);
  rep.s_phi[2] = sign_of(hinf, 1);
  rep.s_phi[3] = sign_of(hinf, 2);
  rep.s_phi[4] = sign_of(hm1, 0);
  rep.s_phi[5] = sign_of(hm1, 1);
  rep.s_phi[6] = sign_of(h0, 0);
  rep.s_phi[7] = sign_of(h0, 1);
  rep.s_phi[8] = sign_of(h0, 2);

  rep.n_inf = reduce(cfd_inf);
  rep.n_0 = reduce(cfd_0);
  rep.n_m1 = cfd_m1;
  if (rep.n_inf.gens.size() != 1 || rep.n_0.gens.size() != 1)
    die("triangle: reductions did not produce one-generator structures");

  rep.s1 = -rep.s_phi[1] * rep.s_phi[2] * rep.s_phi[3];
  rep.s2 = rep.s_phi[4];
  rep.s5 = -rep.s_phi[6] * rep.s_phi[7] * rep.s_phi[8];
  rep.s6 = rep.s_phi[5];
  int rho2 = grading(Basis::R2, p);
  rep.degeneration_identity = rep.s1 * rep.s2 * rep.s5 * rep.s6 == (rho2 ? -1 : 1);

  // cross-check the reduced coefficients against the stated products
  auto reduced_coef = [&](const TypeDStructure& nD, Basis b) -> int64_t {
    for (const auto& e : nD.delta)
      if (e.alg == b) return e.coef;
    return 0;
  };
  if (reduced_coef(rep.n_inf, Basis::R23) != rep.s1) die("triangle: N_inf coefficient");
  if (reduced_coef(rep.n_0, Basis::R12) != rep.s5) die("triangle: N_0 coefficient");

  // candidate maps phi: N_inf -> N_-1, psi: N_-1 -> N_0
  int a_idx = -1, b_idx = -1;
  for (size_t i = 0; i < rep.n_m1.gens.size(); ++i) {
    if (rep.n_m1.gens[i].name == "a") a_idx = static_cast<int>(i);
    if (rep.n_m1.gens[i].name == "b") b_idx = static_cast<int>(i);
  }
  if (a_idx < 0 || b_idx < 0) die("triangle: N_-1 generators");
  for (int s3 : {+1, -1})
    for (int s4 : {+1, -1})
      for (int s7 : {+1, -1})
        for (int s8 : {+1, -1}) {
          DMorphism phi, psi;
          phi.table.push_back({0, Basis::R2, a_idx, s4});
          phi.table.push_back({0, rep.n_m1.gens[b_idx].idem == 1 ? Basis::I1 : Basis::I2,
                               b_idx, s3});
          psi.table.push_back({a_idx, rep.n_0.gens[0].idem == 1 ? Basis::I1 : Basis::I2,
                               0, s8});
          psi.table.push_back({b_idx, Basis::R2, 0, s7});
          bool hom = is_homomorphism(phi, rep.n_inf, rep.n_m1) &&
                     is_homomorphism(psi, rep.n_m1, rep.n_0);
          if (!hom) continue;
          rep.hom_tuples.push_back({s3, s4, s7, s8});
          if (s3 * s4 * s7 * s8 == -1) rep.exact_tuples.push_back({s3, s4, s7, s8});
        }
  return rep;
}

namespace {

template <typename Table>
bool tables_match(const Table& ta, const Table& tb, const std::vector<int>& map,
                  const std::vector<int8_t>& sign) {
  if (ta.size() != tb.size()) return false;
  for (const auto& e : ta) {
    bool found = false;
    for (const auto& f : tb) {
      if (f.src == map[e.src] && f.dst == map[e.dst] && f.alg == e.alg &&
          f.coef == e.coef * sign[e.src] * sign[e.dst]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

template <typename S>
std::optional<Isomorphism> search_iso(const S& a, const S& b,
                                      const std::function<bool(const std::vector<int>&,
                                                               const std::vector<int8_t>&)>& ok) {
  const int n = static_cast<int>(a.gens.size());
  if (b.gens.size() != a.gens.size()) return std::nullopt;
  std::vector<int> map(n, -1);
  std::vector<uint8_t> used(n, 0);
  std::vector<int8_t> sign(n, +1);
  // orientation changes shift the Z/2 grading globally, so match gradings
  // up to a common shift
  int shift = 0;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      // try sign patterns greedily: brute force (2^n small at desk scale)
      for (int bits = 0; bits < (1 << n); ++bits) {
        for (int k = 0; k < n; ++k) sign[k] = (bits >> k) & 1 ? -1 : +1;
        if (ok(map, sign)) return true;
      }
      return false;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (a.gens[i].idem != b.gens[j].idem ||
          (a.gens[i].grading + shift) % 2 != b.gens[j].grading)
        continue;
      used[j] = 1;
      map[i] = j;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  bool found = rec(0);
  if (!found) {
    shift = 1;
    found = rec(0);
  }
  if (!found) return std::nullopt;
  Isomorphism iso;
  iso.map = map;
  iso.sign = sign;
  return iso;
}

}  // namespace

std::optional<Isomorphism> find_isomorphism(const TypeDStructure& a, const TypeDStructure& b) {
  return search_iso(a, b, [&](const std::vector<int>& map, const std::vector<int8_t>& sign) {
    return tables_match(a.delta, b.delta, map, sign);
  });
}

std::optional<Isomorphism> find_isomorphism(const TypeAStructure& a, const TypeAStructure& b) {
  return search_iso(a, b, [&](const std::vector<int>& map, const std::vector<int8_t>& sign) {
    return tables_match(a.m1, b.m1, map, sign) && tables_match(a.m2, b.m2, map, sign);
  });
}

}  // namespace bfz
