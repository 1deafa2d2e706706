#include <doctest.h>

#include "bfz/diagram.hpp"
#include "bfz/sign.hpp"
#include "bfz/structures.hpp"

using namespace bfz;

namespace {

TypeDStructure cfd_of(const std::string& name, SignSeq p) {
  auto h = builtin_diagram(name, p);
  FlowUniverse u(Flavor::Left, h.genus(), p);
  return build_CFD(h, construct_typeD(u));
}

int64_t delta_coef(const TypeDStructure& d, const std::string& from, Basis a,
                   const std::string& to) {
  int src = -1, dst = -1;
  for (size_t i = 0; i < d.gens.size(); ++i) {
    if (d.gens[i].name == from) src = static_cast<int>(i);
    if (d.gens[i].name == to) dst = static_cast<int>(i);
  }
  for (const auto& e : d.delta)
    if (e.src == src && e.alg == a && e.dst == dst) return e.coef;
  return 0;
}

}  // namespace

TEST_CASE("CFD of the builtins has the surgery-table shape") {
  SignSeq p = *SignSeq::parse("++");
  auto inf = cfd_of("Hinf", p);
  REQUIRE(inf.gens.size() == 3);
  CHECK(delta_coef(inf, "r", Basis::R2, "t") != 0);
  CHECK(delta_coef(inf, "s", Basis::R3, "r") != 0);
  CHECK(inf.delta.size() == 3);  // the rho23 strip dies in the tensor product
  auto m1 = cfd_of("Hm1", p);
  REQUIRE(m1.gens.size() == 2);
  CHECK(delta_coef(m1, "a", Basis::R3, "b") != 0);
  CHECK(delta_coef(m1, "a", Basis::R1, "b") != 0);
  CHECK(m1.delta.size() == 2);
  auto h0 = cfd_of("H0", p);
  REQUIRE(h0.gens.size() == 3);
  CHECK(delta_coef(h0, "p", Basis::R2, "n") != 0);
  CHECK(delta_coef(h0, "n", Basis::R1, "q") != 0);
  CHECK(h0.delta.size() == 3);
}

TEST_CASE("CFA of the builtins validates and matches the strip tags") {
  for (const char* ps : {"++", "-+"}) {
    SignSeq p = *SignSeq::parse(ps);
    auto h = builtin_diagram("Hinf", p);
    FlowUniverse u(Flavor::Right, 1, h.p_typeA());
    auto sa = construct_typeA(u);
    auto a = build_CFA(h, sa);
    REQUIRE(a.gens.size() == 3);
    CHECK(a.m1.size() == 1);
    CHECK(a.m2.size() == 3);  // the two table strips plus their composite
    // strip r->t reads as rho2 on the type A side as well; s->r becomes rho1
    bool r2 = false, r1 = false;
    for (const auto& e : a.m2) {
      r2 |= e.alg == Basis::R2 && a.gens[e.src].name == "r";
      r1 |= e.alg == Basis::R1 && a.gens[e.src].name == "s";
    }
    CHECK(r2);
    CHECK(r1);
  }
}

TEST_CASE("reduce cancels the builtins to the one-generator models") {
  SignSeq p = *SignSeq::parse("++");
  auto inf = cfd_of("Hinf", p);
  auto n_inf = reduce(inf);
  REQUIRE(n_inf.gens.size() == 1);
  CHECK(n_inf.gens[0].name == "r");
  REQUIRE(n_inf.delta.size() == 1);
  CHECK(n_inf.delta[0].alg == Basis::R23);
  // coefficient = -S(phi1) S(phi2) S(phi3)
  int64_t sphi2 = delta_coef(inf, "r", Basis::R2, "t");
  int64_t sphi3 = delta_coef(inf, "s", Basis::R3, "r");
  int64_t sphi1 = delta_coef(inf, "s", Basis::I1, "t");
  if (sphi1 == 0) sphi1 = delta_coef(inf, "s", Basis::I2, "t");
  REQUIRE(sphi1 != 0);
  CHECK(n_inf.delta[0].coef == -sphi1 * sphi2 * sphi3);

  auto h0 = cfd_of("H0", p);
  auto n_0 = reduce(h0);
  REQUIRE(n_0.gens.size() == 1);
  CHECK(n_0.gens[0].name == "n");
  REQUIRE(n_0.delta.size() == 1);
  CHECK(n_0.delta[0].alg == Basis::R12);

  auto m1 = cfd_of("Hm1", p);
  auto n_m1 = reduce(m1);
  CHECK(n_m1.gens.size() == m1.gens.size());  // nothing cancellable
  CHECK(n_m1.delta.size() == m1.delta.size());
}

TEST_CASE("smith normal form on reference matrices") {
  Matrix m = {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}};
  auto snf = smith_normal_form(m);
  REQUIRE(snf.factors.size() == 2);
  CHECK(snf.factors[0] == BigInt(1));
  CHECK(snf.factors[1] == BigInt(6));
  Matrix z = {{BigInt(0), BigInt(0)}, {BigInt(0), BigInt(0)}};
  CHECK(smith_normal_form(z).factors.empty());
  Matrix w = {{BigInt(4), BigInt(6)}, {BigInt(6), BigInt(9)}};
  auto snf2 = smith_normal_form(w);
  REQUIRE(snf2.factors.size() == 1);
  CHECK(snf2.factors[0] == BigInt(1));
}

TEST_CASE("homology of a zero differential is free") {
  ChainComplex c;
  c.basis = {{"x", 1, 0}, {"y", 1, 1}, {"z", 1, 0}};
  c.d.assign(3, std::vector<BigInt>(3));
  auto h = homology(c);
  CHECK(h.h[0].free_rank == 2);
  CHECK(h.h[1].free_rank == 1);
  CHECK(h.h[0].torsion.empty());
  CHECK(h.str().find("grading 0: Z^2") != std::string::npos);
}

TEST_CASE("box tensor against the glued complex for one pair") {
  SignSeq p = *SignSeq::parse("++");
  auto ha = builtin_diagram("Hinf", p);
  auto hd = builtin_diagram("Hm1", p);
  FlowUniverse ru(Flavor::Right, 1, ha.p_typeA());
  FlowUniverse lu(Flavor::Left, 1, hd.p);
  FlowUniverse cu(Flavor::Closed, 2);
  auto sa = construct_typeA(ru);
  auto sd = compatible_partner(sa, lu, cu);
  auto ext = extend_pairing(sa, sd, cu);
  REQUIRE(ext.has_value());
  auto box = box_tensor(build_CFA(ha, sa), build_CFD(hd, sd));
  auto glued = glue(ha, hd);
  REQUIRE(glued.has_value());
  auto tcf = tilde_CF(*glued, ext->closed);
  REQUIRE(box.basis.size() == tcf.basis.size());
  for (size_t i = 0; i < box.basis.size(); ++i) {
    CHECK(box.basis[i].grading == tcf.basis[i].grading);
    for (size_t j = 0; j < box.basis.size(); ++j) CHECK(box.d[i][j] == tcf.d[i][j]);
  }
  CHECK(homology(box) == homology(tcf));
}

TEST_CASE("box differential is odd for the combined grading") {
  SignSeq p = *SignSeq::parse("+-");  // algebra sequence
  auto ha = builtin_diagram("H0", SignSeq{p.p2, p.p1});  // type A side reads -+
  auto hd = builtin_diagram("Hinf", p);
  FlowUniverse ru(Flavor::Right, 1, ha.p_typeA());
  FlowUniverse lu(Flavor::Left, 1, hd.p);
  FlowUniverse cu(Flavor::Closed, 2);
  auto sa = construct_typeA(ru);
  auto sd = compatible_partner(sa, lu, cu);
  auto box = box_tensor(build_CFA(ha, sa), build_CFD(hd, sd));
  for (size_t i = 0; i < box.basis.size(); ++i)
    for (size_t j = 0; j < box.basis.size(); ++j)
      if (!box.d[i][j].is_zero())
        CHECK(box.basis[i].grading != box.basis[j].grading);
}

TEST_CASE("type D morphism differentials") {
  SignSeq p = *SignSeq::parse("++");
  auto m1 = cfd_of("Hm1", p);
  // the zero morphism is a homomorphism
  DMorphism zero;
  CHECK(is_homomorphism(zero, m1, m1));
  // the identity morphism is a homomorphism too: entries i_{idem} per gen
  DMorphism id;
  for (size_t i = 0; i < m1.gens.size(); ++i)
    id.table.push_back({static_cast<int>(i),
                        m1.gens[i].idem == 1 ? Basis::I1 : Basis::I2,
                        static_cast<int>(i), 1});
  CHECK(is_homomorphism(id, m1, m1));
  // flipping one generator's sign in the identity breaks it
  DMorphism bad = id;
  bad.table[0].coef = -1;
  CHECK(!is_homomorphism(bad, m1, m1));
}

TEST_CASE("triangle obstruction reproduces the contradiction") {
  for (const char* ps : {"++", "+-"}) {
    SignSeq p = *SignSeq::parse(ps);
    for (int c1 : {+1, -1})
      for (int c2 : {+1, -1}) {
        auto rep = triangle_obstruction(p, ClassLabel{(int8_t)c1, (int8_t)c2});
        CHECK(rep.degeneration_identity);
        CHECK(rep.hom_tuples.size() == 4);
        CHECK(rep.exact_tuples.empty());
      }
  }
}

TEST_CASE("gauge representatives give exactly intertwined structures") {
  SignSeq p = *SignSeq::parse("++");
  auto h = builtin_diagram("Hinf", p);
  FlowUniverse lu(Flavor::Left, 1, p);
  auto sd = construct_typeD(lu);
  std::vector<int8_t> gauge(lu.gen_count());
  for (int i = 0; i < lu.gen_count(); ++i) gauge[i] = (i % 3 == 1) ? -1 : +1;
  auto sd2 = apply_gauge(sd, gauge);
  REQUIRE(validate(sd2).ok);
  auto d1 = build_CFD(h, sd);
  auto d2 = build_CFD(h, sd2);
  // H(x) = u(F(x)) x intertwines delta exactly
  auto gens = generators(h);
  std::vector<int8_t> u_of_gen(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    u_of_gen[i] = gauge[lu.gen_id(formalize_left_gen(h, gens[i]))];
  for (const auto& e : d1.delta) {
    int64_t expect = e.coef * u_of_gen[e.src] * u_of_gen[e.dst];
    int64_t got = 0;
    for (const auto& f : d2.delta)
      if (f.src == e.src && f.dst == e.dst && f.alg == e.alg) got = f.coef;
    CHECK(got == expect);
  }
}

TEST_CASE("flipped beta orientation yields isomorphic structures") {
  // flipping an orientation composes with a class relabeling, so rerunning
  // the pipeline with the matching class reproduces the structure
  SignSeq p = *SignSeq::parse("++");
  for (const char* name : {"Hinf", "Hm1", "H0"}) {
    auto h = builtin_diagram(name, p);
    auto h2 = flip_beta_orientation(h, 1);
    FlowUniverse lu(Flavor::Left, 1, p);
    auto sd = construct_typeD(lu);
    auto d1 = build_CFD(h, sd);
    bool found_d = false;
    for (int c1 : {+1, -1})
      for (int c2 : {+1, -1})
        found_d = found_d ||
                  find_isomorphism(d1, build_CFD(h2, retune_D(sd, ClassLabel{(int8_t)c1,
                                                                             (int8_t)c2})))
                      .has_value();
    CHECK(found_d);
    FlowUniverse ru(Flavor::Right, 1, h.p_typeA());
    auto sa = construct_typeA(ru);
    auto a1 = build_CFA(h, sa);
    bool found_a = false;
    for (int c1 : {+1, -1})
      for (int c2 : {+1, -1})
        found_a = found_a ||
                  find_isomorphism(a1, build_CFA(h2, retune_A(sa, ClassLabel{(int8_t)c1,
                                                                             (int8_t)c2})))
                      .has_value();
    CHECK(found_a);
  }
}


TEST_CASE("m2 acts by the unit and the correct idempotent") {
  SignSeq p = *SignSeq::parse("++");
  auto h = builtin_diagram("Hinf", p);
  FlowUniverse u(Flavor::Right, 1, h.p_typeA());
  auto a = build_CFA(h, construct_typeA(u));
  for (size_t x = 0; x < a.gens.size(); ++x) {
    auto via_i1 = a.mul(x, Basis::I1);
    auto via_i2 = a.mul(x, Basis::I2);
    for (size_t y = 0; y < a.gens.size(); ++y) {
      int64_t unit = via_i1[y] + via_i2[y];  // m2(x, i1 + i2)
      CHECK(unit == (x == y ? 1 : 0));
    }
    // the wrong idempotent annihilates
    CHECK(a.mul(x, a.gens[x].idem == 1 ? Basis::I2 : Basis::I1) ==
          std::vector<int64_t>(a.gens.size(), 0));
  }
}

TEST_CASE("reduction preserves the homology of box tensor products") {
  SignSeq p = *SignSeq::parse("++");
  for (const char* nd : {"Hinf", "H0"}) {
    auto hd = builtin_diagram(nd, p);
    FlowUniverse lu(Flavor::Left, 1, hd.p);
    for (const char* na : {"Hinf", "Hm1", "H0"}) {
      auto ha = builtin_diagram(na, p);
      FlowUniverse ru(Flavor::Right, 1, ha.p_typeA());
      FlowUniverse cu(Flavor::Closed, 2);
      auto sa = construct_typeA(ru);
      auto sd = compatible_partner(sa, lu, cu);
      auto a = build_CFA(ha, sa);
      auto d = build_CFD(hd, sd);
      auto before = homology(box_tensor(a, d));
      auto after = homology(box_tensor(a, reduce(d)));
      CHECK(before == after);
    }
  }
}

TEST_CASE("triangle homomorphism tuples satisfy the parity identities") {
  SignSeq p = *SignSeq::parse("-+");
  auto rep = triangle_obstruction(p, ClassLabel{-1, +1});
  int rho2 = grading(Basis::R2, p);
  for (auto& t : rep.hom_tuples) {
    CHECK(rep.s1 * rep.s2 * t[0] * t[1] == (rho2 ? -1 : 1));  // phi is a homomorphism
    CHECK(rep.s5 * rep.s6 * t[2] * t[3] == 1);                // psi is a homomorphism
  }
}

TEST_CASE("smith normal form factors divide in turn") {
  Matrix m = {{BigInt(6), BigInt(4), BigInt(2)},
              {BigInt(4), BigInt(8), BigInt(10)},
              {BigInt(2), BigInt(10), BigInt(12)}};
  auto snf = smith_normal_form(m);
  for (size_t i = 0; i + 1 < snf.factors.size(); ++i)
    CHECK((snf.factors[i + 1] % snf.factors[i]).is_zero());
}
namespace {

// Stabilized builtin: one extra alpha-circle/beta-circle pair crossing once.
BorderedDiagram stabilize(const BorderedDiagram& d) {
  BorderedDiagram out = d;
  out.name += "s";
  out.alpha_circles += 1;
  out.beta_circles += 1;
  DiagramPoint w;
  w.name = "w";
  w.on_arc = false;
  w.alpha = out.alpha_circles;
  w.beta = out.beta_circles;
  w.sign = +1;
  out.points.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("stabilized diagrams glue and pair at mixed genus") {
  SignSeq p = *SignSeq::parse("++");
  auto ha = stabilize(builtin_diagram("Hm1", p));  // genus 2, type A side
  auto hd = builtin_diagram("H0", p);              // genus 1, type D side
  REQUIRE(generators(ha).size() == 2);
  FlowUniverse ru(Flavor::Right, 2, ha.p_typeA());
  FlowUniverse lu(Flavor::Left, 1, hd.p);
  FlowUniverse cu(Flavor::Closed, 3);
  auto sa = construct_typeA(ru);
  auto sd = compatible_partner(sa, lu, cu);
  auto ext = extend_pairing(sa, sd, cu);
  REQUIRE(ext.has_value());
  auto box = box_tensor(build_CFA(ha, sa), build_CFD(hd, sd));
  auto glued = glue(ha, hd);
  REQUIRE(glued.has_value());
  auto tcf = tilde_CF(*glued, ext->closed);
  REQUIRE(box.basis.size() == tcf.basis.size());
  for (size_t i = 0; i < box.basis.size(); ++i)
    for (size_t j = 0; j < box.basis.size(); ++j) CHECK(box.d[i][j] == tcf.d[i][j]);
  CHECK(homology(box) == homology(tcf));

  // and with the stabilization on the type D side
  auto hd2 = stabilize(builtin_diagram("H0", p));
  auto ha2 = builtin_diagram("Hm1", p);
  FlowUniverse ru2(Flavor::Right, 1, ha2.p_typeA());
  FlowUniverse lu2(Flavor::Left, 2, hd2.p);
  auto sa2 = construct_typeA(ru2);
  auto sd2 = compatible_partner(sa2, lu2, cu);
  auto ext2 = extend_pairing(sa2, sd2, cu);
  REQUIRE(ext2.has_value());
  auto box2 = box_tensor(build_CFA(ha2, sa2), build_CFD(hd2, sd2));
  auto glued2 = glue(ha2, hd2);
  REQUIRE(glued2.has_value());
  auto tcf2 = tilde_CF(*glued2, ext2->closed);
  REQUIRE(box2.basis.size() == tcf2.basis.size());
  for (size_t i = 0; i < box2.basis.size(); ++i)
    for (size_t j = 0; j < box2.basis.size(); ++j) CHECK(box2.d[i][j] == tcf2.d[i][j]);
  CHECK(homology(box2) == homology(tcf2));
}

TEST_CASE("a crossing-once stabilization preserves the paired homology") {
  // the extra handle pair forces one new coordinate and adds no domains, so
  // the complex is unchanged up to a global grading shift
  SignSeq p = *SignSeq::parse("++");
  for (const char* na : {"Hinf", "Hm1", "H0"}) {
    auto plain_a = builtin_diagram(na, p);
    auto stab_a = stabilize(plain_a);
    auto hd = builtin_diagram("Hm1", p);
    FlowUniverse ru1(Flavor::Right, 1, plain_a.p_typeA());
    FlowUniverse ru2(Flavor::Right, 2, stab_a.p_typeA());
    FlowUniverse lu(Flavor::Left, 1, hd.p);
    FlowUniverse cu2(Flavor::Closed, 2);
    FlowUniverse cu3(Flavor::Closed, 3);
    auto sa1 = construct_typeA(ru1);
    auto sa2 = construct_typeA(ru2);
    auto h1 = homology(box_tensor(build_CFA(plain_a, sa1),
                                  build_CFD(hd, compatible_partner(sa1, lu, cu2))));
    auto h2 = homology(box_tensor(build_CFA(stab_a, sa2),
                                  build_CFD(hd, compatible_partner(sa2, lu, cu3))));
    CHECK(h1.h[0].torsion.empty());
    CHECK(h2.h[0].torsion.empty());
    bool same = h2.h[0].free_rank == h1.h[0].free_rank &&
                h2.h[1].free_rank == h1.h[1].free_rank;
    bool shifted = h2.h[0].free_rank == h1.h[1].free_rank &&
                   h2.h[1].free_rank == h1.h[0].free_rank;
    CHECK((same || shifted));
  }
}

TEST_CASE("rectangle domains formalize on both sides") {
  std::string text =
      "[diagram]\n"
      "name recty\n"
      "sign-sequence ++\n"
      "alpha-circles 1\n"
      "beta-circles 2\n"
      "[points]\n"
      "e c1 b1 +\n"
      "f c1 b2 +\n"
      "u a1 b1 +\n"
      "v a1 b2 +\n"
      "[domains]\n"
      "rect e,v>f,u blocked= flags=++--\n";
  ParseError err;
  auto d = parse_diagram(text, &err);
  REQUIRE_MESSAGE(d.has_value(), err.message);
  auto gens = generators(*d);
  REQUIRE(gens.size() == 2);
  auto fl = flows(*d, gens);
  REQUIRE(fl.size() == 1);
  FlowUniverse lu(Flavor::Left, 2, d->p);
  FlowUniverse ru(Flavor::Right, 2, d->p_typeA());
  Flow left = formalize_left(*d, gens, fl[0], lu);
  CHECK(left.kind == FlowKind::Rect);
  CHECK(lu.gen(left.from) == formalize_left_gen(*d, gens[fl[0].src]));
  Flow right = formalize_right(*d, gens, fl[0], ru);
  CHECK(right.kind == FlowKind::Rect);
  CHECK(ru.gen(right.to) == formalize_right_gen(*d, gens[fl[0].dst]));
  // the structure built from it satisfies the type D relation
  auto cfd = build_CFD(*d, construct_typeD(lu));
  CHECK(cfd.delta.size() == 1);
  // wrong corner pairing is rejected
  std::string bad = text;
  bad.replace(bad.find("e,v>f,u"), 7, "e,v>u,f");
  CHECK(!parse_diagram(bad, &err).has_value());
}
