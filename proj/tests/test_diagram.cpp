#include <doctest.h>

#include "bfz/diagram.hpp"
#include "bfz/formal.hpp"

using namespace bfz;

TEST_CASE("builtins parse, validate and enumerate as in the surgery tables") {
  SignSeq p = *SignSeq::parse("++");
  auto hinf = builtin_diagram("Hinf", p);
  auto gens = generators(hinf);
  REQUIRE(gens.size() == 3);
  CHECK(flows(hinf, gens).size() == 4);  // the three labeled flows plus the type A composite strip

  auto hm1 = builtin_diagram("Hm1", p);
  CHECK(generators(hm1).size() == 2);
  CHECK(flows(hm1, generators(hm1)).size() == 2);

  auto h0 = builtin_diagram("H0", p);
  CHECK(generators(h0).size() == 3);
  CHECK(flows(h0, generators(h0)).size() == 4);
}

TEST_CASE("serialization round trips through the parser") {
  for (const char* name : {"Hinf", "Hm1", "H0"}) {
    for (const char* ps : {"++", "-+"}) {
      auto d = builtin_diagram(name, *SignSeq::parse(ps));
      std::string text = serialize_diagram(d);
      ParseError err;
      auto back = parse_diagram(text, &err);
      REQUIRE(back.has_value());
      CHECK(serialize_diagram(*back) == text);
    }
  }
}

TEST_CASE("parser reports inconsistent half strips") {
  SignSeq p = *SignSeq::parse("++");
  auto d = builtin_diagram("Hm1", p);
  std::string text = serialize_diagram(d);
  // corrupt the rho tag: a>b with rho=2 contradicts the arc labels
  auto pos = text.find("rho=3");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "rho=2");
  ParseError err;
  CHECK(!parse_diagram(text, &err).has_value());
  CHECK(err.message.find("rho tag") != std::string::npos);
}

TEST_CASE("parser reports syntax errors with line numbers") {
  ParseError err;
  CHECK(!parse_diagram("garbage here\n", &err).has_value());
  CHECK(err.line == 1);
  std::string text =
      "[diagram]\nname X\nsign-sequence ++\nalpha-circles 0\nbeta-circles 1\n"
      "[points]\nx a1 b9 +\n";
  CHECK(!parse_diagram(text, &err).has_value());
  CHECK(err.line == 7);
}

TEST_CASE("formalized diagram flows connect formalized generators") {
  for (const char* name : {"Hinf", "Hm1", "H0"}) {
    SignSeq p = *SignSeq::parse("+-");
    auto d = builtin_diagram(name, p);
    auto gens = generators(d);
    FlowUniverse lu(Flavor::Left, d.genus(), d.p);
    FlowUniverse ru(Flavor::Right, d.genus(), d.p_typeA());
    for (const auto& f : flows(d, gens)) {
      Flow fl = formalize_left(d, gens, f, lu);
      CHECK(lu.gen(fl.from) == formalize_left_gen(d, gens[f.src]));
      CHECK(lu.gen(fl.to) == formalize_left_gen(d, gens[f.dst]));
      Flow fr = formalize_right(d, gens, f, ru);
      CHECK(ru.gen(fr.from) == formalize_right_gen(d, gens[f.src]));
      CHECK(ru.gen(fr.to) == formalize_right_gen(d, gens[f.dst]));
    }
  }
}

TEST_CASE("builtin half strips formalize to the surgery-table tags") {
  SignSeq p = *SignSeq::parse("++");
  auto d = builtin_diagram("Hinf", p);
  auto gens = generators(d);
  FlowUniverse lu(Flavor::Left, 1, p);
  int seen_rho2 = 0, seen_rho3 = 0;
  for (const auto& f : flows(d, gens)) {
    if (d.domains[f.domain].kind != DomainKind::HalfStrip) continue;
    Flow fl = formalize_left(d, gens, f, lu);
    if (fl.tag == Basis::R2) {
      ++seen_rho2;
      CHECK(gens[f.src].str(d) == "r");
      CHECK(gens[f.dst].str(d) == "t");
    }
    if (fl.tag == Basis::R3) {
      ++seen_rho3;
      CHECK(gens[f.src].str(d) == "s");
      CHECK(gens[f.dst].str(d) == "r");
    }
  }
  CHECK(seen_rho2 == 1);
  CHECK(seen_rho3 == 1);
}

TEST_CASE("blocked sets remove flows") {
  // two beta circles; a rectangle blocked by a point of the generator
  std::string text =
      "[diagram]\n"
      "name synthetic\n"
      "sign-sequence ++\n"
      "alpha-circles 1\n"
      "beta-circles 2\n"
      "[points]\n"
      "u a1 b1 +\n"
      "v a2 b1 +\n"
      "w c1 b2 +\n"
      "x c1 b2 -\n"
      "y c1 b1 +\n"
      "[domains]\n"
      "bigon w>x flags=+- blocked=u\n";
  ParseError err;
  auto d = parse_diagram(text, &err);
  REQUIRE(d.has_value());
  auto gens = generators(*d);
  // generators: one point on b1, one on b2, circle c1 covered exactly once,
  // exactly one arc point
  REQUIRE(gens.size() == 4);  // {u,w},{u,x},{v,w},{v,x}
  auto fl = flows(*d, gens);
  // the bigon applies only to generators containing w and not blocked by u
  REQUIRE(fl.size() == 1);
  CHECK(gens[fl[0].src].str(*d) == "v,w");
  CHECK(gens[fl[0].dst].str(*d) == "v,x");
}

TEST_CASE("gluing pairs generators with matching circles") {
  SignSeq p = *SignSeq::parse("++");
  auto ha = builtin_diagram("Hinf", p);
  auto hd = builtin_diagram("Hm1", p);
  auto glued = glue(ha, hd);
  REQUIRE(glued.has_value());
  // pairs with equal file arc index: (r:1)(b:1), (s:2)(a:2), (t:2)(a:2)
  CHECK(glued->gens.size() == 3);
  CHECK(!glue(ha, builtin_diagram("Hm1", *SignSeq::parse("+-"))).has_value());
}

TEST_CASE("beta flip keeps the diagram valid") {
  SignSeq p = *SignSeq::parse("++");
  for (const char* name : {"Hinf", "Hm1", "H0"}) {
    auto d = builtin_diagram(name, p);
    auto flipped = flip_beta_orientation(d, 1);
    ParseError err;
    auto back = parse_diagram(serialize_diagram(flipped), &err);
    REQUIRE_MESSAGE(back.has_value(), err.message);
    CHECK(generators(flipped).size() == generators(d).size());
    CHECK(flows(flipped, generators(flipped)).size() == flows(d, generators(d)).size());
  }
}

TEST_CASE("opposite reading tag map is the boundary reversal") {
  CHECK(opposite_reading_tag(Basis::R1) == Basis::R3);
  CHECK(opposite_reading_tag(Basis::R3) == Basis::R1);
  CHECK(opposite_reading_tag(Basis::R2) == Basis::R2);
  CHECK(opposite_reading_tag(Basis::R12) == Basis::R23);
  CHECK(opposite_reading_tag(Basis::R23) == Basis::R12);
  CHECK(opposite_reading_tag(Basis::R123) == Basis::R123);
}
