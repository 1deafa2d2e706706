#include <doctest.h>

#include "bfz/formal.hpp"
#include "bfz/relations.hpp"
#include "bfz/sign.hpp"

using namespace bfz;

TEST_CASE("closed solver: feasible, valid, kernel is the gauge space") {
  for (int n : {1, 2, 3}) {
    FlowUniverse u(Flavor::Closed, n);
    auto info = closed_kernel_info(u);
    CHECK(info.kernel_dim == info.gauge_dim);
    CHECK(info.kernel_is_gauge);
    auto s = solve_closed(u);
    auto rep = validate(s);
    CHECK(rep.ok);
    if (n == 1) {
      // every bigon pairs against its beta partner with product -1
      for (int i = 0; i < u.flow_count(); ++i) {
        auto b = beta_partner(u, u.flow(i));
        REQUIRE(b.has_value());
        CHECK(s.at(i) * s.at(*b) == -1);
      }
    }
  }
}

TEST_CASE("different solver seeds give gauge-equivalent assignments") {
  FlowUniverse u(Flavor::Closed, 2);
  auto s0 = solve_closed(u, 0);
  auto s1 = solve_closed(u, 777);
  auto s2 = solve_closed(u, 123456789);
  CHECK(gauge_equivalent(s0, s1).has_value());
  CHECK(gauge_equivalent(s0, s2).has_value());
  // and a gauge witness actually transports one to the other
  auto g = gauge_equivalent(s0, s1);
  REQUIRE(g.has_value());
  CHECK(apply_gauge(s0, *g).val == s1.val);
}

TEST_CASE("further squares hold for solved assignments") {
  for (int n : {2, 3}) {
    FlowUniverse u(Flavor::Closed, n);
    auto s = solve_closed(u);
    auto rep = check_further_squares(s);
    CHECK(rep.instances > 0);
    CHECK(rep.ok);
  }
}

TEST_CASE("type A construction validates for all sequences") {
  for (const char* ps : {"++", "+-", "-+", "--"}) {
    for (int n : {1, 2}) {
      FlowUniverse u(Flavor::Right, n, *SignSeq::parse(ps));
      auto sa = construct_typeA(u);
      auto rep = validate(sa);
      CHECK(rep.ok);
      bool has_triangles = false;
      for (auto& [axiom, count] : rep.counts) has_triangles |= axiom == "A-5" && count > 0;
      CHECK(has_triangles);
    }
  }
}

TEST_CASE("type A class of the (++) construction is (+,+), stable in n") {
  for (int n : {1, 2, 3}) {
    FlowUniverse u(Flavor::Right, n, *SignSeq::parse("++"));
    auto sa = construct_typeA(u);
    CHECK(classify_A(sa) == ClassLabel{+1, +1});
  }
}

TEST_CASE("type D construction validates with class (+,+)") {
  for (const char* ps : {"++", "+-", "-+", "--"}) {
    for (int n : {1, 2}) {
      FlowUniverse u(Flavor::Left, n, *SignSeq::parse(ps));
      auto sd = construct_typeD(u);
      CHECK(validate(sd).ok);
      CHECK(classify_D(sd) == ClassLabel{+1, +1});
    }
  }
}

TEST_CASE("bordered reference flows have sign +1 under the type D formula") {
  FlowUniverse u(Flavor::Left, 2, *SignSeq::parse("+-"));
  auto sd = construct_typeD(u);
  Gen g;
  g.sigma = {1, 2};
  g.eps = {+1, +1};
  for (Basis t : {Basis::R1, Basis::R2, Basis::R3, Basis::R123}) {
    g.s = static_cast<uint8_t>(point_pair(segment_end(t)));
    auto f = u.make_bordered(u.gen_id(g), t);
    REQUIRE(f.has_value());
    CHECK(sd.at(*f) == +1);
  }
}

TEST_CASE("retune realizes four pairwise non-equivalent classes") {
  for (bool type_a : {true, false}) {
    FlowUniverse u(type_a ? Flavor::Right : Flavor::Left, 2, *SignSeq::parse("++"));
    SignAssignment base = type_a ? construct_typeA(u) : construct_typeD(u);
    std::vector<SignAssignment> reps;
    for (int c1 : {+1, -1})
      for (int c2 : {+1, -1}) {
        ClassLabel target{static_cast<int8_t>(c1), static_cast<int8_t>(c2)};
        auto s = type_a ? retune_A(base, target) : retune_D(base, target);
        CHECK((type_a ? classify_A(s) : classify_D(s)) == target);
        CHECK(validate(s).ok);
        reps.push_back(s);
      }
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = 0; j < reps.size(); ++j) {
        auto g = gauge_equivalent(reps[i], reps[j]);
        if (i == j) CHECK(g.has_value());
        else CHECK(!g.has_value());
      }
  }
}

TEST_CASE("gauge transport preserves validity and class") {
  FlowUniverse u(Flavor::Right, 2, *SignSeq::parse("-+"));
  auto sa = construct_typeA(u);
  // an arbitrary gauge keeps validity and admits a witness
  std::vector<int8_t> gauge(u.gen_count());
  for (int i = 0; i < u.gen_count(); ++i) gauge[i] = (i * 2654435761u >> 7) & 1 ? -1 : +1;
  auto sb = apply_gauge(sa, gauge);
  CHECK(validate(sb).ok);
  // a gauge constant on each idempotent sector fixes the internal part, so
  // the class label is preserved as well
  for (int i = 0; i < u.gen_count(); ++i) gauge[i] = u.gen(i).s == 1 ? -1 : +1;
  auto sc = apply_gauge(sa, gauge);
  CHECK(validate(sc).ok);
  CHECK(classify_A(sc) == classify_A(sa));
  auto w = gauge_equivalent(sa, sb);
  REQUIRE(w.has_value());
  CHECK(apply_gauge(sa, *w).val == sb.val);
  // identity gauge on itself
  auto self = gauge_equivalent(sa, sa);
  REQUIRE(self.has_value());
  for (int8_t v : *self) CHECK(v == +1);
}

TEST_CASE("negating all three type A reference choices is a gauge move") {
  // tuples (c1,c2,c3) and (-c1,-c2,-c3) give the same class and u(x) =
  // (-1)^{s(x)} transports one to the other
  FlowUniverse u(Flavor::Right, 2, *SignSeq::parse("++"));
  auto sa = construct_typeA(u);
  SignAssignment sb = sa;
  for (int i = 0; i < u.flow_count(); ++i) {
    const Flow& f = u.flow(i);
    if (f.kind != FlowKind::BorderedRect) continue;
    // flip every tag with an odd number of letters: rho1, rho2, rho3, rho123
    if (f.tag == Basis::R1 || f.tag == Basis::R2 || f.tag == Basis::R3 ||
        f.tag == Basis::R123)
      sb.val[i] = static_cast<int8_t>(-sb.val[i]);
  }
  CHECK(validate(sb).ok);
  CHECK(classify_A(sb) == classify_A(sa));
  auto w = gauge_equivalent(sa, sb);
  REQUIRE(w.has_value());
  for (uint32_t g = 0; g < static_cast<uint32_t>(u.gen_count()); ++g) {
    int expect = u.gen(g).s == u.gen(0).s ? +1 : -1;
    CHECK((*w)[g] * (*w)[0] == expect);
  }
}

TEST_CASE("type D construction validates at power 3") {
  FlowUniverse u(Flavor::Left, 3, *SignSeq::parse("+-"));
  auto sd = construct_typeD(u);
  auto rep = validate(sd);
  CHECK(rep.ok);
  CHECK(classify_D(sd) == ClassLabel{+1, +1});
}
