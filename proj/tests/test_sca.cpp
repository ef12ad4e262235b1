#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rkg/sca.hpp"
#include "support.hpp"

using namespace rkg;

namespace {

// XOR automaton over the affine line in characteristic 2: rule x_0 + x_1
CellularAutomaton xor_ca() {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);
  MemorySet m = interval_memory(Z, 0, 1);
  RulePoly p = RulePoly::variable(F2, CellVar{Z->from_vector({0}), 0}) +
               RulePoly::variable(F2, CellVar{Z->from_vector({1}), 0});
  PolyRule rule;
  rule.out.push_back(std::move(p));
  return CellularAutomaton(Z, a, m, std::move(rule));
}

Pattern bit_pattern(const GroupCtxPtr& Z, const FieldCtxPtr& F, int64_t lo,
                    std::vector<int> bits) {
  Pattern p;
  p.window = interval_memory(Z, lo, lo + static_cast<int64_t>(bits.size()) - 1);
  for (int b : bits) p.points.push_back({F->from_int(b)});
  return p;
}

}  // namespace

TEST_CASE("identity automaton maps patterns to themselves") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  auto id = CellularAutomaton::identity(Z, Alphabet::affine(F2, 1));
  Pattern p = bit_pattern(Z, F2, -1, {1, 0, 1});
  Pattern q = apply_pattern(id, p);
  CHECK(q.window == p.window);
  CHECK(q.points == p.points);
}

TEST_CASE("xor rule on 0110") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Pattern p = bit_pattern(Z, F2, 0, {0, 1, 1, 0});
  Pattern q = apply_pattern(xor_ca(), p);
  CHECK(q.window == interval_memory(Z, 0, 2));
  // oracle: three local sums 0+1, 1+1, 1+0
  CHECK(q.points == std::vector<AffinePoint>({{F2->from_int(1)},
                                              {F2->from_int(0)},
                                              {F2->from_int(1)}}));
}

TEST_CASE("shift automaton drops the leftmost cell") {
  auto Z = GroupCtx::free_abelian(1);
  auto F3 = FieldCtx::gf(3);
  auto sh = CellularAutomaton::shift(Z, Alphabet::affine(F3, 1), 1);
  Pattern p = bit_pattern(Z, F3, 0, {2, 1, 0});
  Pattern q = apply_pattern(sh, p);
  // the output lives on E (-) M = {g : g + 1 in E} = {-1, 0, 1}
  CHECK(q.window == interval_memory(Z, -1, 1));
  CHECK(q.points == std::vector<AffinePoint>(
            {{F3->from_int(2)}, {F3->from_int(1)}, {F3->from_int(0)}}));
}

TEST_CASE("apply on a too-small window is empty") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Pattern p = bit_pattern(Z, F2, 0, {1});
  Pattern q = apply_pattern(xor_ca(), p);
  CHECK(q.window.empty());
}

TEST_CASE("composition semantics on patterns, randomized") {
  rkgtest::Rng rng(61);
  auto Z = GroupCtx::free_abelian(1);
  auto F3 = FieldCtx::gf(3);
  Alphabet a = Alphabet::affine(F3, 1);
  for (int trial = 0; trial < 25; ++trial) {
    NearRingElem na = rkgtest::random_near_ring(Z, F3, rng, 2, 2, 1);
    NearRingElem nb = rkgtest::random_near_ring(Z, F3, rng, 2, 2, 1);
    CellularAutomaton ta = ca_from_nearring(na);
    CellularAutomaton tb = ca_from_nearring(nb);
    CellularAutomaton comp = compose(ta, tb);
    Pattern p = bit_pattern(Z, F3, -3, {0, 1, 2, 1, 0, 2, 2, 1});
    Pattern lhs = apply_pattern(comp, p);
    Pattern rhs = apply_pattern(ta, apply_pattern(tb, p));
    // the composed automaton may carry a larger declared memory, so compare
    // on the intersection of the output windows
    for (const auto& g : rhs.window)
      if (lhs.window.contains(g))
        CHECK(lhs.points[*lhs.window.index_of(g)] == rhs.points[*rhs.window.index_of(g)]);
  }
}

TEST_CASE("equivariance: translated input gives translated output") {
  rkgtest::Rng rng(67);
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  CellularAutomaton ca = xor_ca();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> bits;
    for (int i = 0; i < 6; ++i) bits.push_back(static_cast<int>(rng() % 2));
    int64_t base = static_cast<int64_t>(rng() % 7) - 3;
    Pattern p = bit_pattern(Z, F2, base, bits);
    Pattern q = apply_pattern(ca, p);
    Pattern p2 = bit_pattern(Z, F2, base + 5, bits);
    Pattern q2 = apply_pattern(ca, p2);
    REQUIRE(q.window.size() == q2.window.size());
    CHECK(q.points == q2.points);
  }
}

TEST_CASE("compose of table rules: xor after xor cancels the middle term") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  CellularAutomaton x = xor_ca();
  CellularAutomaton xx = compose(x, x);
  // polynomial route: x_0 + 2 x_1 + x_2 = x_0 + x_2 in characteristic 2
  RulePoly expect = RulePoly::variable(F2, CellVar{Z->from_vector({0}), 0}) +
                    RulePoly::variable(F2, CellVar{Z->from_vector({2}), 0});
  REQUIRE(xx.has_poly());
  CHECK(xx.poly().out[0] == expect);
  CHECK(xx.memory() == interval_memory(Z, 0, 2));

  // table route agrees after restriction
  CellularAutomaton xr = restrict_ca(x, 1);
  CellularAutomaton xxr = compose(xr, xr);
  CellularAutomaton xx_r = restrict_ca(xx, 1);
  CHECK(rule_equal(xxr, xx_r).as_functions == std::optional<bool>(true));
}

TEST_CASE("shift of shift is the double shift") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);
  auto s1 = CellularAutomaton::shift(Z, a, 1);
  auto ss = compose(s1, s1);
  CHECK(ss.memory() == MemorySet(Z, {Z->from_vector({2})}));
  CHECK(ss.poly().out[0] == RulePoly::variable(F2, CellVar{Z->from_vector({2}), 0}));
}

TEST_CASE("window map of the xor rule is surjective") {
  auto Z = GroupCtx::free_abelian(1);
  CellularAutomaton x = restrict_ca(xor_ca(), 1);
  MemorySet m = interval_memory(Z, 0, 1);  // memory itself; M^2 = {0,1,2}
  WindowMapTable w = window_map(x, m);
  CHECK(w.in_count == 8);
  CHECK(w.out_count == 4);
  // oracle: (a,b,c) -> (a+b, b+c) hits all four outputs
  std::set<uint64_t> outs(w.rows.begin(), w.rows.end());
  CHECK(outs.size() == 4);
  SurjectivityCheck sc = window_surjective(x, m);
  CHECK(sc.surjective);

  // window-map rows agree with apply_pattern on the same block
  auto F2 = FieldCtx::gf(2);
  for (uint64_t row = 0; row < w.in_count; ++row) {
    std::vector<int> bits;
    uint64_t v = row;
    for (size_t i = 0; i < w.square.size(); ++i) {
      bits.push_back(static_cast<int>(v % 2));
      v /= 2;
    }
    Pattern p;
    p.window = w.square;
    for (int b : bits) p.cells.push_back(b);
    Pattern q = apply_pattern(x, p);
    uint64_t encoded = 0;
    for (size_t i = m.size(); i-- > 0;) {
      auto idx = q.window.index_of(m[i]);
      REQUIRE(idx.has_value());
      encoded = encoded * 2 + static_cast<uint64_t>(q.cells[*idx]);
    }
    CHECK(encoded == w.rows[row]);
  }
}

TEST_CASE("constant rule is not window surjective") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);
  MemorySet m(Z, {Z->identity()});
  PolyRule rule;
  rule.out.push_back(RulePoly::constant(F2, F2->one()));
  CellularAutomaton c(Z, a, m, std::move(rule));
  CellularAutomaton cr = restrict_ca(c, 1);
  CHECK_FALSE(window_surjective(cr, symmetrize(m)).surjective);
}

TEST_CASE("linear images of matrices") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);

  CHECK(rule_equal(lca_from_matrix(GroupRingMatrix::identity(Z, F2, 2)),
                   CellularAutomaton::identity(Z, Alphabet::affine(F2, 2)))
            .as_polynomials);

  // n = 1, a = t: the shift by one
  GroupRingMatrix t = GroupRingMatrix::scalar(
      GroupRingElem::term(Z->from_vector({1}), F2->one()));
  CHECK(rule_equal(lca_from_matrix(t),
                   CellularAutomaton::shift(Z, Alphabet::affine(F2, 1), 1))
            .as_polynomials);

  // n = 1, a = 1 + t: the xor rule
  GroupRingMatrix onet = GroupRingMatrix::scalar(
      GroupRingElem::one(Z, F2) + GroupRingElem::term(Z->from_vector({1}), F2->one()));
  CHECK(rule_equal(lca_from_matrix(onet), xor_ca()).as_polynomials);
}

TEST_CASE("matrix image is multiplicative, randomized") {
  rkgtest::Rng rng(71);
  auto Z = GroupCtx::free_abelian(1);
  auto F3 = FieldCtx::gf(3);
  for (int trial = 0; trial < 60; ++trial) {
    GroupRingMatrix a = rkgtest::random_matrix(Z, F3, rng, 2, 2, 1);
    GroupRingMatrix b = rkgtest::random_matrix(Z, F3, rng, 2, 2, 1);
    CellularAutomaton lhs = compose(lca_from_matrix(a), lca_from_matrix(b));
    CellularAutomaton rhs = lca_from_matrix(a * b);
    CHECK(rule_equal(lhs, rhs).as_polynomials);
  }
}

TEST_CASE("near-ring image is functorial, randomized") {
  rkgtest::Rng rng(73);
  auto Z = GroupCtx::free_abelian(1);
  auto F5 = FieldCtx::gf(5);
  CHECK(rule_equal(ca_from_nearring(NearRingElem::star_identity(Z, F5)),
                   CellularAutomaton::identity(Z, Alphabet::affine(F5, 1)))
            .as_polynomials);
  for (int trial = 0; trial < 60; ++trial) {
    NearRingElem a = rkgtest::random_near_ring(Z, F5, rng, 2, 2, 1);
    NearRingElem b = rkgtest::random_near_ring(Z, F5, rng, 2, 2, 1);
    CellularAutomaton lhs = compose(ca_from_nearring(a), ca_from_nearring(b));
    CellularAutomaton rhs = ca_from_nearring(star(a, b));
    CHECK(rule_equal(lhs, rhs).as_polynomials);
  }
}

TEST_CASE("near-ring and matrix images agree in degree one") {
  rkgtest::Rng rng(79);
  auto Z = GroupCtx::free_abelian(1);
  auto F5 = FieldCtx::gf(5);
  for (int trial = 0; trial < 30; ++trial) {
    GroupRingElem a = rkgtest::random_group_ring(Z, F5, rng, 3, 2);
    CellularAutomaton via_phi = ca_from_nearring(embed_phi(a));
    CellularAutomaton via_lca = lca_from_matrix(GroupRingMatrix::scalar(a));
    CHECK(rule_equal(via_phi, via_lca).as_polynomials);
  }
}

TEST_CASE("restriction of the xor rule to level 2 gives a 16-row table") {
  CellularAutomaton r = restrict_ca(xor_ca(), 2);
  REQUIRE(r.has_table());
  CHECK(r.table().out.size() == 16);
  CHECK(r.alphabet().size() == 4);
  // closure: every output is one of the four field points (checked by the
  // constructor) and the rule is still linear: row(a, b) = a + b
  auto F4 = FieldCtx::gf(2, 2);
  for (uint64_t a = 0; a < 4; ++a)
    for (uint64_t b = 0; b < 4; ++b) {
      FieldElem expect = F4->element_at(a) + F4->element_at(b);
      CHECK(r.table().out[a + 4 * b] == static_cast<int32_t>(F4->index_of(expect)));
    }
}

TEST_CASE("frobenius rule restricted to the prime field is the identity table") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  MemorySet m(Z, {Z->identity()});
  PolyRule rule;
  rule.out.push_back(RulePoly::variable(F2, CellVar{Z->identity(), 0}, 2));
  CellularAutomaton frob(Z, Alphabet::affine(F2, 1), m, std::move(rule));
  CellularAutomaton r1 = restrict_ca(frob, 1);
  CHECK(r1.table().out == std::vector<int32_t>({0, 1}));
  // but as a polynomial it differs from the identity
  CHECK_FALSE(rule_equal(r1, CellularAutomaton::identity(Z, r1.alphabet())).as_polynomials);
}

TEST_CASE("restriction requires the coefficients to fit") {
  auto Z = GroupCtx::free_abelian(1);
  auto F4 = FieldCtx::gf(2, 2);
  MemorySet m(Z, {Z->identity()});
  PolyRule rule;
  RulePoly p = RulePoly::variable(F4, CellVar{Z->identity(), 0}).scaled(F4->generator());
  rule.out.push_back(std::move(p));
  CellularAutomaton ca(Z, Alphabet::affine(F4, 1), m, std::move(rule));
  CHECK_THROWS_AS(restrict_ca(ca, 3), CoefficientFieldTooLarge);
  CHECK_NOTHROW(restrict_ca(ca, 2));
  CHECK_NOTHROW(restrict_ca(ca, 4));
}

TEST_CASE("restrict commutes with composition") {
  rkgtest::Rng rng(83);
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  for (int trial = 0; trial < 15; ++trial) {
    NearRingElem na = rkgtest::random_near_ring(Z, F2, rng, 2, 2, 1);
    NearRingElem nb = rkgtest::random_near_ring(Z, F2, rng, 2, 2, 1);
    CellularAutomaton ta = ca_from_nearring(na);
    CellularAutomaton tb = ca_from_nearring(nb);
    for (unsigned r : {1u, 2u}) {
      CellularAutomaton lhs = restrict_ca(compose(ta, tb), r);
      CellularAutomaton rhs = compose(restrict_ca(ta, r), restrict_ca(tb, r));
      CHECK(rule_equal(lhs, rhs).as_functions == std::optional<bool>(true));
    }
  }
}

TEST_CASE("ladder coherence: the level-r table embeds into the level-2r table") {
  CellularAutomaton ca = restrict_ca(xor_ca(), 1);
  CellularAutomaton ca2 = restrict_ca(xor_ca(), 2);
  auto F2 = FieldCtx::gf(2);
  auto F4 = FieldCtx::gf(2, 2);
  for (uint64_t a = 0; a < 2; ++a)
    for (uint64_t b = 0; b < 2; ++b) {
      std::vector<int32_t> small = {static_cast<int32_t>(a), static_cast<int32_t>(b)};
      AffinePoint pa = {F2->element_at(a).in_field(F4)};
      AffinePoint pb = {F2->element_at(b).in_field(F4)};
      int32_t big = ca2.eval_cells(
          {static_cast<int32_t>(ca2.alphabet().index_of_point(pa)),
           static_cast<int32_t>(ca2.alphabet().index_of_point(pb))});
      AffinePoint lifted = {F2->element_at(
          static_cast<uint64_t>(ca.eval_cells(small))).in_field(F4)};
      CHECK(big == static_cast<int32_t>(ca2.alphabet().index_of_point(lifted)));
    }
}

TEST_CASE("polynomial versus function identity") {
  auto Z = GroupCtx::free_abelian(1);
  // x_0^2 vs x_0 over GF(2): distinct polynomials, equal functions
  auto F2 = FieldCtx::gf(2);
  Alphabet a2 = Alphabet::field_points(F2, 1);
  MemorySet m(Z, {Z->identity()});
  PolyRule sq2, id2;
  sq2.out.push_back(RulePoly::variable(F2, CellVar{Z->identity(), 0}, 2));
  id2.out.push_back(RulePoly::variable(F2, CellVar{Z->identity(), 0}));
  RuleEqualReport r2 = rule_equal(CellularAutomaton(Z, a2, m, std::move(sq2)),
                                  CellularAutomaton(Z, a2, m, std::move(id2)));
  CHECK_FALSE(r2.as_polynomials);
  CHECK(r2.as_functions == std::optional<bool>(true));

  // over GF(4) they differ as functions too
  auto F4 = FieldCtx::gf(2, 2);
  Alphabet a4 = Alphabet::field_points(F4, 1);
  PolyRule sq4, id4;
  sq4.out.push_back(RulePoly::variable(F4, CellVar{Z->identity(), 0}, 2));
  id4.out.push_back(RulePoly::variable(F4, CellVar{Z->identity(), 0}));
  RuleEqualReport r4 = rule_equal(CellularAutomaton(Z, a4, m, std::move(sq4)),
                                  CellularAutomaton(Z, a4, m, std::move(id4)));
  CHECK_FALSE(r4.as_polynomials);
  CHECK(r4.as_functions == std::optional<bool>(false));

  // projection vs identity: equal on both levels
  Alphabet aff = Alphabet::affine(F2, 1);
  CHECK(rule_equal(CellularAutomaton::identity(Z, aff),
                   CellularAutomaton::shift(Z, aff, 0))
            .as_polynomials);
}

TEST_CASE("table loading guards") {
  auto Z = GroupCtx::free_abelian(1);
  Alphabet a = Alphabet::symbols({"x", "y"});
  MemorySet m = interval_memory(Z, 0, 1);
  TableRule bad;
  bad.out = {0, 1, 1};  // wrong row count
  CHECK_THROWS(CellularAutomaton(Z, a, m, bad));
  TableRule bad2;
  bad2.out = {0, 1, 1, 7};  // out of range
  CHECK_THROWS(CellularAutomaton(Z, a, m, bad2));
}
