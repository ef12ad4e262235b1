#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rkg/pipeline.hpp"
#include "support.hpp"

using namespace rkg;

namespace {

CellularAutomaton affine_plus(const GroupCtxPtr& Z, const FieldCtxPtr& F, int64_t k,
                              int c) {
  // the automaton of X_k + c
  NearRingElem a = NearRingElem::variable(Z, F, Z->from_vector({k})) +
                   NearRingElem::constant(Z, F->from_int(c));
  return ca_from_nearring(a);
}

}  // namespace

TEST_CASE("coefficient model levels") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  CHECK(coefficient_model(affine_plus(Z, F2, 1, 1)) == 1);

  // one coefficient from GF(4): base level 2
  auto F4 = FieldCtx::gf(2, 2);
  PolyRule rule;
  rule.out.push_back(
      RulePoly::variable(F4, CellVar{Z->from_vector({0}), 0}).scaled(F4->generator()) +
      RulePoly::variable(F4, CellVar{Z->from_vector({1}), 0}));
  CellularAutomaton ca(Z, Alphabet::affine(F4, 1), interval_memory(Z, 0, 1), rule);
  CHECK(coefficient_model(ca) == 2);

  // GF(4) and GF(8) coefficients force level lcm(2,3) = 6
  auto F8 = FieldCtx::gf(2, 3);
  auto F24 = FieldCtx::gf(2, 6);
  PolyRule rule2;
  rule2.out.push_back(
      RulePoly::variable(F24, CellVar{Z->from_vector({0}), 0})
          .scaled(F4->generator().in_field(F24)) +
      RulePoly::variable(F24, CellVar{Z->from_vector({1}), 0})
          .scaled(F8->generator().in_field(F24)));
  CellularAutomaton ca2(Z, Alphabet::affine(F24, 1), interval_memory(Z, 0, 1), rule2);
  CHECK(coefficient_model(ca2) == 6);

  // rational coefficients have no finite level
  auto Q = FieldCtx::rationals();
  CHECK_THROWS_AS(coefficient_model(affine_plus(Z, Q, 1, 1)), WrongCharacteristic);
}

TEST_CASE("verify_section") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);

  auto id = CellularAutomaton::identity(Z, a);
  CHECK(verify_section(id, id, common_memory(id, id)));

  auto sh = CellularAutomaton::shift(Z, a, 1);
  auto unsh = CellularAutomaton::shift(Z, a, -1);
  CHECK(verify_section(unsh, sh, common_memory(unsh, sh)));

  // affine pair over GF(2)
  CellularAutomaton tau = affine_plus(Z, F2, 1, 1);
  CellularAutomaton sigma = affine_plus(Z, F2, -1, -1);
  CHECK(verify_section(sigma, tau, common_memory(sigma, tau)));

  // a non-section: xor composed with itself
  PolyRule xr;
  xr.out.push_back(RulePoly::variable(F2, CellVar{Z->from_vector({0}), 0}) +
                   RulePoly::variable(F2, CellVar{Z->from_vector({1}), 0}));
  CellularAutomaton x(Z, a, interval_memory(Z, 0, 1), xr);
  CHECK_FALSE(verify_section(x, x, common_memory(x, x)));
}

TEST_CASE("ladder on the shift pair") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);
  auto sh = CellularAutomaton::shift(Z, a, 1);
  auto unsh = CellularAutomaton::shift(Z, a, -1);
  PipelineConfig cfg;
  cfg.depth = 3;
  PipelineReport rep = run_restriction_ladder(unsh, sh, cfg);
  CHECK(rep.section_ok);
  CHECK(rep.base_level == 1);
  REQUIRE(rep.levels.size() == 3);
  for (const auto& l : rep.levels) {
    CHECK(l.section_ok == std::optional<bool>(true));
    CHECK(l.injective);
    CHECK(l.window_surjective);
    for (const auto& q : l.quotients) CHECK(q.injective);
  }
  CHECK(rep.all_levels_pass());
  CHECK(conclude_two_sided(unsh, sh, rep, cfg));
  CHECK(rep.right_identity_ok == std::optional<bool>(true));
}

TEST_CASE("ladder on the affine pair matches the star verdict") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  CellularAutomaton tau = affine_plus(Z, F2, 1, 1);
  CellularAutomaton sigma = affine_plus(Z, F2, -1, -1);
  PipelineConfig cfg;
  cfg.depth = 4;
  PipelineReport rep = run_restriction_ladder(sigma, tau, cfg);
  CHECK(rep.all_levels_pass());
  CHECK(conclude_two_sided(sigma, tau, rep, cfg));

  NearRingElem a = NearRingElem::variable(Z, F2, Z->from_vector({1})) +
                   NearRingElem::constant(Z, F2->one());
  NearRingElem b = NearRingElem::variable(Z, F2, Z->from_vector({-1})) -
                   NearRingElem::constant(Z, F2->one());
  StarUnitReport direct = check_star_unit_pair(a, b);
  CHECK(direct.left_inverse == rep.section_ok);
  CHECK(direct.right_inverse == rep.two_sided);
}

TEST_CASE("ladder on the elementary matrix pair") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  GroupRingMatrix e(Z, F2, 2), f(Z, F2, 2);
  e.at(0, 0) = e.at(1, 1) = GroupRingElem::one(Z, F2);
  f.at(0, 0) = f.at(1, 1) = GroupRingElem::one(Z, F2);
  e.at(0, 1) = GroupRingElem::term(Z->from_vector({1}), F2->one());
  f.at(0, 1) = GroupRingElem::term(Z->from_vector({1}), F2->one());  // -t = t
  CellularAutomaton tau = lca_from_matrix(e);
  CellularAutomaton sigma = lca_from_matrix(f);
  PipelineConfig cfg;
  cfg.depth = 2;  // the acceptance suite drives the full depth
  PipelineReport rep = run_restriction_ladder(sigma, tau, cfg);
  CHECK(rep.all_levels_pass());
  for (const auto& l : rep.levels) {
    CHECK(l.window_method == "affine_rank");
    for (const auto& q : l.quotients) CHECK(q.method == "linear_rank");
  }
  CHECK(conclude_two_sided(sigma, tau, rep, cfg));
  auto df = check_direct_finiteness(e, f);
  CHECK(df.ab_is_one == rep.section_ok);
  CHECK(df.ba_is_one == rep.two_sided);
}

TEST_CASE("frobenius ladder without a partner") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  PolyRule rule;
  rule.out.push_back(RulePoly::variable(F2, CellVar{Z->identity(), 0}, 2));
  CellularAutomaton frob(Z, Alphabet::affine(F2, 1), MemorySet(Z, {Z->identity()}),
                         rule);
  PipelineConfig cfg;
  cfg.depth = 4;
  PipelineReport rep = run_restriction_ladder(std::nullopt, frob, cfg);
  CHECK_FALSE(rep.has_section_partner);
  REQUIRE(rep.levels.size() == 4);
  for (const auto& l : rep.levels) {
    CHECK(l.injective);
    CHECK(l.window_surjective);
    CHECK(l.rule_bijective == std::optional<bool>(true));
    for (const auto& q : l.quotients) CHECK(q.injective);
  }
  CHECK(rep.all_levels_pass());
}

TEST_CASE("the ladder refuses non-sections") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  PolyRule xr;
  xr.out.push_back(RulePoly::variable(F2, CellVar{Z->from_vector({0}), 0}) +
                   RulePoly::variable(F2, CellVar{Z->from_vector({1}), 0}));
  CellularAutomaton x(Z, Alphabet::affine(F2, 1), interval_memory(Z, 0, 1), xr);
  CHECK_THROWS_AS(run_restriction_ladder(x, x, PipelineConfig{}), SectionFailed);
}

TEST_CASE("restriction closure holds along the full ladder") {
  auto Z = GroupCtx::free_abelian(1);
  auto F4 = FieldCtx::gf(2, 2);
  PolyRule rule;
  rule.out.push_back(
      RulePoly::variable(F4, CellVar{Z->identity(), 0}, 2).scaled(F4->generator()) +
      RulePoly::variable(F4, CellVar{Z->identity(), 0}));
  CellularAutomaton ca(Z, Alphabet::affine(F4, 1), MemorySet(Z, {Z->identity()}), rule);
  unsigned base = coefficient_model(ca);
  CHECK(base == 2);
  for (unsigned r = base; r <= 12; r += base) CHECK_NOTHROW(restrict_ca(ca, r));
}

TEST_CASE("window surjectivity is monotone under window shrinking") {
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  CellularAutomaton tau = restrict_ca(affine_plus(Z, F2, 1, 1), 2);
  MemorySet big = symmetrize(interval_memory(Z, -1, 2));
  MemorySet small = symmetrize(interval_memory(Z, 0, 1));
  SurjectivityCheck sb = window_surjective(tau, big);
  SurjectivityCheck ss = window_surjective(tau, small);
  CHECK(sb.surjective);
  CHECK(ss.surjective);
}

TEST_CASE("finite-group ladder") {
  // over C3 with alphabet GF(2): the shift by the generator and its inverse
  auto C3 = GroupCtx::cyclic(3);
  auto F2 = FieldCtx::gf(2);
  Alphabet a = Alphabet::affine(F2, 1);
  PolyRule fwd, bwd;
  fwd.out.push_back(RulePoly::variable(F2, CellVar{C3->element(1), 0}));
  bwd.out.push_back(RulePoly::variable(F2, CellVar{C3->element(2), 0}));
  CellularAutomaton tau(C3, a, MemorySet(C3, {C3->element(1)}), fwd);
  CellularAutomaton sigma(C3, a, MemorySet(C3, {C3->element(2)}), bwd);
  PipelineConfig cfg;
  cfg.depth = 2;
  PipelineReport rep = run_restriction_ladder(sigma, tau, cfg);
  CHECK(rep.all_levels_pass());
  CHECK(conclude_two_sided(sigma, tau, rep, cfg));
  for (const auto& l : rep.levels) CHECK(l.injective_method == "exhaustive");
}
