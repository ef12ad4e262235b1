#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "rkg/surjunctivity.hpp"
#include "support.hpp"

using namespace rkg;

namespace {

// ---------------------------------------------------------------------------
// Brute-force oracles, independent of the de Bruijn machinery.

// Does the output word w (over the normalized interval rule) have a preimage
// word of length |w| + width - 1?  Direct enumeration of all inputs.
bool has_preimage_brute(const DeBruijn& db, const std::vector<int32_t>& w) {
  size_t in_len = w.size() + static_cast<size_t>(db.width) - 1;
  std::vector<int32_t> in(in_len, 0);
  for (;;) {
    bool match = true;
    for (size_t i = 0; i < w.size() && match; ++i) {
      uint64_t idx = 0;
      for (size_t k = static_cast<size_t>(db.width); k-- > 0;)
        idx = idx * db.q + static_cast<uint64_t>(in[i + k]);
      if (db.rule[idx] != w[i]) match = false;
    }
    if (match) return true;
    size_t k = 0;
    while (k < in_len && in[k] == static_cast<int32_t>(db.q - 1)) in[k++] = 0;
    if (k == in_len) return false;
    ++in[k];
  }
}

// Smallest orphan length <= max_len, or 0 when every word has a preimage.
// Enumerates every word of each length and marks realized outputs.
size_t shortest_orphan_brute(const DeBruijn& db, size_t max_len) {
  for (size_t len = 1; len <= max_len; ++len) {
    size_t in_len = len + static_cast<size_t>(db.width) - 1;
    uint64_t outputs = 1;
    for (size_t i = 0; i < len; ++i) outputs *= db.q;
    std::vector<bool> seen(outputs, false);
    std::vector<int32_t> in(in_len, 0);
    for (;;) {
      uint64_t code = 0;
      for (size_t i = len; i-- > 0;) {
        uint64_t idx = 0;
        for (size_t k = static_cast<size_t>(db.width); k-- > 0;)
          idx = idx * db.q + static_cast<uint64_t>(in[i + k]);
        code = code * db.q + static_cast<uint64_t>(db.rule[idx]);
      }
      seen[code] = true;
      size_t k = 0;
      while (k < in_len && in[k] == static_cast<int32_t>(db.q - 1)) in[k++] = 0;
      if (k == in_len) break;
      ++in[k];
    }
    for (uint64_t c = 0; c < outputs; ++c)
      if (!seen[c]) return len;
  }
  return 0;
}

// Collisions among n-periodic configurations of the normalized rule.
bool injective_on_period_brute(const DeBruijn& db, int n) {
  uint64_t configs = 1;
  for (int i = 0; i < n; ++i) configs *= db.q;
  std::map<std::vector<int32_t>, uint64_t> images;
  std::vector<int32_t> c(n);
  for (uint64_t code = 0; code < configs; ++code) {
    uint64_t v = code;
    for (int i = 0; i < n; ++i) {
      c[i] = static_cast<int32_t>(v % db.q);
      v /= db.q;
    }
    std::vector<int32_t> img(n);
    for (int i = 0; i < n; ++i) {
      uint64_t idx = 0;
      for (int k = db.width; k-- > 0;)
        idx = idx * db.q + static_cast<uint64_t>(c[(i + k) % n]);
      img[i] = db.rule[idx];
    }
    auto [it, fresh] = images.emplace(img, code);
    if (!fresh) return false;
  }
  return true;
}

CellularAutomaton binary_rule(uint64_t code, int width) {
  return rule_code_automaton(2, width, code);
}

}  // namespace

TEST_CASE("identity and shift are injective and surjective over Z") {
  auto Z = GroupCtx::free_abelian(1);
  Alphabet a = Alphabet::symbols({"0", "1"});
  auto id = CellularAutomaton::identity(Z, a);
  CHECK(is_injective_Z(id).verdict);
  CHECK(is_surjective_Z(id).verdict);
  auto sh = CellularAutomaton::shift(Z, a, 1);
  CHECK(is_injective_Z(sh).verdict);
  CHECK(is_surjective_Z(sh).verdict);
}

TEST_CASE("xor rule over F2: surjective, not injective") {
  // rule x0 + x1 as a table: outputs 0,1,1,0 for inputs 00,10,01,11
  CellularAutomaton x = binary_rule(0b0110, 2);
  DecisionReport surj = is_surjective_Z(x);
  CHECK(surj.verdict);
  DecisionReport inj = is_injective_Z(x);
  CHECK_FALSE(inj.verdict);
  REQUIRE(inj.collision.has_value());
  // the witness pair must differ somewhere and collide everywhere
  const auto& w = *inj.collision;
  DeBruijn db = build_debruijn(x);
  bool differ = false;
  for (int64_t pos = -24; pos <= 24; ++pos)
    if (w.a.cell(pos) != w.b.cell(pos)) differ = true;
  CHECK(differ);
  for (int64_t pos = -20; pos <= 20; ++pos) {
    uint64_t ia = 0, ib = 0;
    for (int k = db.width; k-- > 0;) {
      ia = ia * db.q + static_cast<uint64_t>(w.a.cell(pos + k));
      ib = ib * db.q + static_cast<uint64_t>(w.b.cell(pos + k));
    }
    CHECK(db.rule[ia] == db.rule[ib]);
  }
}

TEST_CASE("product rule x0*x1 over F2 is not surjective, with a real orphan") {
  CellularAutomaton amp = binary_rule(0b1000, 2);  // outputs 0,0,0,1
  DecisionReport surj = is_surjective_Z(amp);
  CHECK_FALSE(surj.verdict);
  REQUIRE(surj.orphan.has_value());
  DeBruijn db = build_debruijn(amp);
  CHECK_FALSE(has_preimage_brute(db, *surj.orphan));
  // and it is a shortest one
  CHECK(shortest_orphan_brute(db, 8) == surj.orphan->size());
}

TEST_CASE("affine rule x0 + 1 is injective") {
  CellularAutomaton neg = binary_rule(0b01, 1);  // 0 -> 1, 1 -> 0
  CHECK(is_injective_Z(neg).verdict);
  CHECK(is_surjective_Z(neg).verdict);
}

TEST_CASE("finite group decisions") {
  auto C2 = GroupCtx::cyclic(2);
  Alphabet a = Alphabet::symbols({"0", "1"});
  auto id = CellularAutomaton::identity(C2, a);
  CHECK(is_injective_finite(id).verdict);
  CHECK(is_surjective_finite(id).verdict);

  // constant rule: not surjective, orphan is the other constant
  TableRule ct;
  ct.out = {0, 0};
  CellularAutomaton cca(C2, a, MemorySet(C2, {C2->identity()}), ct);
  DecisionReport r = is_surjective_finite(cca);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.orphan_config.has_value());
  CHECK(*r.orphan_config != std::vector<int32_t>({0, 0}));

  // xor over C2: c(g) + c(ga); image = {00, 11}: neither injective nor onto
  TableRule xt;
  xt.out = {0, 1, 1, 0};
  CellularAutomaton xca(C2, a, MemorySet(C2, {C2->element(0), C2->element(1)}), xt);
  DecisionReport ri = is_injective_finite(xca);
  DecisionReport rs = is_surjective_finite(xca);
  CHECK_FALSE(ri.verdict);
  CHECK_FALSE(rs.verdict);
  REQUIRE(ri.collision_configs.has_value());
  CHECK(ri.collision_configs->first != ri.collision_configs->second);
}

TEST_CASE("gottschalk consistency on small sweeps with oracles") {
  // all 16 two-neighbor binary rules, with full oracle agreement
  for (uint64_t code = 0; code < 16; ++code) {
    CellularAutomaton ca = binary_rule(code, 2);
    DeBruijn db = build_debruijn(ca);
    DecisionReport inj = is_injective_Z(ca);
    DecisionReport surj = is_surjective_Z(ca);
    CHECK_FALSE((inj.verdict && !surj.verdict));
    if (surj.verdict) {
      CHECK(shortest_orphan_brute(db, 8) == 0);
    } else {
      REQUIRE(surj.orphan.has_value());
      CHECK_FALSE(has_preimage_brute(db, *surj.orphan));
    }
    if (inj.verdict)
      for (int n = 1; n <= 10; ++n) CHECK(injective_on_period_brute(db, n));
  }
}

TEST_CASE("elementary rules: spot checks against the oracles") {
  // a deterministic sample across the full elementary space (the complete
  // 256-rule sweep is exercised by the acceptance suite)
  for (uint64_t code = 0; code < 256; code += 7) {
    CellularAutomaton ca = binary_rule(code, 3);
    DeBruijn db = build_debruijn(ca);
    DecisionReport inj = is_injective_Z(ca);
    DecisionReport surj = is_surjective_Z(ca);
    CHECK_FALSE((inj.verdict && !surj.verdict));
    if (surj.verdict) {
      CHECK(shortest_orphan_brute(db, 8) == 0);
    } else {
      REQUIRE(surj.orphan.has_value());
      CHECK_FALSE(has_preimage_brute(db, *surj.orphan));
    }
    if (inj.verdict)
      for (int n = 1; n <= 8; ++n) CHECK(injective_on_period_brute(db, n));
  }
}

TEST_CASE("balance of surjective rules") {
  // every surjective rule with memory width m: each output word of length l
  // has exactly |A|^(m-1) preimages of length l + m - 1
  for (uint64_t code : {0b0110ull, 0b1010ull, 0b0101ull, 0b1001ull}) {
    CellularAutomaton ca = binary_rule(code, 2);
    if (!is_surjective_Z(ca).verdict) continue;
    DeBruijn db = build_debruijn(ca);
    for (size_t len = 1; len <= 5; ++len) {
      std::map<std::vector<int32_t>, uint64_t> counts;
      size_t in_len = len + static_cast<size_t>(db.width) - 1;
      std::vector<int32_t> in(in_len, 0);
      for (;;) {
        std::vector<int32_t> out(len);
        for (size_t i = 0; i < len; ++i) {
          uint64_t idx = 0;
          for (size_t k = static_cast<size_t>(db.width); k-- > 0;)
            idx = idx * db.q + static_cast<uint64_t>(in[i + k]);
          out[i] = db.rule[idx];
        }
        ++counts[out];
        size_t k = 0;
        while (k < in_len && in[k] == static_cast<int32_t>(db.q - 1)) in[k++] = 0;
        if (k == in_len) break;
        ++in[k];
      }
      uint64_t expect = 1;
      for (int i = 0; i + 1 < db.width; ++i) expect *= db.q;
      for (const auto& [w, c] : counts) CHECK(c == expect);
    }
  }
}

TEST_CASE("quotient probes agree with exhaustive checks") {
  rkgtest::Rng rng(97);
  for (int trial = 0; trial < 40; ++trial) {
    uint64_t code = rng() % 256;
    CellularAutomaton ca = binary_rule(code, 3);
    DeBruijn db = build_debruijn(ca);
    for (int n : {2, 3, 4, 5}) {
      QuotientProbe p = is_injective_on_cyclic_quotient(ca, n);
      CHECK(p.injective == injective_on_period_brute(db, n));
    }
  }
  // linear path: the xor automaton restricted to levels 1 and 2
  auto Z = GroupCtx::free_abelian(1);
  auto F2 = FieldCtx::gf(2);
  PolyRule xr;
  xr.out.push_back(RulePoly::variable(F2, CellVar{Z->from_vector({0}), 0}) +
                   RulePoly::variable(F2, CellVar{Z->from_vector({1}), 0}));
  CellularAutomaton x(Z, Alphabet::affine(F2, 1), interval_memory(Z, 0, 1), xr);
  for (unsigned level : {1u, 2u}) {
    CellularAutomaton ca = restrict_ca(x, level);
    DeBruijn db = build_debruijn(ca);
    for (int n : {2, 3, 4}) {
      QuotientProbe p = is_injective_on_cyclic_quotient(ca, n);
      CHECK(p.method == "linear_rank");
      CHECK(p.injective == injective_on_period_brute(db, n));
    }
  }
}

TEST_CASE("higher-dimensional abelian groups are rejected") {
  auto Z2 = GroupCtx::free_abelian(2);
  Alphabet a = Alphabet::symbols({"0", "1"});
  MemorySet m(Z2, {Z2->identity()});
  TableRule t;
  t.out = {0, 1};
  CellularAutomaton ca(Z2, a, m, t);
  CHECK_THROWS_AS(is_injective(ca), Undecidable);
  CHECK_THROWS_AS(is_surjective(ca), Undecidable);
}

TEST_CASE("memory normalization does not change the verdicts") {
  // composing with a shift translates the memory; decisions are invariant
  for (uint64_t code : {0b0110ull, 0b1000ull, 0b0011ull}) {
    CellularAutomaton base = binary_rule(code, 2);
    auto Z = base.group();
    CellularAutomaton shifted = compose(
        CellularAutomaton::shift(Z, base.alphabet(), 3), base);
    CHECK(is_injective_Z(base).verdict == is_injective_Z(shifted).verdict);
    CHECK(is_surjective_Z(base).verdict == is_surjective_Z(shifted).verdict);
  }
}

TEST_CASE("small sweep has no violations") {
  SweepReport rep = gottschalk_sweep(2, 2);
  CHECK(rep.rule_count == 16);
  CHECK(rep.violations.empty());
  // the injective two-neighbor rules are exactly the four that depend on one
  // coordinate bijectively
  CHECK(rep.injective_count == 4);
}
