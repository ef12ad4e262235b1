#include "rkg/pipeline.hpp"

#include <numeric>

namespace rkg {

namespace {

bool is_Z(const GroupCtxPtr& g) {
  return g->kind() == GroupCtx::Kind::FreeAbelian && g->rank() == 1;
}

}  // namespace

bool PipelineReport::all_levels_pass() const {
  if (levels.empty()) return false;
  for (const LevelRecord& l : levels) {
    if (has_section_partner && (!l.section_ok || !*l.section_ok)) return false;
    if (!l.injective || !l.window_surjective) return false;
    for (const QuotientProbe& q : l.quotients)
      if (!q.injective) return false;
  }
  return true;
}

unsigned coefficient_model(const CellularAutomaton& ca) {
  if (!ca.has_poly()) throw Error("coefficient model needs a polynomial rule");
  const FieldCtxPtr& f = ca.alphabet().field();
  if (!f->is_finite())
    throw WrongCharacteristic("coefficient model over Q has no finite levels");
  unsigned base = 1;
  for (const RulePoly& p : ca.poly().out)
    for (const auto& [mono, c] : p.terms())
      base = static_cast<unsigned>(std::lcm(base, c.subfield_degree()));
  return base;
}

MemorySet common_memory(const CellularAutomaton& sigma, const CellularAutomaton& tau) {
  return symmetrize(union_sets(sigma.memory(), tau.memory()));
}

MemorySet common_memory(const CellularAutomaton& tau) { return symmetrize(tau.memory()); }

bool verify_section(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                    const MemorySet& m, uint64_t term_budget) {
  for (const auto& g : sigma.memory())
    if (!m.contains(g)) throw Error("window must contain the left memory set");
  for (const auto& g : tau.memory())
    if (!m.contains(g)) throw Error("window must contain the right memory set");
  if (sigma.has_poly() && tau.has_poly()) {
    CellularAutomaton comp = compose(sigma, tau, term_budget);
    CellularAutomaton id = CellularAutomaton::identity(comp.group(), comp.alphabet());
    return rule_equal(comp, id).as_polynomials;
  }
  return composition_is_identity(sigma, tau);
}

PipelineReport run_restriction_ladder(const std::optional<CellularAutomaton>& sigma,
                                      const CellularAutomaton& tau,
                                      const PipelineConfig& cfg) {
  PipelineReport rep;
  rep.group = tau.group()->describe();
  rep.alphabet = tau.alphabet().describe();
  rep.has_section_partner = sigma.has_value();
  rep.depth = cfg.depth;

  const GroupCtxPtr& G = tau.group();
  if (!is_Z(G) && !G->is_finite())
    throw Undecidable("the restriction ladder runs over Z or a finite group");
  if (tau.alphabet().kind() != Alphabet::Kind::Affine)
    throw AlphabetMismatch("the restriction ladder starts from an affine automaton");

  MemorySet m = sigma ? common_memory(*sigma, tau) : common_memory(tau);

  unsigned base = coefficient_model(tau);
  if (sigma) {
    base = static_cast<unsigned>(std::lcm(base, coefficient_model(*sigma)));
    rep.section_ok = verify_section(*sigma, tau, m, cfg.term_budget);
    if (!rep.section_ok)
      throw SectionFailed("the pair does not compose to the identity; ladder not run");
    rep.left_identity_ok = rep.section_ok;
  }
  rep.base_level = base;

  for (unsigned r = base; r <= cfg.depth; r += base) {
    LevelRecord rec;
    rec.level = r;
    CellularAutomaton tau_r = restrict_ca(tau, r, cfg.window_budget);
    rec.alphabet_size = tau_r.alphabet().size();

    std::optional<CellularAutomaton> sigma_r;
    if (sigma) {
      sigma_r = restrict_ca(*sigma, r, cfg.window_budget);
      rec.section_ok = composition_is_identity(*sigma_r, tau_r, cfg.table_budget);
      rec.reverse_identity_ok = composition_is_identity(tau_r, *sigma_r, cfg.table_budget);
    }

    DecisionReport inj = is_injective(tau_r, cfg.decisions);
    rec.injective = inj.verdict;
    rec.injective_method = inj.method;

    if (is_Z(G)) {
      for (int n : cfg.quotients)
        rec.quotients.push_back(
            is_injective_on_cyclic_quotient(tau_r, n, cfg.decisions));
    }

    SurjectivityCheck win = window_surjective(tau_r, m, cfg.window_budget);
    rec.window_surjective = win.surjective;
    rec.window_method = win.method;

    if (tau_r.memory().size() == 1) rec.rule_bijective = rule_table_bijective(tau_r);

    rep.levels.push_back(std::move(rec));
  }
  return rep;
}

bool conclude_two_sided(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                        PipelineReport& report, const PipelineConfig& cfg) {
  if (!report.all_levels_pass()) {
    report.notes.push_back("conclusion refused: a ladder level failed");
    report.two_sided = false;
    return false;
  }
  // symbolic verdict for tau . sigma
  CellularAutomaton comp = compose(tau, sigma, cfg.term_budget);
  CellularAutomaton id = CellularAutomaton::identity(comp.group(), comp.alphabet());
  bool symbolic = rule_equal(comp, id).as_polynomials;
  report.right_identity_ok = symbolic;

  // cross-check on every ladder level (already recorded during the run)
  bool tables = !report.levels.empty();
  for (const LevelRecord& l : report.levels)
    if (!l.reverse_identity_ok || !*l.reverse_identity_ok) {
      tables = false;
      break;
    }
  if (symbolic != tables)
    report.notes.push_back("symbolic and table verdicts disagree");
  report.two_sided = symbolic && tables;
  return report.two_sided;
}

}  // namespace rkg
