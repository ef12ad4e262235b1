#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rkg/sca.hpp"

namespace rkg {

// A bi-infinite, eventually periodic word: left_period repeated on
// (-inf, start), then center on [start, start + |center|), then right_period
// repeated above.  Cells are alphabet indices.
struct EventuallyPeriodicWord {
  std::vector<int32_t> left_period;
  std::vector<int32_t> center;
  std::vector<int32_t> right_period;
  int64_t start = 0;

  int32_t cell(int64_t pos) const;
};

struct InjectivityWitness {
  EventuallyPeriodicWord a;
  EventuallyPeriodicWord b;
};

struct DecisionReport {
  bool verdict = false;
  std::string method;
  // 1D witnesses
  std::optional<std::vector<int32_t>> orphan;  // word with no preimage
  std::optional<InjectivityWitness> collision;
  // finite-group witnesses (configurations indexed by element id order)
  std::optional<std::vector<int32_t>> orphan_config;
  std::optional<std::pair<std::vector<int32_t>, std::vector<int32_t>>> collision_configs;
};

struct DecisionBudgets {
  uint64_t config_budget = (1ull << 22);   // finite-group enumeration
  uint64_t table_budget = (1ull << 22);    // interval rule materialization
  uint64_t subset_budget = (1ull << 20);   // subset-construction states
  uint64_t edge_budget = (6ull << 23);     // pair-graph edges
};

// de Bruijn presentation of a 1D finite-alphabet automaton: the memory is
// translated to the interval [0, width), padded to width >= 2, and the rule
// is materialized over interval tuples.  Vertices are (width-1)-windows
// encoded little-endian with the oldest symbol in the lowest digit; reading
// symbol a at vertex v emits rule[v + a*q^(width-1)] and moves to
// v/q + a*q^(width-2).
struct DeBruijn {
  uint64_t q = 0;
  int width = 0;
  int64_t offset = 0;  // translation applied to the original memory
  std::vector<int32_t> rule;

  uint64_t vertices() const;
  uint64_t step(uint64_t v, uint32_t a) const;
  int32_t label(uint64_t v, uint32_t a) const;
};

DeBruijn build_debruijn(const CellularAutomaton& ca,
                        const DecisionBudgets& budgets = {});

// Exhaustive decisions over a finite group.
DecisionReport is_injective_finite(const CellularAutomaton& ca,
                                   const DecisionBudgets& budgets = {});
DecisionReport is_surjective_finite(const CellularAutomaton& ca,
                                    const DecisionBudgets& budgets = {});

// 1D decisions. Surjectivity: determinize the de Bruijn automaton from the
// full vertex set; surjective iff the empty subset is unreachable (the
// shortest orphan word is returned otherwise).  Injectivity: pair-graph
// criterion; the automaton is injective iff no off-diagonal pair vertex is
// both reachable from a cycle and co-reachable to one; a witness pair of
// distinct eventually periodic configurations with equal images is produced
// otherwise.
DecisionReport is_surjective_Z(const CellularAutomaton& ca,
                               const DecisionBudgets& budgets = {});
DecisionReport is_injective_Z(const CellularAutomaton& ca,
                              const DecisionBudgets& budgets = {});

// Dispatches on the group backend; throws Undecidable for Z^d, d >= 2.
DecisionReport is_injective(const CellularAutomaton& ca,
                            const DecisionBudgets& budgets = {});
DecisionReport is_surjective(const CellularAutomaton& ca,
                             const DecisionBudgets& budgets = {});

// Injectivity of the induced automaton on the cyclic quotient Z/m, decided
// without enumerating configurations: affine-linear rules by an exact rank
// computation, general rules by counting label-matched closed walk pairs of
// length m in the de Bruijn pair graph (single-cell memories pointwise).
struct QuotientProbe {
  int modulus = 0;
  bool injective = false;
  std::string method;
};
QuotientProbe is_injective_on_cyclic_quotient(const CellularAutomaton& ca, int modulus,
                                              const DecisionBudgets& budgets = {});

struct GottschalkReport {
  DecisionReport injectivity;
  DecisionReport surjectivity;
  bool violation = false;  // injective but not surjective; must never happen
};

GottschalkReport check_gottschalk(const CellularAutomaton& ca,
                                  const DecisionBudgets& budgets = {});

// Sweeps every rule table with the given alphabet size over the memory
// interval [0, width) of Z and checks for violations.
struct SweepReport {
  uint64_t rule_count = 0;
  uint64_t injective_count = 0;
  uint64_t surjective_count = 0;
  std::vector<uint64_t> violations;  // rule codes; must stay empty
};

SweepReport gottschalk_sweep(uint64_t alphabet_size, int width,
                             const DecisionBudgets& budgets = {});

// Builds the 1D automaton of a rule code: output for input tuple t is digit
// t of the code in base |A| (cells little-endian over the interval).
CellularAutomaton rule_code_automaton(uint64_t alphabet_size, int width, uint64_t code);

}  // namespace rkg
