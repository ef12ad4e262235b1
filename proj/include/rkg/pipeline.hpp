#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkg/sca.hpp"
#include "rkg/surjunctivity.hpp"

namespace rkg {

struct PipelineConfig {
  unsigned depth = 4;                      // max extension level probed
  std::vector<int> quotients = {2, 3, 4, 5, 6, 7, 8};  // Z/n probes (Z only)
  uint64_t table_budget = (1ull << 25);    // streamed identity checks
  uint64_t window_budget = (1ull << 22);   // window-map enumeration
  uint64_t term_budget = kDefaultTermBudget;
  DecisionBudgets decisions;
};

struct LevelRecord {
  unsigned level = 0;
  uint64_t alphabet_size = 0;
  std::optional<bool> section_ok;          // sigma_r . tau_r = Id (tables)
  bool injective = false;
  std::string injective_method;
  std::vector<QuotientProbe> quotients;
  bool window_surjective = false;
  std::string window_method;
  std::optional<bool> reverse_identity_ok; // tau_r . sigma_r = Id (tables)
  std::optional<bool> rule_bijective;      // single-cell rules only
};

struct PipelineReport {
  std::string group;
  std::string alphabet;
  bool has_section_partner = false;
  unsigned base_level = 1;
  unsigned depth = 0;
  bool section_ok = false;                 // symbolic, with a partner
  std::vector<LevelRecord> levels;
  bool left_identity_ok = false;           // sigma . tau = Id symbolically
  std::optional<bool> right_identity_ok;   // tau . sigma = Id symbolically
  bool two_sided = false;                  // conclusion
  std::vector<std::string> notes;

  bool all_levels_pass() const;
};

// Least level that holds every rule coefficient: the lcm of the subfield
// degrees of all coefficients of all output polynomials.  Restrictions exist
// exactly at the multiples of this level.
unsigned coefficient_model(const CellularAutomaton& ca);

// True when the composed rule of sigma after tau, read on the window m
// (which must be symmetrized and contain both memories), is the projection
// to the identity cell.
bool verify_section(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                    const MemorySet& m, uint64_t term_budget = kDefaultTermBudget);

// The symmetrized union of the two memory sets.
MemorySet common_memory(const CellularAutomaton& sigma, const CellularAutomaton& tau);
MemorySet common_memory(const CellularAutomaton& tau);

// Runs the finite-level ladder: for every level r with base | r <= depth,
// restrict tau (and sigma when present), check the section identity on
// tables, injectivity (with quotient probes over Z), and surjectivity of the
// window map onto A^M.  With no partner the per-level record tracks
// injectivity, window surjectivity and (for single-cell rules) bijectivity.
PipelineReport run_restriction_ladder(const std::optional<CellularAutomaton>& sigma,
                                      const CellularAutomaton& tau,
                                      const PipelineConfig& cfg = {});

// The two-sided conclusion: requires a fully passing report, then certifies
// tau . sigma = Id symbolically and cross-checks it on every ladder level.
bool conclude_two_sided(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                        PipelineReport& report, const PipelineConfig& cfg = {});

}  // namespace rkg
