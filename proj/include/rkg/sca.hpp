#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rkg/fields.hpp"
#include "rkg/group_ring.hpp"
#include "rkg/groups.hpp"
#include "rkg/linalg.hpp"
#include "rkg/near_ring.hpp"
#include "rkg/poly.hpp"

namespace rkg {

// Variable of a local rule polynomial: the coordinate `coord` of the cell at
// memory position `pos`.
struct CellVar {
  GroupElement pos;
  int coord = 0;
};

struct CellVarCmp {
  int operator()(const CellVar& a, const CellVar& b) const {
    int c = a.pos.cmp(b.pos);
    if (c != 0) return c;
    return a.coord < b.coord ? -1 : a.coord > b.coord ? 1 : 0;
  }
};

using RulePoly = PolynomialT<CellVar, CellVarCmp>;
using AffinePoint = std::vector<FieldElem>;

// Alphabet of a cellular automaton:
//  - Symbols: a plain finite label set (table rules only),
//  - FieldPoints: the finite set (F_{p^r})^dim, supporting both polynomial
//    and table rules,
//  - Affine: the affine space of dimension dim over the algebraic closure of
//    the coefficient field, represented only symbolically (polynomial rules;
//    finite levels are reached through restrict_ca).  Over Q the alphabet is
//    symbolic-only.
class Alphabet {
 public:
  enum class Kind { Symbols, FieldPoints, Affine };

  static Alphabet symbols(std::vector<std::string> labels);
  static Alphabet field_points(FieldCtxPtr finite_field, int dim = 1);
  static Alphabet affine(FieldCtxPtr coeff_field, int dim = 1);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ != Kind::Affine; }
  uint64_t size() const;  // finite kinds only
  int dim() const { return dim_; }
  const FieldCtxPtr& field() const { return field_; }

  std::string label(uint64_t idx) const;
  AffinePoint point_at(uint64_t idx) const;       // FieldPoints
  uint64_t index_of_point(const AffinePoint& p) const;

  bool operator==(const Alphabet& o) const;
  bool operator!=(const Alphabet& o) const { return !(*this == o); }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Symbols;
  std::vector<std::string> labels_;
  FieldCtxPtr field_;
  int dim_ = 1;
};

// Explicit local rule: out[i] is the output for the input tuple whose cells,
// read in memory order, are the base-|A| digits of i (little-endian).
struct TableRule {
  std::vector<int32_t> out;
};

// Polynomial local rule: one output polynomial per alphabet coordinate, in
// the variables x_{m,c} for m in the memory set.  Exponents are never
// reduced by x^q = x, so polynomial identity is finer than function
// identity over finite levels.
struct PolyRule {
  std::vector<RulePoly> out;
};

class CellularAutomaton {
 public:
  CellularAutomaton(GroupCtxPtr group, Alphabet alphabet, MemorySet memory,
                    TableRule table);
  CellularAutomaton(GroupCtxPtr group, Alphabet alphabet, MemorySet memory,
                    PolyRule poly);

  const GroupCtxPtr& group() const { return group_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const MemorySet& memory() const { return memory_; }

  bool has_table() const { return table_.has_value(); }
  bool has_poly() const { return poly_.has_value(); }
  const TableRule& table() const { return *table_; }
  const PolyRule& poly() const { return *poly_; }
  void attach_table(TableRule t);

  // local rule on index-encoded cells (finite alphabets)
  int32_t eval_cells(const std::vector<int32_t>& cells) const;
  // local rule on affine points (polynomial rules)
  AffinePoint eval_points(const std::vector<AffinePoint>& cells) const;

  static CellularAutomaton identity(const GroupCtxPtr& g, const Alphabet& a);
  // over Z: memory {k}, projection rule (the inverse of the shift by -k)
  static CellularAutomaton shift(const GroupCtxPtr& zctx, const Alphabet& a, int64_t k);

  std::string describe() const;

 private:
  GroupCtxPtr group_;
  Alphabet alphabet_;
  MemorySet memory_;
  std::optional<TableRule> table_;
  std::optional<PolyRule> poly_;
};

// A finite window E together with an assignment E -> alphabet.
struct Pattern {
  MemorySet window;
  std::vector<int32_t> cells;        // finite alphabets
  std::vector<AffinePoint> points;   // affine alphabets
};

// Evaluates the automaton on a finite pattern: the result lives on
// E (-) M = {g : gM included in E} and is empty when that set is.
Pattern apply_pattern(const CellularAutomaton& ca, const Pattern& p);

// Composition, sigma after tau: memory M_sigma * M_tau; polynomial rules by
// substitution, table rules by enumeration (budgeted).
CellularAutomaton compose(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                          uint64_t budget = kDefaultTermBudget);

// Materializes a table for a FieldPoints automaton with a polynomial rule.
CellularAutomaton tabulate(const CellularAutomaton& ca,
                           uint64_t budget = (1ull << 22));

// The induced finite-window map A^(M^2) -> A^M of a finite-alphabet
// automaton, materialized row by row (input index -> encoded output tuple).
struct WindowMapTable {
  MemorySet window;       // M
  MemorySet square;       // M^2
  uint64_t in_count = 0;  // |A|^(M^2)
  uint64_t out_count = 0; // |A|^M
  std::vector<uint64_t> rows;
};

WindowMapTable window_map(const CellularAutomaton& ca, const MemorySet& m,
                          uint64_t budget = (1ull << 22));

// Polynomial form of the window map: output polynomial for (g, coord) in the
// variables of M^2.
std::vector<RulePoly> window_map_poly(const CellularAutomaton& ca, const MemorySet& m);

struct SurjectivityCheck {
  bool surjective = false;
  std::string method;  // "affine_rank" or "enumeration"
};

// Decides whether the window map A^(M^2) -> A^M is onto.  Affine-linear
// polynomial rules are decided by an exact rank computation, anything else
// by enumeration within the budget.
SurjectivityCheck window_surjective(const CellularAutomaton& ca, const MemorySet& m,
                                    uint64_t budget = (1ull << 22));

// Streaming check that sigma(tau(.)) is the identity on every window
// (equivalently that the composed rule is the projection to the identity
// cell).  Finite alphabets enumerate; affine ones compare polynomials.
bool composition_is_identity(const CellularAutomaton& sigma,
                             const CellularAutomaton& tau,
                             uint64_t budget = (1ull << 25));

// Linear cellular automaton of a group-ring matrix: alphabet K^n, memory =
// union of entry supports, output i = sum_j sum_h A[i][j](h) x_{h,j}.
// Composition of images matches the image of the matrix product.
CellularAutomaton lca_from_matrix(const GroupRingMatrix& a);

// Polynomial cellular automaton of a near-ring element: dimension 1, rule =
// the polynomial itself with X_g read as x_g. Sends X_{1_G} to the identity
// automaton and star products to compositions.
CellularAutomaton ca_from_nearring(const NearRingElem& a);

// Restriction of an affine automaton to the finite level r (all rule
// coefficients must generate subfields of degree dividing r): alphabet
// becomes (F_{p^r})^dim with a materialized table (polynomial kept).
CellularAutomaton restrict_ca(const CellularAutomaton& ca, unsigned level,
                              uint64_t budget = (1ull << 22));

struct RuleEqualReport {
  bool as_polynomials = false;
  std::optional<bool> as_functions;  // nullopt = unknown (infinite alphabet)
};

// Compares two automata over the same group and alphabet after padding
// memories: exact polynomial normal forms when both rules are polynomial,
// exhaustive evaluation for finite alphabets.
RuleEqualReport rule_equal(const CellularAutomaton& a, const CellularAutomaton& b,
                           uint64_t budget = (1ull << 22));

// Is the local rule table a bijection A^M -> A (only meaningful for
// one-cell memories)?
bool rule_table_bijective(const CellularAutomaton& ca);

}  // namespace rkg
