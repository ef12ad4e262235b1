#include "rkg/sca.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace rkg {

namespace {

uint64_t checked_pow(uint64_t base, size_t exp, uint64_t limit, const char* what) {
  uint64_t r = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base)
      throw EnumerationBudgetExceeded(std::string(what) + " over budget");
    r *= base;
  }
  if (r > limit)
    throw EnumerationBudgetExceeded(std::string(what) + " over budget");
  return r;
}

bool memory_contains(const MemorySet& big, const MemorySet& small) {
  for (const auto& g : small)
    if (!big.contains(g)) return false;
  return true;
}

FieldCtxPtr common_field(const FieldCtxPtr& a, const FieldCtxPtr& b) {
  if (a.get() == b.get()) return a;
  if (a->is_rational() && b->is_rational()) return a;
  if (a->is_rational() || b->is_rational())
    throw ContextMismatch("cannot mix Q and GF(p^r) coefficients");
  if (a->characteristic() != b->characteristic())
    throw ContextMismatch("coefficient fields of different characteristic");
  unsigned l = static_cast<unsigned>(std::lcm(a->degree(), b->degree()));
  return FieldCtx::gf(a->characteristic(), l);
}

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet

Alphabet Alphabet::symbols(std::vector<std::string> labels) {
  if (labels.empty()) throw Error("symbol alphabet must be nonempty");
  Alphabet a;
  a.kind_ = Kind::Symbols;
  a.labels_ = std::move(labels);
  return a;
}

Alphabet Alphabet::field_points(FieldCtxPtr finite_field, int dim) {
  if (!finite_field->is_finite())
    throw Error("field-point alphabets require a finite field");
  if (dim < 1) throw Error("alphabet dimension must be >= 1");
  Alphabet a;
  a.kind_ = Kind::FieldPoints;
  a.field_ = std::move(finite_field);
  a.dim_ = dim;
  return a;
}

Alphabet Alphabet::affine(FieldCtxPtr coeff_field, int dim) {
  if (dim < 1) throw Error("alphabet dimension must be >= 1");
  Alphabet a;
  a.kind_ = Kind::Affine;
  a.field_ = std::move(coeff_field);
  a.dim_ = dim;
  return a;
}

uint64_t Alphabet::size() const {
  switch (kind_) {
    case Kind::Symbols:
      return labels_.size();
    case Kind::FieldPoints:
      return checked_pow(field_->order_u64(), static_cast<size_t>(dim_),
                         (1ull << 62), "alphabet");
    case Kind::Affine:
      throw Error("affine alphabets are infinite");
  }
  return 0;
}

std::string Alphabet::label(uint64_t idx) const {
  if (kind_ == Kind::Symbols) return labels_.at(idx);
  if (kind_ == Kind::FieldPoints) {
    AffinePoint p = point_at(idx);
    if (dim_ == 1) return p[0].str();
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += p[i].str();
    }
    return s + ")";
  }
  throw Error("affine alphabets have no label table");
}

AffinePoint Alphabet::point_at(uint64_t idx) const {
  if (kind_ != Kind::FieldPoints) throw Error("point_at requires a field-point alphabet");
  uint64_t q = field_->order_u64();
  AffinePoint p;
  p.reserve(dim_);
  for (int i = 0; i < dim_; ++i) {
    p.push_back(field_->element_at(idx % q));
    idx /= q;
  }
  return p;
}

uint64_t Alphabet::index_of_point(const AffinePoint& p) const {
  if (kind_ != Kind::FieldPoints) throw Error("index_of_point requires field points");
  if (static_cast<int>(p.size()) != dim_) throw Error("point has wrong dimension");
  uint64_t q = field_->order_u64();
  uint64_t idx = 0;
  for (size_t i = p.size(); i-- > 0;) {
    FieldElem e = p[i].ctx().get() == field_.get() ? p[i] : p[i].in_field(field_);
    idx = idx * q + field_->index_of(e);
  }
  return idx;
}

bool Alphabet::operator==(const Alphabet& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Symbols:
      return labels_ == o.labels_;
    case Kind::FieldPoints:
      return field_.get() == o.field_.get() && dim_ == o.dim_;
    case Kind::Affine:
      // the affine space only remembers its characteristic and dimension
      return dim_ == o.dim_ &&
             field_->characteristic() == o.field_->characteristic();
  }
  return false;
}

std::string Alphabet::describe() const {
  switch (kind_) {
    case Kind::Symbols: {
      std::string s = "{";
      for (size_t i = 0; i < labels_.size(); ++i) {
        if (i) s += ",";
        s += labels_[i];
      }
      return s + "}";
    }
    case Kind::FieldPoints:
      return dim_ == 1 ? field_->name()
                       : field_->name() + "^" + std::to_string(dim_);
    case Kind::Affine:
      return "affine " + (dim_ == 1 ? field_->name()
                                    : field_->name() + "^" + std::to_string(dim_));
  }
  return "?";
}

// ---------------------------------------------------------------------------
// CellularAutomaton

CellularAutomaton::CellularAutomaton(GroupCtxPtr group, Alphabet alphabet,
                                     MemorySet memory, TableRule table)
    : group_(std::move(group)),
      alphabet_(std::move(alphabet)),
      memory_(std::move(memory)) {
  if (!alphabet_.is_finite()) throw AlphabetMismatch("table rules need a finite alphabet");
  if (memory_.ctx().get() != group_.get())
    throw ContextMismatch("memory set over a different group");
  if (memory_.empty()) throw Error("memory set must be nonempty");
  uint64_t expect = checked_pow(alphabet_.size(), memory_.size(), (1ull << 62), "table");
  if (table.out.size() != expect) throw Error("table has the wrong number of rows");
  for (int32_t v : table.out)
    if (v < 0 || static_cast<uint64_t>(v) >= alphabet_.size())
      throw Error("table output out of range");
  table_ = std::move(table);
}

CellularAutomaton::CellularAutomaton(GroupCtxPtr group, Alphabet alphabet,
                                     MemorySet memory, PolyRule poly)
    : group_(std::move(group)),
      alphabet_(std::move(alphabet)),
      memory_(std::move(memory)) {
  if (alphabet_.kind() == Alphabet::Kind::Symbols)
    throw AlphabetMismatch("polynomial rules need a field alphabet");
  if (memory_.ctx().get() != group_.get())
    throw ContextMismatch("memory set over a different group");
  if (memory_.empty()) throw Error("memory set must be nonempty");
  if (static_cast<int>(poly.out.size()) != alphabet_.dim())
    throw Error("polynomial rule must have one output per coordinate");
  for (const RulePoly& p : poly.out) {
    for (const auto& [mono, c] : p.terms())
      for (const auto& [v, e] : mono.factors()) {
        if (!memory_.contains(v.pos))
          throw Error("rule variable outside the declared memory set");
        if (v.coord < 0 || v.coord >= alphabet_.dim())
          throw Error("rule variable coordinate out of range");
      }
  }
  poly_ = std::move(poly);
}

void CellularAutomaton::attach_table(TableRule t) {
  uint64_t expect = checked_pow(alphabet_.size(), memory_.size(), (1ull << 62), "table");
  if (t.out.size() != expect) throw Error("table has the wrong number of rows");
  table_ = std::move(t);
}

int32_t CellularAutomaton::eval_cells(const std::vector<int32_t>& cells) const {
  if (cells.size() != memory_.size()) throw Error("cell tuple has wrong arity");
  if (table_) {
    uint64_t q = alphabet_.size();
    uint64_t idx = 0;
    for (size_t i = cells.size(); i-- > 0;) idx = idx * q + cells[i];
    return table_->out[idx];
  }
  // polynomial evaluation through the point codec
  std::vector<AffinePoint> pts;
  pts.reserve(cells.size());
  for (int32_t c : cells) pts.push_back(alphabet_.point_at(c));
  return static_cast<int32_t>(alphabet_.index_of_point(eval_points(pts)));
}

AffinePoint CellularAutomaton::eval_points(const std::vector<AffinePoint>& cells) const {
  if (!poly_) throw Error("no polynomial rule attached");
  if (cells.size() != memory_.size()) throw Error("cell tuple has wrong arity");
  AffinePoint out;
  out.reserve(poly_->out.size());
  for (const RulePoly& p : poly_->out) {
    out.push_back(p.eval([&](const CellVar& v) {
      auto idx = memory_.index_of(v.pos);
      if (!idx) throw Error("rule variable outside the memory set");
      return cells[*idx][v.coord];
    }));
  }
  return out;
}

CellularAutomaton CellularAutomaton::identity(const GroupCtxPtr& g, const Alphabet& a) {
  MemorySet m(g, {g->identity()});
  if (a.kind() == Alphabet::Kind::Symbols) {
    TableRule t;
    t.out.resize(a.size());
    for (size_t i = 0; i < t.out.size(); ++i) t.out[i] = static_cast<int32_t>(i);
    return CellularAutomaton(g, a, m, std::move(t));
  }
  PolyRule r;
  for (int i = 0; i < a.dim(); ++i)
    r.out.push_back(RulePoly::variable(a.field(), CellVar{g->identity(), i}));
  return CellularAutomaton(g, a, m, std::move(r));
}

CellularAutomaton CellularAutomaton::shift(const GroupCtxPtr& zctx, const Alphabet& a,
                                           int64_t k) {
  if (zctx->kind() != GroupCtx::Kind::FreeAbelian || zctx->rank() != 1)
    throw Error("shift automata are defined over Z");
  GroupElement at = zctx->from_vector({k});
  MemorySet m(zctx, {at});
  if (a.kind() == Alphabet::Kind::Symbols) {
    TableRule t;
    t.out.resize(a.size());
    for (size_t i = 0; i < t.out.size(); ++i) t.out[i] = static_cast<int32_t>(i);
    return CellularAutomaton(zctx, a, m, std::move(t));
  }
  PolyRule r;
  for (int i = 0; i < a.dim(); ++i)
    r.out.push_back(RulePoly::variable(a.field(), CellVar{at, i}));
  return CellularAutomaton(zctx, a, m, std::move(r));
}

std::string CellularAutomaton::describe() const {
  std::string s = "ca over " + group_->describe() + " alphabet " + alphabet_.describe() +
                  " memory " + memory_.str();
  s += has_poly() ? " rule poly" : " rule table";
  return s;
}

// ---------------------------------------------------------------------------
// Patterns

Pattern apply_pattern(const CellularAutomaton& ca, const Pattern& p) {
  if (p.window.ctx().get() != ca.group().get())
    throw ContextMismatch("pattern over a different group");
  const bool finite = ca.alphabet().is_finite();
  if (finite && p.cells.size() != p.window.size())
    throw AlphabetMismatch("pattern cells do not match its window");
  if (!finite && p.points.size() != p.window.size())
    throw AlphabetMismatch("pattern points do not match its window");

  // E (-) M: candidates e * m0^-1 filtered by g M inside E
  const MemorySet& M = ca.memory();
  std::vector<GroupElement> candidates;
  for (const auto& e : p.window) candidates.push_back(e * M[0].inv());
  std::vector<GroupElement> domain;
  for (const auto& g : MemorySet(p.window.ctx(), std::move(candidates))) {
    bool ok = true;
    for (const auto& m : M)
      if (!p.window.contains(g * m)) {
        ok = false;
        break;
      }
    if (ok) domain.push_back(g);
  }
  Pattern out;
  out.window = MemorySet(p.window.ctx(), std::move(domain));
  for (const auto& g : out.window) {
    if (finite) {
      std::vector<int32_t> cells;
      cells.reserve(M.size());
      for (const auto& m : M) cells.push_back(p.cells[*p.window.index_of(g * m)]);
      out.cells.push_back(ca.eval_cells(cells));
    } else {
      std::vector<AffinePoint> pts;
      pts.reserve(M.size());
      for (const auto& m : M) pts.push_back(p.points[*p.window.index_of(g * m)]);
      out.points.push_back(ca.eval_points(pts));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition

CellularAutomaton compose(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                          uint64_t budget) {
  if (sigma.group().get() != tau.group().get())
    throw ContextMismatch("composing automata over different groups");
  if (!(sigma.alphabet() == tau.alphabet()))
    throw AlphabetMismatch("composing automata over different alphabets");
  MemorySet m = product_set(sigma.memory(), tau.memory());

  if (sigma.has_poly() && tau.has_poly()) {
    FieldCtxPtr f = common_field(sigma.poly().out[0].field(), tau.poly().out[0].field());
    // cache of tau's outputs translated by each memory element of sigma
    std::map<GroupElement, std::vector<RulePoly>, GrpLess> translated;
    auto image = [&](const CellVar& v) -> RulePoly {
      auto it = translated.find(v.pos);
      if (it == translated.end()) {
        std::vector<RulePoly> outs;
        for (const RulePoly& q : tau.poly().out) {
          RulePoly moved = q.map_vars(
              [&](const CellVar& w) { return CellVar{v.pos * w.pos, w.coord}; });
          outs.push_back(std::move(moved));
        }
        it = translated.emplace(v.pos, std::move(outs)).first;
      }
      return it->second[v.coord];
    };
    PolyRule rule;
    for (const RulePoly& p : sigma.poly().out)
      rule.out.push_back(p.substituted<CellVar, CellVarCmp>(f, image, budget));
    Alphabet alpha = sigma.alphabet();
    if (alpha.kind() == Alphabet::Kind::Affine)
      alpha = Alphabet::affine(f, alpha.dim());
    return CellularAutomaton(sigma.group(), alpha, std::move(m), std::move(rule));
  }

  if (!sigma.alphabet().is_finite())
    throw AlphabetMismatch("cannot compose affine automata without polynomial rules");

  // table path: enumerate A^(M_sigma M_tau)
  const uint64_t q = sigma.alphabet().size();
  uint64_t rows = checked_pow(q, m.size(), budget, "composition table");
  // positions of ms*mt within m for the inner evaluation
  const MemorySet& ms = sigma.memory();
  const MemorySet& mt = tau.memory();
  std::vector<std::vector<size_t>> pos(ms.size(), std::vector<size_t>(mt.size()));
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = 0; j < mt.size(); ++j) pos[i][j] = *m.index_of(ms[i] * mt[j]);

  TableRule t;
  t.out.resize(rows);
  std::vector<int32_t> cells(m.size(), 0);
  std::vector<int32_t> inner(mt.size());
  std::vector<int32_t> outer(ms.size());
  for (uint64_t row = 0;; ++row) {
    for (size_t i = 0; i < ms.size(); ++i) {
      for (size_t j = 0; j < mt.size(); ++j) inner[j] = cells[pos[i][j]];
      outer[i] = tau.eval_cells(inner);
    }
    t.out[row] = sigma.eval_cells(outer);
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  return CellularAutomaton(sigma.group(), sigma.alphabet(), std::move(m), std::move(t));
}

CellularAutomaton tabulate(const CellularAutomaton& ca, uint64_t budget) {
  if (ca.has_table()) return ca;
  if (ca.alphabet().kind() != Alphabet::Kind::FieldPoints)
    throw AlphabetMismatch("only field-point automata can be tabulated");
  const uint64_t q = ca.alphabet().size();
  uint64_t rows = checked_pow(q, ca.memory().size(), budget, "rule table");
  TableRule t;
  t.out.resize(rows);
  std::vector<int32_t> cells(ca.memory().size(), 0);
  for (uint64_t row = 0;; ++row) {
    t.out[row] = ca.eval_cells(cells);
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  CellularAutomaton out = ca;
  out.attach_table(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Window maps

namespace {

void require_window(const CellularAutomaton& ca, const MemorySet& m) {
  if (m.ctx().get() != ca.group().get())
    throw ContextMismatch("window over a different group");
  if (!memory_contains(m, ca.memory()))
    throw Error("window must contain the rule memory");
}

}  // namespace

std::vector<RulePoly> window_map_poly(const CellularAutomaton& ca, const MemorySet& m) {
  require_window(ca, m);
  if (!ca.has_poly()) throw Error("window_map_poly needs a polynomial rule");
  std::vector<RulePoly> out;
  for (const auto& g : m)
    for (const RulePoly& p : ca.poly().out)
      out.push_back(p.map_vars([&](const CellVar& w) {
        return CellVar{g * w.pos, w.coord};
      }));
  return out;
}

WindowMapTable window_map(const CellularAutomaton& ca, const MemorySet& m,
                          uint64_t budget) {
  require_window(ca, m);
  if (!ca.alphabet().is_finite())
    throw AlphabetMismatch("window tables need a finite alphabet");
  WindowMapTable w;
  w.window = m;
  w.square = product_set(m, m);
  const uint64_t q = ca.alphabet().size();
  w.in_count = checked_pow(q, w.square.size(), budget, "window enumeration");
  w.out_count = checked_pow(q, m.size(), (1ull << 62), "window output");

  const MemorySet& mem = ca.memory();
  std::vector<std::vector<size_t>> pos(m.size(), std::vector<size_t>(mem.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < mem.size(); ++j) pos[i][j] = *w.square.index_of(m[i] * mem[j]);

  w.rows.resize(w.in_count);
  std::vector<int32_t> cells(w.square.size(), 0);
  std::vector<int32_t> local(mem.size());
  for (uint64_t row = 0;; ++row) {
    uint64_t encoded = 0;
    for (size_t i = m.size(); i-- > 0;) {
      for (size_t j = 0; j < mem.size(); ++j) local[j] = cells[pos[i][j]];
      encoded = encoded * q + static_cast<uint64_t>(ca.eval_cells(local));
    }
    w.rows[row] = encoded;
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  return w;
}

SurjectivityCheck window_surjective(const CellularAutomaton& ca, const MemorySet& m,
                                    uint64_t budget) {
  require_window(ca, m);
  // exact rank decision for affine-linear polynomial rules
  if (ca.has_poly()) {
    bool linear = true;
    for (const RulePoly& p : ca.poly().out)
      if (!p.is_affine_linear()) linear = false;
    if (linear) {
      MemorySet square = product_set(m, m);
      const FieldCtxPtr& f = ca.poly().out[0].field();
      const int dim = ca.alphabet().dim();
      std::vector<RulePoly> outs = window_map_poly(ca, m);
      Matrix mat(f, static_cast<int>(outs.size()),
                 static_cast<int>(square.size()) * dim);
      for (size_t r = 0; r < outs.size(); ++r)
        for (const auto& [mono, c] : outs[r].terms()) {
          if (mono.is_constant()) continue;  // affine part is irrelevant
          const CellVar& v = mono.factors()[0].first;
          mat.at(static_cast<int>(r),
                 static_cast<int>(*square.index_of(v.pos)) * dim + v.coord) += c;
        }
      return {mat.rank() == mat.rows(), "affine_rank"};
    }
  }
  if (!ca.alphabet().is_finite())
    throw EnumerationBudgetExceeded(
        "window surjectivity undecided: non-linear rule over an affine alphabet");

  // enumeration with an output bitmap
  const uint64_t q = ca.alphabet().size();
  MemorySet square = product_set(m, m);
  uint64_t in_count = checked_pow(q, square.size(), budget, "window enumeration");
  uint64_t out_count = checked_pow(q, m.size(), (1ull << 30), "window output");
  std::vector<bool> seen(out_count, false);
  uint64_t distinct = 0;

  const MemorySet& mem = ca.memory();
  std::vector<std::vector<size_t>> pos(m.size(), std::vector<size_t>(mem.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < mem.size(); ++j) pos[i][j] = *square.index_of(m[i] * mem[j]);

  std::vector<int32_t> cells(square.size(), 0);
  std::vector<int32_t> local(mem.size());
  for (uint64_t row = 0;; ++row) {
    uint64_t encoded = 0;
    for (size_t i = m.size(); i-- > 0;) {
      for (size_t j = 0; j < mem.size(); ++j) local[j] = cells[pos[i][j]];
      encoded = encoded * q + static_cast<uint64_t>(ca.eval_cells(local));
    }
    if (!seen[encoded]) {
      seen[encoded] = true;
      if (++distinct == out_count) return {true, "enumeration"};
    }
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  return {distinct == out_count, "enumeration"};
}

// ---------------------------------------------------------------------------
// Composition identity check

bool composition_is_identity(const CellularAutomaton& sigma,
                             const CellularAutomaton& tau, uint64_t budget) {
  if (sigma.group().get() != tau.group().get())
    throw ContextMismatch("automata over different groups");
  if (!(sigma.alphabet() == tau.alphabet()))
    throw AlphabetMismatch("automata over different alphabets");

  if (!sigma.alphabet().is_finite()) {
    CellularAutomaton comp = compose(sigma, tau, budget);
    CellularAutomaton id = CellularAutomaton::identity(comp.group(), comp.alphabet());
    return rule_equal(comp, id).as_polynomials;
  }

  const GroupCtxPtr& G = sigma.group();
  MemorySet e = union_sets(product_set(sigma.memory(), tau.memory()),
                           MemorySet(G, {G->identity()}));
  const uint64_t q = sigma.alphabet().size();
  checked_pow(q, e.size(), budget, "identity check enumeration");

  const MemorySet& ms = sigma.memory();
  const MemorySet& mt = tau.memory();
  std::vector<std::vector<size_t>> pos(ms.size(), std::vector<size_t>(mt.size()));
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = 0; j < mt.size(); ++j) pos[i][j] = *e.index_of(ms[i] * mt[j]);
  const size_t id_pos = *e.index_of(G->identity());

  std::vector<int32_t> cells(e.size(), 0);
  std::vector<int32_t> inner(mt.size());
  std::vector<int32_t> outer(ms.size());
  for (;;) {
    for (size_t i = 0; i < ms.size(); ++i) {
      for (size_t j = 0; j < mt.size(); ++j) inner[j] = cells[pos[i][j]];
      outer[i] = tau.eval_cells(inner);
    }
    if (sigma.eval_cells(outer) != cells[id_pos]) return false;
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  return true;
}

// ---------------------------------------------------------------------------
// Images of matrices and near-ring elements

CellularAutomaton lca_from_matrix(const GroupRingMatrix& a) {
  const GroupCtxPtr& G = a.group();
  const int n = a.n();
  std::vector<GroupElement> support;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [g, c] : a.at(i, j).coeffs()) support.push_back(g);
  if (support.empty()) support.push_back(G->identity());
  MemorySet m(G, std::move(support));

  Alphabet alpha = Alphabet::affine(a.field(), n);
  PolyRule rule;
  for (int i = 0; i < n; ++i) {
    RulePoly p(a.field());
    for (int j = 0; j < n; ++j)
      for (const auto& [g, c] : a.at(i, j).coeffs())
        p.add_term(MonomialT<CellVar, CellVarCmp>::var(CellVar{g, j}), c);
    rule.out.push_back(std::move(p));
  }
  return CellularAutomaton(G, alpha, std::move(m), std::move(rule));
}

CellularAutomaton ca_from_nearring(const NearRingElem& a) {
  const GroupCtxPtr& G = a.group();
  std::vector<GroupElement> support = {G->identity()};
  for (const auto& [mono, c] : a.poly().terms())
    for (const auto& [g, e] : mono.factors()) support.push_back(g);
  MemorySet m(G, std::move(support));

  Alphabet alpha = Alphabet::affine(a.field(), 1);
  RulePoly p(a.field());
  for (const auto& [mono, c] : a.poly().terms()) {
    std::vector<MonomialT<CellVar, CellVarCmp>::Factor> factors;
    for (const auto& [g, e] : mono.factors())
      factors.emplace_back(CellVar{g, 0}, e);
    p.add_term(MonomialT<CellVar, CellVarCmp>::from_factors(std::move(factors)), c);
  }
  PolyRule rule;
  rule.out.push_back(std::move(p));
  return CellularAutomaton(G, alpha, std::move(m), std::move(rule));
}

// ---------------------------------------------------------------------------
// Restriction to a finite level

CellularAutomaton restrict_ca(const CellularAutomaton& ca, unsigned level,
                              uint64_t budget) {
  if (ca.alphabet().kind() != Alphabet::Kind::Affine)
    throw AlphabetMismatch("restriction applies to affine automata");
  if (!ca.has_poly()) throw Error("restriction needs a polynomial rule");
  const FieldCtxPtr& coeff = ca.alphabet().field();
  if (!coeff->is_finite())
    throw WrongCharacteristic("restriction needs positive characteristic");
  for (const RulePoly& p : ca.poly().out)
    for (const auto& [mono, c] : p.terms())
      if (level % c.subfield_degree() != 0)
        throw CoefficientFieldTooLarge(
            "rule coefficient " + c.str() + " generates a degree-" +
            std::to_string(c.subfield_degree()) + " subfield, which does not sit inside level " +
            std::to_string(level));

  FieldCtxPtr levelf = FieldCtx::gf(coeff->characteristic(), level);
  Alphabet alpha = Alphabet::field_points(levelf, ca.alphabet().dim());
  PolyRule moved;
  for (const RulePoly& p : ca.poly().out) {
    RulePoly q(levelf);
    for (const auto& [mono, c] : p.terms()) q.add_term(mono, c.in_field(levelf));
    moved.out.push_back(std::move(q));
  }
  CellularAutomaton out(ca.group(), alpha, ca.memory(), std::move(moved));
  return tabulate(out, budget);
}

// ---------------------------------------------------------------------------
// Rule comparison

RuleEqualReport rule_equal(const CellularAutomaton& a, const CellularAutomaton& b,
                           uint64_t budget) {
  if (a.group().get() != b.group().get())
    throw ContextMismatch("automata over different groups");
  if (!(a.alphabet() == b.alphabet()))
    throw AlphabetMismatch("automata over different alphabets");

  RuleEqualReport rep;
  if (a.has_poly() && b.has_poly()) {
    bool eq = a.poly().out.size() == b.poly().out.size();
    if (eq) {
      // compare over a common coefficient field
      FieldCtxPtr f =
          common_field(a.poly().out[0].field(), b.poly().out[0].field());
      for (size_t i = 0; eq && i < a.poly().out.size(); ++i) {
        RulePoly pa(f), pb(f);
        for (const auto& [m, c] : a.poly().out[i].terms()) pa.add_term(m, c);
        for (const auto& [m, c] : b.poly().out[i].terms()) pb.add_term(m, c);
        eq = (pa == pb);
      }
    }
    rep.as_polynomials = eq;
  }

  if (!a.alphabet().is_finite()) {
    // function equality over the full affine alphabet is not decidable here
    rep.as_functions = std::nullopt;
    return rep;
  }

  // exhaustive function comparison over the padded common memory
  MemorySet m = union_sets(a.memory(), b.memory());
  const uint64_t q = a.alphabet().size();
  checked_pow(q, m.size(), budget, "rule comparison");
  std::vector<size_t> pos_a, pos_b;
  for (const auto& g : a.memory()) pos_a.push_back(*m.index_of(g));
  for (const auto& g : b.memory()) pos_b.push_back(*m.index_of(g));
  std::vector<int32_t> cells(m.size(), 0);
  std::vector<int32_t> ca(a.memory().size()), cb(b.memory().size());
  bool equal = true;
  for (;;) {
    for (size_t i = 0; i < pos_a.size(); ++i) ca[i] = cells[pos_a[i]];
    for (size_t i = 0; i < pos_b.size(); ++i) cb[i] = cells[pos_b[i]];
    if (a.eval_cells(ca) != b.eval_cells(cb)) {
      equal = false;
      break;
    }
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  rep.as_functions = equal;
  if (!(a.has_poly() && b.has_poly())) rep.as_polynomials = equal;
  return rep;
}

bool rule_table_bijective(const CellularAutomaton& ca) {
  if (!ca.alphabet().is_finite()) throw AlphabetMismatch("needs a finite alphabet");
  if (ca.memory().size() != 1) return false;
  const uint64_t q = ca.alphabet().size();
  std::vector<bool> seen(q, false);
  std::vector<int32_t> cell(1);
  for (uint64_t v = 0; v < q; ++v) {
    cell[0] = static_cast<int32_t>(v);
    int32_t out = ca.eval_cells(cell);
    if (seen[out]) return false;
    seen[out] = true;
  }
  return true;
}

}  // namespace rkg
