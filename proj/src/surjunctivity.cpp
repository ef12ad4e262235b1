#include "rkg/surjunctivity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "rkg/linalg.hpp"

namespace rkg {

namespace {

bool is_Z(const GroupCtxPtr& g) {
  return g->kind() == GroupCtx::Kind::FreeAbelian && g->rank() == 1;
}

uint64_t checked_pow_u64(uint64_t base, uint64_t exp, uint64_t limit,
                         const char* what) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base)
      throw EnumerationBudgetExceeded(std::string(what) + " over budget");
    r *= base;
  }
  if (r > limit) throw EnumerationBudgetExceeded(std::string(what) + " over budget");
  return r;
}

}  // namespace

int32_t EventuallyPeriodicWord::cell(int64_t pos) const {
  if (pos < start) {
    int64_t l = static_cast<int64_t>(left_period.size());
    int64_t back = start - 1 - pos;  // 0 = last cell of the left period
    return left_period[static_cast<size_t>(l - 1 - (back % l))];
  }
  int64_t i = pos - start;
  if (i < static_cast<int64_t>(center.size())) return center[static_cast<size_t>(i)];
  i -= static_cast<int64_t>(center.size());
  return right_period[static_cast<size_t>(i % static_cast<int64_t>(right_period.size()))];
}

uint64_t DeBruijn::vertices() const {
  uint64_t v = 1;
  for (int i = 0; i + 1 < width; ++i) v *= q;
  return v;
}

uint64_t DeBruijn::step(uint64_t v, uint32_t a) const {
  uint64_t high = 1;
  for (int i = 0; i + 2 < width; ++i) high *= q;
  return v / q + static_cast<uint64_t>(a) * high;
}

int32_t DeBruijn::label(uint64_t v, uint32_t a) const {
  return rule[v + static_cast<uint64_t>(a) * vertices()];
}

DeBruijn build_debruijn(const CellularAutomaton& ca, const DecisionBudgets& budgets) {
  if (!is_Z(ca.group())) throw Error("de Bruijn graphs require the group Z");
  if (!ca.alphabet().is_finite())
    throw AlphabetMismatch("de Bruijn graphs require a finite alphabet");

  int64_t lo = ca.memory()[0].vec()[0];
  int64_t hi = lo;
  for (const auto& g : ca.memory()) {
    lo = std::min(lo, g.vec()[0]);
    hi = std::max(hi, g.vec()[0]);
  }
  if (hi == lo) ++hi;  // pad to width 2 so vertices carry one symbol

  DeBruijn db;
  db.q = ca.alphabet().size();
  db.width = static_cast<int>(hi - lo + 1);
  db.offset = lo;
  uint64_t rows =
      checked_pow_u64(db.q, static_cast<uint64_t>(db.width), budgets.table_budget,
                      "interval rule");
  // positions of the memory cells within the interval
  std::vector<size_t> pos;
  for (const auto& g : ca.memory())
    pos.push_back(static_cast<size_t>(g.vec()[0] - lo));

  db.rule.resize(rows);
  std::vector<int32_t> cells(static_cast<size_t>(db.width), 0);
  std::vector<int32_t> local(pos.size());
  for (uint64_t row = 0;; ++row) {
    for (size_t j = 0; j < pos.size(); ++j) local[j] = cells[pos[j]];
    db.rule[row] = ca.eval_cells(local);
    size_t k = 0;
    while (k < cells.size() && cells[k] == static_cast<int32_t>(db.q - 1)) cells[k++] = 0;
    if (k == cells.size()) break;
    ++cells[k];
  }
  return db;
}

// ---------------------------------------------------------------------------
// Finite groups: exhaustive decisions

namespace {

struct FiniteSetup {
  int order = 0;
  uint64_t q = 0;
  uint64_t configs = 0;
  std::vector<std::vector<size_t>> pos;  // pos[g][k] = id of g * m_k
};

FiniteSetup finite_setup(const CellularAutomaton& ca, uint64_t budget) {
  if (!ca.group()->is_finite()) throw InfiniteGroup("finite decision on infinite group");
  if (!ca.alphabet().is_finite())
    throw AlphabetMismatch("finite decisions need a finite alphabet");
  FiniteSetup s;
  s.order = ca.group()->order();
  s.q = ca.alphabet().size();
  s.configs = checked_pow_u64(s.q, static_cast<uint64_t>(s.order), budget,
                              "configuration space");
  s.pos.assign(s.order, std::vector<size_t>(ca.memory().size()));
  for (int g = 0; g < s.order; ++g) {
    GroupElement ge = ca.group()->element(g);
    for (size_t k = 0; k < ca.memory().size(); ++k)
      s.pos[g][k] = static_cast<size_t>((ge * ca.memory()[k]).id());
  }
  return s;
}

std::vector<int32_t> decode_config(uint64_t code, int order, uint64_t q) {
  std::vector<int32_t> c(order);
  for (int i = 0; i < order; ++i) {
    c[i] = static_cast<int32_t>(code % q);
    code /= q;
  }
  return c;
}

uint64_t image_code(const CellularAutomaton& ca, const FiniteSetup& s,
                    const std::vector<int32_t>& config) {
  std::vector<int32_t> local(ca.memory().size());
  uint64_t code = 0;
  for (int g = s.order; g-- > 0;) {
    for (size_t k = 0; k < local.size(); ++k) local[k] = config[s.pos[g][k]];
    code = code * s.q + static_cast<uint64_t>(ca.eval_cells(local));
  }
  return code;
}

}  // namespace

DecisionReport is_injective_finite(const CellularAutomaton& ca,
                                   const DecisionBudgets& budgets) {
  FiniteSetup s = finite_setup(ca, budgets.config_budget);
  DecisionReport rep;
  rep.method = "exhaustive";
  std::unordered_map<uint64_t, uint64_t> seen;
  seen.reserve(s.configs);
  for (uint64_t code = 0; code < s.configs; ++code) {
    std::vector<int32_t> config = decode_config(code, s.order, s.q);
    uint64_t img = image_code(ca, s, config);
    auto [it, fresh] = seen.emplace(img, code);
    if (!fresh) {
      rep.verdict = false;
      rep.collision_configs = {decode_config(it->second, s.order, s.q), config};
      return rep;
    }
  }
  rep.verdict = true;
  return rep;
}

DecisionReport is_surjective_finite(const CellularAutomaton& ca,
                                    const DecisionBudgets& budgets) {
  FiniteSetup s = finite_setup(ca, budgets.config_budget);
  DecisionReport rep;
  rep.method = "exhaustive";
  std::vector<bool> seen(s.configs, false);
  uint64_t hit = 0;
  for (uint64_t code = 0; code < s.configs; ++code) {
    uint64_t img = image_code(ca, s, decode_config(code, s.order, s.q));
    if (!seen[img]) {
      seen[img] = true;
      ++hit;
    }
  }
  rep.verdict = (hit == s.configs);
  if (!rep.verdict) {
    for (uint64_t code = 0; code < s.configs; ++code)
      if (!seen[code]) {
        rep.orphan_config = decode_config(code, s.order, s.q);
        break;
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// 1D surjectivity: subset construction

DecisionReport is_surjective_Z(const CellularAutomaton& ca,
                               const DecisionBudgets& budgets) {
  DeBruijn db = build_debruijn(ca, budgets);
  DecisionReport rep;
  rep.method = "debruijn_subset";
  uint64_t v = db.vertices();
  if (v > 60) throw EnumerationBudgetExceeded("subset construction over 2^" +
                                              std::to_string(v) + " states");
  // transition masks per (vertex, label)
  std::vector<std::vector<uint64_t>> tmask(v, std::vector<uint64_t>(db.q, 0));
  for (uint64_t u = 0; u < v; ++u)
    for (uint32_t a = 0; a < db.q; ++a)
      tmask[u][static_cast<uint32_t>(db.label(u, a))] |= 1ull << db.step(u, a);

  const uint64_t full = v == 64 ? ~0ull : (1ull << v) - 1;
  std::unordered_map<uint64_t, std::pair<uint64_t, uint32_t>> parent;
  std::unordered_set<uint64_t> visited = {full};
  std::deque<uint64_t> queue = {full};
  while (!queue.empty()) {
    uint64_t s = queue.front();
    queue.pop_front();
    for (uint32_t ell = 0; ell < db.q; ++ell) {
      uint64_t next = 0;
      uint64_t bits = s;
      while (bits) {
        uint64_t u = static_cast<uint64_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        next |= tmask[u][ell];
      }
      if (visited.count(next)) continue;
      visited.insert(next);
      parent[next] = {s, ell};
      if (next == 0) {
        // shortest orphan word: the labels along the parent chain
        std::vector<int32_t> word;
        uint64_t cur = 0;
        while (cur != full) {
          auto [prev, lab] = parent[cur];
          word.push_back(static_cast<int32_t>(lab));
          cur = prev;
        }
        std::reverse(word.begin(), word.end());
        rep.verdict = false;
        rep.orphan = std::move(word);
        return rep;
      }
      if (visited.size() > budgets.subset_budget)
        throw EnumerationBudgetExceeded("subset construction over budget");
      queue.push_back(next);
    }
  }
  rep.verdict = true;
  return rep;
}

// ---------------------------------------------------------------------------
// 1D injectivity: pair graph

namespace {

struct PairGraph {
  uint64_t v = 0;       // de Bruijn vertices
  uint64_t n = 0;       // pair vertices v*v
  std::vector<uint32_t> head;   // CSR offsets (n+1)
  std::vector<uint32_t> target; // CSR targets
};

PairGraph build_pair_graph(const DeBruijn& db, uint64_t edge_budget) {
  PairGraph pg;
  pg.v = db.vertices();
  pg.n = pg.v * pg.v;
  if (pg.n > (1ull << 26)) throw EnumerationBudgetExceeded("pair graph too large");

  // per-vertex buckets: label -> successor vertices
  std::vector<std::map<int32_t, std::vector<uint32_t>>> bucket(pg.v);
  for (uint64_t u = 0; u < pg.v; ++u)
    for (uint32_t a = 0; a < db.q; ++a)
      bucket[u][db.label(u, a)].push_back(static_cast<uint32_t>(db.step(u, a)));

  // count edges first
  uint64_t edges = 0;
  std::vector<uint64_t> degree(pg.n, 0);
  for (uint64_t u = 0; u < pg.v; ++u)
    for (uint64_t w = 0; w < pg.v; ++w) {
      uint64_t d = 0;
      auto iu = bucket[u].begin();
      auto iw = bucket[w].begin();
      while (iu != bucket[u].end() && iw != bucket[w].end()) {
        if (iu->first < iw->first)
          ++iu;
        else if (iw->first < iu->first)
          ++iw;
        else {
          d += static_cast<uint64_t>(iu->second.size()) * iw->second.size();
          ++iu;
          ++iw;
        }
      }
      degree[u * pg.v + w] = d;
      edges += d;
      if (edges > edge_budget)
        throw EnumerationBudgetExceeded("pair graph edges over budget");
    }

  pg.head.resize(pg.n + 1, 0);
  for (uint64_t i = 0; i < pg.n; ++i)
    pg.head[i + 1] = pg.head[i] + static_cast<uint32_t>(degree[i]);
  pg.target.resize(edges);
  std::vector<uint32_t> fill(pg.head.begin(), pg.head.end() - 1);
  for (uint64_t u = 0; u < pg.v; ++u)
    for (uint64_t w = 0; w < pg.v; ++w) {
      uint64_t idx = u * pg.v + w;
      auto iu = bucket[u].begin();
      auto iw = bucket[w].begin();
      while (iu != bucket[u].end() && iw != bucket[w].end()) {
        if (iu->first < iw->first)
          ++iu;
        else if (iw->first < iu->first)
          ++iw;
        else {
          for (uint32_t tu : iu->second)
            for (uint32_t tw : iw->second)
              pg.target[fill[idx]++] = static_cast<uint32_t>(
                  static_cast<uint64_t>(tu) * pg.v + tw);
          ++iu;
          ++iw;
        }
      }
    }
  return pg;
}

// vertices lying on a cycle: nontrivial SCC membership or a self-loop
std::vector<bool> cycle_vertices(const PairGraph& pg) {
  const uint64_t n = pg.n;
  std::vector<int64_t> index(n, -1), low(n, 0);
  std::vector<bool> onstack(n, false), on_cycle(n, false);
  std::vector<uint32_t> stack;
  int64_t counter = 0;
  // iterative Tarjan
  struct Frame {
    uint32_t v;
    uint32_t edge;
  };
  std::vector<Frame> frames;
  for (uint64_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({static_cast<uint32_t>(root), pg.head[root]});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<uint32_t>(root));
    onstack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < pg.head[f.v + 1]) {
        uint32_t t = pg.target[f.edge++];
        if (index[t] < 0) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          onstack[t] = true;
          frames.push_back({t, pg.head[t]});
        } else if (onstack[t]) {
          low[f.v] = std::min(low[f.v], index[t]);
        }
      } else {
        uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<uint32_t> comp;
          for (;;) {
            uint32_t w = stack.back();
            stack.pop_back();
            onstack[w] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          if (comp.size() > 1)
            for (uint32_t w : comp) on_cycle[w] = true;
        }
      }
    }
  }
  // self-loops
  for (uint64_t v = 0; v < n; ++v)
    for (uint32_t e = pg.head[v]; e < pg.head[v + 1]; ++e)
      if (pg.target[e] == v) on_cycle[v] = true;
  return on_cycle;
}

std::vector<uint32_t> reverse_targets_head(const PairGraph& pg,
                                           std::vector<uint32_t>& rtarget) {
  std::vector<uint32_t> rhead(pg.n + 1, 0);
  for (uint32_t t : pg.target) ++rhead[t + 1];
  for (uint64_t i = 0; i < pg.n; ++i) rhead[i + 1] += rhead[i];
  rtarget.resize(pg.target.size());
  std::vector<uint32_t> fill(rhead.begin(), rhead.end() - 1);
  for (uint64_t v = 0; v < pg.n; ++v)
    for (uint32_t e = pg.head[v]; e < pg.head[v + 1]; ++e)
      rtarget[fill[pg.target[e]]++] = static_cast<uint32_t>(v);
  return rhead;
}

// BFS from all seeds; parents[-1] for seeds/unreached
std::vector<int64_t> bfs_forest(const std::vector<uint32_t>& head,
                                const std::vector<uint32_t>& target,
                                const std::vector<bool>& seed,
                                std::vector<bool>& reached) {
  const uint64_t n = head.size() - 1;
  std::vector<int64_t> parent(n, -1);
  reached.assign(n, false);
  std::deque<uint32_t> queue;
  for (uint64_t v = 0; v < n; ++v)
    if (seed[v]) {
      reached[v] = true;
      queue.push_back(static_cast<uint32_t>(v));
    }
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    for (uint32_t e = head[v]; e < head[v + 1]; ++e) {
      uint32_t t = target[e];
      if (!reached[t]) {
        reached[t] = true;
        parent[t] = v;
        queue.push_back(t);
      }
    }
  }
  return parent;
}

// shortest nontrivial cycle through s (as the vertex list s, ..., last->s)
std::vector<uint32_t> cycle_through(const PairGraph& pg, uint32_t s) {
  std::vector<int64_t> parent(pg.n, -2);  // -2 unvisited
  std::deque<uint32_t> queue;
  for (uint32_t e = pg.head[s]; e < pg.head[s + 1]; ++e) {
    uint32_t t = pg.target[e];
    if (t == s) return {s};  // self-loop
    if (parent[t] == -2) {
      parent[t] = -1;  // root marker
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    for (uint32_t e = pg.head[v]; e < pg.head[v + 1]; ++e) {
      uint32_t t = pg.target[e];
      if (t == s) {
        std::vector<uint32_t> path = {v};
        while (parent[path.back()] >= 0)
          path.push_back(static_cast<uint32_t>(parent[path.back()]));
        path.push_back(s);
        std::reverse(path.begin(), path.end());  // s, ..., v
        return path;
      }
      if (parent[t] == -2) {
        parent[t] = v;
        queue.push_back(t);
      }
    }
  }
  throw Error("internal error: no cycle through a cycle vertex");
}

// input symbol pair consumed along the pair edge (u,w) -> (u',w')
std::pair<uint32_t, uint32_t> edge_symbols(const DeBruijn& db, uint64_t v,
                                           uint32_t from, uint32_t to) {
  uint64_t high = 1;
  for (int i = 0; i + 2 < db.width; ++i) high *= db.q;
  uint64_t tu = static_cast<uint64_t>(to) / v;
  uint64_t tw = static_cast<uint64_t>(to) % v;
  (void)from;
  return {static_cast<uint32_t>(tu / high), static_cast<uint32_t>(tw / high)};
}

}  // namespace

DecisionReport is_injective_Z(const CellularAutomaton& ca,
                              const DecisionBudgets& budgets) {
  DeBruijn db = build_debruijn(ca, budgets);
  PairGraph pg = build_pair_graph(db, budgets.edge_budget);
  DecisionReport rep;
  rep.method = "debruijn_pair_graph";

  std::vector<bool> on_cycle = cycle_vertices(pg);
  std::vector<bool> fwd, bwd;
  std::vector<int64_t> fparent = bfs_forest(pg.head, pg.target, on_cycle, fwd);
  std::vector<uint32_t> rtarget;
  std::vector<uint32_t> rhead = reverse_targets_head(pg, rtarget);
  std::vector<int64_t> bparent = bfs_forest(rhead, rtarget, on_cycle, bwd);

  int64_t bad = -1;
  for (uint64_t x = 0; x < pg.n; ++x) {
    if (!fwd[x] || !bwd[x]) continue;
    if (x / pg.v != x % pg.v) {
      bad = static_cast<int64_t>(x);
      break;
    }
  }
  if (bad < 0) {
    rep.verdict = true;
    return rep;
  }
  rep.verdict = false;

  // Assemble a witness: cycle -> bad -> cycle, read off the two input tracks.
  std::vector<uint32_t> upstream;  // path from a cycle vertex to bad
  for (uint32_t cur = static_cast<uint32_t>(bad); ;) {
    upstream.push_back(cur);
    int64_t p = fparent[cur];
    if (p < 0) break;
    cur = static_cast<uint32_t>(p);
  }
  std::reverse(upstream.begin(), upstream.end());  // cycle vertex ... bad
  std::vector<uint32_t> downstream;  // path from bad to a cycle vertex
  for (uint32_t cur = static_cast<uint32_t>(bad); ;) {
    downstream.push_back(cur);
    int64_t p = bparent[cur];  // parent in the reverse BFS = forward successor
    if (p < 0) break;
    cur = static_cast<uint32_t>(p);
  }

  std::vector<uint32_t> lcycle = cycle_through(pg, upstream.front());
  std::vector<uint32_t> rcycle = cycle_through(pg, downstream.back());

  auto symbols_along = [&](const std::vector<uint32_t>& path, bool close_to_front,
                           std::vector<int32_t>& wa, std::vector<int32_t>& wb) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      auto [a, b] = edge_symbols(db, pg.v, path[i], path[i + 1]);
      wa.push_back(static_cast<int32_t>(a));
      wb.push_back(static_cast<int32_t>(b));
    }
    if (close_to_front && !path.empty()) {
      auto [a, b] = edge_symbols(db, pg.v, path.back(), path.front());
      wa.push_back(static_cast<int32_t>(a));
      wb.push_back(static_cast<int32_t>(b));
    }
  };

  EventuallyPeriodicWord wa, wb;
  symbols_along(lcycle, true, wa.left_period, wb.left_period);
  std::vector<uint32_t> center_path = upstream;
  center_path.insert(center_path.end(), downstream.begin() + 1, downstream.end());
  symbols_along(center_path, false, wa.center, wb.center);
  symbols_along(rcycle, true, wa.right_period, wb.right_period);
  // the initial window of the first vertex must itself appear in the words;
  // it is implied by the left cycle, so starting right after it is sound
  wa.start = 0;
  wb.start = 0;
  rep.collision = InjectivityWitness{std::move(wa), std::move(wb)};
  return rep;
}

DecisionReport is_injective(const CellularAutomaton& ca, const DecisionBudgets& b) {
  const GroupCtxPtr& g = ca.group();
  if (g->is_finite()) return is_injective_finite(ca, b);
  if (is_Z(g)) return is_injective_Z(ca, b);
  if (g->kind() == GroupCtx::Kind::FreeAbelian)
    throw Undecidable("injectivity over Z^d (d >= 2) is undecidable; use finite quotients");
  throw Undecidable("no decision procedure for this group backend");
}

DecisionReport is_surjective(const CellularAutomaton& ca, const DecisionBudgets& b) {
  const GroupCtxPtr& g = ca.group();
  if (g->is_finite()) return is_surjective_finite(ca, b);
  if (is_Z(g)) return is_surjective_Z(ca, b);
  if (g->kind() == GroupCtx::Kind::FreeAbelian)
    throw Undecidable("surjectivity over Z^d (d >= 2) is undecidable; use finite quotients");
  throw Undecidable("no decision procedure for this group backend");
}

// ---------------------------------------------------------------------------
// Quotient probes

namespace {

using U128 = unsigned __int128;

std::vector<U128> mat_mul_u128(const std::vector<U128>& a, const std::vector<U128>& b,
                               size_t n) {
  std::vector<U128> c(n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      U128 v = a[i * n + k];
      if (v == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i * n + j] += v * b[k * n + j];
    }
  return c;
}

}  // namespace

QuotientProbe is_injective_on_cyclic_quotient(const CellularAutomaton& ca, int modulus,
                                              const DecisionBudgets& budgets) {
  if (!is_Z(ca.group())) throw Error("cyclic quotients probe automata over Z");
  if (modulus < 1) throw Error("modulus must be >= 1");
  QuotientProbe probe;
  probe.modulus = modulus;

  // exact linear algebra for affine-linear rules
  if (ca.has_poly()) {
    bool linear = true;
    for (const RulePoly& p : ca.poly().out)
      if (!p.is_affine_linear()) linear = false;
    if (linear) {
      const FieldCtxPtr& f = ca.poly().out[0].field();
      const int dim = ca.alphabet().dim();
      const int n = dim * modulus;
      Matrix mat(f, n, n);
      for (int cell = 0; cell < modulus; ++cell)
        for (int i = 0; i < dim; ++i)
          for (const auto& [mono, c] : ca.poly().out[i].terms()) {
            if (mono.is_constant()) continue;
            const CellVar& v = mono.factors()[0].first;
            int64_t k = v.pos.vec()[0];
            int src = static_cast<int>(((cell + k) % modulus + modulus) % modulus);
            mat.at(cell * dim + i, src * dim + v.coord) += c;
          }
      probe.injective = (mat.rank() == n);
      probe.method = "linear_rank";
      return probe;
    }
  }

  if (!ca.alphabet().is_finite())
    throw EnumerationBudgetExceeded("nonlinear quotient probe needs a finite alphabet");

  // single-cell memories act pointwise; the shift factor is bijective
  if (ca.memory().size() == 1) {
    const uint64_t q = ca.alphabet().size();
    std::vector<bool> seen(q, false);
    bool inj = true;
    std::vector<int32_t> cell(1);
    for (uint64_t v = 0; v < q && inj; ++v) {
      cell[0] = static_cast<int32_t>(v);
      int32_t out = ca.eval_cells(cell);
      if (seen[out]) inj = false;
      seen[out] = true;
    }
    probe.injective = inj;
    probe.method = "pointwise";
    return probe;
  }

  // closed-walk counting in the pair graph: the quotient automaton is
  // injective iff the number of label-matched pairs of m-periodic
  // configurations equals |A|^m (only diagonal pairs)
  DeBruijn db = build_debruijn(ca, budgets);
  uint64_t v = db.vertices();
  if (v > 16) throw EnumerationBudgetExceeded("pair walk matrix too large");
  size_t n = static_cast<size_t>(v * v);
  std::vector<U128> adj(n * n, 0);
  for (uint64_t u = 0; u < v; ++u)
    for (uint64_t w = 0; w < v; ++w)
      for (uint32_t a = 0; a < db.q; ++a)
        for (uint32_t b = 0; b < db.q; ++b)
          if (db.label(u, a) == db.label(w, b))
            adj[(u * v + w) * n + (db.step(u, a) * v + db.step(w, b))] += 1;

  std::vector<U128> power(n * n, 0);
  for (size_t i = 0; i < n; ++i) power[i * n + i] = 1;
  int e = modulus;
  std::vector<U128> base = adj;
  while (e > 0) {
    if (e & 1) power = mat_mul_u128(power, base, n);
    e >>= 1;
    if (e > 0) base = mat_mul_u128(base, base, n);
  }
  U128 trace = 0;
  for (size_t i = 0; i < n; ++i) trace += power[i * n + i];
  U128 expect = 1;
  for (int i = 0; i < modulus; ++i) expect *= db.q;
  probe.injective = (trace == expect);
  probe.method = "pair_walk_count";
  return probe;
}

// ---------------------------------------------------------------------------

GottschalkReport check_gottschalk(const CellularAutomaton& ca,
                                  const DecisionBudgets& budgets) {
  GottschalkReport rep;
  rep.injectivity = is_injective(ca, budgets);
  rep.surjectivity = is_surjective(ca, budgets);
  rep.violation = rep.injectivity.verdict && !rep.surjectivity.verdict;
  return rep;
}

CellularAutomaton rule_code_automaton(uint64_t alphabet_size, int width,
                                      uint64_t code) {
  auto Z = GroupCtx::free_abelian(1);
  std::vector<std::string> labels;
  for (uint64_t i = 0; i < alphabet_size; ++i) labels.push_back(std::to_string(i));
  Alphabet a = Alphabet::symbols(std::move(labels));
  MemorySet m = interval_memory(Z, 0, width - 1);
  uint64_t rows = checked_pow_u64(alphabet_size, static_cast<uint64_t>(width),
                                  (1ull << 30), "rule table");
  TableRule t;
  t.out.resize(rows);
  for (uint64_t i = 0; i < rows; ++i) {
    t.out[i] = static_cast<int32_t>(code % alphabet_size);
    code /= alphabet_size;
  }
  return CellularAutomaton(Z, a, std::move(m), std::move(t));
}

SweepReport gottschalk_sweep(uint64_t alphabet_size, int width,
                             const DecisionBudgets& budgets) {
  uint64_t rows = checked_pow_u64(alphabet_size, static_cast<uint64_t>(width),
                                  (1ull << 20), "rule table");
  uint64_t count = checked_pow_u64(alphabet_size, rows, (1ull << 20), "rule space");
  SweepReport rep;
  rep.rule_count = count;
  for (uint64_t code = 0; code < count; ++code) {
    CellularAutomaton ca = rule_code_automaton(alphabet_size, width, code);
    GottschalkReport g = check_gottschalk(ca, budgets);
    if (g.injectivity.verdict) ++rep.injective_count;
    if (g.surjectivity.verdict) ++rep.surjective_count;
    if (g.violation) rep.violations.push_back(code);
  }
  return rep;
}

}  // namespace rkg
