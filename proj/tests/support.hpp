#pragma once

#include <random>
#include <vector>

#include "rkg/fields.hpp"
#include "rkg/group_ring.hpp"
#include "rkg/groups.hpp"
#include "rkg/near_ring.hpp"

// Deterministic random generators shared by the test suites.
namespace rkgtest {

using namespace rkg;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {  // inclusive
  return static_cast<int>(lo + rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline FieldElem random_field_elem(const FieldCtxPtr& f, Rng& rng, int span = 6) {
  if (f->is_rational()) {
    int num = uniform(rng, -span, span);
    int den = uniform(rng, 1, span);
    return f->from_rat(Rat(num) / den);
  }
  return f->element_at(rng() % f->order_u64());
}

inline FieldElem random_nonzero(const FieldCtxPtr& f, Rng& rng, int span = 6) {
  for (;;) {
    FieldElem e = random_field_elem(f, rng, span);
    if (!e.is_zero()) return e;
  }
}

inline GroupElement random_group_elem(const GroupCtxPtr& g, Rng& rng, int radius = 3) {
  switch (g->kind()) {
    case GroupCtx::Kind::Finite:
      return g->element(uniform(rng, 0, g->order() - 1));
    case GroupCtx::Kind::FreeAbelian: {
      std::vector<int64_t> v(g->rank());
      for (auto& x : v) x = uniform(rng, -radius, radius);
      return g->from_vector(std::move(v));
    }
    case GroupCtx::Kind::Free: {
      int len = uniform(rng, 0, radius);
      std::vector<int> w;
      for (int i = 0; i < len; ++i) {
        int k = uniform(rng, 1, g->rank());
        w.push_back(rng() % 2 ? k : -k);
      }
      return g->from_word(std::move(w));
    }
  }
  throw Error("unreachable");
}

inline GroupRingElem random_group_ring(const GroupCtxPtr& g, const FieldCtxPtr& f,
                                       Rng& rng, int max_support = 3,
                                       int radius = 2) {
  GroupRingElem a(g, f);
  int terms = uniform(rng, 0, max_support);
  for (int i = 0; i < terms; ++i)
    a.add_term(random_group_elem(g, rng, radius), random_field_elem(f, rng));
  return a;
}

// Random near-ring element with bounded degree and support.
inline NearRingElem random_near_ring(const GroupCtxPtr& g, const FieldCtxPtr& f,
                                     Rng& rng, int max_terms = 3, int max_deg = 3,
                                     int radius = 2) {
  NrPoly p(f);
  int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    int deg = uniform(rng, 0, max_deg);
    std::vector<NrMonomial::Factor> factors;
    while (deg > 0) {
      int e = uniform(rng, 1, deg);
      factors.emplace_back(random_group_elem(g, rng, radius), e);
      deg -= e;
    }
    p.add_term(NrMonomial::from_factors(std::move(factors)),
               random_field_elem(f, rng));
  }
  return NearRingElem::from_poly(g, std::move(p));
}

inline GroupRingMatrix random_matrix(const GroupCtxPtr& g, const FieldCtxPtr& f,
                                     Rng& rng, int n, int max_support = 2,
                                     int radius = 1) {
  GroupRingMatrix m(g, f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = random_group_ring(g, f, rng, max_support, radius);
  return m;
}

}  // namespace rkgtest
