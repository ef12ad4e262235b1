#include "rkg/near_ring.hpp"

#include <sstream>

namespace rkg {

NearRingElem::NearRingElem(GroupCtxPtr group, FieldCtxPtr field)
    : group_(std::move(group)), poly_(std::move(field)) {}

NearRingElem NearRingElem::zero(const GroupCtxPtr& g, const FieldCtxPtr& f) {
  return NearRingElem(g, f);
}

NearRingElem NearRingElem::constant(const GroupCtxPtr& g, const FieldElem& c) {
  NearRingElem a(g, c.ctx());
  a.poly_.add_term(NrMonomial{}, c);
  return a;
}

NearRingElem NearRingElem::variable(const GroupCtxPtr& g, const FieldCtxPtr& f,
                                    const GroupElement& at, uint32_t e) {
  if (at.ctx().get() != g.get()) throw ContextMismatch("variable from another group");
  NearRingElem a(g, f);
  a.poly_.add_term(NrMonomial::var(at, e), f->one());
  return a;
}

NearRingElem NearRingElem::star_identity(const GroupCtxPtr& g, const FieldCtxPtr& f) {
  return variable(g, f, g->identity());
}

NearRingElem NearRingElem::from_poly(GroupCtxPtr g, NrPoly p) {
  NearRingElem a(std::move(g), p.field());
  a.poly_ = std::move(p);
  return a;
}

void NearRingElem::check(const NearRingElem& o) const {
  if (group_.get() != o.group_.get() || field().get() != o.field().get())
    throw ContextMismatch("near-ring elements from different contexts");
}

NearRingElem NearRingElem::operator+(const NearRingElem& o) const {
  check(o);
  return from_poly(group_, poly_ + o.poly_);
}

NearRingElem NearRingElem::operator-(const NearRingElem& o) const {
  check(o);
  return from_poly(group_, poly_ - o.poly_);
}

NearRingElem NearRingElem::operator-() const { return from_poly(group_, -poly_); }

NearRingElem NearRingElem::scaled(const FieldElem& c) const {
  return from_poly(group_, poly_.scaled(c));
}

NearRingElem NearRingElem::mul(const NearRingElem& o, uint64_t budget) const {
  check(o);
  return from_poly(group_, poly_.mul(o.poly_, budget));
}

NearRingElem NearRingElem::pow(uint64_t e, uint64_t budget) const {
  return from_poly(group_, poly_.pow(e, budget));
}

bool NearRingElem::operator==(const NearRingElem& o) const {
  return group_.get() == o.group_.get() && poly_ == o.poly_;
}

NearRingElem act(const GroupElement& g, const NearRingElem& a) {
  if (g.ctx().get() != a.group().get())
    throw ContextMismatch("action by an element of another group");
  return NearRingElem::from_poly(
      a.group(), a.poly().map_vars([&](const GroupElement& h) { return g * h; }));
}

NearRingElem star(const NearRingElem& a, const NearRingElem& b, uint64_t budget) {
  if (a.group().get() != b.group().get() || a.field().get() != b.field().get())
    throw ContextMismatch("star of elements from different contexts");
  const FieldCtxPtr& f = a.field();
  NrPoly acc(f);
  // cache of the translates g.b and their powers, keyed by g
  std::map<GroupElement, std::vector<NrPoly>, GrpLess> powers;
  for (const auto& [mono, coeff] : a.poly().terms()) {
    NrPoly term = NrPoly::constant(f, coeff);
    for (const auto& [g, e] : mono.factors()) {
      auto [it, fresh] = powers.try_emplace(g);
      std::vector<NrPoly>& pw = it->second;
      if (fresh) pw.push_back(act(g, b).poly());  // pw[0] = (g.b)^1
      while (pw.size() < e) pw.push_back(pw.back().mul(pw[0], budget));
      term = term.mul(pw[e - 1], budget);
    }
    acc = acc + term;
    if (acc.term_count() > budget)
      throw TermBlowup("star expansion exceeded the term budget");
  }
  return NearRingElem::from_poly(a.group(), std::move(acc));
}

NearRingElem embed_phi(const GroupRingElem& a) {
  NearRingElem out(a.group(), a.field());
  NrPoly p(a.field());
  for (const auto& [g, c] : a.coeffs()) p.add_term(NrMonomial::var(g), c);
  return NearRingElem::from_poly(a.group(), std::move(p));
}

StarUnitReport check_star_unit_pair(const NearRingElem& a, const NearRingElem& b,
                                    uint64_t budget) {
  NearRingElem id = NearRingElem::star_identity(a.group(), a.field());
  StarUnitReport r;
  r.left_inverse = (star(a, b, budget) == id);
  r.right_inverse = (star(b, a, budget) == id);
  return r;
}

std::string NearRingElem::str() const {
  if (poly_.is_zero()) return "0";
  std::string out;
  // leading monomial first
  const auto& terms = poly_.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [mono, c] = *it;
    std::string cs = c.str();
    bool neg = false;
    if (!cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (cs.find('w') != std::string::npos && cs.find('+') != std::string::npos)
      cs = "(" + cs + ")";
    std::string vars;
    for (const auto& [g, e] : mono.factors()) {
      if (!vars.empty()) vars += "*";
      vars += "X[" + g.str() + "]";
      if (e > 1) vars += "^" + std::to_string(e);
    }
    std::string term;
    if (vars.empty())
      term = cs;
    else if (cs == "1")
      term = vars;
    else
      term = cs + "*" + vars;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace rkg
