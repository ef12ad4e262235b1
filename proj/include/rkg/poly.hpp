#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "rkg/errors.hpp"
#include "rkg/fields.hpp"

namespace rkg {

inline constexpr uint64_t kDefaultTermBudget = 1000000;

// Sparse commutative monomial over an ordered variable type.  Cmp is a
// three-way comparator on V.  Exponents are strictly positive; the empty
// factor list is the constant monomial 1.
//
// Monomials are ordered by total degree first, then lexicographically on the
// flattened variable word (each variable repeated by its exponent).
template <class V, class Cmp>
class MonomialT {
 public:
  using Factor = std::pair<V, uint32_t>;

  MonomialT() = default;

  static MonomialT var(V v, uint32_t e = 1) {
    MonomialT m;
    if (e > 0) m.f_.emplace_back(std::move(v), e);
    return m;
  }

  static MonomialT from_factors(std::vector<Factor> factors) {
    Cmp cmp;
    std::sort(factors.begin(), factors.end(),
              [&](const Factor& a, const Factor& b) { return cmp(a.first, b.first) < 0; });
    MonomialT m;
    for (auto& [v, e] : factors) {
      if (e == 0) continue;
      if (!m.f_.empty() && cmp(m.f_.back().first, v) == 0)
        m.f_.back().second += e;
      else
        m.f_.emplace_back(std::move(v), e);
    }
    return m;
  }

  bool is_constant() const { return f_.empty(); }
  const std::vector<Factor>& factors() const { return f_; }

  uint64_t degree() const {
    uint64_t d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
  }

  MonomialT times(const MonomialT& o) const {
    Cmp cmp;
    MonomialT m;
    size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
      int c = cmp(f_[i].first, o.f_[j].first);
      if (c < 0)
        m.f_.push_back(f_[i++]);
      else if (c > 0)
        m.f_.push_back(o.f_[j++]);
      else {
        m.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
        ++i;
        ++j;
      }
    }
    while (i < f_.size()) m.f_.push_back(f_[i++]);
    while (j < o.f_.size()) m.f_.push_back(o.f_[j++]);
    return m;
  }

  // graded order, then lex on the flattened word
  int cmp(const MonomialT& o) const {
    uint64_t da = degree(), db = o.degree();
    if (da != db) return da < db ? -1 : 1;
    Cmp c;
    size_t i = 0, j = 0;
    uint32_t ei = 0, ej = 0;
    while (i < f_.size() && j < o.f_.size()) {
      int r = c(f_[i].first, o.f_[j].first);
      if (r != 0) return r;
      uint32_t a = f_[i].second - ei, b = o.f_[j].second - ej;
      if (a == b) {
        ++i;
        ++j;
        ei = ej = 0;
      } else if (a < b) {
        ++i;
        ei = 0;
        ej += a;
      } else {
        ++j;
        ej = 0;
        ei += b;
      }
    }
    return 0;  // equal degree and one exhausted => both exhausted
  }

  bool operator==(const MonomialT& o) const { return cmp(o) == 0; }

  // Applies fn to every variable (e.g. a group translation); re-sorts.
  template <class F>
  MonomialT map_vars(F&& fn) const {
    std::vector<Factor> out;
    out.reserve(f_.size());
    for (const auto& [v, e] : f_) out.emplace_back(fn(v), e);
    return from_factors(std::move(out));
  }

 private:
  std::vector<Factor> f_;  // sorted by Cmp, unique, exponents > 0
};

// Sparse multivariate polynomial over an exact field with MonomialT keys.
template <class V, class Cmp>
class PolynomialT {
 public:
  using Mono = MonomialT<V, Cmp>;
  struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const { return a.cmp(b) < 0; }
  };
  using TermMap = std::map<Mono, FieldElem, MonoLess>;

  explicit PolynomialT(FieldCtxPtr field) : field_(std::move(field)) {}

  static PolynomialT constant(const FieldCtxPtr& field, const FieldElem& c) {
    PolynomialT p(field);
    p.add_term(Mono{}, c);
    return p;
  }

  static PolynomialT variable(const FieldCtxPtr& field, V v, uint32_t e = 1) {
    PolynomialT p(field);
    p.add_term(Mono::var(std::move(v), e), field->one());
    return p;
  }

  const FieldCtxPtr& field() const { return field_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  uint64_t degree() const {  // 0 for the zero polynomial
    return t_.empty() ? 0 : t_.rbegin()->first.degree();
  }

  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_constant());
  }

  // true when every monomial has total degree <= 1
  bool is_affine_linear() const { return degree() <= 1; }

  FieldElem constant_term() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? field_->zero() : it->second;
  }

  FieldElem coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? field_->zero() : it->second;
  }

  void add_term(const Mono& m, const FieldElem& c) {
    if (c.is_zero()) return;
    FieldElem v = c.ctx().get() == field_.get() ? c : c.in_field(field_);
    auto [it, fresh] = t_.try_emplace(m, std::move(v));
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  PolynomialT operator+(const PolynomialT& o) const {
    check_field(o);
    PolynomialT r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
  }

  PolynomialT operator-() const {
    PolynomialT r(field_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }

  PolynomialT operator-(const PolynomialT& o) const { return *this + (-o); }

  PolynomialT scaled(const FieldElem& c) const {
    PolynomialT r(field_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : t_) r.add_term(m, v * c);
    return r;
  }

  PolynomialT mul(const PolynomialT& o, uint64_t budget = kDefaultTermBudget) const {
    check_field(o);
    PolynomialT r(field_);
    for (const auto& [ma, ca] : t_)
      for (const auto& [mb, cb] : o.t_) {
        r.add_term(ma.times(mb), ca * cb);
        if (r.t_.size() > budget)
          throw TermBlowup("polynomial product exceeded the term budget");
      }
    return r;
  }

  PolynomialT pow(uint64_t e, uint64_t budget = kDefaultTermBudget) const {
    PolynomialT r = constant(field_, field_->one());
    PolynomialT base = *this;
    while (e > 0) {
      if (e & 1) r = r.mul(base, budget);
      e >>= 1;
      if (e > 0) base = base.mul(base, budget);
    }
    return r;
  }

  FieldElem eval(const std::function<FieldElem(const V&)>& value) const {
    FieldElem acc = field_->zero();
    for (const auto& [m, c] : t_) {
      FieldElem term = c;
      for (const auto& [v, e] : m.factors()) term = term * value(v).pow(Int(e));
      acc += term;
    }
    return acc;
  }

  // Substitutes a polynomial (possibly over different variables) for every
  // variable.  The output field is taken from `out_field`.
  template <class W, class Cmp2>
  PolynomialT<W, Cmp2> substituted(
      const FieldCtxPtr& out_field,
      const std::function<PolynomialT<W, Cmp2>(const V&)>& image,
      uint64_t budget = kDefaultTermBudget) const {
    using Out = PolynomialT<W, Cmp2>;
    Out acc(out_field);
    for (const auto& [m, c] : t_) {
      Out term = Out::constant(out_field, c.ctx().get() == out_field.get()
                                              ? c
                                              : c.in_field(out_field));
      for (const auto& [v, e] : m.factors())
        term = term.mul(image(v).pow(e, budget), budget);
      acc = acc + term;
      if (acc.term_count() > budget)
        throw TermBlowup("substitution exceeded the term budget");
    }
    return acc;
  }

  template <class F>
  PolynomialT map_vars(F&& fn) const {
    PolynomialT r(field_);
    for (const auto& [m, c] : t_) r.add_term(m.map_vars(fn), c);
    return r;
  }

  bool operator==(const PolynomialT& o) const {
    if (field_.get() != o.field_.get() || t_.size() != o.t_.size()) return false;
    auto it = t_.begin();
    auto jt = o.t_.begin();
    for (; it != t_.end(); ++it, ++jt) {
      if (!(it->first == jt->first) || !(it->second == jt->second)) return false;
    }
    return true;
  }
  bool operator!=(const PolynomialT& o) const { return !(*this == o); }

 private:
  void check_field(const PolynomialT& o) const {
    if (field_.get() != o.field_.get())
      throw ContextMismatch("polynomials over different fields");
  }

  FieldCtxPtr field_;
  TermMap t_;
};

}  // namespace rkg
