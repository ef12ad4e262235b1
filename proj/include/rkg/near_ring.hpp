#pragma once

#include "rkg/group_ring.hpp"
#include "rkg/groups.hpp"
#include "rkg/poly.hpp"

namespace rkg {

struct GroupElemCmp {
  int operator()(const GroupElement& a, const GroupElement& b) const {
    return a.cmp(b);
  }
};

using NrMonomial = MonomialT<GroupElement, GroupElemCmp>;
using NrPoly = PolynomialT<GroupElement, GroupElemCmp>;

// Element of the substitution near ring over (G, k): a polynomial in the
// commuting variables X_g, g in G.  Addition is polynomial addition; the
// `star` product substitutes translated copies of the right operand for the
// variables of the left one:
//
//   (sum_u a(u) X^u) star b  =  sum_u a(u) prod_g (g.b)^(u(g)),
//
// where g.b translates every variable X_h of b to X_{gh}.  star is
// associative with two-sided identity X_{1_G} and distributes over addition
// on the left only.
class NearRingElem {
 public:
  NearRingElem(GroupCtxPtr group, FieldCtxPtr field);

  static NearRingElem zero(const GroupCtxPtr& g, const FieldCtxPtr& f);
  static NearRingElem constant(const GroupCtxPtr& g, const FieldElem& c);
  static NearRingElem variable(const GroupCtxPtr& g, const FieldCtxPtr& f,
                               const GroupElement& at, uint32_t e = 1);
  // X_{1_G}, the star identity.
  static NearRingElem star_identity(const GroupCtxPtr& g, const FieldCtxPtr& f);
  static NearRingElem from_poly(GroupCtxPtr g, NrPoly p);

  const GroupCtxPtr& group() const { return group_; }
  const FieldCtxPtr& field() const { return poly_.field(); }
  const NrPoly& poly() const { return poly_; }

  bool is_zero() const { return poly_.is_zero(); }
  uint64_t degree() const { return poly_.degree(); }
  size_t term_count() const { return poly_.term_count(); }

  NearRingElem operator+(const NearRingElem& o) const;
  NearRingElem operator-(const NearRingElem& o) const;
  NearRingElem operator-() const;
  NearRingElem scaled(const FieldElem& c) const;
  // Plain commutative polynomial product (the multiplication of the
  // underlying polynomial ring, not star).
  NearRingElem mul(const NearRingElem& o, uint64_t budget = kDefaultTermBudget) const;
  NearRingElem pow(uint64_t e, uint64_t budget = kDefaultTermBudget) const;

  bool operator==(const NearRingElem& o) const;
  bool operator!=(const NearRingElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check(const NearRingElem& o) const;
  GroupCtxPtr group_;
  NrPoly poly_;
};

// Translation action: every monomial support point h becomes g*h.
NearRingElem act(const GroupElement& g, const NearRingElem& a);

// The substitution product.
NearRingElem star(const NearRingElem& a, const NearRingElem& b,
                  uint64_t budget = kDefaultTermBudget);

// Degree-one embedding of the group ring: sum a(g) g  |->  sum a(g) X_g.
// Injective, multiplicative (star of images = image of convolution), and
// sends 1 to X_{1_G}.
NearRingElem embed_phi(const GroupRingElem& a);

struct StarUnitReport {
  bool left_inverse = false;   // a star b == X_{1_G}
  bool right_inverse = false;  // b star a == X_{1_G}
};

// Checks both products exactly by full expansion.
StarUnitReport check_star_unit_pair(const NearRingElem& a, const NearRingElem& b,
                                    uint64_t budget = kDefaultTermBudget);

}  // namespace rkg
