#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rkg/errors.hpp"

namespace rkg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;
class FieldElem;

// An exact coefficient field: Q, or GF(p^r) presented as F_p[x]/(m) for a
// monic irreducible m (coefficients ascending, m.back() == 1).  Contexts are
// canonicalized through a process-wide cache, so pointer equality coincides
// with structural equality and is safe to use for context checks.
//
// The default modulus of GF(p^r) is the Conway polynomial, computed on
// demand by the standard search and memoized.  With Conway moduli the
// canonical embeddings GF(p^r) -> GF(p^s) for r | s (generator |-> generator
// ^ ((p^s-1)/(p^r-1))) form a compatible tower: composites of embeddings
// agree with direct embeddings.  Explicitly supplied moduli get embeddings
// by least-root search instead.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  enum class Kind { Rational, Finite };

  static FieldCtxPtr rationals();
  static FieldCtxPtr gf(uint64_t p, unsigned r = 1);
  static FieldCtxPtr gf_with_modulus(uint64_t p, std::vector<uint64_t> modulus);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  uint64_t characteristic() const { return p_; }  // 0 for Q
  unsigned degree() const { return r_; }          // 0 for Q
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  bool conway_tower() const { return conway_; }
  Int order() const;           // p^r
  uint64_t order_u64() const;  // throws Error if the order exceeds 2^62

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long v) const;
  FieldElem from_rat(const Rat& v) const;
  // Finite fields only: the class of x (for r == 1, the Conway primitive
  // root, i.e. the root of the degree-one modulus).
  FieldElem generator() const;
  FieldElem element_from_coeffs(std::vector<uint64_t> coeffs) const;
  // Base-p little-endian index codec for enumeration.
  FieldElem element_at(uint64_t index) const;
  uint64_t index_of(const FieldElem& e) const;
  std::vector<FieldElem> all_elements(uint64_t budget = (1ull << 22)) const;

  std::string name() const;  // "Q", "GF(5)", "GF(2^3)"

 protected:
  FieldCtx() = default;

 private:
  Kind kind_ = Kind::Rational;
  uint64_t p_ = 0;
  unsigned r_ = 0;
  std::vector<uint64_t> modulus_;
  bool conway_ = false;
};

class FieldElem {
 public:
  FieldElem();  // zero of Q

  const FieldCtxPtr& ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem inv() const;
  FieldElem pow(Int e) const;  // negative exponents invert first

  // a |-> a^p; WrongCharacteristic over Q.
  FieldElem frobenius() const;
  // Least d with a^(p^d) == a, i.e. the degree of the subfield F_{p^d}
  // generated by a.  Always divides the field degree.
  unsigned subfield_degree() const;
  // Moves the element into another field of the same characteristic.
  // Works whenever subfield_degree() divides the target degree (routes
  // through the subfield the element generates when needed).
  FieldElem in_field(const FieldCtxPtr& target) const;

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  const Rat& rat() const { return rat_; }
  const std::vector<uint64_t>& coeffs() const { return c_; }

  std::string str() const;

 private:
  friend class FieldCtx;
  FieldElem(FieldCtxPtr ctx, Rat v) : ctx_(std::move(ctx)), rat_(std::move(v)) {}
  FieldElem(FieldCtxPtr ctx, std::vector<uint64_t> c)
      : ctx_(std::move(ctx)), c_(std::move(c)) {}

  FieldCtxPtr ctx_;
  Rat rat_;
  std::vector<uint64_t> c_;  // finite payload, size == degree, reduced mod p
};

// The elements of (F_{p^depth})^dim grouped by the least level r (a divisor
// of depth) such that every coordinate lies in F_{p^r}.
struct PointLadder {
  uint64_t p = 0;
  unsigned depth = 0;
  int dim = 0;
  std::map<unsigned, std::vector<std::vector<FieldElem>>> by_level;
  uint64_t total() const;
};

PointLadder enumerate_points(uint64_t p, unsigned depth, int dim,
                             uint64_t budget = (1ull << 22));

// Monic irreducible modulus used by FieldCtx::gf (ascending coefficients,
// degree n).  Memoized; deterministic.
std::vector<uint64_t> conway_polynomial(uint64_t p, unsigned n);

bool is_small_prime(uint64_t p);

}  // namespace rkg
