#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rkg/fields.hpp"
#include "rkg/groups.hpp"
#include "rkg/linalg.hpp"

namespace rkg {

// Element of the group ring k[G]: a finitely supported map G -> k with
// convolution product.  Zero coefficients are never stored; keys are kept in
// the group's canonical order.
class GroupRingElem {
 public:
  GroupRingElem(GroupCtxPtr group, FieldCtxPtr field);
  static GroupRingElem zero(const GroupCtxPtr& g, const FieldCtxPtr& f);
  static GroupRingElem one(const GroupCtxPtr& g, const FieldCtxPtr& f);
  static GroupRingElem term(const GroupElement& g, const FieldElem& c);

  const GroupCtxPtr& group() const { return group_; }
  const FieldCtxPtr& field() const { return field_; }
  const std::map<GroupElement, FieldElem, GrpLess>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  size_t support_size() const { return c_.size(); }
  std::vector<GroupElement> support() const;
  FieldElem coeff(const GroupElement& g) const;
  void add_term(const GroupElement& g, const FieldElem& c);

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator-() const;
  GroupRingElem operator*(const GroupRingElem& o) const;  // convolution
  GroupRingElem scaled(const FieldElem& c) const;
  GroupRingElem pow(uint64_t e) const;

  bool operator==(const GroupRingElem& o) const;
  bool operator!=(const GroupRingElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check(const GroupRingElem& o) const;
  GroupCtxPtr group_;
  FieldCtxPtr field_;
  std::map<GroupElement, FieldElem, GrpLess> c_;
};

class GroupRingMatrix {
 public:
  GroupRingMatrix(GroupCtxPtr group, FieldCtxPtr field, int n);  // zero matrix
  static GroupRingMatrix identity(const GroupCtxPtr& g, const FieldCtxPtr& f, int n);
  static GroupRingMatrix scalar(const GroupRingElem& a);  // 1x1

  int n() const { return n_; }
  const GroupCtxPtr& group() const { return group_; }
  const FieldCtxPtr& field() const { return field_; }
  GroupRingElem& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const GroupRingElem& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * n_ + j];
  }

  GroupRingMatrix operator*(const GroupRingMatrix& o) const;
  GroupRingMatrix operator+(const GroupRingMatrix& o) const;
  GroupRingMatrix operator-(const GroupRingMatrix& o) const;
  bool operator==(const GroupRingMatrix& o) const;
  bool is_identity() const;

  std::string str() const;

 private:
  GroupCtxPtr group_;
  FieldCtxPtr field_;
  int n_;
  std::vector<GroupRingElem> e_;
};

// Matrix of left multiplication by `a` on the basis G (finite groups only):
// column j holds the coefficients of a * g_j.  Faithful and multiplicative.
Matrix regular_representation(const GroupRingElem& a);
// Block version for Mat_n(k[G]), acting on k[G]^n = k^(n|G|).
Matrix regular_representation(const GroupRingMatrix& a);

enum class InverseStatus { Found, NoneExists, Inconclusive };

struct InverseSearchResult {
  InverseStatus status = InverseStatus::Inconclusive;
  std::optional<GroupRingMatrix> inverse;
};

// Exact right-inverse computation for finite G via the regular
// representation; for infinite G use the windowed overload, which is
// Inconclusive when no inverse supported on the window exists.
InverseSearchResult find_right_inverse(const GroupRingMatrix& a);
InverseSearchResult find_right_inverse(const GroupRingMatrix& a,
                                       const MemorySet& window);

struct DirectFinitenessReport {
  bool ab_is_one = false;
  bool ba_is_one = false;
};

DirectFinitenessReport check_direct_finiteness(const GroupRingMatrix& a,
                                               const GroupRingMatrix& b);

}  // namespace rkg
