#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rkg/errors.hpp"

namespace rkg {

class GroupCtx;
using GroupCtxPtr = std::shared_ptr<const GroupCtx>;
class GroupElement;

// A group backend with an exact word problem: a finite group given by a
// Cayley table (validated at construction), a free abelian group Z^d, or a
// free group on named generators (elements stored as reduced words).
// Contexts are immutable; built-in constructions are cached so repeated
// calls return the same context pointer.
class GroupCtx : public std::enable_shared_from_this<GroupCtx> {
 public:
  enum class Kind { Finite, FreeAbelian, Free };

  // table[i][j] = id of g_i * g_j; group axioms are verified, not trusted.
  static GroupCtxPtr finite_from_table(std::vector<std::vector<int>> table,
                                       std::vector<std::string> names = {});
  // CSV text: one row per line, comma- or whitespace-separated ids.
  static GroupCtxPtr finite_from_csv_text(std::string_view text);
  static GroupCtxPtr cyclic(int n);
  static GroupCtxPtr symmetric(int n);  // n <= 5
  static GroupCtxPtr quaternion8();
  static GroupCtxPtr free_abelian(int d);
  static GroupCtxPtr free_group(int rank, std::vector<std::string> names = {});

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  int order() const;  // finite only
  int rank() const { return rank_; }  // d for Z^d, rank for free groups

  GroupElement identity() const;
  GroupElement element(int id) const;               // finite
  std::vector<GroupElement> elements() const;       // finite
  GroupElement from_vector(std::vector<int64_t> v) const;  // Z^d
  GroupElement from_word(std::vector<int> letters) const;  // free; reduces
  GroupElement gen(int k) const;  // k-th generator (free) / unit vector (Z^d)

  int mul_ids(int a, int b) const;
  int inv_id(int a) const;
  const std::vector<std::string>& element_names() const { return names_; }
  const std::vector<std::string>& generator_names() const { return names_; }

  // Element syntax: finite "g3" (or a declared name); Z^d "(1,-2)" or a bare
  // integer when d == 1; free groups "a*b^-1" or "1".
  GroupElement parse_element(std::string_view text) const;

  std::string describe() const;

 protected:
  GroupCtx() = default;

 private:
  Kind kind_ = Kind::Finite;
  int rank_ = 0;  // d / free rank
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_id_ = 0;
  std::vector<std::string> names_;  // element names (finite) / generator names
};

class GroupElement {
 public:
  GroupElement() = default;
  bool valid() const { return ctx_ != nullptr; }
  const GroupCtxPtr& ctx() const { return ctx_; }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inv() const;
  GroupElement pow(int64_t e) const;
  bool is_identity() const;

  // Total order used everywhere a canonical ordering is needed: finite
  // groups by id, Z^d lexicographic, free groups shortlex (generator before
  // its inverse).  Requires a shared context.
  int cmp(const GroupElement& o) const;
  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  bool operator<(const GroupElement& o) const { return cmp(o) < 0; }

  int id() const { return id_; }
  const std::vector<int64_t>& vec() const { return vec_; }
  const std::vector<int>& word() const { return word_; }

  std::string str() const;

 private:
  friend class GroupCtx;
  GroupCtxPtr ctx_;
  int id_ = -1;                 // finite
  std::vector<int64_t> vec_;    // Z^d
  std::vector<int> word_;       // free: letters +-(k+1), reduced
};

struct GrpLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return a.cmp(b) < 0;
  }
};

// A finite subset of a group, deduplicated and kept in canonical order.
class MemorySet {
 public:
  MemorySet() = default;
  MemorySet(GroupCtxPtr ctx, std::vector<GroupElement> elems);

  const GroupCtxPtr& ctx() const { return ctx_; }
  size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<GroupElement>& elems() const { return elems_; }
  const GroupElement& operator[](size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const GroupElement& g) const;
  std::optional<size_t> index_of(const GroupElement& g) const;
  bool operator==(const MemorySet& o) const;

  std::string str() const;

 private:
  GroupCtxPtr ctx_;
  std::vector<GroupElement> elems_;
};

MemorySet product_set(const MemorySet& a, const MemorySet& b);
MemorySet inverse_set(const MemorySet& m);
// m united with its inverses and the identity.
MemorySet symmetrize(const MemorySet& m);
MemorySet union_sets(const MemorySet& a, const MemorySet& b);
// {lo, ..., hi} in Z.
MemorySet interval_memory(const GroupCtxPtr& zctx, int64_t lo, int64_t hi);
// Ball of the given radius: box [-R,R]^d for Z^d, reduced words of length
// <= R for free groups, the whole group for finite ones.
MemorySet ball(const GroupCtxPtr& ctx, int radius, uint64_t budget = (1ull << 20));

}  // namespace rkg
