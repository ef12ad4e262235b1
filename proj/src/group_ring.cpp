#include "rkg/group_ring.hpp"

#include <sstream>

namespace rkg {

GroupRingElem::GroupRingElem(GroupCtxPtr group, FieldCtxPtr field)
    : group_(std::move(group)), field_(std::move(field)) {}

GroupRingElem GroupRingElem::zero(const GroupCtxPtr& g, const FieldCtxPtr& f) {
  return GroupRingElem(g, f);
}

GroupRingElem GroupRingElem::one(const GroupCtxPtr& g, const FieldCtxPtr& f) {
  GroupRingElem a(g, f);
  a.add_term(g->identity(), f->one());
  return a;
}

GroupRingElem GroupRingElem::term(const GroupElement& g, const FieldElem& c) {
  GroupRingElem a(g.ctx(), c.ctx());
  a.add_term(g, c);
  return a;
}

bool GroupRingElem::is_one() const {
  return c_.size() == 1 && c_.begin()->first.is_identity() &&
         c_.begin()->second.is_one();
}

std::vector<GroupElement> GroupRingElem::support() const {
  std::vector<GroupElement> s;
  s.reserve(c_.size());
  for (const auto& [g, c] : c_) s.push_back(g);
  return s;
}

FieldElem GroupRingElem::coeff(const GroupElement& g) const {
  auto it = c_.find(g);
  return it == c_.end() ? field_->zero() : it->second;
}

void GroupRingElem::add_term(const GroupElement& g, const FieldElem& c) {
  if (g.ctx().get() != group_.get())
    throw ContextMismatch("group-ring term from another group");
  if (c.is_zero()) return;
  FieldElem v = c.ctx().get() == field_.get() ? c : c.in_field(field_);
  auto [it, fresh] = c_.try_emplace(g, std::move(v));
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

void GroupRingElem::check(const GroupRingElem& o) const {
  if (group_.get() != o.group_.get() || field_.get() != o.field_.get())
    throw ContextMismatch("group-ring elements from different contexts");
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  check(o);
  GroupRingElem r = *this;
  for (const auto& [g, c] : o.c_) r.add_term(g, c);
  return r;
}

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem r(group_, field_);
  for (const auto& [g, c] : c_) r.c_.emplace(g, -c);
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
  return *this + (-o);
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  check(o);
  GroupRingElem r(group_, field_);
  for (const auto& [g, cg] : c_)
    for (const auto& [h, ch] : o.c_) r.add_term(g * h, cg * ch);
  return r;
}

GroupRingElem GroupRingElem::scaled(const FieldElem& c) const {
  GroupRingElem r(group_, field_);
  if (c.is_zero()) return r;
  for (const auto& [g, v] : c_) r.add_term(g, v * c);
  return r;
}

GroupRingElem GroupRingElem::pow(uint64_t e) const {
  GroupRingElem r = one(group_, field_);
  GroupRingElem base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

bool GroupRingElem::operator==(const GroupRingElem& o) const {
  if (group_.get() != o.group_.get() || field_.get() != o.field_.get()) return false;
  if (c_.size() != o.c_.size()) return false;
  auto it = c_.begin();
  auto jt = o.c_.begin();
  for (; it != c_.end(); ++it, ++jt)
    if (!(it->first == jt->first) || !(it->second == jt->second)) return false;
  return true;
}

namespace {

// shared coefficient printer: wraps anything that is not a plain integer
std::string coefficient_prefix(const FieldElem& c, bool& negative) {
  negative = false;
  std::string s = c.str();
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s = s.substr(1);
  }
  bool needs_parens = s.find('w') != std::string::npos && s.find('+') != std::string::npos;
  if (needs_parens) s = "(" + s + ")";
  return s;
}

}  // namespace

std::string GroupRingElem::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : c_) {
    bool neg = false;
    std::string cs = coefficient_prefix(c, neg);
    std::string term;
    if (g.is_identity()) {
      term = cs;
    } else {
      term = "[" + g.str() + "]";
      if (cs != "1") term = cs + "*" + term;
    }
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroupRingMatrix

GroupRingMatrix::GroupRingMatrix(GroupCtxPtr group, FieldCtxPtr field, int n)
    : group_(std::move(group)), field_(std::move(field)), n_(n) {
  if (n < 1) throw Error("matrix size must be >= 1");
  e_.assign(static_cast<size_t>(n) * n, GroupRingElem(group_, field_));
}

GroupRingMatrix GroupRingMatrix::identity(const GroupCtxPtr& g, const FieldCtxPtr& f,
                                          int n) {
  GroupRingMatrix m(g, f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GroupRingElem::one(g, f);
  return m;
}

GroupRingMatrix GroupRingMatrix::scalar(const GroupRingElem& a) {
  GroupRingMatrix m(a.group(), a.field(), 1);
  m.at(0, 0) = a;
  return m;
}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& o) const {
  if (n_ != o.n_ || group_.get() != o.group_.get() || field_.get() != o.field_.get())
    throw ContextMismatch("matrix product context mismatch");
  GroupRingMatrix r(group_, field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const GroupRingElem& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
      }
    }
  return r;
}

GroupRingMatrix GroupRingMatrix::operator+(const GroupRingMatrix& o) const {
  if (n_ != o.n_) throw ContextMismatch("matrix sum size mismatch");
  GroupRingMatrix r(group_, field_, n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

GroupRingMatrix GroupRingMatrix::operator-(const GroupRingMatrix& o) const {
  if (n_ != o.n_) throw ContextMismatch("matrix difference size mismatch");
  GroupRingMatrix r(group_, field_, n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

bool GroupRingMatrix::operator==(const GroupRingMatrix& o) const {
  return n_ == o.n_ && e_ == o.e_;
}

bool GroupRingMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

std::string GroupRingMatrix::str() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < n_; ++i) {
    if (i) out << ",";
    out << "[";
    for (int j = 0; j < n_; ++j) {
      if (j) out << ",";
      out << at(i, j).str();
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

// ---------------------------------------------------------------------------
// Regular representation and inverse search

Matrix regular_representation(const GroupRingElem& a) {
  const GroupCtxPtr& G = a.group();
  if (!G->is_finite()) throw InfiniteGroup("regular representation needs a finite group");
  const int n = G->order();
  Matrix m(a.field(), n, n);
  for (const auto& [g, c] : a.coeffs()) {
    for (int j = 0; j < n; ++j) {
      int i = G->mul_ids(g.id(), j);  // (a * g_j) has coefficient c at g_i
      m.at(i, j) += c;
    }
  }
  return m;
}

Matrix regular_representation(const GroupRingMatrix& a) {
  const GroupCtxPtr& G = a.group();
  if (!G->is_finite()) throw InfiniteGroup("regular representation needs a finite group");
  const int n = a.n();
  const int o = G->order();
  Matrix m(a.field(), n * o, n * o);
  for (int bi = 0; bi < n; ++bi)
    for (int bj = 0; bj < n; ++bj) {
      Matrix block = regular_representation(a.at(bi, bj));
      for (int i = 0; i < o; ++i)
        for (int j = 0; j < o; ++j) m.at(bi * o + i, bj * o + j) = block.at(i, j);
    }
  return m;
}

InverseSearchResult find_right_inverse(const GroupRingMatrix& a) {
  const GroupCtxPtr& G = a.group();
  if (!G->is_finite())
    throw InfiniteGroup("exact inverse search needs a finite group; pass a window");
  const int n = a.n();
  const int o = G->order();
  Matrix rep = regular_representation(a);
  std::optional<Matrix> inv = rep.inverse();
  if (!inv) return {InverseStatus::NoneExists, std::nullopt};
  // Column block j of the inverse, evaluated at the identity column of the
  // j-th unit vector, yields the entries B_{l j}.
  GroupRingMatrix b(G, a.field(), n);
  const int id = G->identity().id();
  for (int j = 0; j < n; ++j) {
    int col = j * o + id;  // vec of e_j (the identity of k[G] in block j)
    for (int l = 0; l < n; ++l)
      for (int t = 0; t < o; ++t)
        b.at(l, j).add_term(G->element(t), inv->at(l * o + t, col));
  }
  if (!(a * b).is_identity())
    throw Error("internal error: inverse reconstruction failed");
  return {InverseStatus::Found, b};
}

InverseSearchResult find_right_inverse(const GroupRingMatrix& a,
                                       const MemorySet& window) {
  const GroupCtxPtr& G = a.group();
  if (window.ctx().get() != G.get())
    throw ContextMismatch("window over a different group");
  if (G->is_finite()) return find_right_inverse(a);
  const int n = a.n();
  const size_t w = window.size();
  if (w == 0) return {InverseStatus::Inconclusive, std::nullopt};

  // Unknowns: B_{l j}(v) for l, j in [0,n), v in window.
  // Equations: for all i, j and every m in union_l supp(A_{il}) * window,
  //   sum_l sum_{h v = m} A_{il}(h) B_{l j}(v) = [i == j][m == 1].
  auto unknown = [&](int l, int j, size_t v) {
    return (static_cast<size_t>(l) * n + j) * w + v;
  };

  // collect the reachable support per output row i (it does not depend on j)
  std::vector<std::map<GroupElement, size_t, GrpLess>> row_support(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l)
      for (const auto& [h, c] : a.at(i, l).coeffs())
        for (const auto& v : window) {
          GroupElement m = h * v;
          row_support[i].emplace(m, row_support[i].size());
        }
  }
  size_t eq_count = 0;
  for (int i = 0; i < n; ++i) eq_count += row_support[i].size() * n;
  size_t unknowns = static_cast<size_t>(n) * n * w;

  Matrix sys(a.field(), static_cast<int>(eq_count), static_cast<int>(unknowns));
  Matrix rhs(a.field(), static_cast<int>(eq_count), 1);
  size_t row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& [m, midx] : row_support[i]) {
        for (int l = 0; l < n; ++l)
          for (const auto& [h, c] : a.at(i, l).coeffs()) {
            GroupElement v = h.inv() * m;
            if (auto vi = window.index_of(v))
              sys.at(static_cast<int>(row), static_cast<int>(unknown(l, j, *vi))) += c;
          }
        if (i == j && m.is_identity()) rhs.at(static_cast<int>(row), 0) = a.field()->one();
        ++row;
      }
    }
  }
  std::optional<Matrix> sol = sys.solve(rhs);
  if (!sol) return {InverseStatus::Inconclusive, std::nullopt};
  GroupRingMatrix b(G, a.field(), n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (size_t v = 0; v < w; ++v)
        b.at(l, j).add_term(window[v], sol->at(static_cast<int>(unknown(l, j, v)), 0));
  if (!(a * b).is_identity())
    throw Error("internal error: windowed inverse reconstruction failed");
  return {InverseStatus::Found, b};
}

DirectFinitenessReport check_direct_finiteness(const GroupRingMatrix& a,
                                               const GroupRingMatrix& b) {
  DirectFinitenessReport r;
  r.ab_is_one = (a * b).is_identity();
  r.ba_is_one = (b * a).is_identity();
  return r;
}

}  // namespace rkg
