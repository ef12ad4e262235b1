#include "rkg/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace rkg {

namespace {

constexpr int kMaxFiniteOrder = 256;

struct GroupCtxAccess : GroupCtx {};

std::shared_ptr<GroupCtx> make_ctx() {
  return std::make_shared<GroupCtxAccess>();
}

struct BuiltinCache {
  std::mutex mu;
  std::map<std::string, GroupCtxPtr> by_key;
};

BuiltinCache& builtin_cache() {
  static BuiltinCache c;
  return c;
}

GroupCtxPtr cached(const std::string& key, std::function<GroupCtxPtr()> build) {
  auto& c = builtin_cache();
  std::lock_guard<std::mutex> lk(c.mu);
  auto it = c.by_key.find(key);
  if (it != c.by_key.end()) return it->second;
  GroupCtxPtr ctx = build();
  c.by_key.emplace(key, ctx);
  return ctx;
}

void reduce_word(std::vector<int>& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  w = std::move(out);
}

// shortlex letter key: generator index, then the generator before its inverse
std::pair<int, int> letter_key(int letter) {
  return {std::abs(letter) - 1, letter > 0 ? 0 : 1};
}

std::vector<std::string> default_names(const std::string& prefix, int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

std::vector<std::string> default_generator_names(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    if (rank <= 26)
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    else
      names.push_back("x" + std::to_string(i));
  }
  return names;
}

}  // namespace

GroupCtxPtr GroupCtx::finite_from_table(std::vector<std::vector<int>> table,
                                        std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n < 1 || n > kMaxFiniteOrder)
    throw Error("finite group order must be in 1.." + std::to_string(kMaxFiniteOrder));
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw Error("Cayley table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("Cayley table entry out of range");
  }
  // Latin square
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (int j = 0; j < n; ++j) {
      if (seen_row[table[i][j]]) throw Error("Cayley table row is not a permutation");
      seen_row[table[i][j]] = true;
      if (seen_col[table[j][i]]) throw Error("Cayley table column is not a permutation");
      seen_col[table[j][i]] = true;
    }
  }
  // identity
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j)
      if (table[i][j] != j || table[j][i] != j) {
        ok = false;
        break;
      }
    if (ok) e = i;
  }
  if (e < 0) throw Error("Cayley table has no identity element");
  // inverses
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (table[i][j] == e && table[j][i] == e) {
        inverse[i] = j;
        break;
      }
    if (inverse[i] < 0) throw Error("Cayley table element without inverse");
  }
  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("Cayley table is not associative");

  if (names.empty())
    names = default_names("g", n);
  else if (static_cast<int>(names.size()) != n)
    throw Error("element name list does not match the group order");

  auto ctx = make_ctx();
  ctx->kind_ = Kind::Finite;
  ctx->table_ = std::move(table);
  ctx->inverse_ = std::move(inverse);
  ctx->identity_id_ = e;
  ctx->names_ = std::move(names);
  return ctx;
}

GroupCtxPtr GroupCtx::finite_from_csv_text(std::string_view text) {
  std::vector<std::vector<int>> table;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    for (auto& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream row(line);
    std::vector<int> ids;
    int v;
    while (row >> v) ids.push_back(v);
    if (!ids.empty()) table.push_back(std::move(ids));
  }
  if (table.empty()) throw Error("empty Cayley table");
  return finite_from_table(std::move(table));
}

GroupCtxPtr GroupCtx::cyclic(int n) {
  if (n < 1 || n > kMaxFiniteOrder) throw Error("cyclic order out of range");
  return cached("cyclic:" + std::to_string(n), [n] {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return finite_from_table(std::move(t));
  });
}

GroupCtxPtr GroupCtx::symmetric(int n) {
  if (n < 1 || n > 5) throw Error("symmetric group supported for n <= 5");
  return cached("symmetric:" + std::to_string(n), [n] {
    std::vector<std::vector<int>> perms;
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    do {
      perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    const int m = static_cast<int>(perms.size());
    auto index_of = [&](const std::vector<int>& p) {
      return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) -
                              perms.begin());
    };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::vector<int> comp(n);
        for (int k = 0; k < n; ++k) comp[k] = perms[i][perms[j][k]];
        t[i][j] = index_of(comp);
      }
    return finite_from_table(std::move(t));
  });
}

GroupCtxPtr GroupCtx::quaternion8() {
  return cached("quaternion8", [] {
    // ids: (unit, sign) with units 1,i,j,k -> id = unit*2 + (sign<0)
    auto mul_units = [](int a, int b, int& sign) {
      // 0=1, 1=i, 2=j, 3=k
      if (a == 0) return b;
      if (b == 0) return a;
      if (a == b) {
        sign = -sign;  // i^2 = j^2 = k^2 = -1
        return 0;
      }
      // cyclic order i->j->k
      static const int prod[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
      static const int psign[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
      sign *= psign[a][b];
      return prod[a][b];
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        int sign = (a % 2 == 1 ? -1 : 1) * (b % 2 == 1 ? -1 : 1);
        int unit = mul_units(a / 2, b / 2, sign);
        t[a][b] = unit * 2 + (sign < 0 ? 1 : 0);
      }
    return finite_from_table(std::move(t));
  });
}

GroupCtxPtr GroupCtx::free_abelian(int d) {
  if (d < 1 || d > 8) throw Error("Z^d supported for d in 1..8");
  return cached("zd:" + std::to_string(d), [d] {
    auto ctx = make_ctx();
    ctx->kind_ = Kind::FreeAbelian;
    ctx->rank_ = d;
    return ctx;
  });
}

GroupCtxPtr GroupCtx::free_group(int rank, std::vector<std::string> names) {
  if (rank < 1 || rank > 26) throw Error("free rank supported in 1..26");
  if (names.empty()) names = default_generator_names(rank);
  if (static_cast<int>(names.size()) != rank)
    throw Error("generator name list does not match the rank");
  std::string key = "free:" + std::to_string(rank);
  for (const auto& n : names) key += ":" + n;
  return cached(key, [rank, &names] {
    auto ctx = make_ctx();
    ctx->kind_ = Kind::Free;
    ctx->rank_ = rank;
    ctx->names_ = names;
    return ctx;
  });
}

int GroupCtx::order() const {
  if (!is_finite()) throw InfiniteGroup("group is infinite");
  return static_cast<int>(table_.size());
}

GroupElement GroupCtx::identity() const {
  GroupElement g;
  g.ctx_ = shared_from_this();
  switch (kind_) {
    case Kind::Finite:
      g.id_ = identity_id_;
      break;
    case Kind::FreeAbelian:
      g.vec_.assign(rank_, 0);
      break;
    case Kind::Free:
      break;
  }
  return g;
}

GroupElement GroupCtx::element(int id) const {
  if (!is_finite()) throw InfiniteGroup("element ids require a finite group");
  if (id < 0 || id >= order()) throw Error("element id out of range");
  GroupElement g;
  g.ctx_ = shared_from_this();
  g.id_ = id;
  return g;
}

std::vector<GroupElement> GroupCtx::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (int i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

GroupElement GroupCtx::from_vector(std::vector<int64_t> v) const {
  if (kind_ != Kind::FreeAbelian) throw Error("vector elements require Z^d");
  if (static_cast<int>(v.size()) != rank_) throw Error("vector has wrong dimension");
  GroupElement g;
  g.ctx_ = shared_from_this();
  g.vec_ = std::move(v);
  return g;
}

GroupElement GroupCtx::from_word(std::vector<int> letters) const {
  if (kind_ != Kind::Free) throw Error("word elements require a free group");
  for (int l : letters)
    if (l == 0 || std::abs(l) > rank_) throw Error("word letter out of range");
  reduce_word(letters);
  GroupElement g;
  g.ctx_ = shared_from_this();
  g.word_ = std::move(letters);
  return g;
}

GroupElement GroupCtx::gen(int k) const {
  if (k < 0 || k >= rank_) throw Error("generator index out of range");
  if (kind_ == Kind::Free) return from_word({k + 1});
  if (kind_ == Kind::FreeAbelian) {
    std::vector<int64_t> v(rank_, 0);
    v[k] = 1;
    return from_vector(std::move(v));
  }
  throw Error("gen() requires a free or free abelian group");
}

int GroupCtx::mul_ids(int a, int b) const {
  return table_[a][b];
}

int GroupCtx::inv_id(int a) const { return inverse_[a]; }

GroupElement GroupCtx::parse_element(std::string_view text) const {
  auto fail = [&](const std::string& why) -> GroupElement {
    throw Error("cannot parse group element '" + std::string(text) + "': " + why);
  };
  // trim
  size_t b = text.find_first_not_of(" \t");
  size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos) return fail("empty");
  text = text.substr(b, e - b + 1);

  switch (kind_) {
    case Kind::Finite: {
      std::string s(text);
      for (int i = 0; i < order(); ++i)
        if (names_[i] == s) return element(i);
      return fail("unknown element name");
    }
    case Kind::FreeAbelian: {
      std::string s(text);
      std::vector<int64_t> v;
      if (s.front() == '(') {
        if (s.back() != ')') return fail("missing ')'");
        s = s.substr(1, s.size() - 2);
        for (auto& ch : s)
          if (ch == ',') ch = ' ';
        std::istringstream in(s);
        int64_t x;
        while (in >> x) v.push_back(x);
        if (!in.eof()) return fail("bad coordinate");
      } else {
        try {
          size_t used = 0;
          v.push_back(std::stoll(s, &used));
          if (used != s.size()) return fail("trailing characters");
        } catch (const std::exception&) {
          return fail("not an integer");
        }
      }
      if (static_cast<int>(v.size()) != rank_) return fail("wrong dimension");
      return from_vector(std::move(v));
    }
    case Kind::Free: {
      std::string s(text);
      if (s == "1") return identity();
      std::vector<int> letters;
      size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '*')) ++i;
        if (i >= s.size()) break;
        // longest matching generator name
        int gen_idx = -1;
        size_t gen_len = 0;
        for (int k = 0; k < rank_; ++k) {
          const std::string& nm = names_[k];
          if (s.compare(i, nm.size(), nm) == 0 && nm.size() > gen_len) {
            gen_idx = k;
            gen_len = nm.size();
          }
        }
        if (gen_idx < 0) return fail("unknown generator");
        i += gen_len;
        long long exp = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          size_t used = 0;
          try {
            exp = std::stoll(s.substr(i), &used);
          } catch (const std::exception&) {
            return fail("bad exponent");
          }
          i += used;
        }
        int letter = gen_idx + 1;
        long long n = exp >= 0 ? exp : -exp;
        for (long long t = 0; t < n; ++t) letters.push_back(exp >= 0 ? letter : -letter);
      }
      return from_word(std::move(letters));
    }
  }
  return fail("unreachable");
}

std::string GroupCtx::describe() const {
  switch (kind_) {
    case Kind::Finite:
      return "finite(" + std::to_string(table_.size()) + ")";
    case Kind::FreeAbelian:
      return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
    case Kind::Free:
      return "free(" + std::to_string(rank_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (!ctx_ || ctx_.get() != o.ctx_.get())
    throw ContextMismatch("group elements from different groups");
  GroupElement r;
  r.ctx_ = ctx_;
  switch (ctx_->kind()) {
    case GroupCtx::Kind::Finite:
      r.id_ = ctx_->mul_ids(id_, o.id_);
      break;
    case GroupCtx::Kind::FreeAbelian: {
      r.vec_.resize(vec_.size());
      for (size_t i = 0; i < vec_.size(); ++i) r.vec_[i] = vec_[i] + o.vec_[i];
      break;
    }
    case GroupCtx::Kind::Free: {
      r.word_ = word_;
      r.word_.insert(r.word_.end(), o.word_.begin(), o.word_.end());
      std::vector<int> w = std::move(r.word_);
      // only the junction can cancel, but full reduction is cheap and safe
      std::vector<int> out;
      out.reserve(w.size());
      for (int letter : w) {
        if (!out.empty() && out.back() == -letter)
          out.pop_back();
        else
          out.push_back(letter);
      }
      r.word_ = std::move(out);
      break;
    }
  }
  return r;
}

GroupElement GroupElement::inv() const {
  GroupElement r;
  r.ctx_ = ctx_;
  switch (ctx_->kind()) {
    case GroupCtx::Kind::Finite:
      r.id_ = ctx_->inv_id(id_);
      break;
    case GroupCtx::Kind::FreeAbelian: {
      r.vec_.resize(vec_.size());
      for (size_t i = 0; i < vec_.size(); ++i) r.vec_[i] = -vec_[i];
      break;
    }
    case GroupCtx::Kind::Free: {
      r.word_.reserve(word_.size());
      for (size_t i = word_.size(); i-- > 0;) r.word_.push_back(-word_[i]);
      break;
    }
  }
  return r;
}

GroupElement GroupElement::pow(int64_t e) const {
  GroupElement base = e >= 0 ? *this : inv();
  uint64_t n = e >= 0 ? static_cast<uint64_t>(e) : static_cast<uint64_t>(-e);
  GroupElement acc = ctx_->identity();
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool GroupElement::is_identity() const { return *this == ctx_->identity(); }

int GroupElement::cmp(const GroupElement& o) const {
  if (!ctx_ || ctx_.get() != o.ctx_.get())
    throw ContextMismatch("comparing elements of different groups");
  switch (ctx_->kind()) {
    case GroupCtx::Kind::Finite:
      return id_ < o.id_ ? -1 : id_ > o.id_ ? 1 : 0;
    case GroupCtx::Kind::FreeAbelian:
      for (size_t i = 0; i < vec_.size(); ++i) {
        if (vec_[i] != o.vec_[i]) return vec_[i] < o.vec_[i] ? -1 : 1;
      }
      return 0;
    case GroupCtx::Kind::Free: {
      if (word_.size() != o.word_.size())
        return word_.size() < o.word_.size() ? -1 : 1;
      for (size_t i = 0; i < word_.size(); ++i) {
        auto ka = letter_key(word_[i]), kb = letter_key(o.word_[i]);
        if (ka != kb) return ka < kb ? -1 : 1;
      }
      return 0;
    }
  }
  return 0;
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (ctx_.get() != o.ctx_.get()) return false;
  switch (ctx_->kind()) {
    case GroupCtx::Kind::Finite:
      return id_ == o.id_;
    case GroupCtx::Kind::FreeAbelian:
      return vec_ == o.vec_;
    case GroupCtx::Kind::Free:
      return word_ == o.word_;
  }
  return false;
}

std::string GroupElement::str() const {
  switch (ctx_->kind()) {
    case GroupCtx::Kind::Finite:
      return ctx_->element_names()[id_];
    case GroupCtx::Kind::FreeAbelian: {
      if (vec_.size() == 1) return std::to_string(vec_[0]);
      std::string s = "(";
      for (size_t i = 0; i < vec_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(vec_[i]);
      }
      return s + ")";
    }
    case GroupCtx::Kind::Free: {
      if (word_.empty()) return "1";
      std::string s;
      size_t i = 0;
      while (i < word_.size()) {
        size_t j = i;
        while (j < word_.size() && word_[j] == word_[i]) ++j;
        if (!s.empty()) s += "*";
        s += ctx_->generator_names()[std::abs(word_[i]) - 1];
        long long run = static_cast<long long>(j - i);
        if (word_[i] < 0) run = -run;
        if (run != 1) s += "^" + std::to_string(run);
        i = j;
      }
      return s;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// MemorySet

MemorySet::MemorySet(GroupCtxPtr ctx, std::vector<GroupElement> elems)
    : ctx_(std::move(ctx)), elems_(std::move(elems)) {
  for (const auto& g : elems_)
    if (g.ctx().get() != ctx_.get())
      throw ContextMismatch("memory set element from a different group");
  std::sort(elems_.begin(), elems_.end(), GrpLess{});
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool MemorySet::contains(const GroupElement& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g, GrpLess{});
}

std::optional<size_t> MemorySet::index_of(const GroupElement& g) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), g, GrpLess{});
  if (it == elems_.end() || !(*it == g)) return std::nullopt;
  return static_cast<size_t>(it - elems_.begin());
}

bool MemorySet::operator==(const MemorySet& o) const {
  return ctx_.get() == o.ctx_.get() && elems_ == o.elems_;
}

std::string MemorySet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += elems_[i].str();
  }
  return s + "}";
}

MemorySet product_set(const MemorySet& a, const MemorySet& b) {
  if (a.ctx().get() != b.ctx().get())
    throw ContextMismatch("product of memory sets over different groups");
  std::vector<GroupElement> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return MemorySet(a.ctx(), std::move(out));
}

MemorySet inverse_set(const MemorySet& m) {
  std::vector<GroupElement> out;
  out.reserve(m.size());
  for (const auto& x : m) out.push_back(x.inv());
  return MemorySet(m.ctx(), std::move(out));
}

MemorySet symmetrize(const MemorySet& m) {
  std::vector<GroupElement> out(m.elems());
  for (const auto& x : m) out.push_back(x.inv());
  out.push_back(m.ctx()->identity());
  return MemorySet(m.ctx(), std::move(out));
}

MemorySet union_sets(const MemorySet& a, const MemorySet& b) {
  if (a.ctx().get() != b.ctx().get())
    throw ContextMismatch("union of memory sets over different groups");
  std::vector<GroupElement> out(a.elems());
  out.insert(out.end(), b.elems().begin(), b.elems().end());
  return MemorySet(a.ctx(), std::move(out));
}

MemorySet interval_memory(const GroupCtxPtr& zctx, int64_t lo, int64_t hi) {
  if (zctx->kind() != GroupCtx::Kind::FreeAbelian || zctx->rank() != 1)
    throw Error("interval memory requires Z");
  std::vector<GroupElement> out;
  for (int64_t k = lo; k <= hi; ++k) out.push_back(zctx->from_vector({k}));
  return MemorySet(zctx, std::move(out));
}

MemorySet ball(const GroupCtxPtr& ctx, int radius, uint64_t budget) {
  std::vector<GroupElement> out;
  switch (ctx->kind()) {
    case GroupCtx::Kind::Finite:
      return MemorySet(ctx, ctx->elements());
    case GroupCtx::Kind::FreeAbelian: {
      int d = ctx->rank();
      uint64_t count = 1;
      for (int i = 0; i < d; ++i) {
        count *= static_cast<uint64_t>(2 * radius + 1);
        if (count > budget) throw EnumerationBudgetExceeded("ball over budget");
      }
      std::vector<int64_t> v(d, -radius);
      while (true) {
        out.push_back(ctx->from_vector(v));
        int i = 0;
        while (i < d && v[i] == radius) v[i++] = -radius;
        if (i == d) break;
        ++v[i];
      }
      return MemorySet(ctx, std::move(out));
    }
    case GroupCtx::Kind::Free: {
      out.push_back(ctx->identity());
      std::vector<GroupElement> frontier = {ctx->identity()};
      for (int step = 0; step < radius; ++step) {
        std::vector<GroupElement> next;
        for (const auto& w : frontier) {
          for (int k = 0; k < ctx->rank(); ++k) {
            for (int sign : {1, -1}) {
              GroupElement g = w * ctx->from_word({sign * (k + 1)});
              if (static_cast<int>(g.word().size()) == step + 1) {
                next.push_back(g);
                out.push_back(g);
                if (out.size() > budget)
                  throw EnumerationBudgetExceeded("ball over budget");
              }
            }
          }
        }
        frontier = std::move(next);
      }
      return MemorySet(ctx, std::move(out));
    }
  }
  throw Error("unreachable");
}

}  // namespace rkg
