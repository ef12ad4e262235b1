#include "rkg/fields.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace rkg {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic mod p (p <= 97, so plain uint64 never overflows).

uint64_t mod_add(uint64_t a, uint64_t b, uint64_t p) { return (a + b) % p; }
uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b % p) % p; }
uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }

uint64_t mod_inv(uint64_t a, uint64_t p) {
  // extended Euclid; p prime, a != 0 mod p
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw DivisionByZero("no inverse mod " + std::to_string(p));
  return static_cast<uint64_t>((t % static_cast<int64_t>(p) + static_cast<int64_t>(p)) %
                               static_cast<int64_t>(p));
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, coefficients ascending.

using PolyU = std::vector<uint64_t>;

void poly_trim(PolyU& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_deg(const PolyU& a) { return static_cast<int>(a.size()) - 1; }

PolyU poly_mul(const PolyU& a, const PolyU& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyU c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  poly_trim(c);
  return c;
}

// remainder of a modulo monic m
PolyU poly_rem(PolyU a, const PolyU& m, uint64_t p) {
  poly_trim(a);
  const int dm = poly_deg(m);
  while (poly_deg(a) >= dm) {
    uint64_t lead = a.back();
    int shift = poly_deg(a) - dm;
    if (lead != 0) {
      for (int i = 0; i <= dm; ++i)
        a[i + shift] = mod_sub(a[i + shift], mod_mul(lead, m[i], p), p);
    }
    poly_trim(a);
  }
  return a;
}

PolyU poly_mulmod(const PolyU& a, const PolyU& b, const PolyU& m, uint64_t p) {
  return poly_rem(poly_mul(a, b, p), m, p);
}

PolyU poly_powmod(PolyU base, Int e, const PolyU& m, uint64_t p) {
  PolyU result = {1};
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0))
      result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

// extended Euclid: inverse of a modulo monic irreducible m
PolyU poly_invmod(const PolyU& a, const PolyU& m, uint64_t p) {
  PolyU r0 = m, r1 = poly_rem(a, m, p);
  PolyU t0 = {}, t1 = {1};
  if (r1.empty()) throw DivisionByZero("division by zero in GF(p^r)");
  while (!r1.empty()) {
    // divide r0 by r1
    PolyU q;
    PolyU rem = r0;
    uint64_t lead_inv = mod_inv(r1.back(), p);
    int d1 = poly_deg(r1);
    while (poly_deg(rem) >= d1) {
      int shift = poly_deg(rem) - d1;
      uint64_t c = mod_mul(rem.back(), lead_inv, p);
      if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, 0);
      q[shift] = mod_add(q[shift], c, p);
      for (int i = 0; i <= d1; ++i)
        rem[i + shift] = mod_sub(rem[i + shift], mod_mul(c, r1[i], p), p);
      poly_trim(rem);
    }
    PolyU t2 = t0;
    PolyU qt1 = poly_mul(q, t1, p);
    if (t2.size() < qt1.size()) t2.resize(qt1.size(), 0);
    for (size_t i = 0; i < qt1.size(); ++i) t2[i] = mod_sub(t2[i], qt1[i], p);
    poly_trim(t2);
    r0 = r1;
    r1 = rem;
    t0 = t1;
    t1 = t2;
  }
  // r0 = gcd (a constant, since m is irreducible and a != 0)
  if (poly_deg(r0) != 0) throw DivisionByZero("modulus not irreducible");
  uint64_t scale = mod_inv(r0[0], p);
  for (auto& c : t0) c = mod_mul(c, scale, p);
  return poly_rem(std::move(t0), m, p);
}

// evaluate g (coefficients over F_p) at the residue y modulo m
PolyU poly_eval_at(const PolyU& g, const PolyU& y, const PolyU& m, uint64_t p) {
  PolyU acc = {};
  for (size_t i = g.size(); i-- > 0;) {
    acc = poly_mulmod(acc, y, m, p);
    if (g[i] != 0) {
      if (acc.empty()) acc.resize(1, 0);
      acc[0] = mod_add(acc[0], g[i], p);
    }
    poly_trim(acc);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Integer factorization for primitivity tests (numbers up to ~2^80).

Int int_pow(uint64_t base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

Int mulmod_big(const Int& a, const Int& b, const Int& n) { return a * b % n; }

Int powmod_big(Int base, Int e, const Int& n) {
  Int r = 1;
  base %= n;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = mulmod_big(r, base, n);
    base = mulmod_big(base, base, n);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(const Int& n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  // deterministic for n < 3.3e24, which covers every p^r - 1 we allow
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = powmod_big(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_big(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n % 1000000007));
  while (true) {
    Int c = rng() % n;
    Int x = rng() % n, y = x, d = 1;
    auto f = [&](const Int& v) { return (mulmod_big(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = boost::multiprecision::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const Int& n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    primes.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

std::vector<Int> distinct_prime_factors(Int n) {
  std::vector<Int> primes;
  for (uint64_t q = 2; q <= 100000 && Int(q) * q <= n; q == 2 ? q = 3 : q += 2) {
    if (n % q == 0) {
      primes.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

// ---------------------------------------------------------------------------

std::vector<unsigned> proper_divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned m = 1; m < n; ++m)
    if (n % m == 0) d.push_back(m);
  return d;
}

constexpr uint64_t kMaxPrime = 97;
constexpr unsigned kMaxDegree = 12;
constexpr uint64_t kConwayScanBudget = 1ull << 22;

}  // namespace

bool is_small_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Conway polynomial search.
//
// Candidates of degree n are scanned in the standard order: write
// f = x^n + sum_i (-1)^(n-i) c_i x^i and order by the word (c_{n-1},...,c_0)
// lexicographically.  The first candidate that is primitive and compatible
// with the Conway polynomials of all proper divisor degrees wins.

std::vector<uint64_t> conway_polynomial(uint64_t p, unsigned n) {
  if (!is_small_prime(p) || p > kMaxPrime)
    throw Error("unsupported characteristic " + std::to_string(p));
  if (n < 1 || n > kMaxDegree)
    throw Error("unsupported extension degree " + std::to_string(n));

  static std::mutex mu;
  static std::map<std::pair<uint64_t, unsigned>, PolyU> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;
  }

  const Int group_order = int_pow(p, n) - 1;
  const std::vector<Int> prime_factors = distinct_prime_factors(group_order);
  std::vector<std::pair<unsigned, PolyU>> smaller;
  for (unsigned m : proper_divisors(n))
    smaller.emplace_back(m, conway_polynomial(p, m));

  std::vector<uint64_t> word(n, 0);
  for (uint64_t scanned = 0;; ++scanned) {
    if (scanned >= kConwayScanBudget)
      throw EnumerationBudgetExceeded("Conway polynomial search for GF(" +
                                      std::to_string(p) + "^" + std::to_string(n) +
                                      ") exceeded its scan budget");
    // word holds (c_{n-1},...,c_0); build the candidate
    PolyU f(n + 1, 0);
    f[n] = 1;
    for (unsigned i = 0; i < n; ++i) {
      uint64_t c = word[n - 1 - i];  // word[0] is c_{n-1}
      f[i] = ((n - i) % 2 == 0) ? c : (p - c) % p;
    }
    bool ok = f[0] != 0;
    if (ok) {
      // compatibility with all smaller Conway polynomials
      for (const auto& [m, cm] : smaller) {
        Int quotient = group_order / (int_pow(p, m) - 1);
        PolyU y = poly_powmod({0, 1}, quotient, f, p);
        if (!poly_eval_at(cm, y, f, p).empty()) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      // primitivity: ord(x) == p^n - 1 (this also forces irreducibility)
      PolyU full = poly_powmod({0, 1}, group_order, f, p);
      if (!(full.size() == 1 && full[0] == 1)) ok = false;
      if (ok) {
        for (const Int& q : prime_factors) {
          PolyU part = poly_powmod({0, 1}, group_order / q, f, p);
          if (part.size() == 1 && part[0] == 1) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      std::lock_guard<std::mutex> lk(mu);
      cache[{p, n}] = f;
      return f;
    }
    // next word in lexicographic order
    int pos = static_cast<int>(n) - 1;
    while (pos >= 0 && word[pos] == p - 1) word[pos--] = 0;
    if (pos < 0)
      throw Error("no Conway polynomial found for GF(" + std::to_string(p) + "^" +
                  std::to_string(n) + ")");
    ++word[pos];
  }
}

// ---------------------------------------------------------------------------
// FieldCtx

namespace {

bool poly_is_irreducible(const PolyU& m, uint64_t p) {
  const unsigned n = static_cast<unsigned>(poly_deg(m));
  if (n < 1) return false;
  // x^(p^n) == x mod m, and gcd-free at maximal subfield levels:
  // x^(p^(n/q)) != x for every prime q | n.
  PolyU x = {0, 1};
  PolyU xp = poly_powmod(x, int_pow(p, n), m, p);
  if (xp != poly_rem(x, m, p)) return false;
  for (unsigned q = 2; q <= n; ++q) {
    if (n % q != 0 || !is_small_prime(q)) continue;
    PolyU xq = poly_powmod(x, int_pow(p, n / q), m, p);
    // must differ from x
    if (xq == poly_rem(x, m, p)) return false;
  }
  return true;
}

struct CtxCaches {
  std::mutex mu;
  std::shared_ptr<const FieldCtx> rationals;
  std::map<std::pair<uint64_t, PolyU>, FieldCtxPtr> finite;
  // canonical embedding data: image of the source generator in the target
  std::map<std::pair<const FieldCtx*, const FieldCtx*>, FieldElem> embeddings;
};

CtxCaches& caches() {
  static CtxCaches c;
  return c;
}

struct FieldCtxAccess : FieldCtx {};

FieldCtxPtr make_ctx() { return std::make_shared<FieldCtxAccess>(); }

FieldCtx* mut(const FieldCtxPtr& p) { return const_cast<FieldCtx*>(p.get()); }

}  // namespace

FieldCtxPtr FieldCtx::rationals() {
  auto& c = caches();
  std::lock_guard<std::mutex> lk(c.mu);
  if (!c.rationals) c.rationals = make_ctx();
  return c.rationals;
}

FieldCtxPtr FieldCtx::gf(uint64_t p, unsigned r) {
  return gf_with_modulus(p, conway_polynomial(p, r));
}

FieldCtxPtr FieldCtx::gf_with_modulus(uint64_t p, std::vector<uint64_t> modulus) {
  if (!is_small_prime(p) || p > kMaxPrime)
    throw Error("unsupported characteristic " + std::to_string(p));
  for (auto& c : modulus) c %= p;
  poly_trim(modulus);
  unsigned r = static_cast<unsigned>(poly_deg(modulus));
  if (r < 1 || r > kMaxDegree || modulus.back() != 1)
    throw Error("modulus must be monic of degree 1..12");
  if (!poly_is_irreducible(modulus, p))
    throw Error("modulus is not irreducible over GF(" + std::to_string(p) + ")");

  auto& c = caches();
  std::lock_guard<std::mutex> lk(c.mu);
  auto key = std::make_pair(p, modulus);
  auto it = c.finite.find(key);
  if (it != c.finite.end()) return it->second;
  auto ctx = make_ctx();
  FieldCtx* m = mut(ctx);
  m->kind_ = Kind::Finite;
  m->p_ = p;
  m->r_ = r;
  m->modulus_ = modulus;
  // mark whether this modulus is the canonical (Conway) one, so the
  // generator-power embedding scheme can be used
  m->conway_ = (int_pow(p, r) <= Int(kConwayScanBudget)) &&
               (modulus == conway_polynomial(p, r));
  c.finite.emplace(std::move(key), ctx);
  return ctx;
}

Int FieldCtx::order() const {
  if (is_rational()) throw Error("Q is infinite");
  return int_pow(p_, r_);
}

uint64_t FieldCtx::order_u64() const {
  Int o = order();
  if (o > Int(1ull << 62)) throw Error("field too large to enumerate");
  return static_cast<uint64_t>(o);
}

FieldElem FieldCtx::zero() const {
  if (is_rational()) return FieldElem(shared_from_this(), Rat(0));
  return FieldElem(shared_from_this(), std::vector<uint64_t>(r_, 0));
}

FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(long long v) const {
  if (is_rational()) return FieldElem(shared_from_this(), Rat(v));
  std::vector<uint64_t> c(r_, 0);
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += static_cast<long long>(p_);
  c[0] = static_cast<uint64_t>(m);
  return FieldElem(shared_from_this(), std::move(c));
}

FieldElem FieldCtx::from_rat(const Rat& v) const {
  if (is_rational()) return FieldElem(shared_from_this(), v);
  Int num = boost::multiprecision::numerator(v);
  Int den = boost::multiprecision::denominator(v);
  Int pn = Int(p_);
  Int nm = num % pn;
  if (nm < 0) nm += pn;
  Int dm = den % pn;
  if (dm == 0) throw DivisionByZero("denominator vanishes in " + name());
  FieldElem n = from_int(static_cast<long long>(nm));
  FieldElem d = from_int(static_cast<long long>(dm));
  return n / d;
}

FieldElem FieldCtx::generator() const {
  if (!is_finite()) throw WrongCharacteristic("Q has no distinguished generator");
  if (r_ == 1) {
    // root of the degree-one modulus x - c, i.e. c
    return from_int(static_cast<long long>((p_ - modulus_[0] % p_) % p_));
  }
  std::vector<uint64_t> c(r_, 0);
  c[1] = 1;
  return FieldElem(shared_from_this(), std::move(c));
}

FieldElem FieldCtx::element_from_coeffs(std::vector<uint64_t> coeffs) const {
  if (!is_finite()) throw WrongCharacteristic("coefficient vectors require GF(p^r)");
  for (auto& c : coeffs) c %= p_;
  PolyU reduced = poly_rem(std::move(coeffs), modulus_, p_);
  reduced.resize(r_, 0);
  return FieldElem(shared_from_this(), std::move(reduced));
}

FieldElem FieldCtx::element_at(uint64_t index) const {
  if (!is_finite()) throw WrongCharacteristic("element_at requires GF(p^r)");
  std::vector<uint64_t> c(r_, 0);
  for (unsigned i = 0; i < r_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  if (index != 0) throw Error("element index out of range");
  return FieldElem(shared_from_this(), std::move(c));
}

uint64_t FieldCtx::index_of(const FieldElem& e) const {
  if (e.ctx().get() != this) throw ContextMismatch("index_of: wrong field");
  uint64_t idx = 0;
  for (unsigned i = r_; i-- > 0;) idx = idx * p_ + e.coeffs()[i];
  return idx;
}

std::vector<FieldElem> FieldCtx::all_elements(uint64_t budget) const {
  uint64_t n = order_u64();
  if (n > budget) throw EnumerationBudgetExceeded("field enumeration over budget");
  std::vector<FieldElem> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::string FieldCtx::name() const {
  if (is_rational()) return "Q";
  if (r_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(r_) + ")";
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem() : ctx_(FieldCtx::rationals()), rat_(0) {}

bool FieldElem::is_zero() const {
  if (ctx_->is_rational()) return rat_ == 0;
  return std::all_of(c_.begin(), c_.end(), [](uint64_t v) { return v == 0; });
}

bool FieldElem::is_one() const {
  if (ctx_->is_rational()) return rat_ == 1;
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](uint64_t v) { return v == 0; });
}

namespace {

// Canonical embedding data: image of src's generator inside dst.
FieldElem embedding_generator_image(const FieldCtxPtr& src, const FieldCtxPtr& dst) {
  auto& c = caches();
  {
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.embeddings.find({src.get(), dst.get()});
    if (it != c.embeddings.end()) return it->second;
  }
  const uint64_t p = src->characteristic();
  FieldElem image = dst->zero();
  if (src->conway_tower() && dst->conway_tower()) {
    Int quotient = (dst->order() - 1) / (src->order() - 1);
    image = dst->generator().pow(quotient);
  } else {
    // least root of the source modulus in the destination field
    bool found = false;
    uint64_t n = dst->order_u64();
    const auto& m = src->modulus();
    for (uint64_t i = 0; i < n; ++i) {
      FieldElem cand = dst->element_at(i);
      FieldElem acc = dst->zero();
      for (size_t k = m.size(); k-- > 0;) {
        acc = acc * cand + dst->from_int(static_cast<long long>(m[k]));
      }
      if (acc.is_zero()) {
        image = cand;
        found = true;
        break;
      }
    }
    if (!found) throw Error("no root of subfield modulus found (not a subfield?)");
  }
  // sanity: the image must satisfy the source modulus
  {
    FieldElem acc = dst->zero();
    const auto& m = src->modulus();
    for (size_t k = m.size(); k-- > 0;)
      acc = acc * image + dst->from_int(static_cast<long long>(m[k]));
    if (!acc.is_zero()) throw Error("embedding construction failed");
  }
  std::lock_guard<std::mutex> lk(c.mu);
  c.embeddings.emplace(std::make_pair(src.get(), dst.get()), image);
  return image;
}

// Maps an element up a tower: requires src degree | dst degree.
FieldElem embed_up(const FieldElem& a, const FieldCtxPtr& dst) {
  const FieldCtxPtr& src = a.ctx();
  if (src.get() == dst.get()) return a;
  if (src->degree() == 1)
    return dst->from_int(static_cast<long long>(a.coeffs()[0]));
  FieldElem g = embedding_generator_image(src, dst);
  FieldElem acc = dst->zero();
  const auto& cs = a.coeffs();
  for (size_t k = cs.size(); k-- > 0;)
    acc = acc * g + dst->from_int(static_cast<long long>(cs[k]));
  return acc;
}

// Expresses a (known to lie in the image of F_{p^d}) as an element of mid,
// where mid has degree d dividing the degree of a's field.
FieldElem project_down(const FieldElem& a, const FieldCtxPtr& mid) {
  const FieldCtxPtr& src = a.ctx();
  const uint64_t p = src->characteristic();
  const unsigned bigR = src->degree();
  const unsigned d = mid->degree();
  // basis of the embedded copy of mid inside src: images of 1, g, ..., g^(d-1)
  FieldElem g = embedding_generator_image(mid, src);
  std::vector<std::vector<uint64_t>> cols;
  FieldElem power = src->one();
  for (unsigned j = 0; j < d; ++j) {
    cols.push_back(power.coeffs());
    power = power * g;
  }
  // solve cols * y = coeffs(a) over F_p
  std::vector<std::vector<uint64_t>> m(bigR, std::vector<uint64_t>(d + 1, 0));
  for (unsigned i = 0; i < bigR; ++i) {
    for (unsigned j = 0; j < d; ++j) m[i][j] = cols[j][i];
    m[i][d] = a.coeffs()[i];
  }
  std::vector<int> pivot_col(bigR, -1);
  unsigned row = 0;
  for (unsigned col = 0; col < d && row < bigR; ++col) {
    unsigned sel = row;
    while (sel < bigR && m[sel][col] == 0) ++sel;
    if (sel == bigR) continue;
    std::swap(m[sel], m[row]);
    uint64_t inv = mod_inv(m[row][col], p);
    for (unsigned j = col; j <= d; ++j) m[row][j] = mod_mul(m[row][j], inv, p);
    for (unsigned i = 0; i < bigR; ++i) {
      if (i == row || m[i][col] == 0) continue;
      uint64_t f = m[i][col];
      for (unsigned j = col; j <= d; ++j)
        m[i][j] = mod_sub(m[i][j], mod_mul(f, m[row][j], p), p);
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  for (unsigned i = row; i < bigR; ++i)
    if (m[i][d] != 0) throw Error("element does not lie in the requested subfield");
  std::vector<uint64_t> y(d, 0);
  for (unsigned i = 0; i < row; ++i)
    if (pivot_col[i] >= 0) y[pivot_col[i]] = m[i][d];
  return mid->element_from_coeffs(std::move(y));
}

// Lift two finite elements into a common tower level.
void align(FieldElem& a, FieldElem& b) {
  if (a.ctx().get() == b.ctx().get()) return;
  if (a.ctx()->is_rational() || b.ctx()->is_rational())
    throw ContextMismatch("cannot mix Q with GF(p^r)");
  if (a.ctx()->characteristic() != b.ctx()->characteristic())
    throw ContextMismatch("fields of different characteristic");
  unsigned ra = a.ctx()->degree(), rb = b.ctx()->degree();
  if (rb % ra == 0)
    a = a.in_field(b.ctx());
  else if (ra % rb == 0)
    b = b.in_field(a.ctx());
  else
    throw ContextMismatch("no common tower level for " + a.ctx()->name() + " and " +
                          b.ctx()->name());
}

}  // namespace

FieldElem FieldElem::operator-() const {
  if (ctx_->is_rational()) return FieldElem(ctx_, -rat_);
  std::vector<uint64_t> c(c_.size());
  uint64_t p = ctx_->characteristic();
  for (size_t i = 0; i < c_.size(); ++i) c[i] = (p - c_[i]) % p;
  return FieldElem(ctx_, std::move(c));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  FieldElem a = *this, b = o;
  align(a, b);
  if (a.ctx_->is_rational()) return FieldElem(a.ctx_, a.rat_ + b.rat_);
  uint64_t p = a.ctx_->characteristic();
  std::vector<uint64_t> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_add(a.c_[i], b.c_[i], p);
  return FieldElem(a.ctx_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  FieldElem a = *this, b = o;
  align(a, b);
  if (a.ctx_->is_rational()) return FieldElem(a.ctx_, a.rat_ * b.rat_);
  uint64_t p = a.ctx_->characteristic();
  PolyU prod = poly_rem(poly_mul(a.c_, b.c_, p), a.ctx_->modulus(), p);
  prod.resize(a.ctx_->degree(), 0);
  return FieldElem(a.ctx_, std::move(prod));
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (ctx_->is_rational()) return FieldElem(ctx_, Rat(1) / rat_);
  uint64_t p = ctx_->characteristic();
  PolyU r = poly_invmod(c_, ctx_->modulus(), p);
  r.resize(ctx_->degree(), 0);
  return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inv(); }

FieldElem FieldElem::pow(Int e) const {
  FieldElem base = *this;
  if (e < 0) {
    base = base.inv();
    e = -e;
  }
  FieldElem r = ctx_->one();
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FieldElem FieldElem::frobenius() const {
  if (!ctx_->is_finite())
    throw WrongCharacteristic("Frobenius requires a finite field");
  return pow(Int(ctx_->characteristic()));
}

unsigned FieldElem::subfield_degree() const {
  if (!ctx_->is_finite())
    throw WrongCharacteristic("subfield_degree requires a finite field");
  FieldElem e = *this;
  for (unsigned d = 1; d <= ctx_->degree(); ++d) {
    e = e.frobenius();
    if (e == *this) return d;
  }
  throw Error("subfield_degree: element not fixed by any Frobenius power");
}

FieldElem FieldElem::in_field(const FieldCtxPtr& target) const {
  if (ctx_.get() == target.get()) return *this;
  if (ctx_->is_rational() || target->is_rational()) {
    if (ctx_->is_rational() && target->is_finite()) return target->from_rat(rat_);
    throw ContextMismatch("cannot move a GF(p^r) value into Q");
  }
  if (ctx_->characteristic() != target->characteristic())
    throw ContextMismatch("fields of different characteristic");
  unsigned d = subfield_degree();
  if (target->degree() % d != 0)
    throw ContextMismatch("element of degree " + std::to_string(d) +
                          " does not fit in " + target->name());
  if (target->degree() % ctx_->degree() == 0) return embed_up(*this, target);
  if (d == 1) return target->from_int(static_cast<long long>(coeffs()[0]));
  FieldCtxPtr mid = FieldCtx::gf(ctx_->characteristic(), d);
  return embed_up(project_down(*this, mid), target);
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (ctx_.get() != o.ctx_.get()) return false;
  if (ctx_->is_rational()) return rat_ == o.rat_;
  return c_ == o.c_;
}

std::string FieldElem::str() const {
  if (ctx_->is_rational()) {
    Int num = boost::multiprecision::numerator(rat_);
    Int den = boost::multiprecision::denominator(rat_);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
  }
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c_[i]);
      continue;
    }
    if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
    out += "w";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

uint64_t PointLadder::total() const {
  uint64_t t = 0;
  for (const auto& [r, pts] : by_level) t += pts.size();
  return t;
}

PointLadder enumerate_points(uint64_t p, unsigned depth, int dim, uint64_t budget) {
  if (depth < 1 || dim < 1) throw Error("enumerate_points: depth and dim must be >= 1");
  FieldCtxPtr top = FieldCtx::gf(p, depth);
  uint64_t q = top->order_u64();
  uint64_t count = 1;
  for (int i = 0; i < dim; ++i) {
    if (count > budget / q + 1) throw EnumerationBudgetExceeded("point ladder over budget");
    count *= q;
  }
  if (count > budget) throw EnumerationBudgetExceeded("point ladder over budget");

  std::vector<FieldElem> elems = top->all_elements(budget);
  std::vector<unsigned> degs(elems.size());
  for (size_t i = 0; i < elems.size(); ++i) degs[i] = elems[i].subfield_degree();

  PointLadder ladder;
  ladder.p = p;
  ladder.depth = depth;
  ladder.dim = dim;
  std::vector<uint64_t> odo(dim, 0);
  for (uint64_t n = 0; n < count; ++n) {
    std::vector<FieldElem> tuple;
    tuple.reserve(dim);
    unsigned level = 1;
    for (int i = 0; i < dim; ++i) {
      tuple.push_back(elems[odo[i]]);
      level = static_cast<unsigned>(std::lcm(level, degs[odo[i]]));
    }
    ladder.by_level[level].push_back(std::move(tuple));
    for (int i = 0; i < dim; ++i) {
      if (++odo[i] < q) break;
      odo[i] = 0;
    }
  }
  return ladder;
}

}  // namespace rkg
