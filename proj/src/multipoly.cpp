#include "dirackit/multipoly.hpp"

#include <algorithm>

namespace dirackit {

namespace {

int expoDegree(const Expo& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

}  // namespace

bool GrlexLess::operator()(const Expo& a, const Expo& b) const {
  int da = expoDegree(a), db = expoDegree(b);
  if (da != db) return da < db;
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int ai = i < a.size() ? a[i] : 0;
    int bi = i < b.size() ? b[i] : 0;
    if (ai != bi) return ai < bi;
  }
  return false;
}

MultiPoly MultiPoly::constant(const Scalar& c, int nvars) {
  MultiPoly p(nvars);
  if (!c.isZero()) p.terms_.emplace(Expo(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int i, int nvars) {
  if (i < 0 || i >= nvars) throw IndexOutOfRange("variable index out of range");
  MultiPoly p(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms_.emplace(std::move(e), Scalar(1));
  return p;
}

MultiPoly MultiPoly::monomial(const Scalar& c, Expo e) {
  MultiPoly p(static_cast<int>(e.size()));
  if (!c.isZero()) p.terms_.emplace(std::move(e), c);
  return p;
}

bool MultiPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && expoDegree(terms_.begin()->first) == 0);
}

Scalar MultiPoly::constantValue() const {
  if (isZero()) return Scalar(0);
  if (!isConstant()) throw InvalidInput("constantValue of non-constant polynomial");
  return terms_.begin()->second;
}

int MultiPoly::totalDegree() const {
  if (isZero()) return -1;
  return expoDegree(terms_.rbegin()->first);
}

int MultiPoly::degreeIn(int var) const {
  if (isZero()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_)
    if (var < static_cast<int>(e.size())) d = std::max(d, e[var]);
  return d;
}

void MultiPoly::addTerm(const Expo& e, const Scalar& c) {
  if (c.isZero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

const Expo& MultiPoly::leadExpo() const {
  if (isZero()) throw InvalidInput("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Scalar& MultiPoly::leadCoeff() const {
  if (isZero()) throw InvalidInput("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void MultiPoly::padTo(int nvars) {
  if (nvars <= nvars_) return;
  std::map<Expo, Scalar, GrlexLess> padded;
  for (const auto& [e, c] : terms_) {
    Expo pe = e;
    pe.resize(nvars, 0);
    padded.emplace(std::move(pe), c);
  }
  terms_ = std::move(padded);
  nvars_ = nvars;
}

void MultiPoly::unify(MultiPoly& a, MultiPoly& b) {
  if (a.nvars_ < b.nvars_) a.padTo(b.nvars_);
  if (b.nvars_ < a.nvars_) b.padTo(a.nvars_);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  unify(a, b);
  for (const auto& [e, c] : b.terms_) a.addTerm(e, c);
  return a;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  unify(a, b);
  MultiPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Expo e(a.nvars_, 0);
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.addTerm(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Scalar& c) const {
  MultiPoly r(nvars_);
  if (c.isZero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  unify(a, b);
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (var >= static_cast<int>(e.size()) || e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    r.addTerm(d, c * Scalar(e[var]));
  }
  return r;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw ArityMismatch("evaluate: point arity differs from polynomial arity");
  Scalar acc(0);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

MultiPoly MultiPoly::conj() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
  return r;
}

MultiPoly MultiPoly::divExact(const MultiPoly& g) const {
  if (g.isZero()) throw DivisionByZero("exact division by zero polynomial");
  MultiPoly r = *this, d = g;
  unify(r, d);
  MultiPoly q(r.nvars_);
  while (!r.isZero()) {
    const Expo& le = r.leadExpo();
    const Expo& lg = d.leadExpo();
    Expo diff(r.nvars_, 0);
    for (int i = 0; i < r.nvars_; ++i) {
      diff[i] = le[i] - lg[i];
      if (diff[i] < 0) throw InvalidInput("divExact: not divisible");
    }
    Scalar c = r.leadCoeff() / d.leadCoeff();
    MultiPoly t = monomial(c, diff);
    q = q + t;
    r = r - t * d;
  }
  return q;
}

MultiPoly MultiPoly::monic() const {
  if (isZero()) return *this;
  return *this * leadCoeff().inverse();
}

namespace {

// coefficients of p viewed as a univariate polynomial in variable var
std::vector<MultiPoly> coeffsIn(const MultiPoly& p, int var) {
  std::vector<MultiPoly> cs(static_cast<size_t>(std::max(p.degreeIn(var), 0)) + 1,
                            MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Expo r = e;
    int k = r[var];
    r[var] = 0;
    cs[k].addTerm(r, c);
  }
  return cs;
}

MultiPoly fromCoeffs(const std::vector<MultiPoly>& cs, int var, int nvars) {
  MultiPoly p(nvars);
  for (size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms()) {
      Expo r = e;
      r[var] += static_cast<int>(k);
      p.addTerm(r, c);
    }
  }
  return p;
}

MultiPoly contentIn(const MultiPoly& p, int var) {
  MultiPoly g(p.nvars());
  for (const MultiPoly& c : coeffsIn(p, var)) g = MultiPoly::gcd(g, c);
  return g;
}

MultiPoly leadCoeffIn(const MultiPoly& p, int var) { return coeffsIn(p, var).back(); }

// full pseudo-remainder lb^(deg a - deg b + 1) * (a mod b) in variable var
MultiPoly prem(MultiPoly a, const MultiPoly& b, int var) {
  int db = b.degreeIn(var);
  MultiPoly lb = leadCoeffIn(b, var);
  int steps = a.degreeIn(var) - db + 1;
  while (!a.isZero() && a.degreeIn(var) >= db) {
    int da = a.degreeIn(var);
    MultiPoly la = leadCoeffIn(a, var);
    Expo shift(static_cast<size_t>(a.nvars()), 0);
    shift[var] = da - db;
    MultiPoly t = MultiPoly::monomial(Scalar(1), shift) * la;
    a = a * lb - t * b;
    --steps;
  }
  for (; steps > 0; --steps) a = a * lb;
  return a;
}

MultiPoly power(const MultiPoly& p, int e, int nvars) {
  MultiPoly out = MultiPoly::one(nvars);
  for (int k = 0; k < e; ++k) out = out * p;
  return out;
}

// ---- heuristic gcd: evaluate at a large integer, gcd there, lift back by
// base-xi digit extraction, then certify the candidate by exact division.
// Falls back to the subresultant remainder sequence when the lift fails.

using Int = boost::multiprecision::cpp_int;

struct HeuFail {};

Int nearestInt(const Rational& r) {
  Int n = numerator(r), d = denominator(r);
  if (n >= 0) return Int((2 * n + d) / (2 * d));
  return Int(-Int((-2 * n + d) / (2 * d)));
}

// Euclid on Gaussian integers with nearest-quotient rounding
Scalar gaussGcd(Scalar a, Scalar b) {
  while (!b.isZero()) {
    Scalar q = a * b.inverse();
    Scalar qi(Rational(nearestInt(q.re())), Rational(nearestInt(q.im())));
    Scalar r = a - qi * b;
    a = b;
    b = r;
  }
  return a;
}

Int coeffNorm(const MultiPoly& p) {
  Int m = 0;
  for (const auto& [e, c] : p.terms()) {
    Int nr = abs(numerator(c.re())), ni = abs(numerator(c.im()));
    if (nr > m) m = nr;
    if (ni > m) m = ni;
  }
  return m;
}

// multiply by the lcm of all coefficient denominators
MultiPoly clearRationalDens(const MultiPoly& p) {
  Int l = 1;
  for (const auto& [e, c] : p.terms()) {
    Int dr = denominator(c.re()), di = denominator(c.im());
    l = lcm(l, lcm(dr, di));
  }
  return p * Scalar(Rational(l));
}

MultiPoly substVarInt(const MultiPoly& p, int var, const Scalar& xi) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Scalar v = c;
    for (int k = 0; k < e[var]; ++k) v *= xi;
    Expo r = e;
    r[var] = 0;
    out.addTerm(r, v);
  }
  return out;
}

Rational symMod(const Rational& r, const Int& xi) {
  Int n = numerator(r) % xi;
  if (n < 0) n += xi;
  if (2 * n > xi) n -= xi;
  return Rational(n);
}

MultiPoly primitivePartZ(const MultiPoly& p) {
  Scalar g(0);
  for (const auto& [e, c] : p.terms()) g = gaussGcd(g, c);
  if (g.isZero() || g.isOne()) return p;
  return p * g.inverse();
}

bool dividesPoly(const MultiPoly& g, const MultiPoly& p) {
  if (g.isZero()) return p.isZero();
  try {
    MultiPoly q = p.divExact(g);
    (void)q;
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

// ---- modular gcd (real coefficients): reduce mod word-size primes, run a
// dense evaluation/interpolation gcd in F_p, lift by CRT plus rational
// reconstruction, and certify the candidate by exact trial division. The
// grlex leading monomial of the true gcd is preserved mod any prime that
// keeps the inputs' leading coefficients nonzero, so a certified candidate
// with that leading monomial is the gcd, not just a common divisor.

using U64 = std::uint64_t;

U64 mulm(U64 a, U64 b, U64 p) {
  return static_cast<U64>(static_cast<unsigned __int128>(a) * b % p);
}

U64 powm(U64 a, U64 e, U64 p) {
  U64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

U64 invm(U64 a, U64 p) { return powm(a, p - 2, p); }

bool isPrime64(U64 n) {
  if (n < 2) return false;
  for (U64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  U64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (U64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    U64 x = powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulm(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Monomials are packed into one 64-bit key: total degree in the top byte,
// then 4 bits per variable with x1 most significant. Key order is grlex and
// key addition is monomial multiplication, as long as every per-variable
// exponent stays below 16 (guarded at the entry point).
constexpr int kMaxPackedVars = 14;

// field width adapts to the variable count, so few variables get wide fields
thread_local int gFieldBits = 4;
thread_local int gFieldVars = kMaxPackedVars;

U64 fieldShift(int var) { return static_cast<U64>(gFieldBits * (gFieldVars - 1 - var)); }

U64 fieldMask() { return (1ull << gFieldBits) - 1; }

int fieldOf(U64 key, int var) { return static_cast<int>((key >> fieldShift(var)) & fieldMask()); }

U64 packExpo(const Expo& e) {
  U64 key = 0, deg = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    key |= static_cast<U64>(e[i]) << fieldShift(static_cast<int>(i));
    deg += static_cast<U64>(e[i]);
  }
  return key | (deg << 56);
}

Expo unpackExpo(U64 key, int nv) {
  Expo e(nv, 0);
  for (int i = 0; i < nv; ++i) e[i] = fieldOf(key, i);
  return e;
}

struct PolyP {
  int nv = 0;
  std::map<U64, U64> t;

  bool zero() const { return t.empty(); }
  bool constant() const { return t.empty() || (t.size() == 1 && t.begin()->first == 0); }
};

struct ModFail {};

void addTermP(PolyP& p, U64 key, U64 c, U64 mod) {
  if (c == 0) return;
  auto it = p.t.find(key);
  if (it == p.t.end()) {
    p.t.emplace(key, c);
  } else {
    it->second = (it->second + c) % mod;
    if (it->second == 0) p.t.erase(it);
  }
}

PolyP mulP(const PolyP& a, const PolyP& b, U64 p) {
  PolyP r;
  r.nv = a.nv;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) addTermP(r, ka + kb, mulm(ca, cb, p), p);
  return r;
}

PolyP scaleP(const PolyP& a, U64 c, U64 p) {
  PolyP r;
  r.nv = a.nv;
  if (c == 0) return r;
  for (const auto& [k, v] : a.t) r.t.emplace(k, mulm(v, c, p));
  return r;
}

PolyP subP(const PolyP& a, const PolyP& b, U64 p) {
  PolyP r = a;
  for (const auto& [k, c] : b.t) addTermP(r, k, p - c, p);
  return r;
}

PolyP monicP(const PolyP& a, U64 p) {
  if (a.zero()) return a;
  return scaleP(a, invm(a.t.rbegin()->second, p), p);
}

int degreeInP(const PolyP& a, int var) {
  int d = 0;
  for (const auto& [k, c] : a.t) d = std::max(d, fieldOf(k, var));
  return d;
}

PolyP evalVarP(const PolyP& a, int var, U64 t, U64 p) {
  PolyP r;
  r.nv = a.nv;
  for (const auto& [k, c] : a.t) {
    int e = fieldOf(k, var);
    U64 key = k - (static_cast<U64>(e) << fieldShift(var)) - (static_cast<U64>(e) << 56);
    addTermP(r, key, mulm(c, powm(t, static_cast<U64>(e), p), p), p);
  }
  return r;
}

// exact long division by the grlex leading term; nullopt when not divisible
std::optional<PolyP> divP(const PolyP& a, const PolyP& b, U64 p) {
  if (b.zero()) return std::nullopt;
  PolyP r = a, q;
  q.nv = a.nv;
  U64 lb = b.t.rbegin()->first;
  U64 linv = invm(b.t.rbegin()->second, p);
  while (!r.zero()) {
    U64 lr = r.t.rbegin()->first;
    for (int i = 0; i < a.nv; ++i)
      if (fieldOf(lr, i) < fieldOf(lb, i)) return std::nullopt;
    U64 d = lr - lb;
    U64 c = mulm(r.t.rbegin()->second, linv, p);
    q.t[d] = c;
    for (const auto& [k, v] : b.t) addTermP(r, k + d, p - mulm(v, c, p), p);
  }
  return q;
}

std::vector<PolyP> coeffsInP(const PolyP& a, int var) {
  std::vector<PolyP> cs(static_cast<size_t>(degreeInP(a, var)) + 1);
  for (auto& c : cs) c.nv = a.nv;
  for (const auto& [k, c] : a.t) {
    int e = fieldOf(k, var);
    U64 key = k - (static_cast<U64>(e) << fieldShift(var)) - (static_cast<U64>(e) << 56);
    cs[e].t.emplace(key, c);
  }
  return cs;
}

PolyP leadCoeffInP(const PolyP& a, int var) { return coeffsInP(a, var).back(); }

PolyP gcdP(const PolyP& a0, const PolyP& b0, U64 p, int depth);

PolyP contentInP(const PolyP& a, int var, U64 p, int depth) {
  PolyP g;
  g.nv = a.nv;
  for (const PolyP& c : coeffsInP(a, var)) g = gcdP(g, c, p, depth);
  return g;
}

PolyP gcdUniP(PolyP a, PolyP b, int var, U64 p) {
  while (!b.zero()) {
    // a mod b by schoolbook division in the single variable var
    int db = degreeInP(b, var);
    U64 lb = invm(b.t.rbegin()->second, p);
    while (!a.zero() && degreeInP(a, var) >= db) {
      int da = degreeInP(a, var);
      U64 c = mulm(a.t.rbegin()->second, lb, p);
      U64 key = (static_cast<U64>(da - db) << fieldShift(var)) |
                (static_cast<U64>(da - db) << 56);
      for (const auto& [k, v] : b.t) addTermP(a, k + key, p - mulm(v, c, p), p);
    }
    std::swap(a, b);
  }
  return monicP(a, p);
}

PolyP gcdP(const PolyP& a0, const PolyP& b0, U64 p, int depth) {
  if (depth > 64) throw ModFail{};
  if (a0.zero()) return monicP(b0, p);
  if (b0.zero()) return monicP(a0, p);
  PolyP onep;
  onep.nv = a0.nv;
  onep.t.emplace(0ull, 1ull);
  if (a0.constant() || b0.constant()) return onep;

  std::vector<int> active;
  for (int v = 0; v < a0.nv; ++v)
    if (degreeInP(a0, v) > 0 || degreeInP(b0, v) > 0) active.push_back(v);
  if (active.size() == 1) return gcdUniP(a0, b0, active[0], p);

  int u = active.front();   // leading-coefficient variable
  int v = active.back();    // evaluation variable
  PolyP ca = contentInP(a0, u, p, depth + 1), cb = contentInP(b0, u, p, depth + 1);
  PolyP pa = *divP(a0, ca, p), pb = *divP(b0, cb, p);
  PolyP cg = gcdP(ca, cb, p, depth + 1);
  PolyP gamma = gcdP(leadCoeffInP(pa, u), leadCoeffInP(pb, u), p, depth + 1);

  int bound = std::min(degreeInP(pa, v), degreeInP(pb, v)) + degreeInP(gamma, v);
  int dau = degreeInP(pa, u), dbu = degreeInP(pb, u);

  std::vector<U64> pts;
  std::vector<PolyP> vals;
  bool haveLead = false;
  U64 bestLead = 0;
  U64 tried = 0, cap = static_cast<U64>(8 * (bound + 4) + 64);
  for (U64 t = 0; t < p && tried < cap; ++t, ++tried) {
    PolyP at = evalVarP(pa, v, t, p), bt = evalVarP(pb, v, t, p);
    if (at.zero() || bt.zero()) continue;
    if (degreeInP(at, u) != dau || degreeInP(bt, u) != dbu) continue;
    PolyP gammat = evalVarP(gamma, v, t, p);
    if (gammat.zero()) continue;
    PolyP gt = gcdP(at, bt, p, depth + 1);
    U64 lt = gt.t.rbegin()->first;
    if (haveLead) {
      if (lt > bestLead) continue;  // unlucky point, bigger image gcd
      if (lt < bestLead) {
        pts.clear();
        vals.clear();
        bestLead = lt;
      }
    } else {
      bestLead = lt;
      haveLead = true;
    }
    auto q = divP(gammat, leadCoeffInP(gt, u), p);
    if (!q) continue;
    pts.push_back(t);
    vals.push_back(mulP(gt, *q, p));
    if (static_cast<int>(pts.size()) < bound + 1) continue;

    // Lagrange interpolation in v
    PolyP cand;
    cand.nv = a0.nv;
    for (size_t j = 0; j < pts.size(); ++j) {
      U64 denom = 1;
      PolyP basis = onep;
      for (size_t k = 0; k < pts.size(); ++k) {
        if (k == j) continue;
        denom = mulm(denom, (pts[j] + p - pts[k]) % p, p);
        PolyP lin;
        lin.nv = a0.nv;
        lin.t.emplace((1ull << fieldShift(v)) | (1ull << 56), 1ull);
        addTermP(lin, 0, (p - pts[k]) % p, p);
        basis = mulP(basis, lin, p);
      }
      PolyP term = mulP(vals[j], scaleP(basis, invm(denom, p), p), p);
      for (const auto& [e, cc] : term.t) addTermP(cand, e, cc, p);
    }
    PolyP ccont = contentInP(cand, u, p, depth + 1);
    auto prim = divP(cand, ccont, p);
    if (prim && divP(pa, *prim, p) && divP(pb, *prim, p))
      return monicP(mulP(cg, *prim, p), p);
    pts.clear();
    vals.clear();
    haveLead = false;
  }
  throw ModFail{};
}

bool allRealInteger(const MultiPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (!c.im().is_zero() || denominator(c.re()) != 1) return false;
  return true;
}

PolyP reduceModP(const MultiPoly& a, U64 p) {
  PolyP r;
  r.nv = a.nvars();
  for (const auto& [e, c] : a.terms()) {
    Int n = numerator(c.re()) % Int(p);
    if (n < 0) n += Int(p);
    U64 u = static_cast<U64>(n);
    if (u) r.t.emplace(packExpo(e), u);
  }
  return r;
}

// rational reconstruction of u mod m with numerator/denominator below sqrt(m/2)
std::optional<Rational> ratRecon(Int u, const Int& m) {
  Int a = m, b = u % m, x0 = 0, x1 = 1;
  if (b < 0) b += m;
  while (2 * b * b >= m) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int x2 = x0 - q * x1;
    x0 = x1;
    x1 = x2;
  }
  if (x1 == 0) return std::nullopt;
  Int n = b, d = x1;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (2 * d * d >= m) return std::nullopt;
  if (boost::multiprecision::gcd(n, d) != 1) return std::nullopt;
  return Rational(n, d);
}

std::optional<MultiPoly> modularGcdReal(const MultiPoly& a, const MultiPoly& b) {
  if (!allRealInteger(a) || !allRealInteger(b)) return std::nullopt;
  if (a.nvars() > kMaxPackedVars) return std::nullopt;
  gFieldVars = std::max(a.nvars(), 1);
  gFieldBits = 56 / gFieldVars;
  // intermediate products inside the mod-p recursion can double the input
  // degrees, so keep them clear of the packed field limits
  int degCap = static_cast<int>((fieldMask() - 1) / 2);
  if (a.totalDegree() > 120 || b.totalDegree() > 120) return std::nullopt;
  for (int v = 0; v < a.nvars(); ++v)
    if (a.degreeIn(v) > degCap || b.degreeIn(v) > degCap) return std::nullopt;
  Int la = abs(numerator(a.leadCoeff().re()));
  Int lb = abs(numerator(b.leadCoeff().re()));

  std::map<U64, Int> residues;
  Int modulus = 1;
  bool haveLead = false;
  U64 bestLead = 0;
  static const std::vector<U64> primes = [] {
    std::vector<U64> ps;
    for (U64 p = 4611686018427387904ull; ps.size() < 32; --p)
      if (isPrime64(p)) ps.push_back(p);
    return ps;
  }();
  int used = 0;
  for (U64 p : primes) {
    if (used >= 24) break;
    if (la % Int(p) == 0 || lb % Int(p) == 0) continue;
    ++used;
    PolyP gp;
    try {
      gp = gcdP(reduceModP(a, p), reduceModP(b, p), p, 0);
    } catch (const ModFail&) {
      continue;
    }
    if (gp.constant()) return MultiPoly::one(a.nvars());
    U64 lead = gp.t.rbegin()->first;
    if (haveLead && lead > bestLead) continue;
    if (!haveLead || lead < bestLead) {
      residues.clear();
      modulus = 1;
      bestLead = lead;
      haveLead = true;
    }
    // CRT-merge this prime into the accumulated residues
    Int pI(p);
    Int minv = modulus == 1 ? Int(0) : Int(invm(static_cast<U64>(modulus % pI), p));
    std::map<U64, Int> merged;
    for (const auto& [e, c] : gp.t) merged[e] = 0;
    for (const auto& [e, c] : residues) merged[e] = 0;
    for (auto& [e, val] : merged) {
      Int oldv = residues.count(e) ? residues[e] : Int(0);
      auto it = gp.t.find(e);
      Int newr = it == gp.t.end() ? Int(0) : Int(it->second);
      if (modulus == 1) {
        val = newr;
      } else {
        Int diff = ((newr - oldv) % pI + pI) % pI;
        val = oldv + modulus * ((diff * minv) % pI);
      }
    }
    residues = std::move(merged);
    modulus *= pI;

    MultiPoly cand(a.nvars());
    bool ok = true;
    for (const auto& [e, val] : residues) {
      auto q = ratRecon(val, modulus);
      if (!q) {
        ok = false;
        break;
      }
      if (!q->is_zero()) cand.addTerm(unpackExpo(e, a.nvars()), Scalar(*q));
    }
    if (!ok || cand.isZero()) continue;
    if (dividesPoly(cand, a) && dividesPoly(cand, b)) return cand.monic();
  }
  return std::nullopt;
}

MultiPoly heuGcd(const MultiPoly& a, const MultiPoly& b, int depth) {
  if (depth > 12) throw HeuFail{};
  int nv = a.nvars();
  int var = -1;
  for (int v = 0; v < nv; ++v)
    if (a.degreeIn(v) > 0 || b.degreeIn(v) > 0) {
      var = v;
      break;
    }
  if (var < 0) return MultiPoly::constant(gaussGcd(a.constantValue(), b.constantValue()), nv);

  Int na = coeffNorm(a), nb = coeffNorm(b);
  Int xi = 2 * (na > nb ? na : nb) + 29;
  for (int tries = 0; tries < 6; ++tries) {
    Scalar xs{Rational(xi)};
    MultiPoly ae = substVarInt(a, var, xs), be = substVarInt(b, var, xs);
    if (!ae.isZero() && !be.isZero()) {
      MultiPoly gamma = heuGcd(ae, be, depth + 1);
      // lift: balanced base-xi digits become the var-coefficients
      MultiPoly g(nv);
      int k = 0;
      while (!gamma.isZero()) {
        MultiPoly rest(nv);
        for (const auto& [e, c] : gamma.terms()) {
          Scalar digit{symMod(c.re(), xi), symMod(c.im(), xi)};
          if (!digit.isZero()) {
            Expo eg = e;
            eg[var] = k;
            g.addTerm(eg, digit);
          }
          Scalar carry = (c - digit) * xs.inverse();
          if (!carry.isZero()) rest.addTerm(e, carry);
        }
        gamma = rest;
        ++k;
        if (k > 4096) throw HeuFail{};
      }
      g = primitivePartZ(g);
      if (dividesPoly(g, a) && dividesPoly(g, b)) return g;
    }
    xi = xi * 73 / 32 + 31;
  }
  throw HeuFail{};
}

}  // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& a0, const MultiPoly& b0) {
  MultiPoly a = a0, b = b0;
  unify(a, b);
  if (a.isZero()) return b.monic();
  if (b.isZero()) return a.monic();
  if (a.isConstant() || b.isConstant()) return one(a.nvars_);

  // gcd with a monomial is the shared monomial part
  auto monomialWith = [](const MultiPoly& m, const MultiPoly& p) {
    Expo e = m.leadExpo();
    for (const auto& [f, c] : p.terms())
      for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], i < f.size() ? f[i] : 0);
    return MultiPoly::monomial(Scalar(1), e);
  };
  if (a.terms().size() == 1) return monomialWith(a, b);
  if (b.terms().size() == 1) return monomialWith(b, a);
  if (a == b) return a.monic();

  MultiPoly ai = clearRationalDens(a), bi = clearRationalDens(b);
  if (auto g = modularGcdReal(ai, bi)) return *g;

  try {
    return heuGcd(ai, bi, 0).monic();
  } catch (const HeuFail&) {
    // fall through to the subresultant sequence
  }

  // main variable: shared, with the smallest combined degree
  int var = -1;
  int best = 0;
  for (int v = 0; v < a.nvars_; ++v) {
    int da = a.degreeIn(v), db = b.degreeIn(v);
    if (da > 0 && db > 0 && (var < 0 || da + db < best)) {
      var = v;
      best = da + db;
    }
  }
  if (var < 0) {
    int v = 0;
    while (a.degreeIn(v) <= 0 && b.degreeIn(v) <= 0) ++v;
    if (a.degreeIn(v) <= 0) return gcd(a, contentIn(b, v));
    return gcd(contentIn(a, v), b);
  }

  MultiPoly ca = contentIn(a, var), cb = contentIn(b, var);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = a.divExact(ca), pb = b.divExact(cb);
  if (pa.degreeIn(var) < pb.degreeIn(var)) std::swap(pa, pb);

  // subresultant remainder sequence: divide each pseudo-remainder by g*h^delta
  MultiPoly g = one(a.nvars_), h = one(a.nvars_);
  while (true) {
    int delta = pa.degreeIn(var) - pb.degreeIn(var);
    MultiPoly r = prem(pa, pb, var);
    if (r.isZero()) break;
    if (r.degreeIn(var) == 0) {
      pb = one(a.nvars_);
      break;
    }
    pa = pb;
    pb = r.divExact(g * power(h, delta, a.nvars_));
    g = leadCoeffIn(pa, var);
    if (delta > 0) h = power(g, delta, a.nvars_).divExact(power(h, delta - 1, a.nvars_));
  }
  if (!pb.isConstant()) pb = pb.divExact(contentIn(pb, var));
  return (c * pb).monic();
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (isZero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Expo& e = it->first;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = it->second.str();
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else {
      term = cs + "*" + mono;
    }
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::string MultiPoly::str() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
  return str(names);
}

}  // namespace dirackit
