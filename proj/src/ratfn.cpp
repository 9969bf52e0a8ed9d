#include "dirackit/ratfn.hpp"

namespace dirackit {

RatFn::RatFn(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  if (den_.isZero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

void RatFn::normalize() {
  // keep both parts on the common arity
  if (num_.nvars() < den_.nvars()) num_ = num_ + MultiPoly(den_.nvars());
  if (den_.nvars() < num_.nvars()) den_ = den_ + MultiPoly(num_.nvars());
  if (num_.isZero()) {
    num_ = MultiPoly(den_.nvars());
    den_ = MultiPoly::one(den_.nvars());
    return;
  }
  MultiPoly g = MultiPoly::gcd(num_, den_);
  if (!g.isConstant()) {
    num_ = num_.divExact(g);
    den_ = den_.divExact(g);
  }
  Scalar lc = den_.leadCoeff();
  if (!lc.isOne()) {
    Scalar inv = lc.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFn RatFn::fromReduced(MultiPoly num, MultiPoly den) {
  RatFn r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (r.num_.nvars() < r.den_.nvars()) r.num_ = r.num_ + MultiPoly(r.den_.nvars());
  if (r.den_.nvars() < r.num_.nvars()) r.den_ = r.den_ + MultiPoly(r.num_.nvars());
  if (r.num_.isZero()) {
    r.den_ = MultiPoly::one(r.den_.nvars());
    return r;
  }
  Scalar lc = r.den_.leadCoeff();
  if (!lc.isOne()) {
    Scalar inv = lc.inverse();
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

// Sums and products stay reduced without a gcd of the full cross products:
// with reduced inputs a/b and c/d, only gcd(b,d) and its interaction with the
// new numerator can cancel, and products cancel via the two cross gcds.
RatFn RatFn::operator+(const RatFn& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (den_ == o.den_) {
    MultiPoly n = num_ + o.num_;
    if (n.isZero()) return fromReduced(n, MultiPoly::one(den_.nvars()));
    MultiPoly h = MultiPoly::gcd(n, den_);
    if (h.isConstant()) return fromReduced(n, den_);
    return fromReduced(n.divExact(h), den_.divExact(h));
  }
  MultiPoly g = MultiPoly::gcd(den_, o.den_);
  if (g.isConstant()) return fromReduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  MultiPoly bp = den_.divExact(g), dp = o.den_.divExact(g);
  MultiPoly n = num_ * dp + o.num_ * bp;
  MultiPoly h = MultiPoly::gcd(n, g);
  if (h.isConstant()) return fromReduced(n, bp * o.den_);
  return fromReduced(n.divExact(h), bp * o.den_.divExact(h));
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

RatFn RatFn::operator*(const RatFn& o) const {
  if (isZero() || o.isZero()) return fromReduced(MultiPoly(nvars()), MultiPoly::one(nvars()));
  MultiPoly g1 = MultiPoly::gcd(num_, o.den_);
  MultiPoly g2 = MultiPoly::gcd(o.num_, den_);
  MultiPoly n = g1.isConstant() ? num_ : num_.divExact(g1);
  MultiPoly m = g2.isConstant() ? o.num_ : o.num_.divExact(g2);
  MultiPoly b = g2.isConstant() ? den_ : den_.divExact(g2);
  MultiPoly d = g1.isConstant() ? o.den_ : o.den_.divExact(g1);
  return fromReduced(n * m, b * d);
}

RatFn RatFn::inverse() const {
  if (isZero()) throw DivisionByZero("inverse of the zero function");
  return fromReduced(den_, num_);
}

RatFn RatFn::operator/(const RatFn& o) const {
  if (o.isZero()) throw DivisionByZero("division by the zero function");
  return *this * o.inverse();
}

RatFn RatFn::derivative(int var) const {
  return RatFn(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Scalar RatFn::evaluate(const std::vector<Scalar>& point) const {
  auto at = [&](const MultiPoly& q) {
    if (q.nvars() > static_cast<int>(point.size()))
      throw ArityMismatch("evaluate: point shorter than arity");
    std::vector<Scalar> pt(point.begin(), point.begin() + q.nvars());
    return q.evaluate(pt);
  };
  Scalar d = at(den_);
  if (d.isZero()) throw PoleAtPoint("denominator vanishes at the point");
  return at(num_) / d;
}

RatFn polyAt(const MultiPoly& p, const std::vector<RatFn>& args) {
  if (static_cast<int>(args.size()) < p.nvars())
    throw ArityMismatch("polyAt: argument tuple shorter than arity");
  RatFn acc(0);
  for (const auto& [e, c] : p.terms()) {
    RatFn term = RatFn(MultiPoly::constant(c, 0));
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= args[i].pow(e[i]);
    acc += term;
  }
  return acc;
}

RatFn RatFn::substitute(const std::vector<RatFn>& args) const {
  RatFn d = polyAt(den_, args);
  if (d.isZero()) throw DivisionByZero("substitution sends denominator to zero");
  return polyAt(num_, args) / d;
}

RatFn RatFn::conj() const {
  RatFn r;
  r.num_ = num_.conj();
  r.den_ = den_.conj();
  r.normalize();
  return r;
}

RatFn RatFn::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RatFn acc = RatFn(MultiPoly::one(nvars()));
  for (int j = 0; j < k; ++j) acc *= *this;
  return acc;
}

std::string RatFn::str(const std::vector<std::string>& names) const {
  if (isPolynomial()) return num_.str(names);
  std::string n = num_.str(names);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.str(names);
  if (den_.terms().size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

std::string RatFn::str() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
  return str(names);
}

}  // namespace dirackit
