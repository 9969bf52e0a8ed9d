#include "dirackit/calculus.hpp"

#include <algorithm>

namespace dirackit {

void requireSameChart(const ChartPtr& a, const ChartPtr& b) {
  if (!sameChart(a, b)) throw ChartMismatch("objects live on different charts");
}

void ThreeTensor::add(int i, int j, int k, const RatFn& v) {
  if (i == j || j == k || i == k || v.isZero()) return;
  std::array<int, 3> idx{i, j, k};
  int sign = 1;
  // sort three indices, tracking the permutation sign
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  if (idx[1] > idx[2]) { std::swap(idx[1], idx[2]); sign = -sign; }
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  RatFn val = sign > 0 ? v : -v;
  auto it = c.find(idx);
  if (it == c.end()) {
    c.emplace(idx, val);
  } else {
    it->second += val;
    if (it->second.isZero()) c.erase(it);
  }
}

RatFn ThreeTensor::get(int i, int j, int k) const {
  if (i == j || j == k || i == k) return RatFn(0);
  std::array<int, 3> idx{i, j, k};
  int sign = 1;
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  if (idx[1] > idx[2]) { std::swap(idx[1], idx[2]); sign = -sign; }
  if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
  auto it = c.find(idx);
  if (it == c.end()) return RatFn(0);
  return sign > 0 ? it->second : -it->second;
}

VecField zeroVec(const ChartPtr& c) {
  VecField u{c, VecF(c->dim())};
  for (int i = 0; i < c->dim(); ++i) u.c(i) = RatFn(0);
  return u;
}

OneForm zeroForm(const ChartPtr& c) {
  OneForm a{c, VecF(c->dim())};
  for (int i = 0; i < c->dim(); ++i) a.c(i) = RatFn(0);
  return a;
}

VecField coordVec(const ChartPtr& c, int i) {
  VecField u = zeroVec(c);
  u.c(i) = RatFn(MultiPoly::one(c->dim()));
  return u;
}

OneForm coordForm(const ChartPtr& c, int i) {
  OneForm a = zeroForm(c);
  a.c(i) = RatFn(MultiPoly::one(c->dim()));
  return a;
}

TwoForm zeroTwoForm(const ChartPtr& c) {
  TwoForm w{c, MatF(c->dim(), c->dim())};
  w.m.setZero();
  return w;
}

Bivector zeroBivector(const ChartPtr& c) {
  Bivector p{c, MatF(c->dim(), c->dim())};
  p.m.setZero();
  return p;
}

GenSec makeSec(const VecField& u, const OneForm& xi) {
  requireSameChart(u.chart, xi.chart);
  return GenSec{u, xi};
}

GenSec vecSec(const VecField& u) { return GenSec{u, zeroForm(u.chart)}; }
GenSec formSec(const OneForm& xi) { return GenSec{zeroVec(xi.chart), xi}; }

VecField add(const VecField& a, const VecField& b) {
  requireSameChart(a.chart, b.chart);
  return VecField{a.chart, a.c + b.c};
}
OneForm add(const OneForm& a, const OneForm& b) {
  requireSameChart(a.chart, b.chart);
  return OneForm{a.chart, a.c + b.c};
}
TwoForm add(const TwoForm& a, const TwoForm& b) {
  requireSameChart(a.chart, b.chart);
  return TwoForm{a.chart, a.m + b.m};
}
Bivector add(const Bivector& a, const Bivector& b) {
  requireSameChart(a.chart, b.chart);
  return Bivector{a.chart, a.m + b.m};
}
ThreeTensor add(const ThreeTensor& a, const ThreeTensor& b) {
  requireSameChart(a.chart, b.chart);
  ThreeTensor r = a;
  for (const auto& [idx, v] : b.c) r.add(idx[0], idx[1], idx[2], v);
  return r;
}
GenSec add(const GenSec& a, const GenSec& b) {
  return GenSec{add(a.vec, b.vec), add(a.covec, b.covec)};
}

VecField scale(const RatFn& f, const VecField& a) { return VecField{a.chart, (a.c * f).eval()}; }
OneForm scale(const RatFn& f, const OneForm& a) { return OneForm{a.chart, (a.c * f).eval()}; }
TwoForm scale(const RatFn& f, const TwoForm& a) { return TwoForm{a.chart, (a.m * f).eval()}; }
Bivector scale(const RatFn& f, const Bivector& a) { return Bivector{a.chart, (a.m * f).eval()}; }
ThreeTensor scale(const RatFn& f, const ThreeTensor& a) {
  ThreeTensor r{a.chart, {}};
  for (const auto& [idx, v] : a.c) r.add(idx[0], idx[1], idx[2], v * f);
  return r;
}
GenSec scale(const RatFn& f, const GenSec& a) {
  return GenSec{scale(f, a.vec), scale(f, a.covec)};
}

Bivector wedge(const VecField& u, const VecField& v) {
  requireSameChart(u.chart, v.chart);
  Bivector p = zeroBivector(u.chart);
  int n = u.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.m(i, j) = u.c(i) * v.c(j) - u.c(j) * v.c(i);
  return p;
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  requireSameChart(a.chart, b.chart);
  TwoForm w = zeroTwoForm(a.chart);
  int n = a.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.m(i, j) = a.c(i) * b.c(j) - a.c(j) * b.c(i);
  return w;
}

TriVector wedge(const Bivector& p, const VecField& u) {
  requireSameChart(p.chart, u.chart);
  TriVector t{p.chart, {}};
  int n = p.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) t.add(i, j, k, p.m(i, j) * u.c(k));
  return t;
}

ThreeForm wedge(const TwoForm& w, const OneForm& a) {
  requireSameChart(w.chart, a.chart);
  ThreeForm t{w.chart, {}};
  int n = w.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) t.add(i, j, k, w.m(i, j) * a.c(k));
  return t;
}

VecField lieBracket(const VecField& u, const VecField& v) {
  requireSameChart(u.chart, v.chart);
  int n = u.chart->dim();
  VecField r = zeroVec(u.chart);
  for (int i = 0; i < n; ++i) {
    RatFn acc(0);
    for (int j = 0; j < n; ++j)
      acc += u.c(j) * v.c(i).derivative(j) - v.c(j) * u.c(i).derivative(j);
    r.c(i) = acc;
  }
  return r;
}

OneForm d(const RatFn& f, const ChartPtr& c) {
  OneForm a = zeroForm(c);
  for (int i = 0; i < c->dim(); ++i) a.c(i) = f.derivative(i);
  return a;
}

TwoForm d(const OneForm& a) {
  TwoForm w = zeroTwoForm(a.chart);
  int n = a.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.m(i, j) = a.c(j).derivative(i) - a.c(i).derivative(j);
  return w;
}

ThreeForm d(const TwoForm& w) {
  ThreeForm t{w.chart, {}};
  int n = w.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        t.add(i, j, k, w.m(j, k).derivative(i) - w.m(i, k).derivative(j) +
                           w.m(i, j).derivative(k));
  return t;
}

RatFn iota(const VecField& u, const OneForm& a) {
  requireSameChart(u.chart, a.chart);
  RatFn acc(0);
  for (int i = 0; i < u.chart->dim(); ++i) acc += u.c(i) * a.c(i);
  return acc;
}

OneForm iota(const VecField& u, const TwoForm& w) { return twoFormSharp(w, u); }

TwoForm iota(const VecField& u, const ThreeForm& t) {
  requireSameChart(u.chart, t.chart);
  TwoForm w = zeroTwoForm(u.chart);
  int n = u.chart->dim();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      RatFn acc(0);
      for (int i = 0; i < n; ++i) acc += u.c(i) * t.get(i, j, k);
      w.m(j, k) = acc;
    }
  return w;
}

OneForm twoFormSharp(const TwoForm& w, const VecField& u) {
  requireSameChart(w.chart, u.chart);
  OneForm a = zeroForm(u.chart);
  int n = u.chart->dim();
  for (int j = 0; j < n; ++j) {
    RatFn acc(0);
    for (int i = 0; i < n; ++i) acc += u.c(i) * w.m(i, j);
    a.c(j) = acc;
  }
  return a;
}

VecField bivectorSharp(const Bivector& p, const OneForm& a) {
  requireSameChart(p.chart, a.chart);
  VecField u = zeroVec(a.chart);
  int n = a.chart->dim();
  for (int j = 0; j < n; ++j) {
    RatFn acc(0);
    for (int i = 0; i < n; ++i) acc += a.c(i) * p.m(i, j);
    u.c(j) = acc;
  }
  return u;
}

OneForm lieDerivative(const VecField& u, const OneForm& a) {
  return add(iota(u, d(a)), d(iota(u, a), u.chart));
}

GenSec dorfman(const GenSec& s, const GenSec& t) {
  requireSameChart(s.vec.chart, t.vec.chart);
  VecField uv = lieBracket(s.vec, t.vec);
  OneForm forms = add(lieDerivative(s.vec, t.covec), scale(RatFn(-1), iota(t.vec, d(s.covec))));
  return GenSec{uv, forms};
}

RatFn pairingSym(const GenSec& s, const GenSec& t) {
  return iota(t.vec, s.covec) + iota(s.vec, t.covec);
}

TriVector schouten(const Bivector& p, const Bivector& q) {
  requireSameChart(p.chart, q.chart);
  TriVector t{p.chart, {}};
  int n = p.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        RatFn acc(0);
        for (int l = 0; l < n; ++l) {
          acc += p.m(l, i) * q.m(j, k).derivative(l) + p.m(l, j) * q.m(k, i).derivative(l) +
                 p.m(l, k) * q.m(i, j).derivative(l);
          acc += q.m(l, i) * p.m(j, k).derivative(l) + q.m(l, j) * p.m(k, i).derivative(l) +
                 q.m(l, k) * p.m(i, j).derivative(l);
        }
        t.add(i, j, k, acc);
      }
  return t;
}

VecField endoApply(const Endo& a, const VecField& u) {
  requireSameChart(a.chart, u.chart);
  return VecField{u.chart, (a.m * u.c).eval()};
}

OneForm endoStar(const Endo& a, const OneForm& xi) {
  requireSameChart(a.chart, xi.chart);
  return OneForm{xi.chart, (a.m.transpose() * xi.c).eval()};
}

VecField conj(const VecField& u) {
  VecField r = u;
  for (int i = 0; i < r.c.size(); ++i) r.c(i) = r.c(i).conj();
  return r;
}

OneForm conj(const OneForm& a) {
  OneForm r = a;
  for (int i = 0; i < r.c.size(); ++i) r.c(i) = r.c(i).conj();
  return r;
}

GenSec conj(const GenSec& s) { return GenSec{conj(s.vec), conj(s.covec)}; }

Scalar evaluateAt(const RatFn& f, const std::vector<Scalar>& pt) { return f.evaluate(pt); }

VecQ evaluateAt(const VecField& u, const std::vector<Scalar>& pt) {
  VecQ r(u.c.size());
  for (int i = 0; i < u.c.size(); ++i) r(i) = u.c(i).evaluate(pt);
  return r;
}

VecQ evaluateAt(const OneForm& a, const std::vector<Scalar>& pt) {
  VecQ r(a.c.size());
  for (int i = 0; i < a.c.size(); ++i) r(i) = a.c(i).evaluate(pt);
  return r;
}

FiberElement evaluateAt(const GenSec& s, const std::vector<Scalar>& pt) {
  return FiberElement{evaluateAt(s.vec, pt), evaluateAt(s.covec, pt)};
}

MatQ evaluateAt(const MatF& m, const std::vector<Scalar>& pt) {
  MatQ r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(pt);
  return r;
}

MatF jacobian(const PolyMap& p) {
  int nt = p.tgt->dim(), ns = p.src->dim();
  if (static_cast<int>(p.comps.size()) != nt)
    throw DimensionMismatch("map component count differs from target dimension");
  MatF j(nt, ns);
  for (int i = 0; i < nt; ++i)
    for (int k = 0; k < ns; ++k) j(i, k) = RatFn(p.comps[i].derivative(k));
  return j;
}

RatFn pullbackFn(const PolyMap& p, const RatFn& fOnTarget) {
  std::vector<RatFn> args;
  args.reserve(p.comps.size());
  for (const MultiPoly& c : p.comps) args.emplace_back(c);
  return fOnTarget.substitute(args);
}

std::vector<Scalar> applyMap(const PolyMap& p, const std::vector<Scalar>& pt) {
  std::vector<Scalar> out;
  out.reserve(p.comps.size());
  for (const MultiPoly& c : p.comps) out.push_back(RatFn(c).evaluate(pt));
  return out;
}

namespace {

std::string coeffPrefix(const RatFn& f, const std::vector<std::string>& names) {
  if (f == RatFn(1)) return "";
  if (f == RatFn(-1)) return "-";
  std::string s = f.str(names);
  if (f.isPolynomial() && f.num().terms().size() > 1) s = "(" + s + ")";
  return s + "*";
}

std::string joinTerms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-')
      out += " - " + terms[i].substr(1);
    else
      out += " + " + terms[i];
  }
  return out;
}

}  // namespace

std::string str(const VecField& u) {
  std::vector<std::string> terms;
  for (int i = 0; i < u.c.size(); ++i)
    if (!u.c(i).isZero())
      terms.push_back(coeffPrefix(u.c(i), u.chart->coords) + "@" + u.chart->coords[i]);
  return joinTerms(terms);
}

std::string str(const OneForm& a) {
  std::vector<std::string> terms;
  for (int i = 0; i < a.c.size(); ++i)
    if (!a.c(i).isZero())
      terms.push_back(coeffPrefix(a.c(i), a.chart->coords) + "d(" + a.chart->coords[i] + ")");
  return joinTerms(terms);
}

std::string str(const GenSec& s) {
  std::string v = str(s.vec), f = str(s.covec);
  if (v == "0") return f;
  if (f == "0") return v;
  if (f[0] == '-') return v + " - " + f.substr(1);
  return v + " + " + f;
}

std::string str(const TwoForm& w) {
  std::vector<std::string> terms;
  int n = w.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!w.m(i, j).isZero())
        terms.push_back(coeffPrefix(w.m(i, j), w.chart->coords) + "d(" + w.chart->coords[i] +
                        ")^d(" + w.chart->coords[j] + ")");
  return joinTerms(terms);
}

std::string str(const Bivector& p) {
  std::vector<std::string> terms;
  int n = p.chart->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!p.m(i, j).isZero())
        terms.push_back(coeffPrefix(p.m(i, j), p.chart->coords) + "@" + p.chart->coords[i] +
                        "^@" + p.chart->coords[j]);
  return joinTerms(terms);
}

std::string str(const ThreeTensor& t, bool isForm) {
  std::vector<std::string> terms;
  for (const auto& [idx, v] : t.c) {
    std::string mono;
    for (int pos = 0; pos < 3; ++pos) {
      if (pos) mono += "^";
      const std::string& name = t.chart->coords[idx[pos]];
      mono += isForm ? "d(" + name + ")" : "@" + name;
    }
    terms.push_back(coeffPrefix(v, t.chart->coords) + mono);
  }
  return joinTerms(terms);
}

}  // namespace dirackit
