#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dirackit/calculus.hpp"

using namespace dirackit;

namespace {

RatFn X(int i, int n) { return RatFn::variable(i, n); }

ChartPtr chart2() { return makeChart("M2", {"x1", "x2"}); }
ChartPtr chart3() { return makeChart("M3", {"x1", "x2", "x3"}); }
ChartPtr chart4() { return makeChart("M4", {"x1", "x2", "x3", "x4"}); }

bool vecEq(const VecField& a, const VecField& b) {
  if (a.c.size() != b.c.size()) return false;
  for (int i = 0; i < a.c.size(); ++i)
    if (a.c(i) != b.c(i)) return false;
  return true;
}

bool formEq(const OneForm& a, const OneForm& b) {
  if (a.c.size() != b.c.size()) return false;
  for (int i = 0; i < a.c.size(); ++i)
    if (a.c(i) != b.c(i)) return false;
  return true;
}

bool secEq(const GenSec& a, const GenSec& b) {
  return vecEq(a.vec, b.vec) && formEq(a.covec, b.covec);
}

bool twoFormEq(const TwoForm& a, const TwoForm& b) { return matEq(a.m, b.m); }

bool matZero(const MatF& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) return false;
  return true;
}

GenSec randomishSec(const ChartPtr& c, int seed) {
  int n = c->dim();
  GenSec s{zeroVec(c), zeroForm(c)};
  for (int i = 0; i < n; ++i) {
    s.vec.c(i) = RatFn(seed % 3 - 1) + X((seed + i) % n, n) * RatFn((seed + 2 * i) % 5 - 2);
    s.covec.c(i) = RatFn((seed + 1) % 4 - 2) + X((seed + 2 * i + 1) % n, n) * RatFn(seed % 7 - 3);
    seed = seed * 37 + 11;
  }
  return s;
}

}  // namespace

TEST_CASE("coordinate brackets and exterior derivative basics") {
  auto c = chart2();
  int n = 2;

  VecField d1 = coordVec(c, 0);
  VecField x1d2 = scale(X(0, n), coordVec(c, 1));
  CHECK(vecEq(lieBracket(d1, x1d2), coordVec(c, 1)));
  CHECK(vecEq(lieBracket(x1d2, d1), scale(RatFn(-1), coordVec(c, 1))));

  // [fu, gv] = fg[u,v] + f(u g)v - g(v f)u on coordinate fields
  VecField u = scale(X(0, n) * X(0, n), coordVec(c, 1));
  VecField v = scale(X(1, n), coordVec(c, 0));
  VecField lhs = lieBracket(u, v);
  VecField expect = add(scale(X(0, n) * X(0, n), coordVec(c, 0)),
                        scale(RatFn(-2) * X(0, n) * X(1, n), coordVec(c, 1)));
  CHECK(vecEq(lhs, expect));

  OneForm alpha = scale(X(0, n), coordForm(c, 1));  // x1 dx2
  TwoForm w = d(alpha);
  CHECK(twoFormEq(w, wedge(coordForm(c, 0), coordForm(c, 1))));
  CHECK(w.m(0, 1) == RatFn(1));
  CHECK(w.m(1, 0) == RatFn(-1));

  OneForm df = d(X(0, n) * X(1, n), c);
  CHECK(df.c(0) == X(1, n));
  CHECK(df.c(1) == X(0, n));
  CHECK(matZero(d(df).m));
}

TEST_CASE("d squared vanishes on functions and one-forms") {
  auto c = chart3();
  int n = 3;
  RatFn f = X(0, n) * X(1, n) * X(2, n) + X(0, n).pow(3);
  CHECK(matZero(d(d(f, c)).m));

  OneForm a = zeroForm(c);
  a.c(0) = X(1, n) * X(2, n);
  a.c(1) = X(0, n).pow(2);
  a.c(2) = X(1, n) + RatFn(5);
  CHECK(d(d(a)).isZero());
}

TEST_CASE("contraction conventions for two-forms and bivectors") {
  auto c = chart2();
  TwoForm w = wedge(coordForm(c, 0), coordForm(c, 1));  // dx1^dx2
  OneForm wd1 = twoFormSharp(w, coordVec(c, 0));
  CHECK(formEq(wd1, coordForm(c, 1)));  // w(d1, .) = dx2
  OneForm wd2 = twoFormSharp(w, coordVec(c, 1));
  CHECK(formEq(wd2, scale(RatFn(-1), coordForm(c, 0))));

  Bivector p = wedge(coordVec(c, 0), coordVec(c, 1));  // d1^d2
  CHECK(vecEq(bivectorSharp(p, coordForm(c, 0)), coordVec(c, 1)));
  CHECK(vecEq(bivectorSharp(p, coordForm(c, 1)), scale(RatFn(-1), coordVec(c, 0))));

  // iota on a three-form peels the first slot
  auto c3 = chart3();
  ThreeForm vol{c3, {}};
  vol.add(0, 1, 2, RatFn(1));
  TwoForm i1 = iota(coordVec(c3, 0), vol);
  CHECK(twoFormEq(i1, wedge(coordForm(c3, 1), coordForm(c3, 2))));
  TwoForm i2 = iota(coordVec(c3, 1), vol);
  CHECK(twoFormEq(i2, scale(RatFn(-1), wedge(coordForm(c3, 0), coordForm(c3, 2)))));
}

TEST_CASE("lie derivative via the homotopy formula") {
  auto c = chart2();
  int n = 2;
  VecField u = scale(X(0, n), coordVec(c, 0));
  OneForm a = scale(X(1, n), coordForm(c, 0));

  // direct coordinate formula: (L_u a)_i = u^j d_j a_i + a_j d_i u^j
  OneForm direct = zeroForm(c);
  for (int i = 0; i < n; ++i) {
    RatFn acc(0);
    for (int j = 0; j < n; ++j)
      acc += u.c(j) * a.c(i).derivative(j) + a.c(j) * u.c(j).derivative(i);
    direct.c(i) = acc;
  }
  CHECK(formEq(lieDerivative(u, a), direct));

  // L_u d f = d (u f)
  RatFn f = X(0, n).pow(2) * X(1, n);
  RatFn uf = u.c(0) * f.derivative(0) + u.c(1) * f.derivative(1);
  CHECK(formEq(lieDerivative(u, d(f, c)), d(uf, c)));
}

TEST_CASE("generalized bracket on mixed sections") {
  auto c = chart2();
  int n = 2;
  GenSec a1 = makeSec(scale(X(0, n), coordVec(c, 0)),
                      scale(RatFn(-1), coordForm(c, 1)));
  GenSec a2 = makeSec(scale(X(0, n), coordVec(c, 1)), coordForm(c, 0));
  CHECK(secEq(dorfman(a1, a2), a2));

  // symmetrized bracket is exact: [a,b] + [b,a] = (0, d<a,b>)
  GenSec sym = add(dorfman(a1, a2), dorfman(a2, a1));
  CHECK(vecEq(sym.vec, zeroVec(c)));
  CHECK(formEq(sym.covec, d(pairingSym(a1, a2), c)));
}

TEST_CASE("generalized bracket satisfies the Leibniz identity") {
  auto c = chart3();
  GenSec a = randomishSec(c, 3);
  GenSec b = randomishSec(c, 17);
  GenSec e = randomishSec(c, 29);
  GenSec lhs = dorfman(a, dorfman(b, e));
  GenSec rhs = add(dorfman(dorfman(a, b), e), dorfman(b, dorfman(a, e)));
  CHECK(secEq(lhs, rhs));

  // pairing invariance: u<b,e> = <[a,b],e> + <b,[a,e]>
  RatFn pr = pairingSym(b, e);
  RatFn upr(0);
  for (int j = 0; j < c->dim(); ++j) upr += a.vec.c(j) * pr.derivative(j);
  CHECK(upr == pairingSym(dorfman(a, b), e) + pairingSym(b, dorfman(a, e)));
}

TEST_CASE("bivector bracket detects Jacobi failure") {
  auto c = chart4();
  int n = 4;
  Bivector pL = wedge(coordVec(c, 0), coordVec(c, 1));
  Bivector pR = scale(X(0, n), wedge(coordVec(c, 2), coordVec(c, 3)));

  TriVector br = schouten(pL, pR);
  CHECK(br.get(1, 2, 3) == RatFn(1));
  CHECK(br.c.size() == 1);

  TriVector expect{c, {}};
  expect.add(1, 2, 3, RatFn(1));
  CHECK(br == expect);

  // constant bivectors self-commute; the sum above does not
  CHECK(schouten(pL, pL).isZero());
  Bivector mix = add(pL, pR);
  TriVector self = schouten(mix, mix);
  CHECK(self.get(1, 2, 3) == RatFn(2));

  // symmetric in its two slots and bilinear over constants
  CHECK(schouten(pR, pL) == br);
  TriVector sc = schouten(scale(RatFn(3), pL), pR);
  CHECK(sc.get(1, 2, 3) == RatFn(3));
}

TEST_CASE("endomorphism action and its dual are adjoint") {
  auto c = chart2();
  int n = 2;
  Endo a{c, MatF(n, n)};
  a.m << RatFn(0), -X(0, n), RatFn(1), X(1, n);

  VecField u = randomishSec(c, 5).vec;
  OneForm xi = randomishSec(c, 9).covec;
  CHECK(iota(endoApply(a, u), xi) == iota(u, endoStar(a, xi)));

  VecField au = endoApply(a, coordVec(c, 1));
  CHECK(au.c(0) == -X(0, n));
  CHECK(au.c(1) == X(1, n));
}

TEST_CASE("evaluation commutes with the symbolic operations") {
  auto c = chart2();
  int n = 2;
  std::vector<Scalar> pt{Scalar::fraction(1, 2), Scalar(3)};

  GenSec a = randomishSec(c, 7);
  GenSec b = randomishSec(c, 13);
  FiberElement fa = evaluateAt(a, pt);
  FiberElement fb = evaluateAt(b, pt);
  CHECK(evaluateAt(pairingSym(a, b), pt) == pairingPt(fa, fb));

  GenSec sum = add(a, scale(X(0, n), b));
  FiberElement fsum = evaluateAt(sum, pt);
  for (int i = 0; i < n; ++i) {
    CHECK(fsum.vec(i) == fa.vec(i) + Scalar::fraction(1, 2) * fb.vec(i));
    CHECK(fsum.covec(i) == fa.covec(i) + Scalar::fraction(1, 2) * fb.covec(i));
  }
}

TEST_CASE("polynomial maps: jacobian, pullback, chain rule") {
  auto src = chart2();
  auto tgt = chart3();
  int ns = 2;
  MultiPoly x1 = MultiPoly::variable(0, ns), x2 = MultiPoly::variable(1, ns);
  PolyMap phi{src, tgt, {x1 * x2, x1 + x2, x1 * x1}};

  MatF j = jacobian(phi);
  CHECK(j(0, 0) == X(1, ns));
  CHECK(j(0, 1) == X(0, ns));
  CHECK(j(1, 0) == RatFn(1));
  CHECK(j(2, 1) == RatFn(0));

  RatFn f = X(0, 3) * X(2, 3) + X(1, 3);  // y1*y3 + y2 on the target
  RatFn pb = pullbackFn(phi, f);
  CHECK(pb == X(0, ns).pow(3) * X(1, ns) + X(0, ns) + X(1, ns));

  // chain rule: d_k (f o phi) = sum_i (d_i f o phi) J(i,k)
  for (int k = 0; k < ns; ++k) {
    RatFn rhs(0);
    for (int i = 0; i < 3; ++i) rhs += pullbackFn(phi, f.derivative(i)) * j(i, k);
    CHECK(pb.derivative(k) == rhs);
  }

  auto img = applyMap(phi, {Scalar(2), Scalar(3)});
  CHECK(img == std::vector<Scalar>{Scalar(6), Scalar(5), Scalar(4)});
}

TEST_CASE("conjugation on complexified sections") {
  auto c = makeChart("C1", {"x", "y"}, true);
  int n = 2;
  VecField e = add(coordVec(c, 0), scale(RatFn::constant(Scalar::i(), n), coordVec(c, 1)));
  VecField eb = conj(e);
  CHECK(eb.c(1) == RatFn::constant(-Scalar::i(), n));
  CHECK(vecEq(conj(eb), e));
  CHECK(vecEq(add(e, eb), scale(RatFn(2), coordVec(c, 0))));
}

TEST_CASE("printing") {
  auto c = chart2();
  int n = 2;
  VecField u = add(scale(X(0, n), coordVec(c, 1)), scale(RatFn(-1), coordVec(c, 0)));
  CHECK(str(u) == "-@x1 + x1*@x2");

  OneForm a = scale(RatFn(2) * X(1, n), coordForm(c, 0));
  CHECK(str(a) == "2*x2*d(x1)");

  GenSec s = makeSec(coordVec(c, 0), scale(RatFn(-1), coordForm(c, 1)));
  CHECK(str(s) == "@x1 - d(x2)");

  TwoForm w = wedge(coordForm(c, 0), coordForm(c, 1));
  CHECK(str(w) == "d(x1)^d(x2)");
  CHECK(str(zeroBivector(c)) == "0");

  auto c3 = chart3();
  TriVector t{c3, {}};
  t.add(2, 1, 0, RatFn(1));
  CHECK(str(t, false) == "-@x1^@x2^@x3");
}

TEST_CASE("chart guards") {
  auto a = chart2();
  auto b = chart3();
  CHECK_THROWS_AS(add(coordVec(a, 0), coordVec(b, 0)), ChartMismatch);
  CHECK_THROWS_AS(iota(coordVec(a, 0), coordForm(b, 0)), ChartMismatch);
}
