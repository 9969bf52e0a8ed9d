#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dirackit/compat.hpp"

using namespace dirackit;

namespace {

RatFn X(int i, int n) { return RatFn::variable(i, n); }

ChartPtr chart2() { return makeChart("M2", {"x1", "x2"}); }
ChartPtr chart4() { return makeChart("M4", {"x1", "x2", "x3", "x4"}); }

bool vecEq(const VecField& a, const VecField& b) {
  for (int i = 0; i < a.c.size(); ++i)
    if (a.c(i) != b.c(i)) return false;
  return true;
}

bool formEq(const OneForm& a, const OneForm& b) {
  for (int i = 0; i < a.c.size(); ++i)
    if (a.c(i) != b.c(i)) return false;
  return true;
}

// rotationally weighted pair on (x1,y1,x2,y2): pi = sum r_i^2 dxi ^ dyi sharp,
// omega = -sum dxi ^ dyi
ChartPtr chartXY() { return makeChart("P4", {"x1", "y1", "x2", "y2"}); }

Bivector radialPi(const ChartPtr& c) {
  RatFn r1 = X(0, 4) * X(0, 4) + X(1, 4) * X(1, 4);
  RatFn r2 = X(2, 4) * X(2, 4) + X(3, 4) * X(3, 4);
  Bivector p = add(scale(r1, wedge(coordVec(c, 0), coordVec(c, 1))),
                   scale(r2, wedge(coordVec(c, 2), coordVec(c, 3))));
  return p;
}

TwoForm negSymplectic(const ChartPtr& c) {
  return scale(RatFn(-1), add(wedge(coordForm(c, 0), coordForm(c, 1)),
                              wedge(coordForm(c, 2), coordForm(c, 3))));
}

// a pair that fails every compatibility verdict at once
Bivector defPi(const ChartPtr& c) {
  return add(wedge(coordVec(c, 0), coordVec(c, 1)), wedge(coordVec(c, 2), coordVec(c, 3)));
}

TwoForm defOmega(const ChartPtr& c) {
  OneForm alpha = zeroForm(c);
  alpha.c(1) = X(0, 4) * X(2, 4);  // x1 x3 dx2
  return add(d(alpha), wedge(coordForm(c, 2), coordForm(c, 3)));
}

GCSData complexPlane() {
  auto c = chart2();
  Endo a{c, MatF(2, 2)};
  a.m.setZero();
  a.m(0, 1) = RatFn(-1);
  a.m(1, 0) = RatFn(1);
  return GCSData{a, zeroBivector(c), zeroTwoForm(c)};
}

GCSData symplecticPlane() {
  auto c = chart2();
  Endo a{c, MatF(2, 2)};
  a.m.setZero();
  return GCSData{a, wedge(coordVec(c, 0), coordVec(c, 1)),
                 wedge(coordForm(c, 0), coordForm(c, 1))};
}

// B-field shear of the standard complex structure on (x1,y1,x2,y2)
GCSData shearedComplex() {
  auto c = chartXY();
  Endo a{c, MatF(4, 4)};
  a.m.setZero();
  a.m(0, 1) = RatFn(-1);
  a.m(1, 0) = RatFn(1);
  a.m(2, 3) = RatFn(-1);
  a.m(3, 2) = RatFn(1);
  RatFn y1 = X(1, 4);
  TwoForm w = scale(RatFn(-1), add(scale(y1, wedge(coordForm(c, 0), coordForm(c, 3))),
                                   scale(y1, wedge(coordForm(c, 1), coordForm(c, 2)))));
  return GCSData{a, zeroBivector(c), w};
}

}  // namespace

TEST_CASE("twisted bracket by an endomorphism") {
  auto c = chart2();
  Endo a{c, MatF(2, 2)};
  a.m.setZero();
  a.m(0, 0) = X(0, 2);  // a = x1 dx1 (x) d1
  VecField u = coordVec(c, 0), v = scale(X(0, 2), coordVec(c, 1));
  CHECK(vecEq(twistedBracket(a, u, v), scale(X(0, 2), coordVec(c, 1))));

  // identity twist reproduces the Lie bracket
  Endo id{c, MatF(2, 2)};
  id.m.setZero();
  id.m(0, 0) = RatFn(1);
  id.m(1, 1) = RatFn(1);
  VecField w = scale(X(1, 2) * X(1, 2), coordVec(c, 0));
  CHECK(vecEq(twistedBracket(id, w, v), lieBracket(w, v)));
}

TEST_CASE("twisted bracket by a two-form contracts its differential") {
  auto c = makeChart("M3", {"x1", "x2", "x3"});
  TwoForm w = scale(X(0, 3), wedge(coordForm(c, 1), coordForm(c, 2)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      VecField u = coordVec(c, i), v = coordVec(c, j);
      CHECK(formEq(twistedBracket(w, u, v), iota(v, iota(u, d(w)))));
    }
}

TEST_CASE("Koszul bracket sends exact forms to the Poisson bracket") {
  auto c = chart2();
  Bivector pi = scale(X(0, 2), wedge(coordVec(c, 0), coordVec(c, 1)));
  RatFn f = X(0, 2) * X(1, 2), g = X(0, 2);
  OneForm df = d(f, c), dg = d(g, c);
  RatFn fg = iota(bivectorSharp(pi, df), dg);
  CHECK(formEq(koszul(pi, df, dg), d(fg, c)));

  // constant forms and a constant bivector bracket to zero
  Bivector pc = wedge(coordVec(c, 0), coordVec(c, 1));
  CHECK(formEq(koszul(pc, coordForm(c, 0), coordForm(c, 1)), zeroForm(c)));
}

TEST_CASE("Nijenhuis table") {
  auto c = chart2();
  Endo a{c, MatF(2, 2)};
  a.m.setZero();
  a.m(0, 1) = RatFn(-1);
  a.m(1, 0) = RatFn(1);
  CHECK(nijenhuis(a).isZero());  // constant endomorphisms are Nijenhuis-flat

  Endo b{c, MatF(2, 2)};
  b.m.setZero();
  b.m(0, 0) = X(1, 2);  // x2 dx1 (x) d1
  VecPairTable nb = nijenhuis(b);
  CHECK(vecEq(nb.t[0][1], scale(RatFn(-1) * X(1, 2), coordVec(c, 0))));
  CHECK(vecEq(nb.t[1][0], scale(X(1, 2), coordVec(c, 0))));
}

TEST_CASE("twist symmetry checks gate the concomitants") {
  auto c = chart2();
  Endo a{c, MatF(2, 2)};
  a.m.setZero();
  a.m(0, 1) = RatFn(1);  // nilpotent shear
  Bivector pi = wedge(coordVec(c, 0), coordVec(c, 1));
  CHECK_FALSE(isSymmetricPair(a, pi));
  CHECK_THROWS_AS(concomitant(a, pi), NotSymmetricWithTwist);
  TwoForm w = wedge(coordForm(c, 0), coordForm(c, 1));
  CHECK_FALSE(isSymmetricPair(a, w));
  CHECK_THROWS_AS(concomitant(a, w), NotSymmetricWithTwist);

  Endo s{c, MatF(2, 2)};
  s.m.setZero();
  s.m(0, 0) = X(0, 2);
  s.m(1, 1) = X(0, 2);
  CHECK(isSymmetricPair(s, pi));
  CHECK(isSymmetricPair(s, w));
}

TEST_CASE("composites of a bivector and a two-form") {
  auto c = chartXY();
  Bivector pi = radialPi(c);
  TwoForm w = negSymplectic(c);
  Endo a = piSharpOmegaSharp(pi, w);
  RatFn r1 = X(0, 4) * X(0, 4) + X(1, 4) * X(1, 4);
  RatFn r2 = X(2, 4) * X(2, 4) + X(3, 4) * X(3, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      RatFn want = i != j ? RatFn(0) : (i < 2 ? r1 : r2);
      CHECK(a.m(i, j) == want);
    }

  TwoForm wpw = omegaPiOmega(w, pi);
  CHECK(wpw.m(0, 1) == -r1);
  CHECK(wpw.m(2, 3) == -r2);
  CHECK(wpw.m(0, 2).isZero());

  // the ladder step squares the radial weights
  Bivector next = aPi(a, pi);
  CHECK(next.m(0, 1) == r1 * r1);
  CHECK(next.m(2, 3) == r2 * r2);
  CHECK(next.m(1, 0) == -(r1 * r1));
}

TEST_CASE("compatibility suite on the radial pair") {
  auto c = chartXY();
  POmegaReport rep = pOmegaSuite(radialPi(c), negSymplectic(c));
  CHECK(rep.concur);
  CHECK(rep.closedComposite);
  CHECK(rep.complementary);
  CHECK(rep.agree);

  // the squared ladder bivector stays compatible with the same form
  Endo a = piSharpOmegaSharp(radialPi(c), negSymplectic(c));
  POmegaReport rep1 = pOmegaSuite(aPi(a, radialPi(c)), negSymplectic(c));
  CHECK(rep1.concur);
  CHECK(rep1.agree);

  POmegaReport repz = pOmegaSuite(radialPi(c), zeroTwoForm(c));
  CHECK(repz.concur);
  CHECK(repz.complementary);
  CHECK(repz.agree);
}

TEST_CASE("compatibility suite rejects bad inputs and flags bad pairs") {
  auto c = chart4();
  Bivector nonPoisson = add(wedge(coordVec(c, 0), coordVec(c, 1)),
                            scale(X(0, 4), wedge(coordVec(c, 2), coordVec(c, 3))));
  CHECK_THROWS_AS(pOmegaSuite(nonPoisson, zeroTwoForm(c)), InvalidInput);
  TwoForm open = scale(X(2, 4), wedge(coordForm(c, 0), coordForm(c, 1)));
  CHECK_THROWS_AS(pOmegaSuite(defPi(c), open), InvalidInput);

  POmegaReport rep = pOmegaSuite(defPi(c), defOmega(c));
  CHECK_FALSE(rep.concur);
  CHECK_FALSE(rep.closedComposite);
  CHECK_FALSE(rep.complementary);
  CHECK(rep.agree);
}

TEST_CASE("concomitant identities for a composed twist") {
  auto c = chart4();
  Bivector pi = defPi(c);
  TwoForm w = defOmega(c);
  Endo a = piSharpOmegaSharp(pi, w);
  TwoForm wpw = omegaPiOmega(w, pi);

  FormPairTable cw = concomitant(a, w);
  CHECK_FALSE(cw.isZero());
  VecPairTable na = nijenhuis(a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      VecField u = coordVec(c, i), v = coordVec(c, j);
      OneForm tw = twistedBracket(wpw, u, v);
      CHECK(formEq(cw.t[i][j], scale(RatFn(-1), tw)));
      CHECK(vecEq(na.t[i][j], bivectorSharp(pi, tw)));
    }

  // a Poisson bivector paired with a closed form has a vanishing concomitant
  auto cp = chartXY();
  Endo ap = piSharpOmegaSharp(radialPi(cp), negSymplectic(cp));
  CHECK(concomitant(ap, radialPi(cp)).isZero());
  CHECK(concomitant(ap, negSymplectic(cp)).isZero());
  CHECK(nijenhuis(ap).isZero());
}

TEST_CASE("randomized pairs keep the three verdicts in step") {
  auto c = chart4();
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> coeff(-2, 2);
  int agreeing = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Bivector pi = zeroBivector(c);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        RatFn v(coeff(gen));
        pi.m(i, j) = v;
        pi.m(j, i) = -v;
      }
    // every fourth trial keeps alpha linear, so the two-form is constant and
    // the concurring outcome shows up in the sample as well
    bool linear = trial % 4 == 0;
    OneForm alpha = zeroForm(c);
    for (int j = 0; j < 4; ++j) {
      RatFn f(coeff(gen));
      for (int k = 0; k < 4; ++k) {
        if (linear) {
          f += RatFn(coeff(gen)) * X(k, 4);
          continue;
        }
        for (int l = k; l < 4; ++l) f += RatFn(coeff(gen)) * X(k, 4) * X(l, 4);
      }
      alpha.c(j) = f;
    }
    POmegaReport rep = pOmegaSuite(pi, d(alpha));
    CHECK(rep.agree);
    if (rep.concur) ++agreeing;
  }
  CHECK(agreeing < 20);  // the sample must exercise both outcomes
  CHECK(agreeing > 0);
}

TEST_CASE("pair torsion vanishes on relation tuples of a bivector with itself") {
  auto c = chart4();
  LagFrame l = graphOf(add(wedge(coordVec(c, 0), coordVec(c, 1)),
                           scale(X(2, 4), wedge(coordVec(c, 2), coordVec(c, 3)))));
  TorsionReport rep = torsionSuite(l, l);
  CHECK(rep.vanishesOnFamily);
  CHECK(rep.tupleCount > 0);
  CHECK(rep.nonzeroValues.empty());
}

TEST_CASE("pair torsion on concurring and non-concurring pairs") {
  auto c = chart4();
  Bivector piL = wedge(coordVec(c, 0), coordVec(c, 1));
  Bivector piR = scale(X(0, 4), wedge(coordVec(c, 2), coordVec(c, 3)));

  // this pair does not weakly concur, yet its torsion is identically zero
  CHECK_FALSE(concurWeak(graphOf(piL), graphOf(piR)).concur);
  TorsionReport rep = torsionSuite(graphOf(piL), graphOf(piR));
  CHECK(rep.vanishesOnFamily);
  CHECK(rep.tupleCount > 0);

  Bivector piC = wedge(coordVec(c, 2), coordVec(c, 3));
  CHECK(concurWeak(graphOf(piL), graphOf(piC)).concur);
  TorsionReport repc = torsionSuite(graphOf(piL), graphOf(piC));
  CHECK(repc.vanishesOnFamily);

  // direct evaluation of one admissible tuple
  TorsionTuple t;
  t.uL = coordVec(c, 1);
  t.uR = zeroVec(c);
  t.vL = zeroVec(c);
  t.vR = scale(X(0, 4), coordVec(c, 3));
  t.zetaL = coordForm(c, 2);
  t.zetaLR = zeroForm(c);
  t.zetaR = zeroForm(c);
  CHECK(diracPairTorsion(graphOf(piL), graphOf(piR), t).isZero());
}

TEST_CASE("pair torsion rejects tuples outside the relation spaces") {
  auto c = chart2();
  LagFrame tm = fullTangentFrame(c);
  TorsionTuple t;
  t.uL = coordVec(c, 0);
  t.uR = zeroVec(c);
  t.vL = coordVec(c, 1);
  t.vR = coordVec(c, 1);
  t.zetaL = coordForm(c, 0);  // no shared vector produces this covector pair
  t.zetaLR = zeroForm(c);
  t.zetaR = zeroForm(c);
  CHECK_THROWS_AS(diracPairTorsion(tm, tm, t), NotInRelationSpace);
}

TEST_CASE("transverse composition of Poisson bivectors") {
  auto c = chart2();
  Bivector piL = wedge(coordVec(c, 0), coordVec(c, 1));
  Bivector piR = scale(RatFn(2), piL);
  TransversePoissonReport rep = transverseCompose(piL, piR);
  CHECK(rep.composed.m(0, 1) == RatFn(2));
  CHECK(rep.composed.m(1, 0) == RatFn(-2));
  CHECK(rep.graphMatch);
  CHECK(rep.composedPoisson);

  TransversePoissonReport repz = transverseCompose(zeroBivector(c), piL);
  CHECK(repz.composed.m(0, 1).isZero());
  CHECK(repz.graphMatch);

  CHECK_THROWS_AS(transverseCompose(piL, piL), NotTransverse);
}

TEST_CASE("transverse composition of closed two-forms") {
  auto c = chart4();
  TwoForm wL = add(wedge(coordForm(c, 0), coordForm(c, 1)),
                   wedge(coordForm(c, 2), coordForm(c, 3)));
  TransverseTwoFormReport rep = transverseCompose(wL, scale(RatFn(2), wL));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(rep.composed.m(i, j) == RatFn(2) * wL.m(i, j));
  CHECK(rep.closed);
  CHECK(rep.concur);
  CHECK(rep.agree);

  // a coordinate-dependent exact shift keeps the difference invertible
  OneForm alpha = zeroForm(c);
  alpha.c(3) = X(2, 4);             // x3 dx4
  alpha.c(1) = X(0, 4) * X(2, 4);   // x1 x3 dx2
  TransverseTwoFormReport repx = transverseCompose(wL, add(wL, d(alpha)));
  CHECK(repx.agree);

  CHECK_THROWS_AS(transverseCompose(wL, wL), NotTransverse);
}

TEST_CASE("generalized structure validation") {
  GCSReport rc = gcsValidate(complexPlane());
  CHECK(rc.valid());
  GCSReport rs = gcsValidate(symplecticPlane());
  CHECK(rs.valid());
  GCSReport rb = gcsValidate(shearedComplex());
  CHECK(rb.valid());

  auto c = chart2();
  GCSData zero{Endo{c, MatF::Zero(2, 2).eval()}, zeroBivector(c), zeroTwoForm(c)};
  GCSReport rz = gcsValidate(zero);
  CHECK_FALSE(rz.squareIdentity);
  CHECK_FALSE(rz.algebraic());
  CHECK_THROWS_AS(gcsEigenframe(zero), InvalidGCS);
}

TEST_CASE("eigenframe of the complex plane") {
  LagFrame l = gcsEigenframe(complexPlane());
  CHECK(l.chart->gaussian);
  CHECK(l.size() == 2);
  RatFn mi = RatFn::constant(Scalar(Rational(0), Rational(-1)), 2);
  auto tc = l.chart;
  LagFrame want = frameFromSections(
      {vecSec(add(coordVec(tc, 0), scale(mi, coordVec(tc, 1)))),
       formSec(add(coordForm(tc, 0), scale(mi, coordForm(tc, 1))))});
  CHECK(sameFamily(l, want));
  CHECK(rank<RatFn>(stackRows<RatFn>(l.rows, conjugateFrame(l).rows)) == 4);
}

TEST_CASE("conjugate eigenframe products recover the structure tensors") {
  GCSConjReport rs = gcsConjProducts(symplecticPlane());
  CHECK(rs.starMatches);
  CHECK(rs.costarMatches);
  CHECK(rs.concur);
  CHECK(rs.domegaZero);
  CHECK(rs.agree);
  CHECK(rs.pnStructure);
  CHECK(rs.omegaNStructure);

  GCSConjReport rc = gcsConjProducts(complexPlane());
  CHECK(rc.starMatches);
  CHECK(rc.costarMatches);
  CHECK(rc.concur);
  CHECK(rc.agree);

  GCSConjReport rb = gcsConjProducts(shearedComplex());
  CHECK(rb.starMatches);
  CHECK(rb.costarMatches);
  CHECK_FALSE(rb.concur);
  CHECK_FALSE(rb.domegaZero);
  CHECK(rb.agree);
  CHECK(rb.pnStructure);
  CHECK_FALSE(rb.omegaNStructure);
}

TEST_CASE("involutive structure suite") {
  auto c = makeChart("C2", {"x", "y"}, true);
  RatFn i2 = RatFn::constant(Scalar::i(), 2);
  VecField e = add(coordVec(c, 0), scale(i2, coordVec(c, 1)));
  InvolutiveReport rep = involutiveStructureSuite({e});
  CHECK(rep.involutive);
  CHECK(rep.concur);
  CHECK(rep.intersectionRank == 0);
  CHECK(rep.typeRank == 1);

  InvolutiveReport real = involutiveStructureSuite({coordVec(c, 0)});
  CHECK(real.involutive);
  CHECK(real.concur);
  CHECK(real.intersectionRank == 1);
  CHECK(real.typeRank == 0);

  // a structure whose bracket with its conjugate leaves the combined span
  auto c3 = makeChart("C3", {"x", "y", "t"}, true);
  RatFn i3 = RatFn::constant(Scalar::i(), 3);
  VecField lewy = add(coordVec(c3, 0), scale(i3, coordVec(c3, 1)));
  lewy = add(lewy, scale(RatFn(2) * X(1, 3) - RatFn(2) * i3 * X(0, 3), coordVec(c3, 2)));
  InvolutiveReport rl = involutiveStructureSuite({lewy});
  CHECK(rl.involutive);
  CHECK_FALSE(rl.concur);
  CHECK(rl.intersectionRank == 0);
  CHECK(rl.typeRank == 1);

  CHECK_THROWS_AS(involutiveStructureSuite({coordVec(c, 0), scale(RatFn(2), coordVec(c, 0))}),
                  RankDeficient);
  auto rc = chart2();
  CHECK_THROWS_AS(involutiveStructureSuite({coordVec(rc, 0)}), NotComplexChart);
}
