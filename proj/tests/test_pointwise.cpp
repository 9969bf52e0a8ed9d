#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dirackit/fiber.hpp"

using namespace dirackit;

namespace {

MatQ rows(std::initializer_list<std::initializer_list<int>> data) {
  int r = static_cast<int>(data.size());
  int c = static_cast<int>(data.begin()->size());
  MatQ m(r, c);
  int i = 0;
  for (const auto& row : data) {
    int j = 0;
    for (int v : row) m(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

LagSubspace sub(int n, std::initializer_list<std::initializer_list<int>> data) {
  return LagSubspace(n, rows(data));
}

MatQ antisym(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  MatQ m(n, n);
  m.setZero();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = Scalar(coef(rng));
      m(j, i) = -m(i, j);
    }
  return m;
}

// every Lagrangian fiber is R_pi(Gr(F)); sample both ingredients
LagSubspace randomLag(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> kd(0, n);
  int k = kd(rng);
  MatQ e(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = Scalar(coef(rng));
  LagSubspace grF(n, lag::graphDistribution(e, n));
  return gaugeBivectorPt(grF, antisym(n, rng));
}

MatQ prT(const LagSubspace& w) { return lag::tanBlock(w.basis(), w.n()); }
MatQ prTs(const LagSubspace& w) { return lag::cotBlock(w.basis(), w.n()); }

}  // namespace

TEST_CASE("pairing convention") {
  FiberElement a{VecQ(1), VecQ(1)}, b{VecQ(1), VecQ(1)};
  a.vec << Scalar(1);
  a.covec << Scalar(0);
  b.vec << Scalar(0);
  b.covec << Scalar(1);
  CHECK(pairingPt(a, b) == Scalar(1));
  FiberElement c{a.vec, b.covec};
  CHECK(pairingPt(c, c) == Scalar(2));
  // the plane-frame sections at x1 = 1
  FiberElement a1 = FiberElement::fromRow(rows({{1, 0, 0, -1}}), 2);
  FiberElement a2 = FiberElement::fromRow(rows({{0, 1, 1, 0}}), 2);
  CHECK(pairingPt(a1, a2) == Scalar(0));
}

TEST_CASE("orthogonal complements") {
  CHECK(orthogonalPt(tangentFiber(2)) == tangentFiber(2));
  LagSubspace w = sub(2, {{1, 0, 0, 0}});
  LagSubspace wp = orthogonalPt(w);
  CHECK(wp == sub(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < 25; ++t) {
    MatQ m(3, 6);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = Scalar(coef(rng));
    LagSubspace v(3, m);
    LagSubspace vp = orthogonalPt(v);
    CHECK(vp.dim() + v.dim() == 6);
    CHECK(orthogonalPt(vp) == v);
  }
}

TEST_CASE("star and costar on graphs and unit laws") {
  std::mt19937 rng(5);
  LagSubspace l = randomLag(3, rng);
  CHECK(starPt(l, tangentFiber(3)) == l);
  CHECK(costarPt(l, cotangentFiber(3)) == l);
  CHECK(starPt(l, cotangentFiber(3)) == cotangentFiber(3));
  CHECK(costarPt(l, tangentFiber(3)) == tangentFiber(3));

  MatQ w1 = rows({{0, 1}, {-1, 0}});
  MatQ w2 = rows({{0, 3}, {-3, 0}});
  LagSubspace g1(2, lag::graphTwoForm(w1, 2)), g2(2, lag::graphTwoForm(w2, 2));
  LagSubspace sum(2, lag::graphTwoForm(MatQ(w1 + w2), 2));
  CHECK(starPt(g1, g2) == sum);

  LagSubspace p1(2, lag::graphBivector(w1, 2)), p2(2, lag::graphBivector(w2, 2));
  LagSubspace psum(2, lag::graphBivector(MatQ(w1 + w2), 2));
  CHECK(costarPt(p1, p2) == psum);

  // distribution graphs: E = span{d1}, F = span{d1, d2} in n = 3
  LagSubspace grE(3, lag::graphDistribution(rows({{1, 0, 0}}), 3));
  LagSubspace grF(3, lag::graphDistribution(rows({{1, 0, 0}, {0, 1, 0}}), 3));
  CHECK(starPt(grE, grF) ==
        sub(3, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}}));
  CHECK(costarPt(grE, grF) ==
        sub(3, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}}));
}

TEST_CASE("gauge actions and rescaling") {
  std::mt19937 rng(9);
  MatQ w = antisym(3, rng);
  CHECK(gaugeTwoFormPt(tangentFiber(3), w) == LagSubspace(3, lag::graphTwoForm(w, 3)));
  MatQ p = antisym(3, rng);
  LagSubspace grP(3, lag::graphBivector(p, 3));
  CHECK(rescalePt(grP, Scalar(-1)) == LagSubspace(3, lag::graphBivector(MatQ(-p), 3)));
  CHECK_THROWS_AS(rescalePt(grP, Scalar(0)), ZeroRescale);
  // R_omega(L) = Gr(omega) * L and R_pi(L) = Gr(pi) (*) L
  for (int t = 0; t < 20; ++t) {
    LagSubspace l = randomLag(3, rng);
    MatQ om = antisym(3, rng), pi = antisym(3, rng);
    CHECK(gaugeTwoFormPt(l, om) == starPt(LagSubspace(3, lag::graphTwoForm(om, 3)), l));
    CHECK(gaugeBivectorPt(l, pi) == costarPt(LagSubspace(3, lag::graphBivector(pi, 3)), l));
  }
  // L * R_{-1}(L) = pr_T(L) (+) pr_T(L)^o
  LagSubspace l = sub(2, {{1, 0, 0, 0}, {0, 0, 0, 1}});
  CHECK(starPt(l, rescalePt(l, Scalar(-1))) == sub(2, {{1, 0, 0, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("transport along linear maps") {
  std::mt19937 rng(13);
  MatQ id(3, 3);
  id.setZero();
  for (int i = 0; i < 3; ++i) id(i, i) = Scalar(1);
  LagSubspace l = randomLag(3, rng);
  CHECK(pullbackPt(id, l) == l);
  CHECK(pushforwardPt(id, l) == l);

  MatQ proj12 = rows({{1, 0}});
  CHECK(pushforwardPt(proj12, tangentFiber(2)) == tangentFiber(1));

  // pullback of Gr(d1 ^ d2) along the projection K^3 -> K^2
  MatQ proj = rows({{1, 0, 0}, {0, 1, 0}});
  MatQ p2 = rows({{0, 1}, {-1, 0}});
  LagSubspace grPi(2, lag::graphBivector(p2, 2));
  LagSubspace pulled = pullbackPt(proj, grPi);
  CHECK(pulled == sub(3, {{0, 0, 1, 0, 0, 0}, {1, 0, 0, 0, -1, 0}, {0, 1, 0, 1, 0, 0}}));
}

TEST_CASE("diamond relations and duality") {
  auto d = diamondDualPt(tangentFiber(2), tangentFiber(2));
  CHECK(d.diamondT.rows() == 4);
  CHECK(d.diamondTstar.rows() == 0);
  CHECK(d.dualityHolds);

  // graph fibers of the commuting-failure pair at x1 = 1
  MatQ pl(4, 4), pr(4, 4);
  pl.setZero();
  pr.setZero();
  pl(0, 1) = Scalar(1);
  pl(1, 0) = Scalar(-1);
  pr(2, 3) = Scalar(1);
  pr(3, 2) = Scalar(-1);
  LagSubspace l(4, lag::graphBivector(pl, 4)), r(4, lag::graphBivector(pr, 4));
  auto d2 = diamondDualPt(l, r);
  CHECK(d2.dualityHolds);
  // defining property: pi_L#(xi) = pi_R#(eta) on every basis row (xi, eta)
  for (int i = 0; i < d2.diamondTstar.rows(); ++i) {
    for (int j = 0; j < 4; ++j) {
      Scalar lhs(0), rhs(0);
      for (int k = 0; k < 4; ++k) {
        lhs += d2.diamondTstar(i, k) * pl(k, j);
        rhs += d2.diamondTstar(i, 4 + k) * pr(k, j);
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("parity split of the 4d star example") {
  // L = Gr(pi), pi = d1^d2 + x3 d3^d4, evaluated fibers
  auto lfiber = [&](Scalar x3) {
    MatQ p(4, 4);
    p.setZero();
    p(0, 1) = Scalar(1);
    p(1, 0) = Scalar(-1);
    p(2, 3) = x3;
    p(3, 2) = -x3;
    return LagSubspace(4, lag::graphBivector(p, 4));
  };
  auto rfiber = [&](Scalar x1, Scalar x2) {
    MatQ m(4, 8);
    m.setZero();
    // v_i = di + x_i(d3 + d4); covectors dx3 - df, dx4 - df, df = x1 dx1 + x2 dx2
    m(0, 0) = Scalar(1);
    m(0, 2) = x1;
    m(0, 3) = x1;
    m(1, 1) = Scalar(1);
    m(1, 2) = x2;
    m(1, 3) = x2;
    m(2, 4) = -x1;
    m(2, 5) = -x2;
    m(2, 6) = Scalar(1);
    m(3, 4) = -x1;
    m(3, 5) = -x2;
    m(3, 7) = Scalar(1);
    return LagSubspace(4, m);
  };
  auto onA = starPt(lfiber(Scalar(0)), rfiber(Scalar(1), Scalar(0)));
  auto statsA = fiberStatsPt(onA);
  CHECK(statsA.prTRank == 1);
  CHECK(statsA.parity == "odd");
  auto offA = starPt(lfiber(Scalar(1)), rfiber(Scalar(1), Scalar(1)));
  auto statsOff = fiberStatsPt(offA);
  CHECK(statsOff.prTRank == 2);
  CHECK(statsOff.parity == "even");
  CHECK(fiberStatsPt(tangentFiber(4)).prTRank == 4);
  CHECK(fiberStatsPt(tangentFiber(4)).parity == "even");
}

TEST_CASE("law suite over 1000 random Lagrangian pairs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick(1, 4);
  int failures = 0;
  auto expect = [&](bool ok) {
    if (!ok) ++failures;
  };
  const Scalar third = Scalar::fraction(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = pick(rng);
    LagSubspace l = randomLag(n, rng), r = randomLag(n, rng), t = randomLag(n, rng);
    LagSubspace s = starPt(l, r), c = costarPt(l, r);

    expect(s.isLagrangian());
    expect(c.isLagrangian());
    expect(s == starPt(r, l));
    expect(c == costarPt(r, l));
    expect(starPt(starPt(l, r), t) == starPt(l, starPt(r, t)));
    expect(costarPt(costarPt(l, r), t) == costarPt(l, costarPt(r, t)));
    expect(starPt(l, tangentFiber(n)) == l);
    expect(starPt(l, cotangentFiber(n)) == cotangentFiber(n));
    expect(costarPt(l, cotangentFiber(n)) == l);
    expect(costarPt(l, tangentFiber(n)) == tangentFiber(n));

    expect(sameRowSpan<Scalar>(prT(s), rowSpanIntersect<Scalar>(prT(l), prT(r))));
    expect(sameRowSpan<Scalar>(prTs(c), rowSpanIntersect<Scalar>(prTs(l), prTs(r))));

    expect(diamondDualPt(l, r).dualityHolds);

    // pullback functoriality along a random linear map into this fiber
    int m = pick(rng);
    std::uniform_int_distribution<int> coef(-2, 2);
    MatQ f(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) f(i, j) = Scalar(coef(rng));
    expect(pullbackPt(f, s) == starPt(pullbackPt(f, l), pullbackPt(f, r)));

    for (Scalar tt : {Scalar(2), Scalar(-1), third})
      expect(rescalePt(c, tt) == costarPt(rescalePt(l, tt), rescalePt(r, tt)));

    // transversality: both twisted products are graphs iff L and R meet in 0
    bool transverse = rowSpanIntersect<Scalar>(l.basis(), r.basis()).rows() == 0;
    LagSubspace negR = rescalePt(r, Scalar(-1));
    bool starGraph = fiberStatsPt(starPt(l, negR)).prTstarRank == n;
    bool costarGraph = fiberStatsPt(costarPt(l, negR)).prTRank == n;
    if (transverse) expect(starGraph && costarGraph);
    if (starGraph && costarGraph) expect(transverse);

    // constructive decomposition L = Gr(pi) (*) Gr(F)
    auto dec = lag::decompose(l.basis(), n);
    LagSubspace grF(n, lag::graphDistribution(dec.dist, n));
    expect(costarPt(LagSubspace(n, lag::graphBivector(dec.pi, n)), grF) == l);
  }
  CHECK(failures == 0);
}
