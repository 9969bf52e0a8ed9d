#include "dirackit/compat.hpp"

namespace dirackit {

namespace {

MatF minusIdentity(int n) {
  MatF m(n, n);
  m.setZero();
  for (int i = 0; i < n; ++i) m(i, i) = RatFn(-1);
  return m;
}

bool tablesEqual(const VecPairTable& a, const VecPairTable& b) {
  int n = static_cast<int>(a.t.size());
  if (static_cast<int>(b.t.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < a.t[i][j].c.size(); ++k)
        if (a.t[i][j].c(k) != b.t[i][j].c(k)) return false;
  return true;
}

}  // namespace

VecField twistedBracket(const Endo& a, const VecField& u, const VecField& v) {
  requireSameChart(a.chart, u.chart);
  requireSameChart(u.chart, v.chart);
  VecField out = add(lieBracket(endoApply(a, u), v), lieBracket(u, endoApply(a, v)));
  return add(out, scale(RatFn(-1), endoApply(a, lieBracket(u, v))));
}

OneForm twistedBracket(const TwoForm& w, const VecField& u, const VecField& v) {
  requireSameChart(w.chart, u.chart);
  requireSameChart(u.chart, v.chart);
  // [w(u),v] = -i_v d(w#u), [u,w(v)] = L_u(w#v)
  OneForm out = add(scale(RatFn(-1), iota(v, d(twoFormSharp(w, u)))),
                    lieDerivative(u, twoFormSharp(w, v)));
  return add(out, scale(RatFn(-1), twoFormSharp(w, lieBracket(u, v))));
}

OneForm koszul(const Bivector& pi, const OneForm& xi, const OneForm& eta) {
  requireSameChart(pi.chart, xi.chart);
  requireSameChart(xi.chart, eta.chart);
  return add(lieDerivative(bivectorSharp(pi, xi), eta),
             scale(RatFn(-1), iota(bivectorSharp(pi, eta), d(xi))));
}

VecPairTable nijenhuis(const Endo& a) {
  int n = a.chart->dim();
  VecPairTable tab{a.chart, {}};
  tab.t.assign(n, std::vector<VecField>(n, zeroVec(a.chart)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecField ei = coordVec(a.chart, i), ej = coordVec(a.chart, j);
      VecField v = add(endoApply(a, twistedBracket(a, ei, ej)),
                       scale(RatFn(-1), lieBracket(endoApply(a, ei), endoApply(a, ej))));
      tab.t[i][j] = v;
      tab.t[j][i] = scale(RatFn(-1), v);
    }
  return tab;
}

bool isSymmetricPair(const Endo& a, const Bivector& pi) {
  return matEq<RatFn>((a.m * pi.m).eval(), (pi.m * a.m.transpose()).eval());
}

bool isSymmetricPair(const Endo& a, const TwoForm& w) {
  return matEq<RatFn>((a.m.transpose() * w.m).eval(), (w.m * a.m).eval());
}

FormPairTable concomitant(const Endo& a, const Bivector& pi) {
  requireSameChart(a.chart, pi.chart);
  if (!isSymmetricPair(a, pi))
    throw NotSymmetricWithTwist("bivector is not symmetric with respect to the twist");
  int n = a.chart->dim();
  FormPairTable tab{a.chart, {}};
  tab.t.assign(n, std::vector<OneForm>(n, zeroForm(a.chart)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      OneForm xi = coordForm(a.chart, i), eta = coordForm(a.chart, j);
      OneForm out = endoStar(a, koszul(pi, xi, eta));
      // [a*(xi), pi(eta)] = -i_{pi#eta} d(a* xi); [pi(xi), a*(eta)] = L_{pi#xi}(a* eta)
      out = add(out, iota(bivectorSharp(pi, eta), d(endoStar(a, xi))));
      out = add(out, scale(RatFn(-1), lieDerivative(bivectorSharp(pi, xi), endoStar(a, eta))));
      tab.t[i][j] = out;
      tab.t[j][i] = scale(RatFn(-1), out);
    }
  return tab;
}

FormPairTable concomitant(const Endo& a, const TwoForm& w) {
  requireSameChart(a.chart, w.chart);
  if (!isSymmetricPair(a, w))
    throw NotSymmetricWithTwist("two-form is not symmetric with respect to the twist");
  int n = a.chart->dim();
  FormPairTable tab{a.chart, {}};
  tab.t.assign(n, std::vector<OneForm>(n, zeroForm(a.chart)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecField u = coordVec(a.chart, i), v = coordVec(a.chart, j);
      OneForm out = lieDerivative(endoApply(a, u), twoFormSharp(w, v));
      out = add(out, scale(RatFn(-1), iota(endoApply(a, v), d(twoFormSharp(w, u)))));
      out = add(out, scale(RatFn(-1), twoFormSharp(w, twistedBracket(a, u, v))));
      out = add(out, endoStar(a, twistedBracket(w, u, v)));
      tab.t[i][j] = out;
      tab.t[j][i] = scale(RatFn(-1), out);
    }
  return tab;
}

Endo piSharpOmegaSharp(const Bivector& pi, const TwoForm& w) {
  requireSameChart(pi.chart, w.chart);
  return Endo{pi.chart, (w.m * pi.m).transpose().eval()};
}

TwoForm omegaPiOmega(const TwoForm& w, const Bivector& pi) {
  requireSameChart(pi.chart, w.chart);
  return TwoForm{w.chart, (w.m * pi.m * w.m).eval()};
}

Bivector aPi(const Endo& a, const Bivector& pi) {
  requireSameChart(a.chart, pi.chart);
  return Bivector{pi.chart, (pi.m * a.m.transpose()).eval()};
}

POmegaReport pOmegaSuite(const Bivector& pi, const TwoForm& w) {
  requireSameChart(pi.chart, w.chart);
  if (!isInvolutive(graphOf(pi)).involutive)
    throw InvalidInput("compatibility suite needs an integrable bivector");
  if (!d(w).isZero()) throw InvalidInput("compatibility suite needs a closed two-form");
  POmegaReport rep;
  rep.concur = concurWeak(graphOf(pi), graphOf(w)).concur;
  rep.closedComposite = d(omegaPiOmega(w, pi)).isZero();
  Endo a = piSharpOmegaSharp(pi, w);
  int n = pi.chart->dim();
  rep.rOmega.chart = pi.chart;
  rep.rOmega.t.assign(n, std::vector<OneForm>(n, zeroForm(pi.chart)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecField u = coordVec(pi.chart, i), v = coordVec(pi.chart, j);
      OneForm r = add(twoFormSharp(w, twistedBracket(a, u, v)),
                      scale(RatFn(-1), koszul(pi, twoFormSharp(w, u), twoFormSharp(w, v))));
      rep.rOmega.t[i][j] = r;
      rep.rOmega.t[j][i] = scale(RatFn(-1), r);
    }
  rep.complementary = rep.rOmega.isZero();
  rep.agree = rep.concur == rep.closedComposite && rep.closedComposite == rep.complementary;
  return rep;
}

namespace {

MatF pairRow(const VecField& a, const VecField& b) {
  int n = a.chart->dim();
  MatF r(1, 2 * n);
  for (int i = 0; i < n; ++i) {
    r(0, i) = a.c(i);
    r(0, n + i) = b.c(i);
  }
  return r;
}

MatF pairRow(const OneForm& a, const OneForm& b) {
  int n = a.chart->dim();
  MatF r(1, 2 * n);
  for (int i = 0; i < n; ++i) {
    r(0, i) = a.c(i);
    r(0, n + i) = b.c(i);
  }
  return r;
}

}  // namespace

RatFn diracPairTorsion(const LagFrame& l, const LagFrame& r, const TorsionTuple& t) {
  requireSameChart(l.chart, r.chart);
  int n = l.n();
  MatF dT = lag::diamondT(l.rows, r.rows, n);
  MatF dTs = lag::diamondTstar(l.rows, r.rows, n);
  if (!inRowSpan(pairRow(t.uL, t.uR), dT) || !inRowSpan(pairRow(t.vL, t.vR), dT) ||
      !inRowSpan(pairRow(t.zetaLR, t.zetaR), dTs) ||
      !inRowSpan(pairRow(t.zetaL, t.zetaLR), dTs))
    throw NotInRelationSpace("torsion tuple fails the relation-space membership");
  RatFn out = iota(lieBracket(t.uL, t.vL), t.zetaL);
  out -= iota(add(lieBracket(t.uL, t.vR), lieBracket(t.uR, t.vL)), t.zetaLR);
  out += iota(lieBracket(t.uR, t.vR), t.zetaR);
  return out;
}

std::vector<TorsionTuple> torsionTupleFamily(const LagFrame& l, const LagFrame& r) {
  requireSameChart(l.chart, r.chart);
  ChartPtr c = l.chart;
  int n = l.n();
  MatF dT = lag::diamondT(l.rows, r.rows, n);
  MatF dTs = lag::diamondTstar(l.rows, r.rows, n);

  auto vecOf = [&](const MatF& m, int row, int offset) {
    VecField v = zeroVec(c);
    for (int i = 0; i < n; ++i) v.c(i) = m(row, offset + i);
    return v;
  };
  auto formOf = [&](const MatF& m, int row, int offset) {
    OneForm f = zeroForm(c);
    for (int i = 0; i < n; ++i) f.c(i) = m(row, offset + i);
    return f;
  };

  // covector chains: basis row (zL, zLR), then any zR with (zLR, zR) in the relation
  struct Chain {
    OneForm zL, zLR, zR;
  };
  std::vector<Chain> chains;
  int ks = static_cast<int>(dTs.rows());
  for (int s = 0; s < ks; ++s) {
    MatF left(n, ks);  // columns are the left halves of the relation basis
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < ks; ++j) left(i, j) = dTs(j, i);
    VecF b(n);
    for (int i = 0; i < n; ++i) b(i) = dTs(s, n + i);
    auto sol = solveLinear<RatFn>(left, b);
    if (!sol) continue;
    OneForm zR = zeroForm(c);
    for (int i = 0; i < n; ++i) {
      RatFn acc(0);
      for (int j = 0; j < ks; ++j) acc += (*sol)(j)*dTs(j, n + i);
      zR.c(i) = acc;
    }
    chains.push_back(Chain{formOf(dTs, s, 0), formOf(dTs, s, n), zR});
  }

  std::vector<RatFn> multipliers{RatFn(1)};
  for (int i = 0; i < n; ++i) multipliers.push_back(RatFn::variable(i, n));

  std::vector<TorsionTuple> out;
  int kt = static_cast<int>(dT.rows());
  for (int p = 0; p < kt; ++p)
    for (int q = p; q < kt; ++q)
      for (const Chain& ch : chains)
        for (const RatFn& f : multipliers) {
          TorsionTuple t;
          t.uL = scale(f, vecOf(dT, p, 0));
          t.uR = scale(f, vecOf(dT, p, n));
          t.vL = vecOf(dT, q, 0);
          t.vR = vecOf(dT, q, n);
          t.zetaL = ch.zL;
          t.zetaLR = ch.zLR;
          t.zetaR = ch.zR;
          out.push_back(t);
        }
  return out;
}

TorsionReport torsionSuite(const LagFrame& l, const LagFrame& r) {
  TorsionReport rep;
  for (const TorsionTuple& t : torsionTupleFamily(l, r)) {
    RatFn v = diracPairTorsion(l, r, t);
    ++rep.tupleCount;
    if (!v.isZero()) {
      rep.vanishesOnFamily = false;
      rep.nonzeroValues.push_back(v);
    }
  }
  return rep;
}

TransversePoissonReport transverseCompose(const Bivector& first, const Bivector& second) {
  requireSameChart(first.chart, second.chart);
  MatF omegaSharp = inverseMatrix<RatFn>(
      (second.m.transpose() - first.m.transpose()).eval());
  TransversePoissonReport rep{
      Bivector{first.chart,
               (first.m.transpose() * omegaSharp * second.m.transpose()).transpose().eval()},
      TwoForm{first.chart, omegaSharp.transpose().eval()}, false, false};
  rep.graphMatch = sameFamily(graphOf(rep.composed),
                              starSym(graphOf(first), rescaleSym(graphOf(second), RatFn(-1))));
  rep.composedPoisson = isInvolutive(graphOf(rep.composed)).involutive;
  return rep;
}

TransverseTwoFormReport transverseCompose(const TwoForm& first, const TwoForm& second) {
  requireSameChart(first.chart, second.chart);
  MatF piSharp = inverseMatrix<RatFn>((second.m.transpose() - first.m.transpose()).eval());
  TransverseTwoFormReport rep{
      TwoForm{first.chart,
              (first.m.transpose() * piSharp * second.m.transpose()).transpose().eval()},
      Bivector{first.chart, piSharp.transpose().eval()}, false, false, false};
  rep.closed = d(rep.composed).isZero();
  rep.concur = concurWeak(graphOf(first), graphOf(second)).concur;
  rep.agree = rep.closed == rep.concur;
  return rep;
}

GCSReport gcsValidate(const GCSData& g) {
  requireSameChart(g.a.chart, g.pi.chart);
  requireSameChart(g.a.chart, g.omega.chart);
  const MatF& A = g.a.m;
  const MatF& P = g.pi.m;
  const MatF& W = g.omega.m;
  int n = g.a.chart->dim();
  GCSReport rep;
  rep.squareIdentity = matEq<RatFn>((A * A + (W * P).transpose()).eval(), minusIdentity(n));
  rep.omegaIntertwine = matEq<RatFn>((W * A).eval(), (A.transpose() * W).eval());
  rep.piIntertwine = matEq<RatFn>((A * P).eval(), (P * A.transpose()).eval());
  if (!rep.algebraic()) return rep;
  rep.c1 = isInvolutive(graphOf(g.pi)).involutive;
  rep.c2 = concomitant(g.a, g.pi).isZero();
  VecPairTable na = nijenhuis(g.a);
  VecPairTable expect{g.a.chart, {}};
  expect.t.assign(n, std::vector<VecField>(n, zeroVec(g.a.chart)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecField v = scale(RatFn(-1),
                         bivectorSharp(g.pi, twistedBracket(g.omega, coordVec(g.a.chart, i),
                                                            coordVec(g.a.chart, j))));
      expect.t[i][j] = v;
      expect.t[j][i] = scale(RatFn(-1), v);
    }
  rep.c3 = tablesEqual(na, expect);
  rep.c4 = concomitant(g.a, g.omega).isZero();
  return rep;
}

namespace {

ChartPtr gaussianTwin(const ChartPtr& c) {
  if (c->gaussian) return c;
  return makeChart(c->name, c->coords, true);
}

}  // namespace

LagFrame gcsEigenframe(const GCSData& g) {
  GCSReport rep = gcsValidate(g);
  if (!rep.algebraic()) throw InvalidGCS("structure matrix does not square to minus identity");
  int n = g.a.chart->dim();
  MatF j(2 * n, 2 * n);
  j.topLeftCorner(n, n) = g.a.m;
  j.topRightCorner(n, n) = g.pi.m.transpose();
  j.bottomLeftCorner(n, n) = g.omega.m.transpose();
  j.bottomRightCorner(n, n) = (-g.a.m.transpose()).eval();
  RatFn i = RatFn::constant(Scalar::i(), n);
  MatF rows = j.transpose();  // row k = J(e_k)
  for (int k = 0; k < 2 * n; ++k) rows(k, k) += i;
  MatF basis = rowSpanBasis<RatFn>(rows);
  if (basis.rows() != n) throw InvalidGCS("eigenspace does not have rank n");
  LagFrame l{gaussianTwin(g.a.chart), basis};
  if (rank<RatFn>(stackRows<RatFn>(l.rows, conjugateFrame(l).rows)) != 2 * n)
    throw InvalidGCS("eigenspace is not transverse to its conjugate");
  return l;
}

GCSConjReport gcsConjProducts(const GCSData& g) {
  GCSReport val = gcsValidate(g);
  if (!val.valid()) throw InvalidGCS("not a generalized complex structure");
  LagFrame l = gcsEigenframe(g);
  LagFrame lb = conjugateFrame(l);
  ChartPtr twin = l.chart;
  int n = g.a.chart->dim();
  RatFn halfOverI = RatFn::constant(Scalar::i() * Scalar::fraction(-1, 2), n);  // 1/(2i)
  GCSConjReport rep;
  rep.starMatches = sameFamily(starSym(l, rescaleSym(lb, RatFn(-1))),
                               graphOf(Bivector{twin, (g.pi.m * halfOverI).eval()}));
  rep.costarMatches = sameFamily(costarSym(l, rescaleSym(lb, RatFn(-1))),
                                 graphOf(TwoForm{twin, (g.omega.m * halfOverI).eval()}));
  rep.concur = concurWeak(l, lb).concur;
  rep.domegaZero = d(g.omega).isZero();
  rep.agree = rep.concur == rep.domegaZero;
  bool nZero = nijenhuis(g.a).isZero();
  rep.pnStructure = val.c1 && nZero && concomitant(g.a, g.pi).isZero();
  rep.omegaNStructure = rep.domegaZero && nZero && concomitant(g.a, g.omega).isZero();
  return rep;
}

InvolutiveReport involutiveStructureSuite(const std::vector<VecField>& gens) {
  if (gens.empty()) throw InvalidInput("involutive suite needs at least one generator");
  ChartPtr c = gens[0].chart;
  if (!c->gaussian) throw NotComplexChart("involutive suite runs on a complexified chart");
  int n = c->dim();
  MatF e(static_cast<int>(gens.size()), n);
  for (size_t i = 0; i < gens.size(); ++i) {
    requireSameChart(c, gens[i].chart);
    for (int j = 0; j < n; ++j) e(static_cast<int>(i), j) = gens[i].c(j);
  }
  if (rank<RatFn>(e) < e.rows())
    throw RankDeficient("generators are generically dependent");
  InvolutiveReport rep;
  rep.involutive = true;
  for (size_t i = 0; i < gens.size() && rep.involutive; ++i)
    for (size_t j = i + 1; j < gens.size() && rep.involutive; ++j) {
      VecField br = lieBracket(gens[i], gens[j]);
      MatF row(1, n);
      for (int k = 0; k < n; ++k) row(0, k) = br.c(k);
      if (!inRowSpan(row, e)) rep.involutive = false;
    }
  MatF ebar = e;
  for (int i = 0; i < ebar.rows(); ++i)
    for (int j = 0; j < n; ++j) ebar(i, j) = ebar(i, j).conj();
  rep.intersectionRank = static_cast<int>(rowSpanIntersect<RatFn>(e, ebar).rows());
  rep.typeRank = static_cast<int>(e.rows()) - rep.intersectionRank;
  if (rep.involutive) {
    LagFrame ge = graphOfDistribution(gens);
    rep.concur = concurWeak(ge, conjugateFrame(ge)).concur;
  }
  return rep;
}

}  // namespace dirackit
