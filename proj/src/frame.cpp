#include "dirackit/frame.hpp"

#include <algorithm>

namespace dirackit {

namespace {

MatF rowOf(const GenSec& s) {
  int n = s.vec.chart->dim();
  MatF r(1, 2 * n);
  for (int i = 0; i < n; ++i) {
    r(0, i) = s.vec.c(i);
    r(0, n + i) = s.covec.c(i);
  }
  return r;
}

// fold the numerator/denominator of every pivot into one monic polynomial;
// its zero set covers the points where the echelon choices degenerate
MultiPoly locusOf(const std::vector<RatFn>& pivots, int nvars) {
  std::vector<MultiPoly> factors;
  auto push = [&](const MultiPoly& p) {
    if (p.isConstant()) return;
    MultiPoly m = p.monic();
    for (const MultiPoly& f : factors)
      if (f == m) return;
    factors.push_back(m);
  };
  for (const RatFn& f : pivots) {
    push(f.num());
    push(f.den());
  }
  MultiPoly out = MultiPoly::one(nvars);
  for (const MultiPoly& f : factors) out = out * f;
  return out;
}

// first maximal independent subset of the rows, kept verbatim (no pivot
// scaling), so degenerate specializations of the frame stay visible
MatF independentRows(const MatF& rows) {
  MatF acc(0, rows.cols());
  int r = 0;
  for (int i = 0; i < rows.rows(); ++i) {
    MatF trial = stackRows<RatFn>(acc, rows.row(i).eval());
    if (rank<RatFn>(trial) > r) {
      acc = trial;
      ++r;
    }
  }
  return acc;
}

// echelon rows live over the function field; rescale each one to a polynomial
// representative so that evaluating the frame at a degenerate point still
// shows the true rank drop there
MatF clearDenominators(MatF rows) {
  for (int i = 0; i < rows.rows(); ++i) {
    MultiPoly l = MultiPoly::one(0);
    for (int j = 0; j < rows.cols(); ++j) {
      const MultiPoly& den = rows(i, j).den();
      l = (l * den).divExact(MultiPoly::gcd(l, den));
    }
    if (!l.isConstant())
      for (int j = 0; j < rows.cols(); ++j) rows(i, j) = rows(i, j) * RatFn(l);
  }
  return rows;
}

bool lexLess(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace

GenSec LagFrame::section(int i) const {
  if (i < 0 || i >= size()) throw IndexOutOfRange("frame section index out of range");
  GenSec s{zeroVec(chart), zeroForm(chart)};
  for (int c = 0; c < n(); ++c) {
    s.vec.c(c) = rows(i, c);
    s.covec.c(c) = rows(i, n() + c);
  }
  return s;
}

LagFrame frameFromSections(const std::vector<GenSec>& secs) {
  if (secs.empty()) throw InvalidInput("frame needs at least one section");
  ChartPtr c = secs[0].vec.chart;
  int n = c->dim();
  MatF rows(static_cast<int>(secs.size()), 2 * n);
  for (size_t i = 0; i < secs.size(); ++i) {
    requireSameChart(c, secs[i].vec.chart);
    rows.row(static_cast<int>(i)) = rowOf(secs[i]).row(0);
  }
  return LagFrame{c, rows};
}

FrameValidation validateFrame(const LagFrame& f) {
  FrameValidation v;
  int k = f.size();
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      RatFn p = lag::pairing<RatFn>(f.rows.row(i).eval(), f.rows.row(j).eval(), f.n());
      if (!p.isZero()) {
        v.isotropic = false;
        v.badPairs.emplace_back(i, j);
      }
    }
  }
  v.genericRank = rank<RatFn>(f.rows);
  v.genericRankFull = v.genericRank == f.n();
  return v;
}

RatFn courant(const LagFrame& f, int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0 || i >= f.size() || j >= f.size() || k >= f.size())
    throw IndexOutOfRange("courant: frame index out of range");
  return pairingSym(dorfman(f.section(i), f.section(j)), f.section(k));
}

InvolutivityReport isInvolutive(const LagFrame& f) {
  InvolutivityReport rep;
  int m = f.size();
  for (int i = 0; i < m && rep.involutive; ++i)
    for (int j = i + 1; j < m && rep.involutive; ++j) {
      GenSec br = dorfman(f.section(i), f.section(j));
      for (int k = 0; k < m; ++k) {
        RatFn v = pairingSym(br, f.section(k));
        if (!v.isZero()) {
          rep.involutive = false;
          rep.witness = CourantWitness{i, j, k, v};
          break;
        }
      }
    }
  return rep;
}

LagFrame graphOf(const Bivector& p) {
  return LagFrame{p.chart, lag::graphBivector<RatFn>(p.m, p.chart->dim())};
}

LagFrame graphOf(const TwoForm& w) {
  return LagFrame{w.chart, lag::graphTwoForm<RatFn>(w.m, w.chart->dim())};
}

LagFrame graphOfDistribution(const std::vector<VecField>& gens) {
  if (gens.empty()) throw InvalidInput("distribution needs at least one generator");
  ChartPtr c = gens[0].chart;
  int n = c->dim();
  MatF e(static_cast<int>(gens.size()), n);
  for (size_t i = 0; i < gens.size(); ++i) {
    requireSameChart(c, gens[i].chart);
    for (int j = 0; j < n; ++j) e(static_cast<int>(i), j) = gens[i].c(j);
  }
  if (rank<RatFn>(e) < e.rows())
    throw RankDeficient("distribution generators are generically dependent");
  return LagFrame{c, lag::graphDistribution<RatFn>(e, n)};
}

LagFrame graphOfConormal(const std::vector<OneForm>& gens) {
  if (gens.empty()) throw InvalidInput("conormal input needs at least one form");
  ChartPtr c = gens[0].chart;
  int n = c->dim();
  MatF w(static_cast<int>(gens.size()), n);
  for (size_t i = 0; i < gens.size(); ++i) {
    requireSameChart(c, gens[i].chart);
    for (int j = 0; j < n; ++j) w(static_cast<int>(i), j) = gens[i].c(j);
  }
  if (rank<RatFn>(w) < w.rows())
    throw RankDeficient("conormal generators are generically dependent");
  // the graph of the kernel distribution: ker(forms) (+) span(forms)
  return LagFrame{c, lag::graphDistribution<RatFn>(annihilator(w), n)};
}

LagFrame fullTangentFrame(const ChartPtr& c) {
  return LagFrame{c, lag::fullTangent<RatFn>(c->dim())};
}

LagFrame fullCotangentFrame(const ChartPtr& c) {
  return LagFrame{c, lag::fullCotangent<RatFn>(c->dim())};
}

LagFrame starSym(const LagFrame& l, const LagFrame& r, MultiPoly* locus) {
  requireSameChart(l.chart, r.chart);
  std::vector<RatFn> pivots;
  MatF rows = independentRows(lag::starProduct<RatFn>(l.rows, r.rows, l.n(),
                                                      locus ? &pivots : nullptr));
  if (locus) {
    MatF copy = rows;
    rowReduce(copy, nullptr, &pivots);
    *locus = locusOf(pivots, l.n());
  }
  return LagFrame{l.chart, clearDenominators(rows)};
}

LagFrame costarSym(const LagFrame& l, const LagFrame& r, MultiPoly* locus) {
  requireSameChart(l.chart, r.chart);
  std::vector<RatFn> pivots;
  MatF rows = independentRows(lag::costarProduct<RatFn>(l.rows, r.rows, l.n(),
                                                        locus ? &pivots : nullptr));
  if (locus) {
    MatF copy = rows;
    rowReduce(copy, nullptr, &pivots);
    *locus = locusOf(pivots, l.n());
  }
  return LagFrame{l.chart, clearDenominators(rows)};
}

ConcurReport concurWeak(const LagFrame& l, const LagFrame& r) {
  for (const LagFrame* f : {&l, &r}) {
    if (!validateFrame(*f).ok()) throw InvalidInput("concurWeak: operand frame is not Lagrangian");
    if (!isInvolutive(*f).involutive)
      throw InvalidInput("concurWeak: operand frame is not involutive");
  }
  ConcurReport rep;
  rep.product = costarSym(l, r);
  InvolutivityReport inv = isInvolutive(rep.product);
  rep.concur = inv.involutive;
  rep.witness = inv.witness;
  return rep;
}

LagFrame transformSym(const LagFrame& f, const TwoForm& w) {
  requireSameChart(f.chart, w.chart);
  MatF rows = f.rows;
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::gaugeTwoFormRow<RatFn>(rows.row(i).eval(), w.m, f.n()).row(0);
  return LagFrame{f.chart, rows};
}

LagFrame transformSym(const LagFrame& f, const Bivector& p) {
  requireSameChart(f.chart, p.chart);
  MatF rows = f.rows;
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::gaugeBivectorRow<RatFn>(rows.row(i).eval(), p.m, f.n()).row(0);
  return LagFrame{f.chart, rows};
}

LagFrame rescaleSym(const LagFrame& f, const RatFn& t) {
  if (t.isZero()) throw ZeroRescale("rescale by zero");
  MatF rows = f.rows;
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::rescaleRow<RatFn>(rows.row(i).eval(), t, f.n()).row(0);
  return LagFrame{f.chart, rows};
}

LagFrame pullbackSym(const PolyMap& p, const LagFrame& target) {
  requireSameChart(p.tgt, target.chart);
  int ns = p.src->dim(), nt = p.tgt->dim();
  std::vector<RatFn> args;
  args.reserve(p.comps.size());
  for (const MultiPoly& c : p.comps) args.emplace_back(c);
  MatF sub(target.size(), 2 * nt);
  for (int i = 0; i < target.size(); ++i)
    for (int c = 0; c < 2 * nt; ++c) sub(i, c) = target.rows(i, c).substitute(args);
  MatF rows = lag::pullback<RatFn>(jacobian(p), sub);
  if (rows.rows() != ns)
    throw RankCollapse("pullback frame does not have generic rank n");
  return LagFrame{p.src, clearDenominators(rows)};
}

PushforwardReport pushforwardProbe(const PolyMap& p, const LagFrame& l,
                                   const std::vector<std::vector<Scalar>>& points) {
  requireSameChart(p.src, l.chart);
  int nt = p.tgt->dim();
  MatF jac = jacobian(p);
  PushforwardReport rep;
  for (const auto& pt : points) {
    PushforwardSample s;
    s.source = pt;
    s.image = applyMap(p, pt);
    MatQ jq = evaluateAt(jac, pt);
    MatQ rowsQ = rowSpanBasis<Scalar>(evaluateRows(l, pt));
    s.fiber = LagSubspace(nt, lag::pushforward<Scalar>(jq, rowsQ));
    rep.samples.push_back(std::move(s));
  }
  std::sort(rep.samples.begin(), rep.samples.end(),
            [](const PushforwardSample& a, const PushforwardSample& b) {
              return lexLess(a.source, b.source);
            });
  for (size_t i = 0; i < rep.samples.size(); ++i)
    for (size_t j = i + 1; j < rep.samples.size(); ++j)
      if (rep.samples[i].image == rep.samples[j].image &&
          rep.samples[i].fiber != rep.samples[j].fiber)
        rep.invariantOnSamples = false;
  return rep;
}

SmoothnessReport smoothnessProbe(const LagFrame& l, const LagFrame& r, bool star,
                                 const std::vector<Scalar>& point) {
  LagFrame prod = star ? starSym(l, r) : costarSym(l, r);
  SmoothnessReport rep;
  rep.genericSpan = rowSpanBasis<Scalar>(evaluateRows(prod, point));
  LagSubspace lf = evaluateFrame(l, point), rf = evaluateFrame(r, point);
  rep.pointwise = star ? starPt(lf, rf) : costarPt(lf, rf);
  rep.match = matEq(rep.genericSpan, rep.pointwise.basis());
  rep.stats = fiberStatsPt(rep.pointwise);
  return rep;
}

bool normalFormVerify(const LagFrame& l, const OneForm& alpha, const PolyMap& p,
                      const Bivector& pi) {
  requireSameChart(p.src, l.chart);
  requireSameChart(p.src, alpha.chart);
  requireSameChart(p.tgt, pi.chart);
  LagFrame g = graphOf(pi);
  if (!isInvolutive(g).involutive)
    throw InvalidInput("normalFormVerify: target bivector is not Poisson");
  LagFrame candidate = transformSym(pullbackSym(p, g), d(alpha));
  return sameFamily(candidate, l);
}

LagFrame conjugateFrame(const LagFrame& f) {
  if (!f.chart->gaussian) throw NotComplexChart("conjugation needs a complexified chart");
  MatF rows = f.rows;
  for (int i = 0; i < rows.rows(); ++i)
    for (int j = 0; j < rows.cols(); ++j) rows(i, j) = rows(i, j).conj();
  return LagFrame{f.chart, rows};
}

MatQ evaluateRows(const LagFrame& f, const std::vector<Scalar>& point) {
  MatQ out(f.rows.rows(), f.rows.cols());
  for (int i = 0; i < f.rows.rows(); ++i)
    for (int j = 0; j < f.rows.cols(); ++j) out(i, j) = f.rows(i, j).evaluate(point);
  return out;
}

LagSubspace evaluateFrame(const LagFrame& f, const std::vector<Scalar>& point) {
  return LagSubspace(f.n(), evaluateRows(f, point));
}

bool sameFamily(const LagFrame& a, const LagFrame& b) {
  if (!sameChart(a.chart, b.chart)) return false;
  return sameRowSpan<RatFn>(a.rows, b.rows);
}

std::vector<std::string> frameStrings(const LagFrame& f) {
  std::vector<std::string> out;
  out.reserve(f.size());
  for (int i = 0; i < f.size(); ++i) out.push_back(str(f.section(i)));
  return out;
}

}  // namespace dirackit
