#pragma once

#include "dirackit/frame.hpp"

namespace dirackit {

// tables of tensor values on coordinate basis pairs
struct VecPairTable {
  ChartPtr chart;
  std::vector<std::vector<VecField>> t;  // t[i][j] antisymmetric

  bool isZero() const {
    for (const auto& row : t)
      for (const auto& v : row)
        for (int k = 0; k < v.c.size(); ++k)
          if (!v.c(k).isZero()) return false;
    return true;
  }
};

struct FormPairTable {
  ChartPtr chart;
  std::vector<std::vector<OneForm>> t;

  bool isZero() const {
    for (const auto& row : t)
      for (const auto& f : row)
        for (int k = 0; k < f.c.size(); ++k)
          if (!f.c(k).isZero()) return false;
    return true;
  }
};

// [u,v]^a = [a(u),v] + [u,a(v)] - a[u,v]
VecField twistedBracket(const Endo& a, const VecField& u, const VecField& v);

// [u,v]^w = [w(u),v] + [u,w(v)] - w[u,v]  (equals the contraction of dw)
OneForm twistedBracket(const TwoForm& w, const VecField& u, const VecField& v);

// Koszul bracket [xi,eta]^pi = L_{pi(xi)} eta - i_{pi(eta)} d xi
OneForm koszul(const Bivector& pi, const OneForm& xi, const OneForm& eta);

// N(a)(u,v) = a[u,v]^a - [a(u),a(v)] on basis pairs
VecPairTable nijenhuis(const Endo& a);

// a-symmetry checks used as concomitant preconditions
bool isSymmetricPair(const Endo& a, const Bivector& pi);
bool isSymmetricPair(const Endo& a, const TwoForm& w);

// C(a,pi)(xi,eta) = a*[xi,eta]^pi - ([a*(xi),pi(eta)] + [pi(xi),a*(eta)])
FormPairTable concomitant(const Endo& a, const Bivector& pi);

// C(a,w)(u,v) = [a(u),w(v)] + [w(u),a(v)] - w[u,v]^a + a*[u,v]^w
FormPairTable concomitant(const Endo& a, const TwoForm& w);

// composites under the fixed conventions
Endo piSharpOmegaSharp(const Bivector& pi, const TwoForm& w);  // u -> pi#(w#(u))
TwoForm omegaPiOmega(const TwoForm& w, const Bivector& pi);
Bivector aPi(const Endo& a, const Bivector& pi);  // (a pi)#(xi) = a(pi#(xi))

struct POmegaReport {
  bool concur = false;           // Gr(pi) and Gr(w) weakly concur
  bool closedComposite = false;  // d(w pi w) = 0
  bool complementary = false;    // R_w table vanishes
  FormPairTable rOmega;
  bool agree = false;
};

POmegaReport pOmegaSuite(const Bivector& pi, const TwoForm& w);

struct TorsionTuple {
  VecField uL, uR, vL, vR;
  OneForm zetaL, zetaLR, zetaR;
};

RatFn diracPairTorsion(const LagFrame& l, const LagFrame& r, const TorsionTuple& t);

// deterministic spanning family of admissible tuples: echelon bases of the
// two relation spaces with degree <= 1 polynomial multipliers
std::vector<TorsionTuple> torsionTupleFamily(const LagFrame& l, const LagFrame& r);

struct TorsionReport {
  bool vanishesOnFamily = true;
  int tupleCount = 0;
  std::vector<RatFn> nonzeroValues;
};

TorsionReport torsionSuite(const LagFrame& l, const LagFrame& r);

struct TransversePoissonReport {
  Bivector composed;
  TwoForm connecting;  // inverse of the difference
  bool graphMatch = false;
  bool composedPoisson = false;
};

TransversePoissonReport transverseCompose(const Bivector& first, const Bivector& second);

struct TransverseTwoFormReport {
  TwoForm composed;
  Bivector connecting;
  bool closed = false;
  bool concur = false;
  bool agree = false;  // closedness and concurrence must coincide
};

TransverseTwoFormReport transverseCompose(const TwoForm& first, const TwoForm& second);

struct GCSData {
  Endo a;
  Bivector pi;
  TwoForm omega;
};

struct GCSReport {
  bool squareIdentity = false;  // a^2 + pi# w# = -id
  bool omegaIntertwine = false;
  bool piIntertwine = false;
  bool c1 = false, c2 = false, c3 = false, c4 = false;

  bool algebraic() const { return squareIdentity && omegaIntertwine && piIntertwine; }
  bool valid() const { return algebraic() && c1 && c2 && c3 && c4; }
};

GCSReport gcsValidate(const GCSData& g);

// +i eigenframe {J e_k + i e_k} on the complexified twin of the chart
LagFrame gcsEigenframe(const GCSData& g);

struct GCSConjReport {
  bool starMatches = false;    // L * R_{-1}(conj L) = Gr(pi / 2i)
  bool costarMatches = false;  // dual product = Gr(w / 2i)
  bool concur = false;
  bool domegaZero = false;
  bool agree = false;  // concurrence with the conjugate <=> dw = 0
  bool pnStructure = false;
  bool omegaNStructure = false;
};

GCSConjReport gcsConjProducts(const GCSData& g);

struct InvolutiveReport {
  bool involutive = false;  // brackets of generators stay in the span
  bool concur = false;      // Gr(E) concurs with its conjugate
  int intersectionRank = 0;  // d = generic rank of the overlap with the conjugate
  int typeRank = 0;          // rank E - d
};

InvolutiveReport involutiveStructureSuite(const std::vector<VecField>& gens);

}  // namespace dirackit
