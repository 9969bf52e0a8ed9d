#pragma once

#include "dirackit/chart.hpp"
#include "dirackit/fiber.hpp"

namespace dirackit {

void requireSameChart(const ChartPtr& a, const ChartPtr& b);

// constructors
VecField zeroVec(const ChartPtr& c);
OneForm zeroForm(const ChartPtr& c);
VecField coordVec(const ChartPtr& c, int i);
OneForm coordForm(const ChartPtr& c, int i);
TwoForm zeroTwoForm(const ChartPtr& c);
Bivector zeroBivector(const ChartPtr& c);
GenSec makeSec(const VecField& u, const OneForm& xi);
GenSec vecSec(const VecField& u);
GenSec formSec(const OneForm& xi);

// linear structure (used heavily by the DSL evaluator)
VecField add(const VecField& a, const VecField& b);
OneForm add(const OneForm& a, const OneForm& b);
TwoForm add(const TwoForm& a, const TwoForm& b);
Bivector add(const Bivector& a, const Bivector& b);
ThreeTensor add(const ThreeTensor& a, const ThreeTensor& b);
GenSec add(const GenSec& a, const GenSec& b);
VecField scale(const RatFn& f, const VecField& a);
OneForm scale(const RatFn& f, const OneForm& a);
TwoForm scale(const RatFn& f, const TwoForm& a);
Bivector scale(const RatFn& f, const Bivector& a);
ThreeTensor scale(const RatFn& f, const ThreeTensor& a);
GenSec scale(const RatFn& f, const GenSec& a);

// wedges
Bivector wedge(const VecField& u, const VecField& v);
TwoForm wedge(const OneForm& a, const OneForm& b);
TriVector wedge(const Bivector& p, const VecField& u);
ThreeForm wedge(const TwoForm& w, const OneForm& a);

// calculus
VecField lieBracket(const VecField& u, const VecField& v);
OneForm d(const RatFn& f, const ChartPtr& c);
TwoForm d(const OneForm& a);
ThreeForm d(const TwoForm& w);
RatFn iota(const VecField& u, const OneForm& a);
OneForm iota(const VecField& u, const TwoForm& w);
TwoForm iota(const VecField& u, const ThreeForm& t);
OneForm twoFormSharp(const TwoForm& w, const VecField& u);    // w(u, .)
VecField bivectorSharp(const Bivector& p, const OneForm& a);  // p(a, .)
OneForm lieDerivative(const VecField& u, const OneForm& a);   // Cartan formula
GenSec dorfman(const GenSec& s, const GenSec& t);
RatFn pairingSym(const GenSec& s, const GenSec& t);
TriVector schouten(const Bivector& p, const Bivector& q);
VecField endoApply(const Endo& a, const VecField& u);
OneForm endoStar(const Endo& a, const OneForm& xi);

// conjugation (gaussian charts; coordinates stay real)
VecField conj(const VecField& u);
OneForm conj(const OneForm& a);
GenSec conj(const GenSec& s);

// evaluation at exact points
Scalar evaluateAt(const RatFn& f, const std::vector<Scalar>& pt);
VecQ evaluateAt(const VecField& u, const std::vector<Scalar>& pt);
VecQ evaluateAt(const OneForm& a, const std::vector<Scalar>& pt);
FiberElement evaluateAt(const GenSec& s, const std::vector<Scalar>& pt);
MatQ evaluateAt(const MatF& m, const std::vector<Scalar>& pt);

// polynomial maps
MatF jacobian(const PolyMap& p);
RatFn pullbackFn(const PolyMap& p, const RatFn& fOnTarget);
std::vector<Scalar> applyMap(const PolyMap& p, const std::vector<Scalar>& pt);

std::string str(const VecField& u);
std::string str(const OneForm& a);
std::string str(const GenSec& s);
std::string str(const TwoForm& w);
std::string str(const Bivector& p);
std::string str(const ThreeTensor& t, bool isForm);

}  // namespace dirackit
