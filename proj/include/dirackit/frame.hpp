#pragma once

#include <optional>
#include <utility>

#include "dirackit/calculus.hpp"

namespace dirackit {

// Symbolic Lagrangian family: k sections of TM (+) T*M as the rows of a
// k x 2n matrix over the function field of the chart. The family it denotes
// is the row span on the dense open set where the rank stays n.
struct LagFrame {
  ChartPtr chart;
  MatF rows;

  int n() const { return chart->dim(); }
  int size() const { return static_cast<int>(rows.rows()); }
  GenSec section(int i) const;
};

LagFrame frameFromSections(const std::vector<GenSec>& secs);

struct FrameValidation {
  bool isotropic = true;
  bool genericRankFull = true;
  std::vector<std::pair<int, int>> badPairs;  // offending section indices
  int genericRank = 0;

  bool ok() const { return isotropic && genericRankFull; }
};

FrameValidation validateFrame(const LagFrame& f);

// Courant tensor value <[a_i, a_j], a_k> on frame sections
RatFn courant(const LagFrame& f, int i, int j, int k);

struct CourantWitness {
  int i = 0, j = 0, k = 0;
  RatFn value;
};

struct InvolutivityReport {
  bool involutive = true;
  std::optional<CourantWitness> witness;
};

InvolutivityReport isInvolutive(const LagFrame& f);

LagFrame graphOf(const Bivector& p);
LagFrame graphOf(const TwoForm& w);
LagFrame graphOfDistribution(const std::vector<VecField>& gens);
LagFrame graphOfConormal(const std::vector<OneForm>& gens);
LagFrame fullTangentFrame(const ChartPtr& c);
LagFrame fullCotangentFrame(const ChartPtr& c);

// generic-point products; locus (if requested) collects the polynomial whose
// zero set covers every point where the echelon choices degenerate
LagFrame starSym(const LagFrame& l, const LagFrame& r, MultiPoly* locus = nullptr);
LagFrame costarSym(const LagFrame& l, const LagFrame& r, MultiPoly* locus = nullptr);

struct ConcurReport {
  bool concur = false;
  LagFrame product;
  std::optional<CourantWitness> witness;
};

ConcurReport concurWeak(const LagFrame& l, const LagFrame& r);

LagFrame transformSym(const LagFrame& f, const TwoForm& w);
LagFrame transformSym(const LagFrame& f, const Bivector& p);
LagFrame rescaleSym(const LagFrame& f, const RatFn& t);

LagFrame pullbackSym(const PolyMap& p, const LagFrame& target);

struct PushforwardSample {
  std::vector<Scalar> source;
  std::vector<Scalar> image;
  LagSubspace fiber;
};

struct PushforwardReport {
  bool invariantOnSamples = true;
  std::vector<PushforwardSample> samples;
};

PushforwardReport pushforwardProbe(const PolyMap& p, const LagFrame& l,
                                   const std::vector<std::vector<Scalar>>& points);

struct SmoothnessReport {
  bool match = false;
  MatQ genericSpan;      // generic product frame evaluated, echelon-reduced
  LagSubspace pointwise;  // true fiberwise product
  FiberStats stats;       // of the pointwise product
};

SmoothnessReport smoothnessProbe(const LagFrame& l, const LagFrame& r, bool star,
                                 const std::vector<Scalar>& point);

bool normalFormVerify(const LagFrame& l, const OneForm& alpha, const PolyMap& p,
                      const Bivector& pi);

LagFrame conjugateFrame(const LagFrame& f);

MatQ evaluateRows(const LagFrame& f, const std::vector<Scalar>& point);
LagSubspace evaluateFrame(const LagFrame& f, const std::vector<Scalar>& point);

// equality of the generic row spans
bool sameFamily(const LagFrame& a, const LagFrame& b);

std::vector<std::string> frameStrings(const LagFrame& f);

}  // namespace dirackit
