#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dirackit/eigen_support.hpp"

namespace dirackit {

struct Chart {
  std::string name;
  std::vector<std::string> coords;
  bool gaussian = false;  // scalar field Q(i) instead of Q

  int dim() const { return static_cast<int>(coords.size()); }
  bool operator==(const Chart& o) const {
    return name == o.name && coords == o.coords && gaussian == o.gaussian;
  }
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr makeChart(std::string name, std::vector<std::string> coords,
                          bool gaussian = false) {
  return std::make_shared<Chart>(Chart{std::move(name), std::move(coords), gaussian});
}

inline bool sameChart(const ChartPtr& a, const ChartPtr& b) {
  return a && b && (*a == *b || (a->coords == b->coords && a->gaussian == b->gaussian));
}

struct VecField {
  ChartPtr chart;
  VecF c;  // coefficients of the coordinate vector fields
};

struct OneForm {
  ChartPtr chart;
  VecF c;  // coefficients of the coordinate differentials
};

// m(i,j) = value on the (i,j) coordinate pair; antisymmetric
struct TwoForm {
  ChartPtr chart;
  MatF m;
};

struct Bivector {
  ChartPtr chart;
  MatF m;
};

// fully antisymmetric degree-3 table, stored on ascending index triples
struct ThreeTensor {
  ChartPtr chart;
  std::map<std::array<int, 3>, RatFn> c;

  void add(int i, int j, int k, const RatFn& v);
  RatFn get(int i, int j, int k) const;
  bool isZero() const { return c.empty(); }
  bool operator==(const ThreeTensor& o) const { return c == o.c; }
};

using ThreeForm = ThreeTensor;
using TriVector = ThreeTensor;

struct GenSec {
  VecField vec;
  OneForm covec;
};

// endomorphism of the tangent space, u -> m u; transpose acts on one-forms
struct Endo {
  ChartPtr chart;
  MatF m;
};

struct PolyMap {
  ChartPtr src;
  ChartPtr tgt;
  std::vector<MultiPoly> comps;  // one polynomial per target coordinate
};

}  // namespace dirackit
