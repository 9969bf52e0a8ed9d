#pragma once

#include <map>
#include <string>
#include <vector>

#include "dirackit/scalar.hpp"

namespace dirackit {

// Exponent tuple of a monomial; index = variable position in the chart.
using Expo = std::vector<int>;

// Graded lexicographic order, earlier variables weigh more. Missing trailing
// exponents compare as zero, so tuples of different length interoperate.
struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const;
};

class MultiPoly {
 public:
  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(const Scalar& c, int nvars);
  static MultiPoly one(int nvars) { return constant(Scalar(1), nvars); }
  static MultiPoly variable(int i, int nvars);
  static MultiPoly monomial(const Scalar& c, Expo e);

  int nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Scalar constantValue() const;  // 0 for the zero polynomial
  int totalDegree() const;       // -1 for zero
  int degreeIn(int var) const;   // -1 for zero

  const std::map<Expo, Scalar, GrlexLess>& terms() const { return terms_; }
  void addTerm(const Expo& e, const Scalar& c);

  const Expo& leadExpo() const;
  const Scalar& leadCoeff() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Scalar& c) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(int var) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  MultiPoly conj() const;

  // exact division; the divisor is known to divide (gcd internals)
  MultiPoly divExact(const MultiPoly& g) const;
  MultiPoly monic() const;  // leading coefficient scaled to 1

  static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

  std::string str(const std::vector<std::string>& names) const;
  std::string str() const;  // default names x1, x2, ...

 private:
  int nvars_;
  std::map<Expo, Scalar, GrlexLess> terms_;

  static void unify(MultiPoly& a, MultiPoly& b);
  void padTo(int nvars);
};

inline bool is_zero(const MultiPoly& p) { return p.isZero(); }

}  // namespace dirackit
