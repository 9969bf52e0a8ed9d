#pragma once

#include <string>
#include <vector>

#include "dirackit/multipoly.hpp"

namespace dirackit {

// Exact rational function num/den. Always stored reduced (gcd cancelled) with
// a monic denominator, so equality of values is equality of representations.
class RatFn {
 public:
  RatFn() : num_(0), den_(MultiPoly::one(0)) {}
  RatFn(long n) : num_(MultiPoly::constant(Scalar(n), 0)), den_(MultiPoly::one(0)) {}  // NOLINT
  RatFn(const MultiPoly& p) : num_(p), den_(MultiPoly::one(p.nvars())) {}              // NOLINT
  RatFn(const MultiPoly& num, const MultiPoly& den);

  static RatFn constant(const Scalar& c, int nvars) {
    return RatFn(MultiPoly::constant(c, nvars));
  }
  static RatFn variable(int i, int nvars) { return RatFn(MultiPoly::variable(i, nvars)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  int nvars() const { return std::max(num_.nvars(), den_.nvars()); }

  bool isZero() const { return num_.isZero(); }
  bool isPolynomial() const { return den_.isConstant(); }
  bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
  Scalar constantValue() const { return num_.constantValue() / den_.constantValue(); }

  RatFn operator-() const;
  RatFn operator+(const RatFn& o) const;
  RatFn operator-(const RatFn& o) const;
  RatFn operator*(const RatFn& o) const;
  RatFn operator/(const RatFn& o) const;
  RatFn inverse() const;
  RatFn& operator+=(const RatFn& o) { *this = *this + o; return *this; }
  RatFn& operator-=(const RatFn& o) { *this = *this - o; return *this; }
  RatFn& operator*=(const RatFn& o) { *this = *this * o; return *this; }
  RatFn& operator/=(const RatFn& o) { *this = *this / o; return *this; }

  bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFn& o) const { return !(*this == o); }

  RatFn derivative(int var) const;  // quotient rule
  Scalar evaluate(const std::vector<Scalar>& point) const;
  RatFn substitute(const std::vector<RatFn>& args) const;
  RatFn conj() const;
  RatFn pow(int k) const;

  std::string str(const std::vector<std::string>& names) const;
  std::string str() const;

 private:
  MultiPoly num_, den_;
  void normalize();
  // parts already coprime; pads arity and scales the denominator monic
  static RatFn fromReduced(MultiPoly num, MultiPoly den);
};

inline bool is_zero(const RatFn& f) { return f.isZero(); }

// polynomial evaluated on rational-function arguments
RatFn polyAt(const MultiPoly& p, const std::vector<RatFn>& args);

}  // namespace dirackit
