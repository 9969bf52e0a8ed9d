#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

#include "dirackit/errors.hpp"

namespace dirackit {

using Rational = boost::multiprecision::cpp_rational;

// Exact element of Q(i). Real and imaginary parts are arbitrary-precision
// rationals, so "zero" always means exact zero.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design (Eigen literals)
  Scalar(const Rational& re) : re_(re), im_(0) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar fraction(long num, long den) {
    if (den == 0) throw DivisionByZero("rational literal with zero denominator");
    return Scalar(Rational(num, den));
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool isZero() const { return re_.is_zero() && im_.is_zero(); }
  bool isReal() const { return im_.is_zero(); }
  bool isOne() const { return im_.is_zero() && re_ == 1; }

  Scalar conj() const { return Scalar(re_, Rational(-im_)); }

  Scalar operator-() const { return Scalar(Rational(-re_), Rational(-im_)); }
  Scalar operator+(const Scalar& o) const { return Scalar(Rational(re_ + o.re_), Rational(im_ + o.im_)); }
  Scalar operator-(const Scalar& o) const { return Scalar(Rational(re_ - o.re_), Rational(im_ - o.im_)); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(Rational(re_ * o.re_ - im_ * o.im_), Rational(re_ * o.im_ + im_ * o.re_));
  }
  Scalar inverse() const {
    if (isZero()) throw DivisionByZero("inverse of zero scalar");
    Rational n = re_ * re_ + im_ * im_;
    return Scalar(Rational(re_ / n), Rational(-im_ / n));
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // total order used only for canonical sorting, not for analysis
  bool operator<(const Scalar& o) const {
    if (re_ != o.re_) return re_ < o.re_;
    return im_ < o.im_;
  }

  std::string str() const {
    auto rat = [](const Rational& r) {
      std::ostringstream os;
      os << r;
      return os.str();
    };
    if (im_.is_zero()) return rat(re_);
    std::string imPart;
    Rational absIm = im_ < 0 ? Rational(-im_) : im_;
    imPart = (absIm == 1) ? "i" : rat(absIm) + "*i";
    if (re_.is_zero()) return (im_ < 0 ? "-" : "") + imPart;
    return "(" + rat(re_) + (im_ < 0 ? "-" : "+") + imPart + ")";
  }

 private:
  Rational re_, im_;
};

inline bool is_zero(const Scalar& s) { return s.isZero(); }

}  // namespace dirackit
