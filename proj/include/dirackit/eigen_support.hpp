#pragma once

#include <Eigen/Dense>

#include "dirackit/ratfn.hpp"
#include "dirackit/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<dirackit::Scalar> {
  using Real = dirackit::Scalar;
  using NonInteger = dirackit::Scalar;
  using Literal = dirackit::Scalar;
  using Nested = dirackit::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30
  };
  static inline dirackit::Scalar epsilon() { return dirackit::Scalar(0); }
  static inline dirackit::Scalar dummy_precision() { return dirackit::Scalar(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<dirackit::RatFn> {
  using Real = dirackit::RatFn;
  using NonInteger = dirackit::RatFn;
  using Literal = dirackit::RatFn;
  using Nested = dirackit::RatFn;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 200,
    MulCost = 200
  };
  static inline dirackit::RatFn epsilon() { return dirackit::RatFn(0); }
  static inline dirackit::RatFn dummy_precision() { return dirackit::RatFn(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace dirackit {

template <class F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using MatQ = Mat<Scalar>;
using VecQ = Vec<Scalar>;
using MatF = Mat<RatFn>;
using VecF = Vec<RatFn>;

}  // namespace dirackit
