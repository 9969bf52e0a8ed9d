#pragma once

#include <stdexcept>
#include <string>

namespace dirackit {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DIRACKIT_ERROR(NAME)                                        \
  struct NAME : Error {                                             \
    explicit NAME(const std::string& what = #NAME) : Error(what) {} \
  }

DIRACKIT_ERROR(DivisionByZero);
DIRACKIT_ERROR(PoleAtPoint);
DIRACKIT_ERROR(ArityMismatch);
DIRACKIT_ERROR(DimensionMismatch);
DIRACKIT_ERROR(ChartMismatch);
DIRACKIT_ERROR(ShapeMismatch);
DIRACKIT_ERROR(ZeroRescale);
DIRACKIT_ERROR(IndexOutOfRange);
DIRACKIT_ERROR(RankDeficient);
DIRACKIT_ERROR(RankCollapse);
DIRACKIT_ERROR(NotTransverse);
DIRACKIT_ERROR(NotSymmetricWithTwist);
DIRACKIT_ERROR(NotInRelationSpace);
DIRACKIT_ERROR(InvalidGCS);
DIRACKIT_ERROR(InvalidInput);
DIRACKIT_ERROR(NotComplexChart);
DIRACKIT_ERROR(UnknownName);
DIRACKIT_ERROR(ArityError);
DIRACKIT_ERROR(SyntaxError);

#undef DIRACKIT_ERROR

}  // namespace dirackit
