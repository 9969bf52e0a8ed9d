#pragma once

#include "dirackit/lagcore.hpp"

// Pointwise module: Lagrangian subspaces of a single fiber K^n (+) K^n* over
// exact Q(i) scalars, in canonical reduced-echelon form.

namespace dirackit {

struct FiberElement {
  VecQ vec;    // tangent part
  VecQ covec;  // cotangent part

  int n() const { return static_cast<int>(vec.size()); }
  MatQ row() const {
    MatQ r(1, 2 * n());
    for (int i = 0; i < n(); ++i) {
      r(0, i) = vec(i);
      r(0, n() + i) = covec(i);
    }
    return r;
  }
  static FiberElement fromRow(const MatQ& r, int n) {
    FiberElement e;
    e.vec = VecQ(n);
    e.covec = VecQ(n);
    for (int i = 0; i < n; ++i) {
      e.vec(i) = r(0, i);
      e.covec(i) = r(0, n + i);
    }
    return e;
  }
};

inline Scalar pairingPt(const FiberElement& a, const FiberElement& b) {
  if (a.n() != b.n()) throw DimensionMismatch("pairingPt: fiber dimensions differ");
  return lag::pairing<Scalar>(a.row(), b.row(), a.n());
}

class LagSubspace {
 public:
  LagSubspace() : n_(0) {}
  // rows spanning the subspace; reduced to the canonical echelon basis
  LagSubspace(int n, const MatQ& rows) : n_(n) {
    if (rows.cols() != 2 * n) throw DimensionMismatch("LagSubspace: rows must have 2n columns");
    basis_ = rowSpanBasis<Scalar>(rows);
  }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.rows()); }
  const MatQ& basis() const { return basis_; }

  bool isLagrangian() const {
    return dim() == n_ && matEq(lag::orthogonalSpace(basis_, n_), basis_);
  }

  bool operator==(const LagSubspace& o) const { return n_ == o.n_ && matEq(basis_, o.basis_); }
  bool operator!=(const LagSubspace& o) const { return !(*this == o); }

 private:
  int n_;
  MatQ basis_;
};

inline LagSubspace orthogonalPt(const LagSubspace& w) {
  return LagSubspace(w.n(), lag::orthogonalSpace(w.basis(), w.n()));
}

inline LagSubspace starPt(const LagSubspace& l, const LagSubspace& r) {
  if (l.n() != r.n()) throw DimensionMismatch("starPt: fiber dimensions differ");
  return LagSubspace(l.n(), lag::starProduct(l.basis(), r.basis(), l.n()));
}

inline LagSubspace costarPt(const LagSubspace& l, const LagSubspace& r) {
  if (l.n() != r.n()) throw DimensionMismatch("costarPt: fiber dimensions differ");
  return LagSubspace(l.n(), lag::costarProduct(l.basis(), r.basis(), l.n()));
}

inline LagSubspace gaugeTwoFormPt(const LagSubspace& l, const MatQ& omega) {
  MatQ rows = l.basis();
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::gaugeTwoFormRow<Scalar>(rows.row(i).eval(), omega, l.n()).row(0);
  return LagSubspace(l.n(), rows);
}

inline LagSubspace gaugeBivectorPt(const LagSubspace& l, const MatQ& pi) {
  MatQ rows = l.basis();
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::gaugeBivectorRow<Scalar>(rows.row(i).eval(), pi, l.n()).row(0);
  return LagSubspace(l.n(), rows);
}

inline LagSubspace rescalePt(const LagSubspace& l, const Scalar& t) {
  if (t.isZero()) throw ZeroRescale("rescale by zero");
  MatQ rows = l.basis();
  for (int i = 0; i < rows.rows(); ++i)
    rows.row(i) = lag::rescaleRow<Scalar>(rows.row(i).eval(), t, l.n()).row(0);
  return LagSubspace(l.n(), rows);
}

// f is the differential f_*: K^{n_src} -> K^{n_tgt} as an n_tgt x n_src matrix
inline LagSubspace pushforwardPt(const MatQ& f, const LagSubspace& w) {
  if (w.n() != f.cols()) throw DimensionMismatch("pushforwardPt: source dimension mismatch");
  return LagSubspace(static_cast<int>(f.rows()), lag::pushforward(f, w.basis()));
}

inline LagSubspace pullbackPt(const MatQ& f, const LagSubspace& w) {
  if (w.n() != f.rows()) throw DimensionMismatch("pullbackPt: target dimension mismatch");
  return LagSubspace(static_cast<int>(f.cols()), lag::pullback(f, w.basis()));
}

struct DiamondDual {
  MatQ diamondT;      // relation on tangent pairs (u,v), rows in K^{2n}
  MatQ diamondTstar;  // relation on covector pairs (xi,eta)
  bool dualityHolds = false;
};

inline DiamondDual diamondDualPt(const LagSubspace& l, const LagSubspace& r) {
  DiamondDual d;
  d.diamondT = lag::diamondT(l.basis(), r.basis(), l.n());
  d.diamondTstar = lag::diamondTstar(l.basis(), r.basis(), l.n());
  d.dualityHolds = matEq(lag::dualRelation(d.diamondT, l.n()), d.diamondTstar);
  return d;
}

struct FiberStats {
  int prTRank = 0;
  int prTstarRank = 0;
  std::string parity;
};

inline FiberStats fiberStatsPt(const LagSubspace& w) {
  auto s = lag::fiberStats(w.basis(), w.n());
  return FiberStats{s.prTRank, s.prTstarRank, s.even ? "even" : "odd"};
}

inline LagSubspace tangentFiber(int n) { return LagSubspace(n, lag::fullTangent<Scalar>(n)); }
inline LagSubspace cotangentFiber(int n) { return LagSubspace(n, lag::fullCotangent<Scalar>(n)); }

}  // namespace dirackit
