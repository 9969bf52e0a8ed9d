#pragma once

#include "dirackit/linalg.hpp"

// Linear algebra of subspaces of K^n (+) K^n* over an arbitrary exact field.
// A subspace is a matrix whose rows are elements (tangent block | cotangent
// block). The same code runs pointwise (F = Scalar) and at the generic point
// of a chart (F = RatFn).

namespace dirackit::lag {

template <class F>
Mat<F> tanBlock(const Mat<F>& w, int n) {
  return w.leftCols(n).eval();
}

template <class F>
Mat<F> cotBlock(const Mat<F>& w, int n) {
  return w.rightCols(n).eval();
}

// <a,b> = xi(v) + eta(u), Eq-(1) convention without the 1/2 factor
template <class F>
F pairing(const Mat<F>& a, const Mat<F>& b, int n) {
  F acc(0);
  for (int j = 0; j < n; ++j) acc = acc + a(0, n + j) * b(0, j) + b(0, n + j) * a(0, j);
  return acc;
}

template <class F>
Mat<F> orthogonalSpace(const Mat<F>& w, int n) {
  Mat<F> flipped(w.rows(), 2 * n);
  if (w.rows() > 0) {
    flipped.leftCols(n) = w.rightCols(n);
    flipped.rightCols(n) = w.leftCols(n);
  }
  return rowSpanBasis<F>(kernelBasis(flipped));
}

// L * R = { a + pr_T*(b) : pr_T(a - b) = 0 }, computed through ker(delta_T)
template <class F>
Mat<F> starProduct(const Mat<F>& l, const Mat<F>& r, int n,
                   std::vector<F>* pivots = nullptr) {
  const int kl = static_cast<int>(l.rows()), kr = static_cast<int>(r.rows());
  Mat<F> delta(n, kl + kr);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < kl; ++i) delta(c, i) = l(i, c);
    for (int j = 0; j < kr; ++j) delta(c, kl + j) = -r(j, c);
  }
  Mat<F> ker = kernelBasis(delta, pivots);
  Mat<F> rows(ker.rows(), 2 * n);
  rows.setZero();
  for (int v = 0; v < ker.rows(); ++v) {
    for (int i = 0; i < kl; ++i)
      for (int c = 0; c < 2 * n; ++c) rows(v, c) = rows(v, c) + ker(v, i) * l(i, c);
    for (int j = 0; j < kr; ++j)
      for (int c = n; c < 2 * n; ++c) rows(v, c) = rows(v, c) + ker(v, kl + j) * r(j, c);
  }
  return rows;  // raw combinations; callers reduce as their canonical form demands
}

// L (*) R = { a + pr_T(b) : pr_T*(a - b) = 0 }
template <class F>
Mat<F> costarProduct(const Mat<F>& l, const Mat<F>& r, int n,
                     std::vector<F>* pivots = nullptr) {
  const int kl = static_cast<int>(l.rows()), kr = static_cast<int>(r.rows());
  Mat<F> delta(n, kl + kr);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < kl; ++i) delta(c, i) = l(i, n + c);
    for (int j = 0; j < kr; ++j) delta(c, kl + j) = -r(j, n + c);
  }
  Mat<F> ker = kernelBasis(delta, pivots);
  Mat<F> rows(ker.rows(), 2 * n);
  rows.setZero();
  for (int v = 0; v < ker.rows(); ++v) {
    for (int i = 0; i < kl; ++i)
      for (int c = 0; c < 2 * n; ++c) rows(v, c) = rows(v, c) + ker(v, i) * l(i, c);
    for (int j = 0; j < kr; ++j)
      for (int c = 0; c < n; ++c) rows(v, c) = rows(v, c) + ker(v, kl + j) * r(j, c);
  }
  return rows;
}

// gauge actions on a single element row; omega/pi are the n x n
// antisymmetric coefficient matrices (omega#(u) = u^T W, pi#(xi) = xi^T P)
template <class F>
Mat<F> gaugeTwoFormRow(const Mat<F>& row, const Mat<F>& w, int n) {
  Mat<F> out = row;
  for (int j = 0; j < n; ++j) {
    F acc = out(0, n + j);
    for (int i = 0; i < n; ++i) acc = acc + row(0, i) * w(i, j);
    out(0, n + j) = acc;
  }
  return out;
}

template <class F>
Mat<F> gaugeBivectorRow(const Mat<F>& row, const Mat<F>& p, int n) {
  Mat<F> out = row;
  for (int j = 0; j < n; ++j) {
    F acc = out(0, j);
    for (int i = 0; i < n; ++i) acc = acc + row(0, n + i) * p(i, j);
    out(0, j) = acc;
  }
  return out;
}

template <class F>
Mat<F> rescaleRow(const Mat<F>& row, const F& t, int n) {
  Mat<F> out = row;
  for (int j = 0; j < n; ++j) out(0, j) = out(0, j) * t;
  return out;
}

namespace detail {

// kernel of a block-homogeneous system, projected onto selected columns
template <class F>
Mat<F> projectedKernel(const Mat<F>& system, int firstCol, int width) {
  Mat<F> ker = kernelBasis(system);
  Mat<F> proj = ker.middleCols(firstCol, width).eval();
  return rowSpanBasis(proj);
}

}  // namespace detail

// L diamond_T R = { (u,v) : exists xi with u+xi in L, v+xi in R }
template <class F>
Mat<F> diamondT(const Mat<F>& l, const Mat<F>& r, int n) {
  Mat<F> al = annihilator(l), ar = annihilator(r);
  Mat<F> sys(al.rows() + ar.rows(), 3 * n);
  sys.setZero();
  for (int i = 0; i < al.rows(); ++i) {
    for (int c = 0; c < n; ++c) {
      sys(i, c) = al(i, c);
      sys(i, 2 * n + c) = al(i, n + c);
    }
  }
  for (int i = 0; i < ar.rows(); ++i) {
    for (int c = 0; c < n; ++c) {
      sys(al.rows() + i, n + c) = ar(i, c);
      sys(al.rows() + i, 2 * n + c) = ar(i, n + c);
    }
  }
  return detail::projectedKernel(sys, 0, 2 * n);
}

// L diamond_T* R = { (xi,eta) : exists w with w+xi in L, w+eta in R }
template <class F>
Mat<F> diamondTstar(const Mat<F>& l, const Mat<F>& r, int n) {
  Mat<F> al = annihilator(l), ar = annihilator(r);
  Mat<F> sys(al.rows() + ar.rows(), 3 * n);
  sys.setZero();
  for (int i = 0; i < al.rows(); ++i) {
    for (int c = 0; c < n; ++c) {
      sys(i, c) = al(i, n + c);
      sys(i, 2 * n + c) = al(i, c);
    }
  }
  for (int i = 0; i < ar.rows(); ++i) {
    for (int c = 0; c < n; ++c) {
      sys(al.rows() + i, n + c) = ar(i, n + c);
      sys(al.rows() + i, 2 * n + c) = ar(i, c);
    }
  }
  return detail::projectedKernel(sys, 0, 2 * n);
}

// dual of a (u,v)-relation under the split pairing <(xi,eta),(u,v)> = xi(u) - eta(v)
template <class F>
Mat<F> dualRelation(const Mat<F>& rel, int n) {
  Mat<F> m(rel.rows(), 2 * n);
  for (int i = 0; i < rel.rows(); ++i) {
    for (int c = 0; c < n; ++c) {
      m(i, c) = rel(i, c);
      m(i, n + c) = -rel(i, n + c);
    }
  }
  return rowSpanBasis<F>(kernelBasis(m));
}

// transport along a linear map with differential jac (n_tgt x n_src):
// pushforward of a source subspace, pullback of a target subspace,
// via the relation f_* pr_T(a) = pr_T(b), pr_T*(a) = f^* pr_T*(b)
template <class F>
Mat<F> pushforward(const Mat<F>& jac, const Mat<F>& w) {
  const int nt = static_cast<int>(jac.rows()), ns = static_cast<int>(jac.cols());
  const int k = static_cast<int>(w.rows());
  if (w.cols() != 2 * ns) throw DimensionMismatch("pushforward: fiber dimension mismatch");
  Mat<F> sys(nt + ns, k + 2 * nt);
  sys.setZero();
  for (int e = 0; e < nt; ++e) {
    for (int i = 0; i < k; ++i) {
      F acc(0);
      for (int c = 0; c < ns; ++c) acc = acc + jac(e, c) * w(i, c);
      sys(e, i) = acc;
    }
    sys(e, k + e) = F(-1);
  }
  for (int e = 0; e < ns; ++e) {
    for (int i = 0; i < k; ++i) sys(nt + e, i) = w(i, ns + e);
    for (int j = 0; j < nt; ++j) sys(nt + e, k + nt + j) = -jac(j, e);
  }
  return detail::projectedKernel(sys, k, 2 * nt);
}

template <class F>
Mat<F> pullback(const Mat<F>& jac, const Mat<F>& w) {
  const int nt = static_cast<int>(jac.rows()), ns = static_cast<int>(jac.cols());
  const int k = static_cast<int>(w.rows());
  if (w.cols() != 2 * nt) throw DimensionMismatch("pullback: fiber dimension mismatch");
  Mat<F> sys(nt + ns, 2 * ns + k);
  sys.setZero();
  for (int e = 0; e < nt; ++e) {
    for (int c = 0; c < ns; ++c) sys(e, c) = jac(e, c);
    for (int i = 0; i < k; ++i) sys(e, 2 * ns + i) = -w(i, e);
  }
  for (int e = 0; e < ns; ++e) {
    sys(nt + e, ns + e) = F(1);
    for (int i = 0; i < k; ++i) {
      F acc(0);
      for (int j = 0; j < nt; ++j) acc = acc + jac(j, e) * w(i, nt + j);
      sys(nt + e, 2 * ns + i) = -acc;
    }
  }
  return detail::projectedKernel(sys, 0, 2 * ns);
}

struct FiberStatsT {
  int prTRank = 0;
  int prTstarRank = 0;
  bool even = true;
};

template <class F>
FiberStatsT fiberStats(const Mat<F>& w, int n) {
  FiberStatsT s;
  s.prTRank = rank<F>(tanBlock(w, n));
  s.prTstarRank = rank<F>(cotBlock(w, n));
  s.even = s.prTRank % 2 == 0;
  return s;
}

// Decomposition L = Gr(pi) (*) Gr(F) with F = pr_T*(L)^o: returns the
// bivector coefficient matrix and a tangent frame of F.
template <class F>
struct Decomposition {
  Mat<F> pi;    // n x n antisymmetric
  Mat<F> dist;  // rows span F inside K^n
};

template <class F>
Decomposition<F> decompose(const Mat<F>& l, int n) {
  Mat<F> xi = cotBlock(l, n);   // rows xi_i
  Mat<F> u = tanBlock(l, n);    // matching tangent parts
  const int k = static_cast<int>(l.rows());
  const int m = n * (n - 1) / 2;
  // unknowns p_{ij}, i<j; equations (Xi P Xi^T)_{ab} = (U Xi^T)_{ab}
  Mat<F> a(k * k, m);
  Vec<F> b(k * k);
  a.setZero();
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      int eq = r * k + c;
      int col = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++col) {
          a(eq, col) = xi(r, i) * xi(c, j) - xi(r, j) * xi(c, i);
        }
      }
      F acc(0);
      for (int t = 0; t < n; ++t) acc = acc + u(r, t) * xi(c, t);
      b(eq) = acc;
    }
  }
  auto sol = solveLinear(a, b);
  if (!sol) throw InvalidInput("decompose: inconsistent system (input not isotropic?)");
  Decomposition<F> d;
  d.pi = Mat<F>(n, n);
  d.pi.setZero();
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++col) {
      d.pi(i, j) = (*sol)(col);
      d.pi(j, i) = -(*sol)(col);
    }
  }
  d.dist = annihilator(xi);
  return d;
}

// graph frames inside K^n (+) K^n*
template <class F>
Mat<F> graphBivector(const Mat<F>& p, int n) {
  Mat<F> g(n, 2 * n);
  g.setZero();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = p(i, j);
    g(i, n + i) = F(1);
  }
  return g;
}

template <class F>
Mat<F> graphTwoForm(const Mat<F>& w, int n) {
  Mat<F> g(n, 2 * n);
  g.setZero();
  for (int i = 0; i < n; ++i) {
    g(i, i) = F(1);
    for (int j = 0; j < n; ++j) g(i, n + j) = w(i, j);
  }
  return g;
}

// Gr(E) = E (+) E^o for a tangent distribution given by rows of e (k x n)
template <class F>
Mat<F> graphDistribution(const Mat<F>& e, int n) {
  Mat<F> eo = annihilator(e);  // covectors vanishing on E
  Mat<F> g(e.rows() + eo.rows(), 2 * n);
  g.setZero();
  for (int i = 0; i < e.rows(); ++i)
    for (int c = 0; c < n; ++c) g(i, c) = e(i, c);
  for (int i = 0; i < eo.rows(); ++i)
    for (int c = 0; c < n; ++c) g(e.rows() + i, n + c) = eo(i, c);
  return g;
}

template <class F>
Mat<F> fullTangent(int n) {
  Mat<F> g(n, 2 * n);
  g.setZero();
  for (int i = 0; i < n; ++i) g(i, i) = F(1);
  return g;
}

template <class F>
Mat<F> fullCotangent(int n) {
  Mat<F> g(n, 2 * n);
  g.setZero();
  for (int i = 0; i < n; ++i) g(i, n + i) = F(1);
  return g;
}

}  // namespace dirackit::lag
