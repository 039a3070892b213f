#pragma once

#include <functional>

#include "finsler/metric.hpp"

namespace finsler {

/// Hermitian fundamental tensor g_{i jbar} with its inverse. Convention:
/// g(i,j) = g_{i jbar} and ginv(j,i) = g^{jbar i}, so g * ginv = I.
struct FundamentalTensor {
  CMatrix g;
  CMatrix ginv;
  double min_eigenvalue = 0;
  double condition = 0;
  bool warned_conditioning = false;
};

/// Rank-3 block of connection coefficients, first index contravariant.
struct Tensor3 {
  int n = 0;
  std::vector<cplx> v;
  explicit Tensor3(int n_ = 0) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_, cplx(0, 0)) {}
  cplx& operator()(int i, int j, int k) { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  cplx operator()(int i, int j, int k) const { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
};

/// Everything Eq.-(0)-shaped at one point: Chern-Finsler nonlinear
/// connection N, spray G, canonical connection (fiber derivative of the
/// spray), horizontal/vertical coefficient blocks, and the antiholomorphic
/// spray sensitivity that detects generalized Berwald metrics.
struct ConnectionPack {
  CMatrix N;        // N^i_j
  CVector G;        // G^i
  CMatrix Ncan;     // d G^i / d eta^j
  CMatrix Gbar;     // d G^i / d etabar^h
  Tensor3 Lcoef;    // L^i_{jk}
  Tensor3 Ccoef;    // C^i_{jk}
};

struct ThetaStar {
  CVector theta;  // theta*^i
};

/// All jet extractions the tensor pipeline needs at one point, plus the
/// derived objects. Computed once, shared by the classifiers and the
/// projective checks.
struct PointData {
  WirtingerPoint pt;
  double L = 0;              // metric value (real part asserted)
  CVector Lz, Lzb, Le, Leb;  // first partials
  FundamentalTensor fund;
  Tensor3 g_z;    // d g_{j lbar} / d z^k        (j, l, k)
  Tensor3 g_e;    // d g_{j lbar} / d eta^p      (j, l, p)
  Tensor3 g_eb;   // d g_{j lbar} / d etabar^q   (j, l, q)
  CMatrix dzeb;   // d^2 L / dz^k detabar^m      (k, m)
  Tensor3 dzeb_e;   // + d/eta^p                 (k, m, p)
  Tensor3 dzeb_eb;  // + d/etabar^q              (k, m, q)
  ConnectionPack conn;
  CVector theta;  // theta*^i
  CMatrix kahler_vector;      // T^i_{jk} eta^j  (i, k)
  CVector weakly_kahler_cov;  // g_{i lbar} T^i_{jk} eta^j etabar^l (k)
  double scale = 1;           // max(1, |L|, max|G|) for relative residuals
};

FundamentalTensor fundamental_tensor(const MetricExpr& m, const WirtingerPoint& p);
ConnectionPack connections(const MetricExpr& m, const WirtingerPoint& p);
ThetaStar theta_star(const MetricExpr& m, const WirtingerPoint& p);

/// Both torsion contractions (Kaehler vector and weakly-Kaehler covector).
std::pair<CMatrix, CVector> torsion_tests(const MetricExpr& m, const WirtingerPoint& p);

/// Full per-point evaluation.
PointData evaluate_point(const MetricExpr& m, const WirtingerPoint& p);

/// Deterministic seeded sample plan: base points uniform in a shrunk copy
/// of the domain, fibers uniform on the unit sphere scaled into
/// [radius_min, radius_max].
struct SamplePlan {
  std::uint64_t seed = 7;
  int count = 64;
  double shrink = 0.8;
  double radius_min = 0.5, radius_max = 2.0;

  std::vector<WirtingerPoint> points(const MetricExpr& m) const;
  /// Points drawn from `proposal`'s domain, kept when inside `constraint`'s
  /// domain as well. Throws DomainError when acceptance is hopeless.
  std::vector<WirtingerPoint> points_common(const MetricExpr& proposal,
                                            const MetricExpr& constraint) const;
};

struct SampleIssue {
  int sample_index;
  std::string message;
};

struct ClassificationReport {
  int samples = 0;
  int skipped = 0;
  double kahler_residual = 0;
  double weakly_kahler_residual = 0;
  double gen_berwald_residual = 0;
  double theta_residual = 0;
  double euler_residual = 0;
  bool kahler = false;
  bool weakly_kahler = false;
  bool generalized_berwald = false;
  bool complex_berwald = false;
  double tolerance = 1e-7;
  std::vector<SampleIssue> issues;
};

ClassificationReport classify(const MetricExpr& m, const SamplePlan& plan, double tolerance = 1e-7);

}  // namespace finsler
