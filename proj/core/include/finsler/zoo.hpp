#pragma once

#include "finsler/tensors.hpp"

namespace finsler {

/// Built-in metric families and the Randers composition machinery.

/// L = sum_k eta^k etabar^k on all of C^n.
MetricExpr euclidean(int n);

/// The projectively flat family on the ball |z| < 1/sqrt(|eps|):
///   L = (|eta|^2 + eps(|z|^2 |eta|^2 - |<z,eta>|^2)) / (1 + eps |z|^2)^2,
/// eps < 0 required. eps = -1 is the Bergman metric of the unit ball.
MetricExpr disk_metric(int n, double eps);

/// Purely Hermitian data: a_{i jbar}(z) entries as expressions over z, zbar
/// plus the (1,0)-form coefficients b_i(z).
struct RandersData {
  int dim = 0;
  Domain domain;
  std::vector<std::vector<ExprPtr>> a;  // a[i][j] = a_{i jbar}
  std::vector<ExprPtr> b;               // b[i], may be all-zero
  double max_b_norm2 = 0;               // largest ||b||^2 seen at probes
  bool b_norm_boundary = false;         // probes sit on ||b||^2 ~ 1

  /// alpha^2 = a_{i jbar} eta^i etabar^j as an L-form metric.
  MetricExpr alpha_metric(const std::string& name = "alpha") const;
  /// beta = b_i eta^i.
  ExprPtr beta_expr() const;
};

/// Complex Hessian of a potential: a_{i jbar} = d^2(potential)/dz^i dzbar^j
/// via symbolic Wirtinger differentiation. Positive definiteness is probed.
RandersData kahler_from_potential(const ExprPtr& potential, int dim, const Domain& domain);

/// Assemble a Randers metric F = alpha + |beta| (F-form). Construction
/// probes positive definiteness of a and the bound ||b||^2 <= 1 + 1e-9
/// (the Hartogs example sits exactly on ||b||^2 = 1).
MetricExpr randers(const RandersData& rd, const std::string& name = "randers");
/// Attach a covector b to an existing purely Hermitian coefficient set.
RandersData randers_data(int dim, const Domain& domain, std::vector<std::vector<ExprPtr>> a,
                         std::vector<ExprPtr> b);

/// Hartogs triangle example: Kaehler-purely Hermitian alpha from the
/// potential log(1/((1-|z|^2)(|z|^2-|w|^2))) and b = (w/D, -z/D).
RandersData hartogs_randers_data();
MetricExpr hartogs_alpha();
MetricExpr hartogs_randers();

/// Numeric purely-Hermitian data at a base point (values and first base
/// derivatives of a and b), shared by the closed-form evaluations below.
struct RandersPointData {
  CMatrix a, ainv;            // a_{i jbar}; ainv(j,i) = a^{jbar i}
  CVector b, bup;             // b_i; b^i = a^{jbar i} b_{jbar}
  std::vector<CMatrix> da_z;  // da_z[k](i, j) = d a_{i jbar} / d z^k
  std::vector<CMatrix> da_zb; // da_zb[k](i, j) = d a_{i jbar} / d zbar^k
  CMatrix db_z;               // db_z(i, k) = d b_i / d z^k
  CMatrix dbb_z;              // dbb_z(i, k) = d b_ibar / d z^k
  cplx beta = 0;
  double alpha2 = 0, b_norm2 = 0;
};
RandersPointData randers_point_data(const RandersData& rd, const WirtingerPoint& p);

/// (delta_k |beta|) eta^k by the displayed closed form
///   (1/(2|beta|)) (betabar l_rbar d bbar^r/dz^k + beta d b_rbar/dz^k etabar^r) eta^k,
/// delta_k horizontal with respect to alpha.
cplx randers_delta_beta_closed(const RandersData& rd, const WirtingerPoint& p);

/// theta*^i (d F/d eta^i) by the displayed closed form
///   -(betabar/(2|beta|)) Gamma^k_{i jbar} b_k eta^i etabar^j,
/// with Gamma^k_{i jbar} = a^{mbar k}(d a_{i mbar}/dzbar^j - d a_{i jbar}/dzbar^m).
cplx randers_theta_contraction_closed(const RandersData& rd, const WirtingerPoint& p);

/// Spray of F = alpha + |beta| by the displayed closed form built from
/// gamma, xi^i and k^{rbar i}. Requires |beta| above the cutoff and gamma
/// away from zero.
CVector randers_spray_closed_form(const RandersData& rd, const WirtingerPoint& p);

/// Spray of the purely Hermitian alpha directly from component data.
CVector hermitian_spray(const RandersPointData& pd, const CVector& eta);

}  // namespace finsler
