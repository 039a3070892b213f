#include "finsler/zoo.hpp"

namespace finsler {

namespace {

ExprPtr sum_eta_etabar(int n) {
  ExprPtr acc = ex::constant(0);
  for (int k = 0; k < n; ++k) acc = ex::add(acc, ex::mul(ex::eta(k), ex::etabar(k)));
  return acc;
}

}  // namespace

MetricExpr euclidean(int n) {
  return MetricExpr("euclidean", n, MetricForm::L, Domain::all(), sum_eta_etabar(n));
}

MetricExpr disk_metric(int n, double eps) {
  if (eps >= 0) throw std::invalid_argument("disk_metric: eps < 0 required");
  ExprPtr eta2 = sum_eta_etabar(n);
  ExprPtr z2 = ex::constant(0);
  ExprPtr sigma = ex::constant(0);  // <z, eta> = z^k etabar^k
  for (int k = 0; k < n; ++k) {
    z2 = ex::add(z2, ex::mul(ex::z(k), ex::zbar(k)));
    sigma = ex::add(sigma, ex::mul(ex::z(k), ex::etabar(k)));
  }
  ExprPtr epsc = ex::constant(eps);
  ExprPtr numer = ex::add(eta2, ex::mul(epsc, ex::sub(ex::mul(z2, eta2), ex::abs2(sigma))));
  ExprPtr denom = ex::pow_int(ex::add(ex::constant(1), ex::mul(epsc, z2)), 2);
  const double r = 1.0 / std::sqrt(-eps);
  return MetricExpr("disk(eps=" + std::to_string(eps) + ")", n, MetricForm::L, Domain::ball(r),
                    ex::div(numer, denom), {{"eps", eps}});
}

MetricExpr RandersData::alpha_metric(const std::string& name) const {
  ExprPtr acc = ex::constant(0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      acc = ex::add(acc, ex::mul(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                 ex::mul(ex::eta(i), ex::etabar(j))));
  return MetricExpr(name, dim, MetricForm::L, domain, acc);
}

ExprPtr RandersData::beta_expr() const {
  ExprPtr acc = ex::constant(0);
  for (int i = 0; i < dim; ++i)
    acc = ex::add(acc, ex::mul(b[static_cast<std::size_t>(i)], ex::eta(i)));
  return acc;
}

namespace {

/// Construction probes: a positive definite, ||b||^2 within the admissible
/// bound, on deterministic domain samples.
void probe_randers(RandersData& rd) {
  Rng rng(0xC0FFEEull);
  rd.max_b_norm2 = 0;
  for (int t = 0; t < 12; ++t) {
    const CVector z = rd.domain.sample(rng, rd.dim, 0.8);
    CMatrix a(rd.dim, rd.dim);
    CVector b(rd.dim);
    CVector dummy = CVector::Ones(rd.dim);
    for (int i = 0; i < rd.dim; ++i) {
      b[i] = eval_scalar(rd.b[static_cast<std::size_t>(i)], z, dummy);
      for (int j = 0; j < rd.dim; ++j)
        a(i, j) = eval_scalar(rd.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], z, dummy);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint().eval()));
    if (es.eigenvalues().minCoeff() <= 0)
      throw NumericError("randers: coefficient matrix a not positive definite at probe point");
    const CMatrix ainv = a.inverse();
    double nb2 = 0;
    for (int i = 0; i < rd.dim; ++i)
      for (int j = 0; j < rd.dim; ++j) nb2 += (ainv(j, i) * b[i] * std::conj(b[j])).real();
    rd.max_b_norm2 = std::max(rd.max_b_norm2, nb2);
  }
  if (rd.max_b_norm2 > 1.0 + 1e-9)
    throw NumericError("randers: ||b||^2 = " + std::to_string(rd.max_b_norm2) +
                       " exceeds 1 at a probe point");
  rd.b_norm_boundary = rd.max_b_norm2 > 1.0 - 1e-9;
}

}  // namespace

RandersData randers_data(int dim, const Domain& domain, std::vector<std::vector<ExprPtr>> a,
                         std::vector<ExprPtr> b) {
  RandersData rd;
  rd.dim = dim;
  rd.domain = domain;
  rd.a = std::move(a);
  rd.b = std::move(b);
  probe_randers(rd);
  return rd;
}

MetricExpr randers(const RandersData& rd, const std::string& name) {
  ExprPtr alpha2 = ex::constant(0);
  for (int i = 0; i < rd.dim; ++i)
    for (int j = 0; j < rd.dim; ++j)
      alpha2 = ex::add(alpha2, ex::mul(rd.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                       ex::mul(ex::eta(i), ex::etabar(j))));
  ExprPtr beta = rd.beta_expr();
  bool b_zero = true;
  for (const auto& bi : rd.b) b_zero = b_zero && ex::is_zero(bi);
  ExprPtr body = b_zero ? ex::sqrt(alpha2)
                        : ex::add(ex::sqrt(alpha2), ex::sqrt(ex::abs2(beta)));
  MetricExpr m(name, rd.dim, MetricForm::F, rd.domain, std::move(body));
  if (!b_zero) m.set_guard(ex::abs2(beta), 1e-12);  // skip |beta| < 1e-6
  return m;
}

RandersData kahler_from_potential(const ExprPtr& potential, int dim, const Domain& domain) {
  std::vector<std::vector<ExprPtr>> a(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(dim));
    ExprPtr di = ex::d_z(potential, i);
    for (int j = 0; j < dim; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ex::d_zbar(di, j);
  }
  std::vector<ExprPtr> b(static_cast<std::size_t>(dim), ex::constant(0));
  return randers_data(dim, domain, std::move(a), std::move(b));
}

RandersData hartogs_randers_data() {
  // potential log(1/((1-|z|^2)(|z|^2-|w|^2))) on the Hartogs triangle
  ExprPtr az2 = ex::mul(ex::z(0), ex::zbar(0));
  ExprPtr aw2 = ex::mul(ex::z(1), ex::zbar(1));
  ExprPtr D = ex::sub(az2, aw2);
  ExprPtr pot = ex::neg(ex::add(ex::log(ex::sub(ex::constant(1), az2)), ex::log(D)));
  RandersData rd = kahler_from_potential(pot, 2, Domain::hartogs());
  rd.b[0] = ex::div(ex::z(1), D);           // b_z = w / D
  rd.b[1] = ex::neg(ex::div(ex::z(0), D));  // b_w = -z / D
  probe_randers(rd);
  return rd;
}

namespace {
const RandersData& hartogs_cached() {
  static const RandersData rd = hartogs_randers_data();
  return rd;
}
}  // namespace

MetricExpr hartogs_alpha() { return hartogs_cached().alpha_metric("hartogs-alpha"); }
MetricExpr hartogs_randers() { return randers(hartogs_cached(), "hartogs-randers"); }

RandersPointData randers_point_data(const RandersData& rd, const WirtingerPoint& p) {
  const int n = rd.dim;
  if (!rd.domain.contains(p.z)) throw DomainError("randers_point_data: point outside domain");
  RandersPointData pd;
  pd.a = CMatrix(n, n);
  pd.b = CVector(n);
  pd.da_z.assign(static_cast<std::size_t>(n), CMatrix(n, n));
  pd.da_zb.assign(static_cast<std::size_t>(n), CMatrix(n, n));
  pd.db_z = CMatrix(n, n);
  pd.dbb_z = CMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    const ExprPtr& bi = rd.b[static_cast<std::size_t>(i)];
    pd.b[i] = eval_scalar(bi, p.z, p.eta);
    for (int k = 0; k < n; ++k) {
      pd.db_z(i, k) = eval_scalar(ex::d_z(bi, k), p.z, p.eta);
      pd.dbb_z(i, k) = eval_scalar(ex::d_z(ex::conj(bi), k), p.z, p.eta);
    }
    for (int j = 0; j < n; ++j) {
      const ExprPtr& aij = rd.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      pd.a(i, j) = eval_scalar(aij, p.z, p.eta);
      for (int k = 0; k < n; ++k) {
        pd.da_z[static_cast<std::size_t>(k)](i, j) = eval_scalar(ex::d_z(aij, k), p.z, p.eta);
        pd.da_zb[static_cast<std::size_t>(k)](i, j) = eval_scalar(ex::d_zbar(aij, k), p.z, p.eta);
      }
    }
  }
  pd.ainv = pd.a.inverse();
  pd.bup = CVector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pd.bup[i] += pd.ainv(j, i) * std::conj(pd.b[j]);
  pd.beta = cplx(0, 0);
  for (int i = 0; i < n; ++i) pd.beta += pd.b[i] * p.eta[i];
  pd.alpha2 = 0;
  pd.b_norm2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pd.alpha2 += (pd.a(i, j) * p.eta[i] * std::conj(p.eta[j])).real();
      pd.b_norm2 += (pd.ainv(j, i) * pd.b[i] * std::conj(pd.b[j])).real();
    }
  return pd;
}

CVector hermitian_spray(const RandersPointData& pd, const CVector& eta) {
  const int n = static_cast<int>(eta.size());
  CVector G = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    cplx s(0, 0);
    for (int mm = 0; mm < n; ++mm)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          s += pd.ainv(mm, i) * pd.da_z[static_cast<std::size_t>(k)](l, mm) * eta[l] * eta[k];
    G[i] = 0.5 * s;
  }
  return G;
}

namespace {

/// d bbar^r / d z^k from component data: bbar^r = a^{rbar m} b_m and
/// d(a^{-1}) = -a^{-1} (da) a^{-1}.
CMatrix dbbarup_dz(const RandersPointData& pd) {
  const int n = static_cast<int>(pd.b.size());
  CMatrix out(n, n);  // (r, k)
  for (int k = 0; k < n; ++k) {
    const CMatrix dainv = -pd.ainv * pd.da_z[static_cast<std::size_t>(k)] * pd.ainv;
    for (int r = 0; r < n; ++r) {
      cplx s(0, 0);
      for (int mth = 0; mth < n; ++mth)
        s += dainv(r, mth) * pd.b[mth] + pd.ainv(r, mth) * pd.db_z(mth, k);
      out(r, k) = s;
    }
  }
  return out;
}

}  // namespace

cplx randers_delta_beta_closed(const RandersData& rd, const WirtingerPoint& p) {
  const int n = rd.dim;
  const RandersPointData pd = randers_point_data(rd, p);
  const cplx beta = pd.beta;
  const double absb = std::abs(beta);
  if (absb < 1e-6) throw NumericError("randers_delta_beta_closed: |beta| below cutoff");
  const CMatrix dbb = dbbarup_dz(pd);  // d bbar^r / d z^k
  CVector llow = CVector::Zero(n);     // l_i = a_{i jbar} etabar^j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) llow[i] += pd.a(i, j) * std::conj(p.eta[j]);
  const CVector llowb = llow.conjugate();  // l_rbar
  cplx acc(0, 0);
  for (int k = 0; k < n; ++k) {
    cplx t1(0, 0), t2(0, 0);
    for (int r = 0; r < n; ++r) {
      t1 += llowb[r] * dbb(r, k);
      t2 += pd.dbb_z(r, k) * std::conj(p.eta[r]);
    }
    acc += (std::conj(beta) * t1 + beta * t2) * p.eta[k];
  }
  return acc / (2.0 * absb);
}

cplx randers_theta_contraction_closed(const RandersData& rd, const WirtingerPoint& p) {
  const int n = rd.dim;
  const RandersPointData pd = randers_point_data(rd, p);
  const cplx beta = pd.beta;
  const double absb = std::abs(beta);
  if (absb < 1e-6) throw NumericError("randers_theta_contraction_closed: |beta| below cutoff");
  cplx acc(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cplx gam(0, 0);
        for (int mm = 0; mm < n; ++mm)
          gam += pd.ainv(mm, k) * (pd.da_zb[static_cast<std::size_t>(j)](i, mm) -
                                   pd.da_zb[static_cast<std::size_t>(mm)](i, j));
        acc += gam * pd.b[k] * p.eta[i] * std::conj(p.eta[j]);
      }
  return -std::conj(beta) / (2.0 * absb) * acc;
}

CVector randers_spray_closed_form(const RandersData& rd, const WirtingerPoint& p) {
  const int n = rd.dim;
  const RandersPointData pd = randers_point_data(rd, p);
  const cplx beta = pd.beta;
  const double absb = std::abs(beta);
  if (absb < 1e-6) throw NumericError("randers_spray_closed_form: |beta| below cutoff");
  const double alpha = std::sqrt(pd.alpha2);
  const double Lt = (alpha + absb) * (alpha + absb);
  const double gamma = Lt + pd.alpha2 * (pd.b_norm2 - 1.0);
  if (std::abs(gamma) < 1e-12) throw NumericError("randers_spray_closed_form: gamma near zero");

  const CVector G_alpha = hermitian_spray(pd, p.eta);
  const CVector etab = p.eta.conjugate();
  const CVector bbarup = pd.bup.conjugate();
  const CMatrix dbb = dbbarup_dz(pd);

  CVector llow = CVector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) llow[i] += pd.a(i, j) * etab[j];
  const CVector llowb = llow.conjugate();

  // xi^i = betabar eta^i + alpha^2 b^i
  CVector xi = std::conj(beta) * p.eta + pd.alpha2 * pd.bup;

  // first correction: (1/(2 gamma)) (l_rbar d bbar^r/dz^j
  //                    - beta^2/|beta|^2 d b_rbar/dz^j etabar^r) eta^j xi^i
  cplx t1(0, 0);
  for (int j = 0; j < n; ++j) {
    cplx s1(0, 0), s2(0, 0);
    for (int r = 0; r < n; ++r) {
      s1 += llowb[r] * dbb(r, j);
      s2 += pd.dbb_z(r, j) * etab[r];
    }
    t1 += (s1 - (beta * beta / (beta * std::conj(beta))) * s2) * p.eta[j];
  }
  CVector corr1 = (t1 / (2.0 * gamma)) * xi;

  // second correction: (beta/(4|beta|)) k^{rbar i} (d b_rbar/dz^j) eta^j
  CVector dbrbar = CVector::Zero(n);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j) dbrbar[r] += pd.dbb_z(r, j) * p.eta[j];
  CVector corr2 = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    cplx s(0, 0);
    for (int r = 0; r < n; ++r) {
      const cplx krb = 2.0 * alpha * pd.ainv(r, i) +
                       2.0 * (alpha * pd.b_norm2 + 2.0 * absb) / gamma * p.eta[i] * etab[r] -
                       2.0 * alpha * pd.alpha2 / gamma * pd.bup[i] * bbarup[r] -
                       2.0 * alpha / gamma * (std::conj(beta) * p.eta[i] * bbarup[r] +
                                              beta * pd.bup[i] * etab[r]);
      s += krb * dbrbar[r];
    }
    corr2[i] = beta / (4.0 * absb) * s;
  }
  return G_alpha + corr1 + corr2;
}

}  // namespace finsler
