#include "finsler/tensors.hpp"

#include <iostream>

namespace finsler {

namespace {

FundamentalTensor invert_hermitian(CMatrix g, const std::string& what) {
  const int n = static_cast<int>(g.rows());
  FundamentalTensor out;
  const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (asym > 1e-10 * scale)
    throw NumericError(what + ": matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
  g = 0.5 * (g + g.adjoint().eval());  // exact Hermitian symmetrization

  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  if (out.min_eigenvalue <= 0)
    throw NumericError(what + ": not positive definite (min eigenvalue " +
                       std::to_string(out.min_eigenvalue) + ")");

  Eigen::LDLT<CMatrix> ldlt(g);
  if (ldlt.info() == Eigen::Success) {
    out.ginv = ldlt.solve(CMatrix::Identity(n, n));
  } else {
    out.ginv = Eigen::FullPivLU<CMatrix>(g).inverse();
  }
  out.g = std::move(g);
  out.condition = out.g.cwiseAbs().rowwise().sum().maxCoeff() *
                  out.ginv.cwiseAbs().rowwise().sum().maxCoeff();
  if (out.condition > 1e10) {
    out.warned_conditioning = true;
    std::cerr << "[finsler] warning: " << what << " condition number ~" << out.condition << "\n";
  }
  return out;
}

}  // namespace

FundamentalTensor fundamental_tensor(const MetricExpr& m, const WirtingerPoint& p) {
  if (!p.fiber_nonzero()) throw DomainError("fundamental_tensor: eta must be nonzero");
  const int n = m.dim();
  const JetLayout& lay = JetLayout::get(JetSpec::fiber_only(n, 2));
  const JetValue Lj = m.L_jet(p, lay);
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      JetIndex ix = JetIndex::zero(n);
      ix.eta(i).etabar(j);
      g(i, j) = Lj.at(0, lay.fiber_index(ix.fiber));  // order (1,1): factorial 1
    }
  return invert_hermitian(std::move(g), "fundamental tensor of '" + m.name() + "'");
}

PointData evaluate_point(const MetricExpr& m, const WirtingerPoint& p) {
  if (!p.fiber_nonzero()) throw DomainError("evaluate_point: eta must be nonzero");
  const int n = m.dim();
  const JetLayout& lay = JetLayout::get(JetSpec::full(n));
  const JetValue Lj = m.L_jet(p, lay);

  PointData d;
  d.pt = p;
  d.L = Lj.value().real();

  auto fib = [&](std::initializer_list<int> etas, std::initializer_list<int> etabars) {
    JetIndex ix = JetIndex::zero(n);
    for (int k : etas) ix.eta(k);
    for (int k : etabars) ix.etabar(k);
    return ix;
  };
  auto coeff = [&](const JetIndex& ix) {
    const int f = lay.fiber_index(ix.fiber);
    const int s = lay.slot_of(ix.base_kind, ix.base_index);
    return Lj.at(s, f) * lay.fiber_factorial(f);
  };

  d.Lz.resize(n); d.Lzb.resize(n); d.Le.resize(n); d.Leb.resize(n);
  for (int k = 0; k < n; ++k) {
    d.Lz[k] = coeff(JetIndex::zero(n).z(k));
    d.Lzb[k] = coeff(JetIndex::zero(n).zbar(k));
    d.Le[k] = coeff(fib({k}, {}));
    d.Leb[k] = coeff(fib({}, {k}));
  }

  CMatrix g(n, n);
  d.g_z = Tensor3(n); d.g_e = Tensor3(n); d.g_eb = Tensor3(n);
  d.dzeb = CMatrix(n, n);
  d.dzeb_e = Tensor3(n); d.dzeb_eb = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = coeff(fib({i}, {j}));
      for (int k = 0; k < n; ++k) {
        d.g_z(i, j, k) = coeff(fib({i}, {j}).z(k));
        d.g_e(i, j, k) = coeff(fib({i, k}, {j}));
        d.g_eb(i, j, k) = coeff(fib({i}, {j, k}));
      }
    }
  for (int k = 0; k < n; ++k)
    for (int mth = 0; mth < n; ++mth) {
      d.dzeb(k, mth) = coeff(fib({}, {mth}).z(k));
      for (int q = 0; q < n; ++q) {
        d.dzeb_e(k, mth, q) = coeff(fib({q}, {mth}).z(k));
        d.dzeb_eb(k, mth, q) = coeff(fib({}, {mth, q}).z(k));
      }
    }

  d.fund = invert_hermitian(std::move(g), "fundamental tensor of '" + m.name() + "'");
  const CMatrix& gi = d.fund.ginv;  // gi(m,i) = g^{mbar i}

  const CVector etab = p.eta.conjugate();

  // N^i_j = g^{mbar i} (d g_{l mbar}/d z^j) eta^l
  ConnectionPack& c = d.conn;
  c.N = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s(0, 0);
      for (int mm = 0; mm < n; ++mm)
        for (int l = 0; l < n; ++l) s += gi(mm, i) * d.g_z(l, mm, j) * p.eta[l];
      c.N(i, j) = s;
    }
  c.G = 0.5 * c.N * p.eta;

  // dgi_e(m,i,p) = -(gi * g_e(.,.,p) * gi); same for etabar
  auto dginv = [&](const Tensor3& dg) {
    Tensor3 out(n);
    for (int pth = 0; pth < n; ++pth) {
      CMatrix dgm(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) dgm(a, b) = dg(a, b, pth);
      const CMatrix r = -gi * dgm * gi;  // rows mbar, cols i
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(a, b, pth) = r(a, b);
    }
    return out;
  };
  const Tensor3 gi_e = dginv(d.g_e);
  const Tensor3 gi_eb = dginv(d.g_eb);

  // 2 G^i = g^{mbar i} dzeb(k, m) eta^k; differentiate that product
  c.Ncan = CMatrix::Zero(n, n);
  c.Gbar = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx se(0, 0), sb(0, 0);
      for (int mm = 0; mm < n; ++mm) {
        for (int k = 0; k < n; ++k) {
          se += gi_e(mm, i, j) * d.dzeb(k, mm) * p.eta[k] + gi(mm, i) * d.dzeb_e(k, mm, j) * p.eta[k];
          sb += gi_eb(mm, i, j) * d.dzeb(k, mm) * p.eta[k] + gi(mm, i) * d.dzeb_eb(k, mm, j) * p.eta[k];
        }
        se += gi(mm, i) * d.dzeb(j, mm);
      }
      c.Ncan(i, j) = 0.5 * se;
      c.Gbar(i, j) = 0.5 * sb;
    }

  // L^i_{jk} = g^{lbar i} (g_z(j,l,k) - N^m_k g_e(j,l,m)); C^i_{jk} = g^{lbar i} g_e(j,l,k)
  c.Lcoef = Tensor3(n);
  c.Ccoef = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cplx sl(0, 0), sc(0, 0);
        for (int l = 0; l < n; ++l) {
          cplx delg = d.g_z(j, l, k);
          for (int mm = 0; mm < n; ++mm) delg -= c.N(mm, k) * d.g_e(j, l, mm);
          sl += gi(l, i) * delg;
          sc += gi(l, i) * d.g_e(j, l, k);
        }
        c.Lcoef(i, j, k) = sl;
        c.Ccoef(i, j, k) = sc;
      }

  // theta*^i = 2 g^{jbar i} (Lzb[j] - conj(Ncan(l, j)) Leb[l])
  d.theta = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    cplx s(0, 0);
    for (int j = 0; j < n; ++j) {
      cplx inner = d.Lzb[j];
      for (int l = 0; l < n; ++l) inner -= std::conj(c.Ncan(l, j)) * d.Leb[l];
      s += gi(j, i) * inner;
    }
    d.theta[i] = 2.0 * s;
  }

  // torsion contractions
  d.kahler_vector = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cplx s(0, 0);
      for (int j = 0; j < n; ++j) s += (c.Lcoef(i, j, k) - c.Lcoef(i, k, j)) * p.eta[j];
      d.kahler_vector(i, k) = s;
    }
  d.weakly_kahler_cov = CVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    cplx s(0, 0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) s += d.fund.g(i, l) * d.kahler_vector(i, k) * etab[l];
    d.weakly_kahler_cov[k] = s;
  }

  d.scale = std::max({1.0, std::abs(d.L), d.conn.G.cwiseAbs().maxCoeff()});
  return d;
}

ConnectionPack connections(const MetricExpr& m, const WirtingerPoint& p) {
  return evaluate_point(m, p).conn;
}

ThetaStar theta_star(const MetricExpr& m, const WirtingerPoint& p) {
  return ThetaStar{evaluate_point(m, p).theta};
}

std::pair<CMatrix, CVector> torsion_tests(const MetricExpr& m, const WirtingerPoint& p) {
  PointData d = evaluate_point(m, p);
  return {std::move(d.kahler_vector), std::move(d.weakly_kahler_cov)};
}

std::vector<WirtingerPoint> SamplePlan::points(const MetricExpr& m) const {
  Rng rng(seed);
  const int n = m.dim();
  std::vector<WirtingerPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  int guard_rejections = 0;
  while (static_cast<int>(out.size()) < count) {
    CVector z = m.domain().sample(rng, n, shrink);
    CVector eta(n);
    double norm2 = 0;
    for (int k = 0; k < n; ++k) {
      const double re = rng.gaussian(), im = rng.gaussian();
      eta[k] = cplx(re, im);
      norm2 += re * re + im * im;
    }
    eta *= rng.uniform(radius_min, radius_max) / std::sqrt(norm2);
    WirtingerPoint p{std::move(z), std::move(eta)};
    if (!m.sample_ok(p)) {
      if (++guard_rejections > 100 * count)
        throw DomainError("sample plan: guard rejects nearly all samples for '" + m.name() + "'");
      continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<WirtingerPoint> SamplePlan::points_common(const MetricExpr& proposal,
                                                      const MetricExpr& constraint) const {
  if (proposal.dim() != constraint.dim())
    throw DomainError("metrics live on different dimensions");
  Rng rng(seed);
  const int n = proposal.dim();
  std::vector<WirtingerPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * count)
      throw DomainError("domains of '" + proposal.name() + "' and '" + constraint.name() +
                        "' do not overlap (sampler starved)");
    CVector z = proposal.domain().sample(rng, n, shrink);
    if (!constraint.domain().contains(z)) continue;
    CVector eta(n);
    double norm2 = 0;
    for (int k = 0; k < n; ++k) {
      const double re = rng.gaussian(), im = rng.gaussian();
      eta[k] = cplx(re, im);
      norm2 += re * re + im * im;
    }
    eta *= rng.uniform(radius_min, radius_max) / std::sqrt(norm2);
    WirtingerPoint p{std::move(z), std::move(eta)};
    if (!proposal.sample_ok(p) || !constraint.sample_ok(p)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

ClassificationReport classify(const MetricExpr& m, const SamplePlan& plan, double tolerance) {
  ClassificationReport r;
  r.tolerance = tolerance;
  const auto pts = plan.points(m);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    try {
      const PointData d = evaluate_point(m, pts[s]);
      const double sc = d.scale;
      r.kahler_residual = std::max(r.kahler_residual, d.kahler_vector.cwiseAbs().maxCoeff() / sc);
      r.weakly_kahler_residual =
          std::max(r.weakly_kahler_residual, d.weakly_kahler_cov.cwiseAbs().maxCoeff() / sc);
      r.gen_berwald_residual =
          std::max(r.gen_berwald_residual, d.conn.Gbar.cwiseAbs().maxCoeff() / sc);
      r.theta_residual = std::max(r.theta_residual, d.theta.cwiseAbs().maxCoeff() / sc);
      cplx euler(0, 0);  // (d L / d eta^k) eta^k - L
      for (int k = 0; k < m.dim(); ++k) euler += d.Le[k] * d.pt.eta[k];
      r.euler_residual = std::max(r.euler_residual, std::abs(euler - cplx(d.L, 0)) / sc);
      ++r.samples;
    } catch (const std::exception& e) {
      r.issues.push_back({static_cast<int>(s), e.what()});
      ++r.skipped;
    }
  }
  r.kahler = r.kahler_residual < tolerance;
  r.weakly_kahler = r.weakly_kahler_residual < tolerance;
  r.generalized_berwald = r.gen_berwald_residual < tolerance;
  r.complex_berwald = r.kahler && r.generalized_berwald;
  return r;
}

}  // namespace finsler
