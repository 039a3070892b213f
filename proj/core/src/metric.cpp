#include "finsler/metric.hpp"

#include <iostream>

namespace finsler {

MetricExpr::MetricExpr(std::string name, int dim, MetricForm form, Domain domain, ExprPtr body,
                       std::map<std::string, double> params)
    : name_(std::move(name)), dim_(dim), form_(form), domain_(std::move(domain)),
      body_(std::move(body)), params_(std::move(params)) {
  if (dim_ < 1) throw std::invalid_argument("MetricExpr: dim >= 1 required");
  // homogeneity probe: L-form is (1,1)-homogeneous, F-form (1/2,1/2) in L
  // terms, i.e. F(z, l*eta) = |l| F(z, eta). 8 deterministic probes.
  Rng rng(0x9e3779b97f4a7c15ull);
  const cplx lambdas[2] = {cplx(1.7, 0.4), cplx(0.3, -1.1)};
  double worst = 0.0;
  int used = 0;
  for (int t = 0; t < 8 && used < 8; ++t) {
    CVector z = domain_.sample(rng, dim_, 0.7);
    CVector eta(dim_);
    for (int k = 0; k < dim_; ++k) eta[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const cplx lam = lambdas[t % 2];
    try {
      const cplx base = eval_scalar(body_, z, eta);
      const cplx scaled = eval_scalar(body_, z, CVector(lam * eta));
      const double m2 = std::norm(lam);
      const cplx want = form_ == MetricForm::L ? m2 * base : std::sqrt(m2) * base;
      worst = std::max(worst, std::abs(scaled - want) / std::max(1.0, std::abs(want)));
      ++used;
    } catch (const std::exception&) {
      // probe point outside a guard locus; skip
    }
  }
  homogeneity_dev_ = worst;
  homogeneity_ok_ = worst < 1e-8;
  if (!homogeneity_ok_)
    std::cerr << "[finsler] warning: metric '" << name_ << "' failed the homogeneity probe (max rel dev "
              << worst << ")\n";
}

bool MetricExpr::sample_ok(const WirtingerPoint& p) const {
  if (!guard_) return true;
  const cplx g = eval_scalar(guard_, p.z, p.eta);
  return std::abs(g) >= guard_cutoff_;
}

void MetricExpr::require_in_domain(const WirtingerPoint& p) const {
  if (p.dim() != dim_)
    throw DomainError("point dimension " + std::to_string(p.dim()) + " != metric dimension " +
                      std::to_string(dim_));
  if (!domain_.contains(p.z))
    throw DomainError("point outside the declared domain of metric '" + name_ + "'");
}

cplx MetricExpr::value(const WirtingerPoint& p) const {
  require_in_domain(p);
  return eval_scalar(body_, p.z, p.eta);
}

double MetricExpr::L_value(const WirtingerPoint& p) const {
  const cplx v = value(p);
  return form_ == MetricForm::L ? v.real() : v.real() * v.real();
}

Jet MetricExpr::jet(const WirtingerPoint& p, const JetSpec& spec) const {
  require_in_domain(p);
  if (spec.dim != dim_) throw std::invalid_argument("jet spec dimension mismatch");
  const JetLayout& lay = JetLayout::get(spec);
  return Jet(p, spec, eval_jet(body_, lay, p));
}

JetValue MetricExpr::L_jet(const WirtingerPoint& p, const JetLayout& lay) const {
  require_in_domain(p);
  JetValue v = eval_jet(body_, lay, p);
  return form_ == MetricForm::L ? v : v * v;
}

JetValue MetricExpr::F_jet(const WirtingerPoint& p, const JetLayout& lay) const {
  require_in_domain(p);
  JetValue v = eval_jet(body_, lay, p);
  return form_ == MetricForm::F ? v : v.sqrt_();
}

}  // namespace finsler
