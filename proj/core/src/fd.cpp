#include "finsler/fd.hpp"

namespace finsler {

namespace {

struct Dir {
  bool fiber;       // eta vs z family
  bool conjugated;  // bar family
  int index;
};

std::vector<Dir> expand_dirs(const JetIndex& ix, int n) {
  std::vector<Dir> dirs;
  if (ix.base_kind != BaseDir::None)
    dirs.push_back({false, ix.base_kind == BaseDir::Zbar, ix.base_index});
  for (int v = 0; v < 2 * n; ++v)
    for (int rep = 0; rep < ix.fiber[static_cast<std::size_t>(v)]; ++rep)
      dirs.push_back({true, v >= n, v % n});
  return dirs;
}

cplx estimate(const MetricExpr& m, const CVector& z, const CVector& eta,
              const std::vector<Dir>& dirs, std::size_t level, double h) {
  if (level == dirs.size()) return eval_scalar(m.body(), z, eta);
  const Dir& d = dirs[level];
  auto shifted = [&](cplx delta) {
    CVector z2 = z, e2 = eta;
    if (d.fiber) e2[d.index] += delta;
    else z2[d.index] += delta;
    return estimate(m, z2, e2, dirs, level + 1, h);
  };
  const cplx fx = (shifted(cplx(h, 0)) - shifted(cplx(-h, 0))) / (2 * h);
  const cplx fy = (shifted(cplx(0, h)) - shifted(cplx(0, -h))) / (2 * h);
  const cplx iu(0, 1);
  return d.conjugated ? 0.5 * (fx + iu * fy) : 0.5 * (fx - iu * fy);
}

}  // namespace

cplx fd_check(const MetricExpr& m, const WirtingerPoint& p, const JetIndex& index, double step) {
  if (step <= 0) throw std::invalid_argument("fd_check: step must be positive");
  m.require_in_domain(p);
  const int n = m.dim();
  const std::vector<Dir> dirs = expand_dirs(index, n);
  // an admissible index shifts at most one base coordinate, by +-step along
  // the real and imaginary axes; require those stencil corners inside
  for (const auto& d : dirs) {
    if (d.fiber) continue;
    for (const cplx delta : {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)}) {
      CVector z2 = p.z;
      z2[d.index] += delta;
      if (!m.domain().contains(z2, 0.0))
        throw DomainError("fd_check: stencil exits the declared domain");
    }
  }
  const cplx e_h = estimate(m, p.z, p.eta, dirs, 0, step);
  const cplx e_h2 = estimate(m, p.z, p.eta, dirs, 0, step / 2);
  return (4.0 * e_h2 - e_h) / 3.0;  // one Richardson halving of the h^2 term
}

}  // namespace finsler
