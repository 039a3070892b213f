#pragma once

#include "finsler/metric.hpp"

namespace finsler {

/// Central-difference estimate of one mixed Wirtinger partial of the metric
/// body, with one Richardson halving. Independent oracle for evaluate_jet:
/// shares only the scalar evaluator, never the jet algebra.
///
/// Wirtinger derivatives are realized on real coordinates as
/// d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2, composed
/// per index factor. Throws DomainError when the stencil leaves the
/// declared domain. Default step suits first-order indices; callers pass
/// larger steps for deep mixed indices.
cplx fd_check(const MetricExpr& m, const WirtingerPoint& p, const JetIndex& index,
              double step = 1e-5);

}  // namespace finsler
