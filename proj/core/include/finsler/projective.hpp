#pragma once

#include <map>

#include "finsler/zoo.hpp"

namespace finsler {

/// Per-sample record of a projective-relatedness evaluation. P is the
/// recovered projective factor, S = (1/(2Lt))(delta_k Lt) eta^k and
/// Q = -(1/(2Lt)) theta*^l (d_l Lt) are its holomorphic/antiholomorphic
/// fiber contractions, B the drift recovered from the theta* difference.
struct ProjectiveSample {
  WirtingerPoint point;
  cplx P{0, 0}, S{0, 0}, Q{0, 0};
  CVector B;
  CVector rapcsak_residual;  // condition (a), per r
  CVector change_residual;   // Gt - G - B - P eta
  double scale = 1;
};

struct ProjectiveReport {
  bool verdict = false;
  double tolerance = 1e-7;
  int samples = 0;
  int skipped = 0;
  /// Max relative residual per named condition.
  std::map<std::string, double> conditions;
  std::vector<ProjectiveSample> table;
  std::vector<SampleIssue> issues;

  double max_condition() const {
    double m = 0;
    for (const auto& [k, v] : conditions) m = std::max(m, v);
    return m;
  }
};

/// Unconditional spray identity: residual of
///   Gt^i - G^i - (1/2) gt^{rbar i}( d_rbar(delta_k Lt) eta^k
///                                   + 2 (d_rbar G^l)(d_l Lt) ).
/// Must vanish for every metric pair; the pipeline's strongest self-test.
CVector lemma33_residual(const MetricExpr& base, const MetricExpr& tilde, const WirtingerPoint& p);

/// Rapcsak-type decision for projective relatedness of two metrics sharing
/// a domain. Evaluates the endpoint identities, recovers P and B, and
/// cross-checks the projective change Gt = G + B + P eta.
ProjectiveReport rapcsak_check(const MetricExpr& base, const MetricExpr& tilde,
                               const SamplePlan& plan, double tolerance = 1e-7);

/// Specialization when the base is weakly Kaehler: tests that the tilde
/// metric is weakly Kaehler too and the reduced identity with
/// P = (1/(2Lt))(delta_k Lt) eta^k; includes (1,0)-homogeneity probes of P.
ProjectiveReport weakly_kahler_projective_check(const MetricExpr& base, const MetricExpr& tilde,
                                                const SamplePlan& plan, double tolerance = 1e-7);

/// Specialization when the base is generalized Berwald, in F-form; on a
/// true verdict additionally asserts the tilde metric is generalized
/// Berwald.
ProjectiveReport berwald_projective_check(const MetricExpr& base, const MetricExpr& tilde,
                                          const SamplePlan& plan, double tolerance = 1e-7);

/// Projective relatedness to the complex Euclidean metric on the metric's
/// own domain: theta* = 0 and G^i = (1/(2L))(dL/dz^k) eta^k eta^i; on a
/// true verdict asserts the generalized Berwald conclusion.
ProjectiveReport hilbert_check(const MetricExpr& tilde, const SamplePlan& plan,
                               double tolerance = 1e-7);

/// Randers-specific checks: the closed forms for (delta_k |beta|) eta^k and
/// theta*^i (d_i F) against the generic pipeline, the generalized Berwald
/// criterion, and both parts of the alpha-vs-F projectiveness theorem.
ProjectiveReport randers_projective_check(const RandersData& rd, const SamplePlan& plan,
                                          double tolerance = 1e-7);

/// Equivalence test on a domain D: (Euclid ~ F) iff (Euclid ~ alpha and F
/// complex Berwald); evaluates both sides and their agreement, plus the
/// spray-contraction consistency when the forward direction holds.
ProjectiveReport thm44_check(const RandersData& rd, const SamplePlan& plan,
                             double tolerance = 1e-7);

}  // namespace finsler
