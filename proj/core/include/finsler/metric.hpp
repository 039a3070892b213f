#pragma once

#include <map>
#include <optional>
#include <string>

#include "finsler/domain.hpp"
#include "finsler/expr.hpp"
#include "finsler/jet.hpp"

namespace finsler {

enum class MetricForm { L, F };  // body is L = F^2 or F itself

/// Evaluable metric definition: an expression body over (z, zbar, eta,
/// etabar), its domain, and the form tag. Immutable once constructed;
/// construction runs a numeric homogeneity probe (warns, does not reject).
class MetricExpr {
 public:
  MetricExpr(std::string name, int dim, MetricForm form, Domain domain, ExprPtr body,
             std::map<std::string, double> params = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  MetricForm form() const { return form_; }
  const Domain& domain() const { return domain_; }
  const ExprPtr& body() const { return body_; }
  const std::map<std::string, double>& params() const { return params_; }

  bool homogeneity_ok() const { return homogeneity_ok_; }
  double homogeneity_deviation() const { return homogeneity_dev_; }

  /// Optional evaluability guard: samples where guard() falls below the
  /// cutoff are skipped downstream (Randers |beta| cutoff).
  void set_guard(ExprPtr guard, double cutoff) { guard_ = std::move(guard); guard_cutoff_ = cutoff; }
  bool sample_ok(const WirtingerPoint& p) const;

  void require_in_domain(const WirtingerPoint& p) const;

  /// Value of the body at a point (domain checked).
  cplx value(const WirtingerPoint& p) const;
  /// L(z, eta): squares the body when the metric is in F form.
  double L_value(const WirtingerPoint& p) const;

  /// Jet of the body as written (the fd oracle differentiates the same body).
  Jet jet(const WirtingerPoint& p, const JetSpec& spec) const;
  /// Jet of L = F^2 regardless of form.
  JetValue L_jet(const WirtingerPoint& p, const JetLayout& lay) const;
  /// Jet of F = sqrt(L) regardless of form.
  JetValue F_jet(const WirtingerPoint& p, const JetLayout& lay) const;

 private:
  std::string name_;
  int dim_;
  MetricForm form_;
  Domain domain_;
  ExprPtr body_;
  std::map<std::string, double> params_;
  ExprPtr guard_;
  double guard_cutoff_ = 0.0;
  bool homogeneity_ok_ = true;
  double homogeneity_dev_ = 0.0;
};

}  // namespace finsler
