#pragma once

#include <memory>
#include <string>

#include "finsler/jet.hpp"
#include "finsler/types.hpp"

namespace finsler {

// Closed-form expression trees over the symbols z[i], zbar[i], eta[i],
// etabar[i]. The same tree evaluates over plain complex scalars (point
// evaluation, finite-difference stencils) and over JetValue (forward-mode
// derivatives). Conjugate symbols are independent during differentiation;
// conj() swaps the symbol families.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op {
    Const, Z, Zbar, Eta, Etabar,
    Add, Sub, Mul, Div, Neg,
    PowInt, Sqrt, Log, Conj, Abs2
  };
  Op op;
  cplx value{0, 0};  // Const
  int index = 0;     // variable index (0-based) or PowInt exponent
  ExprPtr a, b;
};

namespace ex {

ExprPtr constant(cplx v);
ExprPtr z(int i);
ExprPtr zbar(int i);
ExprPtr eta(int i);
ExprPtr etabar(int i);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr pow_int(ExprPtr a, int e);
ExprPtr sqrt(ExprPtr a);
ExprPtr log(ExprPtr a);
ExprPtr conj(ExprPtr a);
ExprPtr abs2(ExprPtr a);

bool is_zero(const ExprPtr& e);
bool is_const(const ExprPtr& e, cplx v);

/// Symbolic Wirtinger derivatives; conjugate symbols are independent.
ExprPtr d_z(const ExprPtr& e, int k);
ExprPtr d_zbar(const ExprPtr& e, int k);
ExprPtr d_eta(const ExprPtr& e, int k);
ExprPtr d_etabar(const ExprPtr& e, int k);

std::string to_string(const ExprPtr& e);

}  // namespace ex

/// Plain scalar evaluation with zbar/etabar bound to conjugates of z/eta.
cplx eval_scalar(const ExprPtr& e, const CVector& z, const CVector& eta);

/// Forward-mode evaluation: returns the truncated jet of the expression.
JetValue eval_jet(const ExprPtr& e, const JetLayout& lay, const WirtingerPoint& p);

}  // namespace finsler
