#include "finsler/expr.hpp"

#include <sstream>

namespace finsler {
namespace ex {

namespace {
ExprPtr make(Expr::Op op, ExprPtr a = nullptr, ExprPtr b = nullptr, int index = 0) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  e->index = index;
  return e;
}
bool cval(const ExprPtr& e, cplx& out) {
  if (e->op == Expr::Op::Const) {
    out = e->value;
    return true;
  }
  return false;
}
}  // namespace

ExprPtr constant(cplx v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Const;
  e->value = v;
  return e;
}

ExprPtr z(int i) { return make(Expr::Op::Z, nullptr, nullptr, i); }
ExprPtr zbar(int i) { return make(Expr::Op::Zbar, nullptr, nullptr, i); }
ExprPtr eta(int i) { return make(Expr::Op::Eta, nullptr, nullptr, i); }
ExprPtr etabar(int i) { return make(Expr::Op::Etabar, nullptr, nullptr, i); }

bool is_zero(const ExprPtr& e) { return e->op == Expr::Op::Const && e->value == cplx(0, 0); }
bool is_const(const ExprPtr& e, cplx v) { return e->op == Expr::Op::Const && e->value == v; }

ExprPtr add(ExprPtr a, ExprPtr b) {
  cplx x, y;
  if (cval(a, x) && cval(b, y)) return constant(x + y);
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return make(Expr::Op::Add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  cplx x, y;
  if (cval(a, x) && cval(b, y)) return constant(x - y);
  if (is_zero(b)) return a;
  if (is_zero(a)) return neg(std::move(b));
  return make(Expr::Op::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  cplx x, y;
  if (cval(a, x) && cval(b, y)) return constant(x * y);
  if (is_zero(a) || is_zero(b)) return constant(0);
  if (is_const(a, cplx(1, 0))) return b;
  if (is_const(b, cplx(1, 0))) return a;
  return make(Expr::Op::Mul, std::move(a), std::move(b));
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  cplx x, y;
  if (cval(a, x) && cval(b, y) && y != cplx(0, 0)) return constant(x / y);
  if (is_zero(a)) return constant(0);
  if (is_const(b, cplx(1, 0))) return a;
  return make(Expr::Op::Div, std::move(a), std::move(b));
}

ExprPtr neg(ExprPtr a) {
  cplx x;
  if (cval(a, x)) return constant(-x);
  return make(Expr::Op::Neg, std::move(a));
}

ExprPtr pow_int(ExprPtr a, int e) {
  if (e == 0) return constant(1);
  if (e == 1) return a;
  cplx x;
  if (cval(a, x)) return constant(std::pow(x, e));
  return make(Expr::Op::PowInt, std::move(a), nullptr, e);
}

ExprPtr sqrt(ExprPtr a) { return make(Expr::Op::Sqrt, std::move(a)); }
ExprPtr log(ExprPtr a) { return make(Expr::Op::Log, std::move(a)); }

ExprPtr conj(ExprPtr a) {
  cplx x;
  if (cval(a, x)) return constant(std::conj(x));
  switch (a->op) {
    case Expr::Op::Z: return zbar(a->index);
    case Expr::Op::Zbar: return z(a->index);
    case Expr::Op::Eta: return etabar(a->index);
    case Expr::Op::Etabar: return eta(a->index);
    case Expr::Op::Conj: return a->a;
    default: return make(Expr::Op::Conj, std::move(a));
  }
}

ExprPtr abs2(ExprPtr a) { return make(Expr::Op::Abs2, std::move(a)); }

namespace {

using DFun = ExprPtr (*)(const ExprPtr&, int);

ExprPtr derive(const ExprPtr& e, int k, Expr::Op var, DFun self, DFun mirror) {
  switch (e->op) {
    case Expr::Op::Const: return constant(0);
    case Expr::Op::Z:
    case Expr::Op::Zbar:
    case Expr::Op::Eta:
    case Expr::Op::Etabar:
      return constant(e->op == var && e->index == k ? 1 : 0);
    case Expr::Op::Add: return add(self(e->a, k), self(e->b, k));
    case Expr::Op::Sub: return sub(self(e->a, k), self(e->b, k));
    case Expr::Op::Mul: return add(mul(self(e->a, k), e->b), mul(e->a, self(e->b, k)));
    case Expr::Op::Div:
      return sub(div(self(e->a, k), e->b),
                 div(mul(e->a, self(e->b, k)), mul(e->b, e->b)));
    case Expr::Op::Neg: return neg(self(e->a, k));
    case Expr::Op::PowInt:
      return mul(constant(cplx(e->index, 0)),
                 mul(pow_int(e->a, e->index - 1), self(e->a, k)));
    case Expr::Op::Sqrt:
      return div(self(e->a, k), mul(constant(2), sqrt(e->a)));
    case Expr::Op::Log: return div(self(e->a, k), e->a);
    case Expr::Op::Conj: return conj(mirror(e->a, k));
    case Expr::Op::Abs2:  // f * conj(f)
      return add(mul(self(e->a, k), conj(e->a)), mul(e->a, conj(mirror(e->a, k))));
  }
  throw std::logic_error("derive: unhandled op");
}

}  // namespace

ExprPtr d_z(const ExprPtr& e, int k) { return derive(e, k, Expr::Op::Z, d_z, d_zbar); }
ExprPtr d_zbar(const ExprPtr& e, int k) { return derive(e, k, Expr::Op::Zbar, d_zbar, d_z); }
ExprPtr d_eta(const ExprPtr& e, int k) { return derive(e, k, Expr::Op::Eta, d_eta, d_etabar); }
ExprPtr d_etabar(const ExprPtr& e, int k) { return derive(e, k, Expr::Op::Etabar, d_etabar, d_eta); }

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  switch (e->op) {
    case Expr::Op::Const: {
      if (e->value.imag() == 0) os << e->value.real();
      else os << "(" << e->value.real() << "+" << e->value.imag() << "i)";
      break;
    }
    case Expr::Op::Z: os << "z[" << e->index + 1 << "]"; break;
    case Expr::Op::Zbar: os << "zbar[" << e->index + 1 << "]"; break;
    case Expr::Op::Eta: os << "eta[" << e->index + 1 << "]"; break;
    case Expr::Op::Etabar: os << "etabar[" << e->index + 1 << "]"; break;
    case Expr::Op::Add: os << "(" << to_string(e->a) << " + " << to_string(e->b) << ")"; break;
    case Expr::Op::Sub: os << "(" << to_string(e->a) << " - " << to_string(e->b) << ")"; break;
    case Expr::Op::Mul: os << "(" << to_string(e->a) << " * " << to_string(e->b) << ")"; break;
    case Expr::Op::Div: os << "(" << to_string(e->a) << " / " << to_string(e->b) << ")"; break;
    case Expr::Op::Neg: os << "(-" << to_string(e->a) << ")"; break;
    case Expr::Op::PowInt: os << to_string(e->a) << "^" << e->index; break;
    case Expr::Op::Sqrt: os << "sqrt(" << to_string(e->a) << ")"; break;
    case Expr::Op::Log: os << "log(" << to_string(e->a) << ")"; break;
    case Expr::Op::Conj: os << "conj(" << to_string(e->a) << ")"; break;
    case Expr::Op::Abs2: os << "abs2(" << to_string(e->a) << ")"; break;
  }
  return os.str();
}

}  // namespace ex

cplx eval_scalar(const ExprPtr& e, const CVector& z, const CVector& eta) {
  switch (e->op) {
    case Expr::Op::Const: return e->value;
    case Expr::Op::Z: return z[e->index];
    case Expr::Op::Zbar: return std::conj(z[e->index]);
    case Expr::Op::Eta: return eta[e->index];
    case Expr::Op::Etabar: return std::conj(eta[e->index]);
    case Expr::Op::Add: return eval_scalar(e->a, z, eta) + eval_scalar(e->b, z, eta);
    case Expr::Op::Sub: return eval_scalar(e->a, z, eta) - eval_scalar(e->b, z, eta);
    case Expr::Op::Mul: return eval_scalar(e->a, z, eta) * eval_scalar(e->b, z, eta);
    case Expr::Op::Div: {
      const cplx d = eval_scalar(e->b, z, eta);
      if (d == cplx(0, 0)) throw NumericError("expression division by zero");
      return eval_scalar(e->a, z, eta) / d;
    }
    case Expr::Op::Neg: return -eval_scalar(e->a, z, eta);
    case Expr::Op::PowInt: {
      const cplx b = eval_scalar(e->a, z, eta);
      return std::pow(b, e->index);
    }
    case Expr::Op::Sqrt: return std::sqrt(eval_scalar(e->a, z, eta));
    case Expr::Op::Log: return std::log(eval_scalar(e->a, z, eta));
    case Expr::Op::Conj: return std::conj(eval_scalar(e->a, z, eta));
    case Expr::Op::Abs2: {
      const cplx v = eval_scalar(e->a, z, eta);
      return v * std::conj(v);
    }
  }
  throw std::logic_error("eval_scalar: unhandled op");
}

JetValue eval_jet(const ExprPtr& e, const JetLayout& lay, const WirtingerPoint& p) {
  switch (e->op) {
    case Expr::Op::Const: return JetValue::constant(lay, e->value);
    case Expr::Op::Z: return JetValue::variable(lay, BaseDir::Z, e->index, p.z[e->index]);
    case Expr::Op::Zbar: return JetValue::variable(lay, BaseDir::Zbar, e->index, std::conj(p.z[e->index]));
    case Expr::Op::Eta: return JetValue::fiber_variable(lay, false, e->index, p.eta[e->index]);
    case Expr::Op::Etabar: return JetValue::fiber_variable(lay, true, e->index, std::conj(p.eta[e->index]));
    case Expr::Op::Add: return eval_jet(e->a, lay, p) + eval_jet(e->b, lay, p);
    case Expr::Op::Sub: return eval_jet(e->a, lay, p) - eval_jet(e->b, lay, p);
    case Expr::Op::Mul: return eval_jet(e->a, lay, p) * eval_jet(e->b, lay, p);
    case Expr::Op::Div: return eval_jet(e->a, lay, p) * eval_jet(e->b, lay, p).reciprocal();
    case Expr::Op::Neg: return -eval_jet(e->a, lay, p);
    case Expr::Op::PowInt: return eval_jet(e->a, lay, p).pow_int(e->index);
    case Expr::Op::Sqrt: return eval_jet(e->a, lay, p).sqrt_();
    case Expr::Op::Log: return eval_jet(e->a, lay, p).log_();
    case Expr::Op::Conj: return eval_jet(e->a, lay, p).conj_();
    case Expr::Op::Abs2: {
      JetValue v = eval_jet(e->a, lay, p);
      return v * v.conj_();
    }
  }
  throw std::logic_error("eval_jet: unhandled op");
}

}  // namespace finsler
