#pragma once

#include <array>
#include <memory>
#include <vector>

#include "finsler/types.hpp"

namespace finsler {

// Forward-mode jet arithmetic over the 4n Wirtinger directions
// (z, zbar, eta, etabar), each variable independent of its conjugate.
// Truncation: at most one base-direction factor (any z_k or zbar_k) and
// total fiber degree <= fiber_order. That covers every operator the tensor
// pipeline composes, up to one z-derivative of a third fiber derivative.

enum class BaseDir : std::uint8_t { None = 0, Z = 1, Zbar = 2 };

/// Derivative multi-index: one optional base direction plus a fiber
/// exponent vector over (eta_1..eta_n, etabar_1..etabar_n). All 0-based.
struct JetIndex {
  BaseDir base_kind = BaseDir::None;
  int base_index = -1;
  std::vector<std::uint8_t> fiber;  // size 2n

  static JetIndex zero(int n) {
    JetIndex ix;
    ix.fiber.assign(2 * static_cast<std::size_t>(n), 0);
    return ix;
  }
  JetIndex& z(int k) { base_kind = BaseDir::Z; base_index = k; return *this; }
  JetIndex& zbar(int k) { base_kind = BaseDir::Zbar; base_index = k; return *this; }
  JetIndex& eta(int k) { fiber[static_cast<std::size_t>(k)]++; return *this; }
  JetIndex& etabar(int k) { fiber[fiber.size() / 2 + static_cast<std::size_t>(k)]++; return *this; }

  int fiber_order() const {
    int s = 0;
    for (auto e : fiber) s += e;
    return s;
  }
  int total_order() const { return fiber_order() + (base_kind == BaseDir::None ? 0 : 1); }

  /// Swap each direction with its conjugate.
  JetIndex mirrored() const {
    JetIndex m = *this;
    if (base_kind == BaseDir::Z) m.base_kind = BaseDir::Zbar;
    else if (base_kind == BaseDir::Zbar) m.base_kind = BaseDir::Z;
    const std::size_t n = fiber.size() / 2;
    for (std::size_t k = 0; k < n; ++k) std::swap(m.fiber[k], m.fiber[n + k]);
    return m;
  }
};

/// Admitted index set for a jet evaluation.
struct JetSpec {
  int dim = 1;
  int fiber_order = 3;    // total fiber degree cap, 0..3
  bool with_base = true;  // include the 2n first-order base slots

  static JetSpec full(int n) { return JetSpec{n, 3, true}; }
  static JetSpec fiber_only(int n, int order) { return JetSpec{n, order, false}; }
  bool admits(const JetIndex& ix) const {
    if (ix.fiber_order() > fiber_order) return false;
    if (!with_base && ix.base_kind != BaseDir::None) return false;
    return true;
  }
};

/// Precomputed multiplication/mirror tables for one (dim, fiber_order).
/// Shared by every JetValue with the same shape.
class JetLayout {
 public:
  static const JetLayout& get(const JetSpec& spec);

  int dim() const { return dim_; }
  int fiber_order() const { return order_; }
  bool with_base() const { return with_base_; }
  int nfib() const { return static_cast<int>(fexp_.size()); }
  int slots() const { return with_base_ ? 1 + 2 * dim_ : 1; }
  int size() const { return slots() * nfib(); }

  const std::vector<std::uint8_t>& fiber_exponents(int i) const { return fexp_[static_cast<std::size_t>(i)]; }
  int fiber_index(const std::vector<std::uint8_t>& exps) const;  // -1 if not admitted
  int fiber_mirror(int i) const { return fmirror_[static_cast<std::size_t>(i)]; }
  double fiber_factorial(int i) const { return ffact_[static_cast<std::size_t>(i)]; }
  int fiber_degree(int i) const { return fdeg_[static_cast<std::size_t>(i)]; }
  /// Index of the product monomial, or -1 when truncated away.
  int fiber_product(int a, int b) const { return fprod_[static_cast<std::size_t>(a) * fexp_.size() + static_cast<std::size_t>(b)]; }

  int slot_of(BaseDir kind, int base_index) const;
  int slot_mirror(int s) const;

 private:
  JetLayout(int dim, int order, bool with_base);
  int dim_, order_;
  bool with_base_;
  std::vector<std::vector<std::uint8_t>> fexp_;
  std::vector<int> fmirror_, fdeg_;
  std::vector<double> ffact_;
  std::vector<int> fprod_;
  std::vector<int> key_to_index_;  // packed-exponent lookup
};

/// One element of the truncated jet algebra. Coefficients are Taylor
/// normalized internally (partial / multi-factorial); raw partials come out
/// of Jet::partial().
class JetValue {
 public:
  JetValue() : lay_(nullptr) {}
  explicit JetValue(const JetLayout& lay) : lay_(&lay), c_(static_cast<std::size_t>(lay.size()), cplx(0, 0)) {}

  static JetValue constant(const JetLayout& lay, cplx v);
  static JetValue variable(const JetLayout& lay, BaseDir family_base, int index, cplx value);
  // family_base: Z/Zbar for base variables; use make_fiber for eta/etabar.
  static JetValue fiber_variable(const JetLayout& lay, bool conjugated, int index, cplx value);

  const JetLayout& layout() const { return *lay_; }
  cplx value() const { return c_[0]; }
  cplx& at(int slot, int fib) { return c_[static_cast<std::size_t>(slot) * static_cast<std::size_t>(lay_->nfib()) + static_cast<std::size_t>(fib)]; }
  cplx at(int slot, int fib) const { return c_[static_cast<std::size_t>(slot) * static_cast<std::size_t>(lay_->nfib()) + static_cast<std::size_t>(fib)]; }

  JetValue& operator+=(const JetValue& o);
  JetValue& operator-=(const JetValue& o);
  friend JetValue operator+(JetValue a, const JetValue& b) { a += b; return a; }
  friend JetValue operator-(JetValue a, const JetValue& b) { a -= b; return a; }
  friend JetValue operator*(const JetValue& a, const JetValue& b);
  friend JetValue operator*(cplx s, JetValue a);
  JetValue operator-() const;

  JetValue reciprocal() const;
  JetValue sqrt_() const;
  JetValue log_() const;
  JetValue pow_int(int e) const;
  JetValue conj_() const;

 private:
  /// Compose an analytic function with this jet from the series
  /// coefficients of f around the jet's value (f(c0), f'(c0), f''(c0)/2!, ...).
  JetValue compose_series(const std::array<cplx, 5>& coeff) const;
  const JetLayout* lay_;
  std::vector<cplx> c_;
};

/// Public jet: raw mixed partial derivatives of a scalar function at a
/// point, indexed by JetIndex.
class Jet {
 public:
  Jet(WirtingerPoint center, JetSpec spec, JetValue values)
      : center_(std::move(center)), spec_(spec), values_(std::move(values)) {}

  const WirtingerPoint& center() const { return center_; }
  const JetSpec& spec() const { return spec_; }
  const JetValue& raw() const { return values_; }

  cplx value() const { return values_.value(); }
  /// Raw partial derivative (Taylor coefficient times multi-factorial).
  /// Throws on an index outside the jet's order spec.
  cplx partial(const JetIndex& ix) const;

 private:
  WirtingerPoint center_;
  JetSpec spec_;
  JetValue values_;
};

/// All indices of a spec, in a stable order (used by oracle sweeps).
std::vector<JetIndex> enumerate_indices(const JetSpec& spec);

}  // namespace finsler
