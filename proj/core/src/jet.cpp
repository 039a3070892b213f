#include "finsler/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace finsler {

namespace {

// Packed key for a fiber exponent vector; each exponent <= 3 fits two bits.
int pack_key(const std::vector<std::uint8_t>& exps) {
  int key = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) key |= static_cast<int>(exps[v]) << (2 * v);
  return key;
}

void enumerate_rec(std::vector<std::uint8_t>& cur, std::size_t pos, int remaining,
                   std::vector<std::vector<std::uint8_t>>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = static_cast<std::uint8_t>(e);
    enumerate_rec(cur, pos + 1, remaining - e, out);
  }
  cur[pos] = 0;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

JetLayout::JetLayout(int dim, int order, bool with_base)
    : dim_(dim), order_(order), with_base_(with_base) {
  if (dim < 1 || order < 0 || order > 3)
    throw std::invalid_argument("JetLayout: dim >= 1 and fiber order in [0,3] required");
  std::vector<std::uint8_t> cur(2 * static_cast<std::size_t>(dim), 0);
  enumerate_rec(cur, 0, order, fexp_);
  // sort by (degree, packed key) so index 0 is the constant term
  std::sort(fexp_.begin(), fexp_.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return pack_key(a) < pack_key(b);
  });

  key_to_index_.assign(static_cast<std::size_t>(1) << (2 * 2 * dim), -1);
  for (std::size_t i = 0; i < fexp_.size(); ++i) key_to_index_[static_cast<std::size_t>(pack_key(fexp_[i]))] = static_cast<int>(i);

  const std::size_t m = fexp_.size();
  fmirror_.resize(m);
  fdeg_.resize(m);
  ffact_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::uint8_t> mir(fexp_[i]);
    for (int k = 0; k < dim; ++k) std::swap(mir[static_cast<std::size_t>(k)], mir[static_cast<std::size_t>(dim + k)]);
    fmirror_[i] = key_to_index_[static_cast<std::size_t>(pack_key(mir))];
    int d = 0;
    double f = 1;
    for (auto e : fexp_[i]) {
      d += e;
      f *= factorial(e);
    }
    fdeg_[i] = d;
    ffact_[i] = f;
  }
  fprod_.assign(m * m, -1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (fdeg_[a] + fdeg_[b] > order_) continue;
      std::vector<std::uint8_t> s(fexp_[a]);
      for (std::size_t v = 0; v < s.size(); ++v) s[v] = static_cast<std::uint8_t>(s[v] + fexp_[b][v]);
      fprod_[a * m + b] = key_to_index_[static_cast<std::size_t>(pack_key(s))];
    }
}

int JetLayout::fiber_index(const std::vector<std::uint8_t>& exps) const {
  if (exps.size() != static_cast<std::size_t>(2 * dim_)) return -1;
  int deg = 0;
  for (auto e : exps) deg += e;
  if (deg > order_) return -1;
  return key_to_index_[static_cast<std::size_t>(pack_key(exps))];
}

int JetLayout::slot_of(BaseDir kind, int base_index) const {
  if (kind == BaseDir::None) return 0;
  if (!with_base_ || base_index < 0 || base_index >= dim_) return -1;
  return kind == BaseDir::Z ? 1 + base_index : 1 + dim_ + base_index;
}

int JetLayout::slot_mirror(int s) const {
  if (s == 0) return 0;
  return s <= dim_ ? s + dim_ : s - dim_;
}

const JetLayout& JetLayout::get(const JetSpec& spec) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, bool>, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(spec.dim, spec.fiber_order, spec.with_base);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<JetLayout>(new JetLayout(spec.dim, spec.fiber_order, spec.with_base))).first;
  return *it->second;
}

JetValue JetValue::constant(const JetLayout& lay, cplx v) {
  JetValue j(lay);
  j.c_[0] = v;
  return j;
}

JetValue JetValue::variable(const JetLayout& lay, BaseDir family_base, int index, cplx value) {
  JetValue j(lay);
  j.c_[0] = value;
  const int s = lay.slot_of(family_base, index);
  if (s > 0) j.at(s, 0) = cplx(1, 0);
  // without base slots the first-order term is truncated away, by design
  return j;
}

JetValue JetValue::fiber_variable(const JetLayout& lay, bool conjugated, int index, cplx value) {
  JetValue j(lay);
  j.c_[0] = value;
  if (lay.fiber_order() >= 1) {
    std::vector<std::uint8_t> e(2 * static_cast<std::size_t>(lay.dim()), 0);
    e[static_cast<std::size_t>(index) + (conjugated ? static_cast<std::size_t>(lay.dim()) : 0)] = 1;
    j.at(0, lay.fiber_index(e)) = cplx(1, 0);
  }
  return j;
}

JetValue& JetValue::operator+=(const JetValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

JetValue& JetValue::operator-=(const JetValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

JetValue operator*(const JetValue& a, const JetValue& b) {
  const JetLayout& lay = *a.lay_;
  const int m = lay.nfib();
  JetValue out(lay);
  auto conv = [&](const cplx* f, const cplx* g, cplx* dst) {
    for (int i = 0; i < m; ++i) {
      const cplx fi = f[i];
      if (fi == cplx(0, 0)) continue;
      for (int j = 0; j < m; ++j) {
        const int t = lay.fiber_product(i, j);
        if (t >= 0) dst[t] += fi * g[j];
      }
    }
  };
  const cplx* a0 = a.c_.data();
  const cplx* b0 = b.c_.data();
  conv(a0, b0, out.c_.data());
  for (int s = 1; s < lay.slots(); ++s) {
    cplx* dst = out.c_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(m);
    conv(a.c_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(m), b0, dst);
    conv(a0, b.c_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(m), dst);
  }
  return out;
}

JetValue operator*(cplx s, JetValue a) {
  for (auto& v : a.c_) v *= s;
  return a;
}

JetValue JetValue::operator-() const {
  JetValue out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

JetValue JetValue::compose_series(const std::array<cplx, 5>& coeff) const {
  const JetLayout& lay = *lay_;
  JetValue u = *this;
  u.c_[0] = cplx(0, 0);
  JetValue acc = JetValue::constant(lay, coeff[0]);
  const int maxdeg = lay.fiber_order() + (lay.with_base() ? 1 : 0);
  JetValue upow = u;
  for (int k = 1; k <= maxdeg && k <= 4; ++k) {
    if (k > 1) upow = upow * u;
    acc += coeff[static_cast<std::size_t>(k)] * upow;
  }
  return acc;
}

JetValue JetValue::reciprocal() const {
  const cplx c0 = c_[0];
  if (std::abs(c0) < 1e-300) throw NumericError("jet reciprocal: value at center is zero");
  const cplx i0 = cplx(1, 0) / c0;
  return compose_series({i0, -i0 * i0, i0 * i0 * i0, -i0 * i0 * i0 * i0, i0 * i0 * i0 * i0 * i0});
}

JetValue JetValue::sqrt_() const {
  const cplx c0 = c_[0];
  if (std::abs(c0) < 1e-12) throw NumericError("jet sqrt: value at center below 1e-12 guard");
  const cplx s = std::sqrt(c0);
  const cplx i0 = cplx(1, 0) / c0;
  // sqrt(c0) * binom(1/2, k) / c0^k
  return compose_series({s, 0.5 * s * i0, -0.125 * s * i0 * i0, 0.0625 * s * i0 * i0 * i0,
                         -(5.0 / 128.0) * s * i0 * i0 * i0 * i0});
}

JetValue JetValue::log_() const {
  const cplx c0 = c_[0];
  if (std::abs(c0) < 1e-12) throw NumericError("jet log: value at center below 1e-12 guard");
  const cplx i0 = cplx(1, 0) / c0;
  return compose_series({std::log(c0), i0, -0.5 * i0 * i0, (1.0 / 3.0) * i0 * i0 * i0,
                         -0.25 * i0 * i0 * i0 * i0});
}

JetValue JetValue::pow_int(int e) const {
  if (e < 0) return pow_int(-e).reciprocal();
  JetValue acc = JetValue::constant(*lay_, cplx(1, 0));
  JetValue base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

JetValue JetValue::conj_() const {
  const JetLayout& lay = *lay_;
  const int m = lay.nfib();
  JetValue out(lay);
  for (int s = 0; s < lay.slots(); ++s) {
    const int sm = lay.slot_mirror(s);
    for (int i = 0; i < m; ++i) out.at(s, i) = std::conj(at(sm, lay.fiber_mirror(i)));
  }
  return out;
}

cplx Jet::partial(const JetIndex& ix) const {
  if (!spec_.admits(ix))
    throw std::out_of_range("Jet::partial: index outside the jet's order spec");
  const JetLayout& lay = values_.layout();
  const int fib = lay.fiber_index(ix.fiber);
  const int slot = lay.slot_of(ix.base_kind, ix.base_index);
  if (fib < 0 || slot < 0)
    throw std::out_of_range("Jet::partial: index not representable in layout");
  return values_.at(slot, fib) * lay.fiber_factorial(fib);
}

std::vector<JetIndex> enumerate_indices(const JetSpec& spec) {
  const JetLayout& lay = JetLayout::get(spec);
  std::vector<JetIndex> out;
  for (int s = 0; s < lay.slots(); ++s) {
    for (int f = 0; f < lay.nfib(); ++f) {
      JetIndex ix = JetIndex::zero(spec.dim);
      if (s > 0) {
        if (s <= spec.dim) ix.z(s - 1);
        else ix.zbar(s - 1 - spec.dim);
      }
      ix.fiber = lay.fiber_exponents(f);
      out.push_back(std::move(ix));
    }
  }
  return out;
}

}  // namespace finsler
