#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace finsler {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Point on the punctured holomorphic tangent bundle: base coordinates z
/// and fiber coordinates eta. Conjugates are implied, never stored.
struct WirtingerPoint {
  CVector z;
  CVector eta;

  WirtingerPoint() = default;
  WirtingerPoint(CVector z_, CVector eta_) : z(std::move(z_)), eta(std::move(eta_)) {
    if (z.size() < 1 || z.size() != eta.size())
      throw std::invalid_argument("WirtingerPoint: dimensions must match and be >= 1");
  }
  int dim() const { return static_cast<int>(z.size()); }
  bool fiber_nonzero(double tol = 0.0) const { return eta.norm() > tol; }
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(column_) + ")"),
        line(line_), column(column_) {}
};

/// Deterministic RNG: std::mt19937_64 bit stream with hand-rolled
/// distributions so that sample plans are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t bits() { return state_(); }

  double uniform01() {  // [0, 1)
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline double rel_residual(double err, double scale) {
  return err / std::max(1.0, scale);
}

}  // namespace finsler
