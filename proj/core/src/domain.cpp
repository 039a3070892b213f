#include "finsler/domain.hpp"

#include <sstream>

namespace finsler {

bool Domain::contains(const CVector& z, double margin) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Ball:
      return z.norm() < radius - margin;
    case Kind::Polydisc: {
      for (int k = 0; k < z.size(); ++k) {
        const double r = k < static_cast<int>(radii.size()) ? radii[static_cast<std::size_t>(k)] : 1.0;
        if (std::abs(z[k]) >= r - margin) return false;
      }
      return true;
    }
    case Kind::Hartogs: {
      if (z.size() != 2) return false;
      const double az = std::abs(z[0]), aw = std::abs(z[1]);
      return aw + margin < az && az + margin < 1.0;
    }
  }
  return false;
}

namespace {
CVector sample_ball(Rng& rng, int dim, double r) {
  // uniform direction, radius by the 2n-th root for uniform volume
  CVector v(dim);
  double norm2 = 0;
  for (int k = 0; k < dim; ++k) {
    const double re = rng.gaussian(), im = rng.gaussian();
    v[k] = cplx(re, im);
    norm2 += re * re + im * im;
  }
  const double norm = std::sqrt(norm2);
  const double rad = r * std::pow(rng.uniform01(), 1.0 / (2.0 * dim));
  return (rad / norm) * v;
}
}  // namespace

CVector Domain::sample(Rng& rng, int dim, double shrink) const {
  switch (kind) {
    case Kind::All:
      return sample_ball(rng, dim, shrink * 1.0);
    case Kind::Ball:
      return sample_ball(rng, dim, shrink * radius);
    case Kind::Polydisc: {
      CVector v(dim);
      for (int k = 0; k < dim; ++k) {
        const double r = k < static_cast<int>(radii.size()) ? radii[static_cast<std::size_t>(k)] : 1.0;
        const double rad = shrink * r * std::sqrt(rng.uniform01());
        const double ph = rng.uniform(0, 2 * 3.14159265358979323846);
        v[k] = std::polar(rad, ph);
      }
      return v;
    }
    case Kind::Hartogs: {
      // |z| in [0.2, shrink], |w| <= shrink*|z|: shrinks both constraints and
      // keeps an inner radius floor (the metric degenerates as z -> 0 and
      // |w| -> |z|).
      if (dim != 2) throw DomainError("Hartogs domain requires dimension 2");
      const double rz = rng.uniform(0.2, shrink);
      const double t = rng.uniform(0.0, shrink);
      const double pz = rng.uniform(0, 2 * 3.14159265358979323846);
      const double pw = rng.uniform(0, 2 * 3.14159265358979323846);
      CVector v(2);
      v[0] = std::polar(rz, pz);
      v[1] = std::polar(t * rz, pw);
      return v;
    }
  }
  throw DomainError("unknown domain kind");
}

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::All: os << "C^n"; break;
    case Kind::Ball: os << "ball " << radius; break;
    case Kind::Polydisc: {
      os << "polydisc";
      for (double r : radii) os << " " << r;
      break;
    }
    case Kind::Hartogs: os << "hartogs"; break;
  }
  return os.str();
}

std::optional<Domain> Domain::parse(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  is >> head;
  if (head == "C^n" || head == "all" || head == "Cn") return all();
  if (head == "ball") {
    double r = 1.0;
    if (is >> r) return ball(r);
    return ball(1.0);
  }
  if (head == "polydisc") {
    std::vector<double> rs;
    double r;
    while (is >> r) rs.push_back(r);
    return polydisc(std::move(rs));
  }
  if (head == "hartogs") return hartogs();
  return std::nullopt;
}

}  // namespace finsler
