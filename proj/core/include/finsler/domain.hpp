#pragma once

#include <optional>
#include <string>

#include "finsler/types.hpp"

namespace finsler {

/// Base-space domain predicate with a deterministic sampler over a shrunk
/// copy (classification and projective checks stay away from boundaries).
struct Domain {
  enum class Kind { All, Ball, Polydisc, Hartogs };
  Kind kind = Kind::All;
  double radius = 1.0;              // Ball
  std::vector<double> radii;        // Polydisc
  static constexpr double kMargin = 1e-9;

  static Domain all() { return Domain{}; }
  static Domain ball(double r) { return Domain{Kind::Ball, r, {}}; }
  static Domain polydisc(std::vector<double> rs) { return Domain{Kind::Polydisc, 1.0, std::move(rs)}; }
  static Domain hartogs() { return Domain{Kind::Hartogs, 1.0, {}}; }

  bool contains(const CVector& z, double margin = kMargin) const;
  /// Draw a base point from a `shrink`-scaled copy of the domain.
  CVector sample(Rng& rng, int dim, double shrink) const;

  std::string describe() const;
  static std::optional<Domain> parse(const std::string& text);
};

}  // namespace finsler
