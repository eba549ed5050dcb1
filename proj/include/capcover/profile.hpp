#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "capcover/rational.hpp"

namespace capcover {

/// Constant capacity `height` on the closed interval [a, b].
struct RectShape {
  Rational a, b, height;
};

enum class Slope { kRise, kFall };

/// Right triangle: rise gives slope*(x - a), fall gives slope*(b - x), both on [a, b].
struct TriangleShape {
  Rational a, b;
  Slope dir = Slope::kRise;
  Rational slope = 1;
};

/// Piecewise-linear capacity through `points` (x strictly increasing), zero outside.
struct PiecewiseShape {
  std::vector<std::pair<Rational, Rational>> points;
};

using Shape = std::variant<RectShape, TriangleShape, PiecewiseShape>;

/// Where a TRC piece came from: job id and trapezoid index.
struct Provenance {
  std::string job;
  int index = 0;
};

/// One linear piece y0 -> y1 over the closed interval [x0, x1].
struct Segment {
  Rational x0, y0, x1, y1;

  Rational at(const Rational& x) const;
};

/// A cost-weighted capacity function on an interval of the line.
struct Profile {
  std::string id;
  Shape shape;
  Rational cost;
  std::optional<Provenance> prov;

  Rational capacity(const Rational& x) const;
  Rational left() const;
  Rational right() const;
  /// Linear pieces covering the support, left to right.
  std::vector<Segment> segments() const;
  /// "rect", "tri" or "pwl".
  std::string kind() const;
  /// Largest capacity over the support.
  Rational peak() const;
};

Profile make_rect(std::string id, Rational a, Rational b, Rational height, Rational cost);
Profile make_triangle(std::string id, Rational a, Rational b, Slope dir, Rational cost, Rational slope = 1);

/// Throws InputError if the shape is malformed (b < a, negative capacity, unsorted points).
void validate(const Profile& profile);

}  // namespace capcover
