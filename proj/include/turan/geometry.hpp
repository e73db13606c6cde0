#pragma once

#include "turan/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace turan {

/// Boundary tolerance of the floating-point membership path.
inline constexpr double kGeomTolerance = 1e-12;

enum class SpaceKind { Euclidean, Torus };

/// A point of R^d or T^d: exact rational coordinates, or inexact reals that
/// may carry a user assertion of irrationality (needed for torus orbits).
class Point {
 public:
  Point() = default;
  static Point rational(std::vector<Rational> coords);
  static Point real(std::vector<double> coords, bool irrational = false);

  std::size_t dim() const { return approx_.size(); }
  bool is_exact() const { return exact_; }
  bool irrational() const { return irrational_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const std::vector<double>& approx() const { return approx_; }

  bool is_zero() const;
  Point negated() const;
  Point scaled(const Rational& factor) const;
  Point times(std::int64_t k) const;
  double norm2() const;
  std::string describe() const;

 private:
  bool exact_ = true;
  bool irrational_ = false;
  std::vector<Rational> coords_;
  std::vector<double> approx_;
};

/// p-norm selector; One, Two and Inf are handled exactly.
struct NormP {
  enum class Kind { One, Two, Inf, General } kind = Kind::Two;
  double p = 2.0;
  static NormP one() { return {Kind::One, 1.0}; }
  static NormP two() { return {Kind::Two, 2.0}; }
  static NormP inf() { return {Kind::Inf, 0.0}; }
  static NormP general(double p);
};

struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;

namespace shape {
struct LpBall {
  NormP p;
  Rational radius;
  std::vector<Rational> center;
};
struct Box {
  std::vector<Rational> halfwidth;
  std::vector<Rational> center;
};
/// Intersection of the slabs |<normal_i, x>| < bound_i.
struct Polytope {
  std::vector<std::vector<Rational>> normals;
  std::vector<Rational> bounds;
};
struct Union {
  std::vector<ShapePtr> children;
};
struct Intersection {
  std::vector<ShapePtr> children;
};
struct Translate {
  std::vector<Rational> offset;
  ShapePtr child;
};
/// factor * child.
struct Scale {
  Rational factor;
  ShapePtr child;
};
/// -child.
struct Reflect {
  ShapePtr child;
};
}  // namespace shape

struct Shape {
  std::variant<shape::LpBall, shape::Box, shape::Polytope, shape::Union, shape::Intersection, shape::Translate,
               shape::Scale, shape::Reflect>
      node;
};

ShapePtr make_ball(NormP p, Rational radius, std::vector<Rational> center);
ShapePtr make_box(std::vector<Rational> halfwidth, std::vector<Rational> center = {});
ShapePtr make_polytope(std::vector<std::vector<Rational>> normals, std::vector<Rational> bounds);
ShapePtr make_union(std::vector<ShapePtr> children);
ShapePtr make_intersection(std::vector<ShapePtr> children);
ShapePtr make_translate(std::vector<Rational> offset, ShapePtr child);
ShapePtr make_scale(Rational factor, ShapePtr child);
ShapePtr make_reflect(ShapePtr child);

struct Membership {
  bool inside = false;
  /// Set when the decision came from the float path within kGeomTolerance of
  /// a boundary.
  bool boundary_ambiguous = false;
};

/// Axis-aligned box [lo, hi] containing the shape (entries may be +-inf).
struct BoundingBox {
  std::vector<double> lo, hi;
};

/// Open set in R^d or T^d described by a CSG tree. Torus coordinates are
/// reduced to [-1/2, 1/2) before testing, and torus shapes must fit in that
/// cube.
class Domain {
 public:
  Domain(SpaceKind space, std::size_t dim, ShapePtr shape);

  SpaceKind space() const { return space_; }
  std::size_t dim() const { return dim_; }
  const ShapePtr& shape() const { return shape_; }
  bool is_torus() const { return space_ == SpaceKind::Torus; }

  Membership membership(const Point& x) const;
  bool contains(const Point& x) const { return membership(x).inside; }

  /// Omega intersected with -Omega.
  Domain symmetrize() const;
  /// factor * Omega, in the given ambient space.
  Domain scaled(const Rational& factor, SpaceKind space) const;
  Domain as_space(SpaceKind space) const;

  BoundingBox bounding_box() const;
  /// R with Omega inside the closed Euclidean ball B_R; throws when the
  /// shape is unbounded.
  double bounding_radius() const;

  /// Lower bound on the Euclidean distance from x to the complement of the
  /// shape (<= 0 when x lies outside). Torus points are reduced first.
  double interior_radius(const std::vector<double>& x) const;

 private:
  SpaceKind space_;
  std::size_t dim_;
  ShapePtr shape_;
};

struct NormValue {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// Minkowski functional of a symmetric convex primitive centred at 0.
/// Throws std::invalid_argument for any other shape.
NormValue minkowski_norm(const Domain& omega, const Point& z);

struct FiniteOrbit {
  std::int64_t m = 1;
};
struct InfiniteOrbit {};
using OrbitInfo = std::variant<FiniteOrbit, InfiniteOrbit>;

/// Size of {n z mod T^d}: lcm of the reduced denominators for rational z,
/// infinite when the irrationality flag is set.
OrbitInfo orbit(const Point& z);

struct SpaceIndices {
  std::vector<std::int64_t> indices;
  std::int64_t enumeration_cap = 0;
  bool boundary_ambiguous = false;
};

/// {k >= 2 : kz in Omega and -kz in Omega}, complete up to the cap
/// ceil(R / |z|) + 1.
SpaceIndices compute_H_space(const Domain& omega, const Point& z);

struct TrivialZero {
  std::string reason;
};
struct TorusIndices {
  std::vector<std::int64_t> indices;
  OrbitInfo orbit;
  /// 0 when exact (finite orbit); otherwise the truncation point N_max.
  std::int64_t truncated_at = 0;
  bool boundary_ambiguous = false;
};
using TorusHResult = std::variant<TrivialZero, TorusIndices>;

/// H_m(Omega, z) = {k in [2, m/2] : +-kz in Omega mod T^d} for a finite
/// orbit; for an infinite orbit the truncation to [2, n_max].
TorusHResult compute_H_torus(const Domain& omega, const Point& z, std::int64_t n_max);

}  // namespace turan
