#pragma once

#include "turan/geometry.hpp"
#include "turan/trig_poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace turan {

/// Normalized self-convolution of the indicator of B_{radius/2} in R^d:
/// value 1 at 0, supported in the closed ball of the given radius.
struct BumpFunction {
  double radius = 1.0;
  std::size_t dim = 1;

  /// Value at distance s from the centre.
  double at_distance(double s) const;
  /// Fourier transform at |xi| (a squared magnitude, hence >= 0).
  double transform(double xi_norm) const;
};

double triangle_eval(const BumpFunction& bump, const std::vector<double>& x);

struct Atom {
  std::vector<double> location;
  double weight = 0.0;
  /// The multiple k with location = k z (mod T^d in torus mode).
  std::int64_t multiple = 0;
};

/// f = alpha_z * Delta_eps for the atomic measure alpha_z built from phi.
class ExtremalFunction {
 public:
  ExtremalFunction(SpaceKind space, std::vector<Atom> atoms, BumpFunction bump, CosinePolynomial phi,
                   std::optional<std::int64_t> orbit_size);

  double operator()(const std::vector<double>& x) const;

  SpaceKind space() const { return space_; }
  std::size_t dim() const { return bump_.dim; }
  double epsilon() const { return bump_.radius; }
  const BumpFunction& bump() const { return bump_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const CosinePolynomial& phi() const { return phi_; }
  std::optional<std::int64_t> orbit_size() const { return orbit_size_; }

  /// Transform of the atomic measure at xi: sum_a w_a exp(-2 pi i <x_a, xi>).
  std::pair<double, double> measure_transform(const std::vector<double>& xi) const;

  /// Copy with atoms_[index].weight increased by delta.
  ExtremalFunction perturbed(std::size_t index, double delta) const;
  /// Index of the atom at multiple k (throws if absent).
  std::size_t atom_at(std::int64_t k) const;

 private:
  double distance(const std::vector<double>& a, const std::vector<double>& b) const;

  SpaceKind space_;
  std::vector<Atom> atoms_;
  BumpFunction bump_;
  CosinePolynomial phi_;
  std::optional<std::int64_t> orbit_size_;
};

struct Construction {
  ExtremalFunction f;
  double epsilon = 0.0;
  double min_separation = 0.0;  // smallest pairwise atom distance
  double min_interior = 0.0;    // smallest interior radius at an atom
};

/// Builds alpha_z * Delta_eps from a nonnegative phi (grid-nonnegative on the
/// orbit in the finite torus case). epsilon defaults to 0.9 times the binding
/// separation / containment constraint; an explicit value must not exceed it.
Construction build_extremal_function(const Domain& omega, const Point& z, const CosinePolynomial& phi,
                                     std::optional<double> epsilon = std::nullopt);

struct Check {
  std::string name;
  bool passed = false;
  /// Largest deviation seen (absolute error, or most negative value for (d)).
  double worst = 0.0;
  std::size_t samples = 0;
  std::vector<std::string> violations;
};

struct VerifyReport {
  Check value_at_zero, value_at_z, support, positive_definite;
  bool passed() const {
    return value_at_zero.passed && value_at_z.passed && support.passed && positive_definite.passed;
  }
};

/// Lattice scaled to 1/eps plus seeded random draws (integer vectors in torus
/// mode).
std::vector<std::vector<double>> default_frequencies(const ExtremalFunction& f, std::uint64_t seed = 7);

VerifyReport verify_function(const ExtremalFunction& f, const Domain& omega, const Point& z, double expected,
                             const std::vector<std::vector<double>>& xi, std::uint64_t seed = 11);

/// (t, f(from + t (to - from))) for count evenly spaced t in [0, 1].
std::vector<std::pair<double, double>> sample_section(const ExtremalFunction& f, const std::vector<double>& from,
                                                      const std::vector<double>& to, std::size_t count);

}  // namespace turan
