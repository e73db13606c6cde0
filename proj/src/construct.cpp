#include "turan/construct.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace turan {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double v) { return v - std::floor(v + 0.5); }

double ball_volume(std::size_t d, double r) {
  const double h = 0.5 * static_cast<double>(d);
  return std::pow(kPi, h) * std::pow(r, static_cast<double>(d)) / boost::math::tgamma(h + 1.0);
}

std::string vec_str(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

double BumpFunction::at_distance(double s) const {
  s = std::abs(s);
  if (s >= radius) return 0.0;
  const double u = s / radius;
  if (dim == 1) return 1.0 - u;
  // Lens of two balls of radius r = radius / 2 at distance s, relative to one
  // ball: I_{1 - (s/2r)^2}((d+1)/2, 1/2).
  return boost::math::ibeta(0.5 * static_cast<double>(dim + 1), 0.5, 1.0 - u * u);
}

double BumpFunction::transform(double xi_norm) const {
  const double r = 0.5 * radius;
  const double vol = ball_volume(dim, r);
  if (xi_norm == 0.0) return vol;
  const double h = 0.5 * static_cast<double>(dim);
  const double x = 2.0 * kPi * r * xi_norm;
  // Indicator transform: |B_r| Gamma(d/2+1) (x/2)^(-d/2) J_{d/2}(x).
  const double chi = vol * boost::math::tgamma(h + 1.0) * std::pow(0.5 * x, -h) * boost::math::cyl_bessel_j(h, x);
  return chi * chi / vol;
}

double triangle_eval(const BumpFunction& bump, const std::vector<double>& x) {
  if (x.size() != bump.dim) throw std::invalid_argument("point dimension differs from bump dimension");
  double s = 0.0;
  for (double v : x) s += v * v;
  return bump.at_distance(std::sqrt(s));
}

ExtremalFunction::ExtremalFunction(SpaceKind space, std::vector<Atom> atoms, BumpFunction bump, CosinePolynomial phi,
                                   std::optional<std::int64_t> orbit_size)
    : space_(space), atoms_(std::move(atoms)), bump_(bump), phi_(std::move(phi)), orbit_size_(orbit_size) {}

double ExtremalFunction::distance(const std::vector<double>& a, const std::vector<double>& b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (space_ == SpaceKind::Torus) d = wrap(d);
    s += d * d;
  }
  return std::sqrt(s);
}

double ExtremalFunction::operator()(const std::vector<double>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("point dimension differs from function dimension");
  double s = 0.0;
  for (const auto& a : atoms_) {
    const double v = bump_.at_distance(distance(x, a.location));
    if (v != 0.0) s += a.weight * v;
  }
  return s;
}

std::pair<double, double> ExtremalFunction::measure_transform(const std::vector<double>& xi) const {
  double re = 0.0, im = 0.0;
  for (const auto& a : atoms_) {
    double t = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) t += a.location[i] * xi[i];
    t = wrap(t);
    re += a.weight * std::cos(2.0 * kPi * t);
    im -= a.weight * std::sin(2.0 * kPi * t);
  }
  return {re, im};
}

ExtremalFunction ExtremalFunction::perturbed(std::size_t index, double delta) const {
  if (index >= atoms_.size()) throw std::out_of_range("atom index");
  ExtremalFunction copy = *this;
  copy.atoms_[index].weight += delta;
  return copy;
}

std::size_t ExtremalFunction::atom_at(std::int64_t k) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].multiple == k) return i;
  }
  throw std::out_of_range("no atom at multiple " + std::to_string(k));
}

Construction build_extremal_function(const Domain& omega, const Point& z, const CosinePolynomial& phi_in,
                                     std::optional<double> epsilon) {
  if (z.dim() != omega.dim()) throw std::invalid_argument("point dimension differs from domain dimension");
  if (z.is_zero()) throw std::invalid_argument("z = 0 gives coincident atoms");
  if (!(phi_in.constant() > 0.0)) throw std::invalid_argument("phi needs a positive constant term");
  const CosinePolynomial phi = phi_in.shifted_normalized(0.0);
  const bool torus = omega.is_torus();

  std::optional<std::int64_t> m;
  if (torus) {
    const OrbitInfo info = orbit(z);
    if (const auto* fin = std::get_if<FiniteOrbit>(&info)) m = fin->m;
  }

  // Feasibility of phi: nonnegative on the circle, or on the orbit grid.
  if (m) {
    const auto v = grid_values(phi, *m);
    const double low = *std::min_element(v.begin(), v.end());
    if (low < -1e-9) throw std::invalid_argument("phi is negative on the grid j/" + std::to_string(*m));
  } else {
    const MinBound mb = certified_min(phi, std::max<std::int64_t>(1 << 14, 8 * phi.degree()), 1e-12);
    if (mb.certified_lower < -1e-9) throw std::invalid_argument("phi is not nonnegative");
  }

  std::vector<Atom> atoms;
  auto add = [&](std::int64_t k, double w) {
    Point p = z.times(k);
    if (!omega.contains(p)) throw std::invalid_argument("atom " + std::to_string(k) + "z lies outside the domain");
    std::vector<double> loc = p.approx();
    if (torus) {
      for (auto& v : loc) v = wrap(v);
    }
    atoms.push_back({std::move(loc), w, k});
  };
  // c_k/2 at +-kz; on an even orbit m z/2 = -m z/2, so that atom carries c_{m/2}.
  auto add_pair = [&](std::int64_t k, double c) {
    if (m && 2 * k > *m) throw std::invalid_argument("spectrum exceeds m/2 for a finite orbit");
    if (m && 2 * k == *m) {
      add(k, c);
      return;
    }
    add(k, 0.5 * c);
    add(-k, 0.5 * c);
  };
  add(0, 1.0);
  add_pair(1, phi.lambda());
  for (std::int64_t k : phi.spectrum()) add_pair(k, phi.coeff(k));

  Construction out{ExtremalFunction(omega.space(), {}, BumpFunction{1.0, omega.dim()}, phi, m)};
  out.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < omega.dim(); ++c) {
        double d = atoms[i].location[c] - atoms[j].location[c];
        if (torus) d = wrap(d);
        s += d * d;
      }
      out.min_separation = std::min(out.min_separation, std::sqrt(s));
    }
  }
  if (!(out.min_separation > 1e-12)) throw std::invalid_argument("coincident atoms (degenerate z)");
  out.min_interior = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) out.min_interior = std::min(out.min_interior, omega.interior_radius(a.location));
  if (!(out.min_interior > 0.0)) throw std::invalid_argument("an atom lies on the boundary of the domain");

  double limit = std::min(0.5 * out.min_separation, out.min_interior);
  if (torus) limit = std::min(limit, 0.5);
  const double eps = epsilon.value_or(0.9 * limit);
  if (!(eps > 0.0) || eps >= limit) {
    throw std::invalid_argument("epsilon must lie in (0, " + std::to_string(limit) + ")");
  }
  out.epsilon = eps;
  out.f = ExtremalFunction(omega.space(), std::move(atoms), BumpFunction{eps, omega.dim()}, phi, m);
  return out;
}

std::vector<std::vector<double>> default_frequencies(const ExtremalFunction& f, std::uint64_t seed) {
  const std::size_t d = f.dim();
  std::vector<std::vector<double>> out;
  std::mt19937_64 rng(seed);
  if (f.space() == SpaceKind::Torus) {
    // Integer frequencies up to a few multiples of 1/eps and of the orbit.
    std::int64_t reach = static_cast<std::int64_t>(std::ceil(4.0 / f.epsilon()));
    if (f.orbit_size()) reach = std::max(reach, 2 * *f.orbit_size());
    std::int64_t per_axis = reach;
    while (std::pow(2.0 * static_cast<double>(per_axis) + 1.0, static_cast<double>(d)) > 20000.0) per_axis /= 2;
    std::vector<std::int64_t> idx(d, -per_axis);
    while (true) {
      out.emplace_back(idx.begin(), idx.end());
      std::size_t c = 0;
      while (c < d && ++idx[c] > per_axis) idx[c++] = -per_axis;
      if (c == d) break;
    }
    std::uniform_int_distribution<std::int64_t> pick(-8 * reach, 8 * reach);
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> xi(d);
      for (auto& v : xi) v = static_cast<double>(pick(rng));
      out.push_back(std::move(xi));
    }
    return out;
  }
  double extent = 0.0;
  for (const auto& a : f.atoms()) {
    for (double v : a.location) extent = std::max(extent, std::abs(v));
  }
  extent += f.epsilon();
  const double step = 1.0 / (8.0 * extent);
  const double reach = 4.0 / f.epsilon();
  auto per_axis = static_cast<std::int64_t>(std::ceil(reach / step));
  while (std::pow(2.0 * static_cast<double>(per_axis) + 1.0, static_cast<double>(d)) > 20000.0) per_axis /= 2;
  const double h = reach / static_cast<double>(std::max<std::int64_t>(per_axis, 1));
  std::vector<std::int64_t> idx(d, -per_axis);
  while (true) {
    std::vector<double> xi(d);
    for (std::size_t c = 0; c < d; ++c) xi[c] = h * static_cast<double>(idx[c]);
    out.push_back(std::move(xi));
    std::size_t c = 0;
    while (c < d && ++idx[c] > per_axis) idx[c++] = -per_axis;
    if (c == d) break;
  }
  std::uniform_real_distribution<double> draw(-reach, reach);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> xi(d);
    for (auto& v : xi) v = draw(rng);
    out.push_back(std::move(xi));
  }
  return out;
}

VerifyReport verify_function(const ExtremalFunction& f, const Domain& omega, const Point& z, double expected,
                             const std::vector<std::vector<double>>& xi, std::uint64_t seed) {
  VerifyReport r;
  const std::size_t d = f.dim();

  r.value_at_zero.name = "f(0) = 1";
  r.value_at_zero.worst = std::abs(f(std::vector<double>(d, 0.0)) - 1.0);
  r.value_at_zero.samples = 1;
  r.value_at_zero.passed = r.value_at_zero.worst <= 1e-12;
  if (!r.value_at_zero.passed) r.value_at_zero.violations.push_back("f(0) differs from 1");

  r.value_at_z.name = "f(z) = lambda/2";
  std::vector<double> zl = z.approx();
  r.value_at_z.worst = std::abs(f(zl) - expected);
  r.value_at_z.samples = 1;
  r.value_at_z.passed = r.value_at_z.worst <= 1e-12;
  if (!r.value_at_z.passed) r.value_at_z.violations.push_back("f(z) differs from the expected value");

  // Support: points of the ambient box that miss the domain.
  r.support.name = "support inside domain";
  std::vector<double> lo(d), hi(d);
  if (omega.is_torus()) {
    std::fill(lo.begin(), lo.end(), -0.5);
    std::fill(hi.begin(), hi.end(), 0.5);
  } else {
    BoundingBox bb = omega.bounding_box();
    for (std::size_t c = 0; c < d; ++c) {
      if (!std::isfinite(bb.lo[c]) || !std::isfinite(bb.hi[c])) throw std::invalid_argument("unbounded domain");
      const double pad = 0.25 * (bb.hi[c] - bb.lo[c]) + f.epsilon();
      lo[c] = bb.lo[c] - pad;
      hi[c] = bb.hi[c] + pad;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t wanted = 10000;
  std::size_t tried = 0;
  while (r.support.samples < wanted && tried < 2'000'000) {
    ++tried;
    std::vector<double> x(d);
    for (std::size_t c = 0; c < d; ++c) x[c] = lo[c] + (hi[c] - lo[c]) * unit(rng);
    // Every fourth draw sits on a face of the box, where a torus domain that
    // fills the cube still has its complement.
    if (tried % 4 == 0) {
      const std::size_t face = static_cast<std::size_t>(unit(rng) * static_cast<double>(d)) % d;
      x[face] = unit(rng) < 0.5 ? lo[face] : hi[face];
    }
    if (omega.contains(Point::real(x))) continue;
    ++r.support.samples;
    const double v = f(x);
    if (v != 0.0) {
      r.support.worst = std::max(r.support.worst, std::abs(v));
      if (r.support.violations.size() < 10) r.support.violations.push_back("f" + vec_str(x) + " != 0");
    }
  }
  r.support.passed = r.support.worst == 0.0 && r.support.samples > 0;
  if (r.support.samples == 0) r.support.violations.push_back("no sample point outside the domain");

  // Positive definiteness: the transform factors into the measure part and
  // the bump part; the latter is a square. Sampled values must be real and
  // nonnegative, and the polynomial factor must be certified nonnegative where
  // it is evaluated (the whole circle, or the orbit grid on a finite torus).
  r.positive_definite.name = "nonnegative transform";
  double worst = 0.0;
  for (const auto& x : xi) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    const double bump = f.bump().transform(std::sqrt(norm));
    auto [re, im] = f.measure_transform(x);
    const double value = re * bump;
    const double imag = std::abs(im * bump);
    ++r.positive_definite.samples;
    worst = std::min(worst, value);
    if (value < -1e-9 || imag > 1e-9) {
      worst = std::min(worst, -imag);
      if (r.positive_definite.violations.size() < 10) {
        std::ostringstream os;
        os << "transform at xi=" << vec_str(x) << " is " << value << (imag > 1e-9 ? " with imaginary part" : "");
        r.positive_definite.violations.push_back(os.str());
      }
    }
  }
  double poly_low;
  if (f.orbit_size()) {
    const auto v = grid_values(f.phi(), *f.orbit_size());
    poly_low = *std::min_element(v.begin(), v.end());
  } else {
    poly_low = certified_min(f.phi(), std::max<std::int64_t>(1 << 14, 8 * f.phi().degree()), 1e-12).certified_lower;
  }
  if (poly_low < -1e-9) {
    r.positive_definite.violations.push_back("polynomial factor is negative: " + std::to_string(poly_low));
    worst = std::min(worst, poly_low);
  }
  r.positive_definite.worst = worst;
  r.positive_definite.passed = r.positive_definite.violations.empty();
  return r;
}

std::vector<std::pair<double, double>> sample_section(const ExtremalFunction& f, const std::vector<double>& from,
                                                      const std::vector<double>& to, std::size_t count) {
  if (from.size() != f.dim() || to.size() != f.dim()) throw std::invalid_argument("section endpoints dimension");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    std::vector<double> x(f.dim());
    for (std::size_t c = 0; c < x.size(); ++c) x[c] = from[c] + t * (to[c] - from[c]);
    out.emplace_back(t, f(x));
  }
  return out;
}

}  // namespace turan
