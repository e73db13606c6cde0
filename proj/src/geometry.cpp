#include "turan/geometry.hpp"

#include "turan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace turan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Rational abs_q(const Rational& v) { return sgn(v) < 0 ? Rational(-v) : v; }

double float_pnorm(const NormP& p, const std::vector<double>& v) {
  double s = 0.0;
  switch (p.kind) {
    case NormP::Kind::One:
      for (double x : v) s += std::abs(x);
      return s;
    case NormP::Kind::Two:
      for (double x : v) s += x * x;
      return std::sqrt(s);
    case NormP::Kind::Inf:
      for (double x : v) s = std::max(s, std::abs(x));
      return s;
    case NormP::Kind::General:
      for (double x : v) s += std::pow(std::abs(x), p.p);
      return std::pow(s, 1.0 / p.p);
  }
  return s;
}

Membership leaf_from_slack(double slack) {
  return {slack > 0.0, std::abs(slack) < kGeomTolerance};
}

Membership combine_union(const std::vector<Membership>& parts) {
  bool inside = false, sure_inside = false, any_ambiguous = false;
  for (const auto& m : parts) {
    inside = inside || m.inside;
    sure_inside = sure_inside || (m.inside && !m.boundary_ambiguous);
    any_ambiguous = any_ambiguous || m.boundary_ambiguous;
  }
  return {inside, !sure_inside && any_ambiguous};
}

Membership combine_intersection(const std::vector<Membership>& parts) {
  bool inside = true, sure_outside = false, any_ambiguous = false;
  for (const auto& m : parts) {
    inside = inside && m.inside;
    sure_outside = sure_outside || (!m.inside && !m.boundary_ambiguous);
    any_ambiguous = any_ambiguous || m.boundary_ambiguous;
  }
  return {inside, !sure_outside && any_ambiguous};
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

Membership eval_float(const Shape& s, const std::vector<double>& x);

Membership eval_exact(const Shape& s, const std::vector<Rational>& x) {
  return std::visit(
      Overloaded{
          [&](const shape::LpBall& b) -> Membership {
            std::vector<Rational> d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - b.center[i];
            switch (b.p.kind) {
              case NormP::Kind::One: {
                Rational s1 = 0;
                for (const auto& v : d) s1 += abs_q(v);
                return {s1 < b.radius, false};
              }
              case NormP::Kind::Two: {
                Rational s2 = 0;
                for (const auto& v : d) s2 += v * v;
                return {s2 < b.radius * b.radius, false};
              }
              case NormP::Kind::Inf: {
                for (const auto& v : d) {
                  if (!(abs_q(v) < b.radius)) return {false, false};
                }
                return {true, false};
              }
              case NormP::Kind::General:
                return eval_float(s, to_doubles(x));
            }
            return {};
          },
          [&](const shape::Box& b) -> Membership {
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (!(abs_q(x[i] - b.center[i]) < b.halfwidth[i])) return {false, false};
            }
            return {true, false};
          },
          [&](const shape::Polytope& p) -> Membership {
            for (std::size_t r = 0; r < p.normals.size(); ++r) {
              Rational dot = 0;
              for (std::size_t i = 0; i < x.size(); ++i) dot += p.normals[r][i] * x[i];
              if (!(abs_q(dot) < p.bounds[r])) return {false, false};
            }
            return {true, false};
          },
          [&](const shape::Union& u) -> Membership {
            std::vector<Membership> parts;
            for (const auto& c : u.children) parts.push_back(eval_exact(*c, x));
            return combine_union(parts);
          },
          [&](const shape::Intersection& u) -> Membership {
            std::vector<Membership> parts;
            for (const auto& c : u.children) parts.push_back(eval_exact(*c, x));
            return combine_intersection(parts);
          },
          [&](const shape::Translate& t) -> Membership {
            std::vector<Rational> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - t.offset[i];
            return eval_exact(*t.child, y);
          },
          [&](const shape::Scale& t) -> Membership {
            std::vector<Rational> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / t.factor;
            return eval_exact(*t.child, y);
          },
          [&](const shape::Reflect& t) -> Membership {
            std::vector<Rational> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
            return eval_exact(*t.child, y);
          },
      },
      s.node);
}

Membership eval_float(const Shape& s, const std::vector<double>& x) {
  return std::visit(
      Overloaded{
          [&](const shape::LpBall& b) -> Membership {
            std::vector<double> d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - b.center[i].get_d();
            return leaf_from_slack(b.radius.get_d() - float_pnorm(b.p, d));
          },
          [&](const shape::Box& b) -> Membership {
            double slack = kInf;
            for (std::size_t i = 0; i < x.size(); ++i) {
              slack = std::min(slack, b.halfwidth[i].get_d() - std::abs(x[i] - b.center[i].get_d()));
            }
            return leaf_from_slack(slack);
          },
          [&](const shape::Polytope& p) -> Membership {
            double slack = kInf;
            for (std::size_t r = 0; r < p.normals.size(); ++r) {
              double dot = 0.0;
              for (std::size_t i = 0; i < x.size(); ++i) dot += p.normals[r][i].get_d() * x[i];
              slack = std::min(slack, p.bounds[r].get_d() - std::abs(dot));
            }
            return leaf_from_slack(slack);
          },
          [&](const shape::Union& u) -> Membership {
            std::vector<Membership> parts;
            for (const auto& c : u.children) parts.push_back(eval_float(*c, x));
            return combine_union(parts);
          },
          [&](const shape::Intersection& u) -> Membership {
            std::vector<Membership> parts;
            for (const auto& c : u.children) parts.push_back(eval_float(*c, x));
            return combine_intersection(parts);
          },
          [&](const shape::Translate& t) -> Membership {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - t.offset[i].get_d();
            return eval_float(*t.child, y);
          },
          [&](const shape::Scale& t) -> Membership {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / t.factor.get_d();
            return eval_float(*t.child, y);
          },
          [&](const shape::Reflect& t) -> Membership {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
            return eval_float(*t.child, y);
          },
      },
      s.node);
}

double interior(const Shape& s, const std::vector<double>& x) {
  return std::visit(
      Overloaded{
          [&](const shape::LpBall& b) -> double {
            std::vector<double> d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - b.center[i].get_d();
            // sup of ||u||_p over the Euclidean unit ball.
            double pe = b.p.kind == NormP::Kind::Inf ? kInf : b.p.p;
            double stretch = std::pow(static_cast<double>(x.size()), std::max(0.0, 1.0 / pe - 0.5));
            return (b.radius.get_d() - float_pnorm(b.p, d)) / stretch;
          },
          [&](const shape::Box& b) -> double {
            double r = kInf;
            for (std::size_t i = 0; i < x.size(); ++i) {
              r = std::min(r, b.halfwidth[i].get_d() - std::abs(x[i] - b.center[i].get_d()));
            }
            return r;
          },
          [&](const shape::Polytope& p) -> double {
            double r = kInf;
            for (std::size_t k = 0; k < p.normals.size(); ++k) {
              double dot = 0.0, nn = 0.0;
              for (std::size_t i = 0; i < x.size(); ++i) {
                double a = p.normals[k][i].get_d();
                dot += a * x[i];
                nn += a * a;
              }
              r = std::min(r, (p.bounds[k].get_d() - std::abs(dot)) / std::sqrt(nn));
            }
            return r;
          },
          [&](const shape::Union& u) -> double {
            double r = -kInf;
            for (const auto& c : u.children) r = std::max(r, interior(*c, x));
            return r;
          },
          [&](const shape::Intersection& u) -> double {
            double r = kInf;
            for (const auto& c : u.children) r = std::min(r, interior(*c, x));
            return r;
          },
          [&](const shape::Translate& t) -> double {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - t.offset[i].get_d();
            return interior(*t.child, y);
          },
          [&](const shape::Scale& t) -> double {
            const double f = t.factor.get_d();
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / f;
            return f * interior(*t.child, y);
          },
          [&](const shape::Reflect& t) -> double {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
            return interior(*t.child, y);
          },
      },
      s.node);
}

BoundingBox polytope_box(const shape::Polytope& p, std::size_t dim) {
  BoundingBox box{std::vector<double>(dim), std::vector<double>(dim)};
  lp::LinearProgram program(dim);
  program.bounds.assign(dim, lp::VariableBound::free());
  for (std::size_t r = 0; r < p.normals.size(); ++r) {
    program.add(p.normals[r], lp::Relation::LessEqual, p.bounds[r]);
    program.add(p.normals[r], lp::Relation::GreaterEqual, Rational(-p.bounds[r]));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (int direction : {1, -1}) {
      program.objective.assign(dim, Rational(0));
      program.objective[i] = direction;
      auto sol = lp::solve(program, lp::Arithmetic::Float);
      double v = sol.status == lp::Status::Optimal ? sol.value_d() * (1.0 + 1e-12) + 1e-15 : kInf;
      if (direction == 1) {
        box.hi[i] = v;
      } else {
        box.lo[i] = -v;
      }
    }
  }
  return box;
}

BoundingBox box_of(const Shape& s, std::size_t dim) {
  auto pad = [](double v) { return v + std::abs(v) * 1e-12 + 1e-15; };
  return std::visit(
      Overloaded{
          [&](const shape::LpBall& b) {
            BoundingBox out{std::vector<double>(dim), std::vector<double>(dim)};
            for (std::size_t i = 0; i < dim; ++i) {
              out.lo[i] = -pad(-Rational(b.center[i] - b.radius).get_d());
              out.hi[i] = pad(Rational(b.center[i] + b.radius).get_d());
            }
            return out;
          },
          [&](const shape::Box& b) {
            BoundingBox out{std::vector<double>(dim), std::vector<double>(dim)};
            for (std::size_t i = 0; i < dim; ++i) {
              out.lo[i] = -pad(-Rational(b.center[i] - b.halfwidth[i]).get_d());
              out.hi[i] = pad(Rational(b.center[i] + b.halfwidth[i]).get_d());
            }
            return out;
          },
          [&](const shape::Polytope& p) { return polytope_box(p, dim); },
          [&](const shape::Union& u) {
            BoundingBox out{std::vector<double>(dim, kInf), std::vector<double>(dim, -kInf)};
            for (const auto& c : u.children) {
              BoundingBox b = box_of(*c, dim);
              for (std::size_t i = 0; i < dim; ++i) {
                out.lo[i] = std::min(out.lo[i], b.lo[i]);
                out.hi[i] = std::max(out.hi[i], b.hi[i]);
              }
            }
            return out;
          },
          [&](const shape::Intersection& u) {
            BoundingBox out{std::vector<double>(dim, -kInf), std::vector<double>(dim, kInf)};
            for (const auto& c : u.children) {
              BoundingBox b = box_of(*c, dim);
              for (std::size_t i = 0; i < dim; ++i) {
                out.lo[i] = std::max(out.lo[i], b.lo[i]);
                out.hi[i] = std::min(out.hi[i], b.hi[i]);
              }
            }
            return out;
          },
          [&](const shape::Translate& t) {
            BoundingBox b = box_of(*t.child, dim);
            for (std::size_t i = 0; i < dim; ++i) {
              b.lo[i] = -pad(-(b.lo[i] + t.offset[i].get_d()));
              b.hi[i] = pad(b.hi[i] + t.offset[i].get_d());
            }
            return b;
          },
          [&](const shape::Scale& t) {
            BoundingBox b = box_of(*t.child, dim);
            const double f = t.factor.get_d();
            for (std::size_t i = 0; i < dim; ++i) {
              b.lo[i] = -pad(-b.lo[i] * f);
              b.hi[i] = pad(b.hi[i] * f);
            }
            return b;
          },
          [&](const shape::Reflect& t) {
            BoundingBox b = box_of(*t.child, dim);
            for (std::size_t i = 0; i < dim; ++i) {
              double lo = -b.hi[i];
              b.hi[i] = -b.lo[i];
              b.lo[i] = lo;
            }
            return b;
          },
      },
      s.node);
}

void validate(const Shape& s, std::size_t dim) {
  auto need = [dim](std::size_t n, const char* what) {
    if (n != dim) {
      throw std::invalid_argument(std::string(what) + " has dimension " + std::to_string(n) + ", expected " +
                                  std::to_string(dim));
    }
  };
  std::visit(Overloaded{
                 [&](const shape::LpBall& b) {
                   need(b.center.size(), "ball centre");
                   if (sgn(b.radius) <= 0) throw std::invalid_argument("ball radius must be positive");
                 },
                 [&](const shape::Box& b) {
                   need(b.halfwidth.size(), "box halfwidth");
                   need(b.center.size(), "box centre");
                   for (const auto& h : b.halfwidth) {
                     if (sgn(h) <= 0) throw std::invalid_argument("box halfwidths must be positive");
                   }
                 },
                 [&](const shape::Polytope& p) {
                   if (p.normals.size() != p.bounds.size() || p.normals.empty()) {
                     throw std::invalid_argument("polytope needs matching, non-empty normals and bounds");
                   }
                   for (const auto& n : p.normals) need(n.size(), "polytope normal");
                   for (const auto& b : p.bounds) {
                     if (sgn(b) <= 0) throw std::invalid_argument("polytope bounds must be positive");
                   }
                 },
                 [&](const shape::Union& u) {
                   if (u.children.empty()) throw std::invalid_argument("union needs children");
                   for (const auto& c : u.children) validate(*c, dim);
                 },
                 [&](const shape::Intersection& u) {
                   if (u.children.empty()) throw std::invalid_argument("intersection needs children");
                   for (const auto& c : u.children) validate(*c, dim);
                 },
                 [&](const shape::Translate& t) {
                   need(t.offset.size(), "translation");
                   validate(*t.child, dim);
                 },
                 [&](const shape::Scale& t) {
                   if (sgn(t.factor) <= 0) throw std::invalid_argument("scale factor must be positive");
                   validate(*t.child, dim);
                 },
                 [&](const shape::Reflect& t) { validate(*t.child, dim); },
             },
             s.node);
}

ShapePtr wrap(Shape s) { return std::make_shared<const Shape>(std::move(s)); }

std::vector<Rational> zeros(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

}  // namespace

// --- Point ---------------------------------------------------------------

Point Point::rational(std::vector<Rational> coords) {
  Point p;
  p.exact_ = true;
  p.coords_ = std::move(coords);
  for (auto& c : p.coords_) c.canonicalize();
  p.approx_ = to_doubles(p.coords_);
  return p;
}

Point Point::real(std::vector<double> coords, bool irrational) {
  Point p;
  p.exact_ = false;
  p.irrational_ = irrational;
  p.approx_ = std::move(coords);
  return p;
}

bool Point::is_zero() const {
  if (exact_) {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& v) { return sgn(v) == 0; });
  }
  return std::all_of(approx_.begin(), approx_.end(), [](double v) { return v == 0.0; });
}

Point Point::negated() const { return times(-1); }

Point Point::scaled(const Rational& factor) const {
  if (exact_) {
    std::vector<Rational> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * factor;
    return rational(std::move(c));
  }
  std::vector<double> c(approx_);
  for (auto& v : c) v *= factor.get_d();
  return real(std::move(c), irrational_);
}

Point Point::times(std::int64_t k) const {
  return scaled(Rational(Integer(static_cast<long>(k))));
}

double Point::norm2() const { return float_pnorm(NormP::two(), approx_); }

std::string Point::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    if (exact_) {
      os << to_string(coords_[i]);
    } else {
      os << approx_[i];
    }
  }
  os << ")";
  if (!exact_ && irrational_) os << " [irrational]";
  return os.str();
}

NormP NormP::general(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    if (p == 1.0) return one();
    throw std::invalid_argument("general p-norm needs p > 1");
  }
  if (p == 2.0) return two();
  return {Kind::General, p};
}

// --- shapes --------------------------------------------------------------

ShapePtr make_ball(NormP p, Rational radius, std::vector<Rational> center) {
  return wrap({shape::LpBall{p, std::move(radius), std::move(center)}});
}

ShapePtr make_box(std::vector<Rational> halfwidth, std::vector<Rational> center) {
  if (center.empty()) center = zeros(halfwidth.size());
  return wrap({shape::Box{std::move(halfwidth), std::move(center)}});
}

ShapePtr make_polytope(std::vector<std::vector<Rational>> normals, std::vector<Rational> bounds) {
  return wrap({shape::Polytope{std::move(normals), std::move(bounds)}});
}

ShapePtr make_union(std::vector<ShapePtr> children) { return wrap({shape::Union{std::move(children)}}); }

ShapePtr make_intersection(std::vector<ShapePtr> children) {
  return wrap({shape::Intersection{std::move(children)}});
}

ShapePtr make_translate(std::vector<Rational> offset, ShapePtr child) {
  return wrap({shape::Translate{std::move(offset), std::move(child)}});
}

ShapePtr make_scale(Rational factor, ShapePtr child) {
  return wrap({shape::Scale{std::move(factor), std::move(child)}});
}

ShapePtr make_reflect(ShapePtr child) { return wrap({shape::Reflect{std::move(child)}}); }

// --- Domain --------------------------------------------------------------

Domain::Domain(SpaceKind space, std::size_t dim, ShapePtr shape) : space_(space), dim_(dim), shape_(std::move(shape)) {
  if (dim_ == 0) throw std::invalid_argument("domain dimension must be >= 1");
  if (!shape_) throw std::invalid_argument("domain needs a shape");
  validate(*shape_, dim_);
  if (space_ == SpaceKind::Torus) {
    BoundingBox b = bounding_box();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (b.lo[i] < -0.5 - 1e-9 || b.hi[i] > 0.5 + 1e-9) {
        throw std::invalid_argument("torus shapes must lie inside [-1/2, 1/2)^d");
      }
    }
  }
}

Membership Domain::membership(const Point& x) const {
  if (x.dim() != dim_) {
    throw std::invalid_argument("point dimension " + std::to_string(x.dim()) + " differs from domain dimension " +
                                std::to_string(dim_));
  }
  if (x.is_exact()) {
    std::vector<Rational> c = x.coords();
    if (is_torus()) {
      for (auto& v : c) v = reduce_mod_one(v);
    }
    return eval_exact(*shape_, c);
  }
  std::vector<double> c = x.approx();
  if (is_torus()) {
    for (auto& v : c) v = reduce_mod_one(v);
  }
  return eval_float(*shape_, c);
}

Domain Domain::symmetrize() const {
  return Domain(space_, dim_, make_intersection({shape_, make_reflect(shape_)}));
}

Domain Domain::scaled(const Rational& factor, SpaceKind space) const {
  return Domain(space, dim_, make_scale(factor, shape_));
}

Domain Domain::as_space(SpaceKind space) const { return Domain(space, dim_, shape_); }

BoundingBox Domain::bounding_box() const { return box_of(*shape_, dim_); }

double Domain::bounding_radius() const {
  BoundingBox b = bounding_box();
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double r = std::max(std::abs(b.lo[i]), std::abs(b.hi[i]));
    if (!std::isfinite(r)) throw std::domain_error("domain is unbounded");
    s += r * r;
  }
  return std::sqrt(s) * (1.0 + 1e-12);
}

double Domain::interior_radius(const std::vector<double>& x) const {
  if (x.size() != dim_) throw std::invalid_argument("point dimension differs from domain dimension");
  std::vector<double> c = x;
  if (is_torus()) {
    for (auto& v : c) v = reduce_mod_one(v);
  }
  return interior(*shape_, c);
}

// --- norms, orbits, index sets --------------------------------------------

NormValue minkowski_norm(const Domain& omega, const Point& z) {
  if (z.dim() != omega.dim()) throw std::invalid_argument("point dimension differs from domain dimension");
  const bool exact = z.is_exact();
  auto zero_center = [](const std::vector<Rational>& c) {
    return std::all_of(c.begin(), c.end(), [](const Rational& v) { return sgn(v) == 0; });
  };
  return std::visit(
      Overloaded{
          [&](const shape::LpBall& b) -> NormValue {
            if (!zero_center(b.center)) throw std::invalid_argument("Minkowski norm needs a ball centred at 0");
            NormValue out;
            out.value = float_pnorm(b.p, z.approx()) / b.radius.get_d();
            if (!exact) return out;
            Rational s = 0;
            switch (b.p.kind) {
              case NormP::Kind::One:
                for (const auto& v : z.coords()) s += abs_q(v);
                out.exact = s / b.radius;
                break;
              case NormP::Kind::Inf:
                for (const auto& v : z.coords()) s = std::max(s, abs_q(v));
                out.exact = s / b.radius;
                break;
              case NormP::Kind::Two: {
                for (const auto& v : z.coords()) s += v * v;
                Rational sq = s / (b.radius * b.radius);
                if (mpz_perfect_square_p(sq.get_num_mpz_t()) && mpz_perfect_square_p(sq.get_den_mpz_t())) {
                  Integer n, d;
                  mpz_sqrt(n.get_mpz_t(), sq.get_num_mpz_t());
                  mpz_sqrt(d.get_mpz_t(), sq.get_den_mpz_t());
                  out.exact = Rational(n, d);
                  out.value = out.exact->get_d();
                }
                break;
              }
              case NormP::Kind::General:
                break;
            }
            if (out.exact) out.value = out.exact->get_d();
            return out;
          },
          [&](const shape::Box& b) -> NormValue {
            if (!zero_center(b.center)) throw std::invalid_argument("Minkowski norm needs a box centred at 0");
            NormValue out;
            for (std::size_t i = 0; i < z.dim(); ++i) {
              out.value = std::max(out.value, std::abs(z.approx()[i]) / b.halfwidth[i].get_d());
            }
            if (exact) {
              Rational s = 0;
              for (std::size_t i = 0; i < z.dim(); ++i) s = std::max(s, Rational(abs_q(z.coords()[i]) / b.halfwidth[i]));
              out.exact = s;
              out.value = s.get_d();
            }
            return out;
          },
          [&](const shape::Polytope& p) -> NormValue {
            NormValue out;
            Rational s = 0;
            for (std::size_t r = 0; r < p.normals.size(); ++r) {
              double dot = 0.0;
              for (std::size_t i = 0; i < z.dim(); ++i) dot += p.normals[r][i].get_d() * z.approx()[i];
              out.value = std::max(out.value, std::abs(dot) / p.bounds[r].get_d());
              if (exact) {
                Rational q = 0;
                for (std::size_t i = 0; i < z.dim(); ++i) q += p.normals[r][i] * z.coords()[i];
                s = std::max(s, Rational(abs_q(q) / p.bounds[r]));
              }
            }
            if (exact) {
              out.exact = s;
              out.value = s.get_d();
            }
            return out;
          },
          [&](const auto&) -> NormValue {
            throw std::invalid_argument("Minkowski norm needs a single symmetric convex primitive");
          },
      },
      omega.shape()->node);
}

OrbitInfo orbit(const Point& z) {
  if (!z.is_exact()) {
    if (z.irrational()) return InfiniteOrbit{};
    throw std::invalid_argument("inexact torus point without an irrationality assertion");
  }
  Integer m = 1;
  for (const auto& c : z.coords()) {
    Rational r = reduce_mod_one(c);
    m = lcm(m, r.get_den());
  }
  if (!m.fits_slong_p()) throw std::domain_error("orbit size does not fit in 64 bits");
  return FiniteOrbit{m.get_si()};
}

SpaceIndices compute_H_space(const Domain& omega, const Point& z) {
  if (omega.is_torus()) throw std::invalid_argument("compute_H_space needs a Euclidean domain");
  if (z.dim() != omega.dim()) throw std::invalid_argument("point dimension differs from domain dimension");
  if (z.is_zero()) throw std::domain_error("compute_H_space needs z != 0");
  const double radius = omega.bounding_radius();
  const double cap = std::ceil(radius / z.norm2()) + 1.0;
  if (cap > 1e7) throw std::domain_error("index enumeration cap too large");
  SpaceIndices out;
  out.enumeration_cap = static_cast<std::int64_t>(cap);
  for (std::int64_t k = 2; k <= out.enumeration_cap; ++k) {
    Membership plus = omega.membership(z.times(k));
    Membership minus = omega.membership(z.times(-k));
    out.boundary_ambiguous = out.boundary_ambiguous || plus.boundary_ambiguous || minus.boundary_ambiguous;
    if (plus.inside && minus.inside) out.indices.push_back(k);
  }
  return out;
}

TorusHResult compute_H_torus(const Domain& omega, const Point& z, std::int64_t n_max) {
  if (!omega.is_torus()) throw std::invalid_argument("compute_H_torus needs a torus domain");
  if (z.dim() != omega.dim()) throw std::invalid_argument("point dimension differs from domain dimension");
  Membership zp = omega.membership(z);
  Membership zm = omega.membership(z.negated());
  if (!zp.inside || !zm.inside) return TrivialZero{"z is not in the symmetric part of the domain"};

  TorusIndices out;
  out.orbit = orbit(z);
  out.boundary_ambiguous = zp.boundary_ambiguous || zm.boundary_ambiguous;
  std::int64_t last = n_max;
  if (const auto* fin = std::get_if<FiniteOrbit>(&out.orbit)) {
    last = fin->m / 2;
  } else {
    out.truncated_at = n_max;
  }
  for (std::int64_t k = 2; k <= last; ++k) {
    Membership plus = omega.membership(z.times(k));
    Membership minus = omega.membership(z.times(-k));
    out.boundary_ambiguous = out.boundary_ambiguous || plus.boundary_ambiguous || minus.boundary_ambiguous;
    if (plus.inside && minus.inside) out.indices.push_back(k);
  }
  return out;
}

}  // namespace turan
