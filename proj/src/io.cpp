#include "turan/io.hpp"

#include "turan/closed_form.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace turan {

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void check_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) throw SpecError(join(path, item.key()), "unknown field");
  }
}

const Json& required(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(join(path, key), "missing required field");
  return *it;
}

std::int64_t get_int(const Json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
  if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
  const std::int64_t v = j.get<std::int64_t>();
  if (v < lo || v > hi) {
    throw SpecError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                              std::to_string(v));
  }
  return v;
}

double get_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SpecError(path, "expected a number");
  return j.get<double>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SpecError(path, "expected a string");
  return j.get<std::string>();
}

std::set<std::int64_t> int_set(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SpecError(path, "expected an array of integers");
  std::set<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.insert(get_int(j[i], join(path, i), 2, std::numeric_limits<std::int64_t>::max()));
  }
  return out;
}

std::vector<Rational> rational_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SpecError(path, "expected a non-empty array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], join(path, i)));
  return out;
}

std::vector<double> double_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SpecError(path, "expected a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string()) {
      out.push_back(to_double(rational_from_json(j[i], join(path, i))));
    } else {
      out.push_back(get_double(j[i], join(path, i)));
    }
  }
  return out;
}

Json rational_array(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

Json int_array(const std::vector<std::int64_t>& v) {
  Json out = Json::array();
  for (auto k : v) out.push_back(k);
  return out;
}

// Library argument errors found while interpreting a field.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw SpecError(path, e.what());
  } catch (const std::domain_error& e) {
    throw SpecError(path, e.what());
  }
}

ShapePtr shape_from_json(const Json& j, const std::string& path, std::size_t dim) {
  if (!j.is_object()) throw SpecError(path, "expected a shape object");
  const std::string type = get_string(required(j, path, "type"), join(path, "type"));
  auto center_of = [&](const char* key) {
    if (!j.contains(key)) return std::vector<Rational>(dim, Rational(0));
    auto c = rational_vector(j[key], join(path, key));
    if (c.size() != dim) throw SpecError(join(path, key), "dimension mismatch");
    return c;
  };
  auto children_of = [&] {
    const Json& c = required(j, path, "children");
    if (!c.is_array() || c.empty()) throw SpecError(join(path, "children"), "expected a non-empty array");
    std::vector<ShapePtr> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(shape_from_json(c[i], join(join(path, "children"), i), dim));
    return out;
  };
  auto child_of = [&] { return shape_from_json(required(j, path, "child"), join(path, "child"), dim); };

  if (type == "ball") {
    check_object(j, path, {"type", "p", "radius", "center"});
    NormP p = NormP::two();
    if (j.contains("p")) {
      const Json& pj = j["p"];
      const std::string pp = join(path, "p");
      if (pj.is_string()) {
        const std::string s = pj.get<std::string>();
        if (s == "1") p = NormP::one();
        else if (s == "2") p = NormP::two();
        else if (s == "inf") p = NormP::inf();
        else p = at_path(pp, [&] { return NormP::general(to_double(parse_rational(s))); });
      } else {
        p = at_path(pp, [&] { return NormP::general(get_double(pj, pp)); });
      }
    }
    const Rational r = rational_from_json(required(j, path, "radius"), join(path, "radius"));
    auto center = center_of("center");
    return at_path(path, [&] { return make_ball(p, r, center); });
  }
  if (type == "box") {
    check_object(j, path, {"type", "halfwidth", "center"});
    auto hw = rational_vector(required(j, path, "halfwidth"), join(path, "halfwidth"));
    if (hw.size() != dim) throw SpecError(join(path, "halfwidth"), "dimension mismatch");
    auto center = center_of("center");
    return at_path(path, [&] { return make_box(hw, center); });
  }
  if (type == "polytope") {
    check_object(j, path, {"type", "normals", "bounds"});
    const Json& nj = required(j, path, "normals");
    if (!nj.is_array()) throw SpecError(join(path, "normals"), "expected an array");
    std::vector<std::vector<Rational>> normals;
    for (std::size_t i = 0; i < nj.size(); ++i) {
      normals.push_back(rational_vector(nj[i], join(join(path, "normals"), i)));
      if (normals.back().size() != dim) throw SpecError(join(join(path, "normals"), i), "dimension mismatch");
    }
    auto bounds = rational_vector(required(j, path, "bounds"), join(path, "bounds"));
    return at_path(path, [&] { return make_polytope(normals, bounds); });
  }
  if (type == "union" || type == "intersection") {
    check_object(j, path, {"type", "children"});
    auto c = children_of();
    return at_path(path, [&] { return type == "union" ? make_union(c) : make_intersection(c); });
  }
  if (type == "translate") {
    check_object(j, path, {"type", "offset", "child"});
    auto off = rational_vector(required(j, path, "offset"), join(path, "offset"));
    if (off.size() != dim) throw SpecError(join(path, "offset"), "dimension mismatch");
    auto c = child_of();
    return at_path(path, [&] { return make_translate(off, c); });
  }
  if (type == "scale") {
    check_object(j, path, {"type", "factor", "child"});
    const Rational f = rational_from_json(required(j, path, "factor"), join(path, "factor"));
    auto c = child_of();
    return at_path(path, [&] { return make_scale(f, c); });
  }
  if (type == "reflect") {
    check_object(j, path, {"type", "child"});
    auto c = child_of();
    return at_path(path, [&] { return make_reflect(c); });
  }
  throw SpecError(join(path, "type"), "unknown shape type '" + type + "'");
}

Json shape_to_json(const ShapePtr& s) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        Json j;
        if constexpr (std::is_same_v<T, shape::LpBall>) {
          j["type"] = "ball";
          switch (n.p.kind) {
            case NormP::Kind::One: j["p"] = "1"; break;
            case NormP::Kind::Two: j["p"] = "2"; break;
            case NormP::Kind::Inf: j["p"] = "inf"; break;
            case NormP::Kind::General: j["p"] = n.p.p; break;
          }
          j["radius"] = to_json(n.radius);
          j["center"] = rational_array(n.center);
        } else if constexpr (std::is_same_v<T, shape::Box>) {
          j["type"] = "box";
          j["halfwidth"] = rational_array(n.halfwidth);
          j["center"] = rational_array(n.center);
        } else if constexpr (std::is_same_v<T, shape::Polytope>) {
          j["type"] = "polytope";
          j["normals"] = Json::array();
          for (const auto& row : n.normals) j["normals"].push_back(rational_array(row));
          j["bounds"] = rational_array(n.bounds);
        } else if constexpr (std::is_same_v<T, shape::Union> || std::is_same_v<T, shape::Intersection>) {
          j["type"] = std::is_same_v<T, shape::Union> ? "union" : "intersection";
          j["children"] = Json::array();
          for (const auto& c : n.children) j["children"].push_back(shape_to_json(c));
        } else if constexpr (std::is_same_v<T, shape::Translate>) {
          j["type"] = "translate";
          j["offset"] = rational_array(n.offset);
          j["child"] = shape_to_json(n.child);
        } else if constexpr (std::is_same_v<T, shape::Scale>) {
          j["type"] = "scale";
          j["factor"] = to_json(n.factor);
          j["child"] = shape_to_json(n.child);
        } else {
          j["type"] = "reflect";
          j["child"] = shape_to_json(n.child);
        }
        return j;
      },
      s->node);
}

std::string index_list(const std::vector<std::int64_t>& h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? ";" : "") + std::to_string(h[i]);
  return s;
}

// %.17g keeps CSV values round-trippable.
std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json value_json(double lower, double upper, const std::string& status) {
  return Json{{"lower", finite_or_null(lower)}, {"upper", finite_or_null(upper)}, {"status", status}};
}

std::string upper_kind(UpperCertificate::Kind k) {
  switch (k) {
    case UpperCertificate::Kind::None: return "none";
    case UpperCertificate::Kind::GridRelaxation: return "grid_relaxation";
    case UpperCertificate::Kind::DiscreteValue: return "discrete_value";
    case UpperCertificate::Kind::Duality: return "duality";
    case UpperCertificate::Kind::ClosedForm: return "closed_form";
    case UpperCertificate::Kind::Universal: return "universal";
    case UpperCertificate::Kind::Trivial: return "trivial";
  }
  return "none";
}

Json certificates(const Enclosure& e) {
  Json out = Json::array();
  const bool trivial = e.status == EnclosureStatus::TrivialZero || e.status == EnclosureStatus::TrivialOne;
  if (trivial) {
    out.push_back({{"bound", "lower"}, {"kind", "trivial"}, {"detail", to_string(e.status)}});
  } else {
    out.push_back({{"bound", "lower"},
                   {"kind", "feasible_witness"},
                   {"detail", "witness_polynomial is certified nonnegative; lower = its linear coefficient"}});
  }
  out.push_back(
      {{"bound", "upper"}, {"kind", upper_kind(e.upper_certificate.kind)}, {"detail", e.upper_certificate.describe()}});
  return out;
}

Json closed_json(const std::optional<ClosedForm>& c) {
  if (!c) return nullptr;
  return Json{{"source", c->source}, {"expression", c->value.expression()}, {"value", c->value.value()}};
}

Json orbit_json(const std::optional<OrbitInfo>& o) {
  if (!o) return nullptr;
  if (const auto* f = std::get_if<FiniteOrbit>(&*o)) return "finite:" + std::to_string(f->m);
  return "infinite";
}

std::string phi_csv(const CosinePolynomial& phi) {
  std::string csv = "t,phi\n";
  constexpr int kRows = 257;
  for (int i = 0; i < kRows; ++i) {
    const double t = static_cast<double>(i) / (kRows - 1);
    csv += num(t) + "," + num(evaluate(phi, t)) + "\n";
  }
  return csv;
}

RunOutput pointwise_report(const ProblemSpec& spec, const PointwiseResult& r) {
  RunOutput out;
  Json& j = out.report;
  const Enclosure& e = r.enclosure;
  j["mode"] = to_string(spec.mode);
  j["value"] = value_json(e.lower, e.upper, to_string(e.status));
  j["H"] = int_array(r.h);
  j["orbit"] = orbit_json(r.orbit);
  j["witness_polynomial"] = to_json(e.lower_witness);
  j["certificates"] = certificates(e);
  j["warnings"] = e.warnings;
  j["closed_form"] = closed_json(r.closed);
  j["details"] = Json{{"domain", to_json(*spec.domain)}, {"point", to_json(*spec.point)}};
  out.csv = phi_csv(e.lower_witness);
  return out;
}

RunOutput run_solve_h(const ProblemSpec& spec) {
  RunOutput out;
  Json& j = out.report;
  const IndexSet& h = *spec.index_set;
  j["mode"] = to_string(spec.mode);
  if (spec.m) {
    const DiscreteResult d = solve_discrete(h, *spec.m, spec.solver.arithmetic);
    const bool rational = d.arithmetic == lp::Arithmetic::Rational;
    j["value"] = d.unbounded ? value_json(INFINITY, INFINITY, "unbounded")
                             : value_json(d.value_d(), d.value_d(), "exact");
    j["H"] = to_json(h);
    j["orbit"] = "finite:" + std::to_string(*spec.m);
    j["witness_polynomial"] = d.unbounded ? Json(nullptr) : to_json(d.witness);
    Json certs = Json::array();
    if (d.unbounded) {
      certs.push_back({{"bound", "lower"},
                       {"kind", "degenerate_residue"},
                       {"detail", "H meets the residue " + std::to_string(d.degenerate_residue) + " modulo " +
                                      std::to_string(*spec.m)}});
    } else {
      certs.push_back({{"bound", "lower"}, {"kind", "lp_optimum"}, {"detail", "primal grid witness"}});
      certs.push_back({{"bound", "upper"}, {"kind", "lp_optimum"}, {"detail", "simplex optimality"}});
    }
    j["certificates"] = certs;
    j["warnings"] = Json::array();
    j["closed_form"] = nullptr;
    j["details"] = Json{{"m", *spec.m},
                        {"reduced", int_array(d.reduced)},
                        {"arithmetic", rational ? "rational" : "float"},
                        {"value_exact", rational && !d.unbounded ? Json(to_string(d.value)) : Json(nullptr)}};
    out.csv = phi_csv(d.unbounded ? CosinePolynomial() : d.witness);
    return out;
  }
  const Enclosure e = bracket_M(h, spec.solver.bracket);
  j["value"] = value_json(e.lower, e.upper, to_string(e.status));
  j["H"] = to_json(h);
  j["orbit"] = nullptr;
  j["witness_polynomial"] = to_json(e.lower_witness);
  j["certificates"] = certificates(e);
  j["warnings"] = e.warnings;
  j["closed_form"] = closed_json(closed_form(h));
  j["details"] = Json{{"N_trunc", spec.solver.bracket.n_trunc}, {"m_grid", spec.solver.bracket.grid()}};
  out.csv = phi_csv(e.lower_witness);
  return out;
}

Json check_json(const Check& c) {
  return Json{{"name", c.name},
              {"passed", c.passed},
              {"worst", c.worst},
              {"samples", c.samples},
              {"violations", c.violations}};
}

RunOutput run_construct(const ProblemSpec& spec) {
  const Domain& omega = *spec.domain;
  const Point& z = *spec.point;
  CosinePolynomial phi;
  std::vector<std::string> warnings;
  if (spec.phi) {
    phi = *spec.phi;
  } else {
    const PointwiseResult r =
        omega.is_torus() ? pointwise_torus(omega, z, spec.solver) : pointwise_space(omega, z, spec.solver);
    if (r.enclosure.lower_witness.coeffs().empty()) {
      throw std::invalid_argument("no witness polynomial (" + to_string(r.enclosure.status) +
                                  "); supply params.phi");
    }
    phi = r.enclosure.lower_witness;
    warnings.push_back("phi taken from the solver witness");
  }
  const Construction built = build_extremal_function(omega, z, phi, spec.epsilon);
  const ExtremalFunction& f = built.f;
  const double expected = 0.5 * f.phi().lambda();
  const VerifyReport v = verify_function(f, omega, z, expected, default_frequencies(f));

  RunOutput out;
  Json& j = out.report;
  j["mode"] = to_string(spec.mode);
  j["value"] = value_json(f(z.approx()), f(z.approx()), v.passed() ? "feasible" : "unverified");
  j["H"] = int_array(f.phi().spectrum());
  j["orbit"] = omega.is_torus() ? orbit_json(orbit(z)) : Json(nullptr);
  j["witness_polynomial"] = to_json(f.phi());
  Json certs = Json::array();
  certs.push_back({{"bound", "lower"},
                   {"kind", "construction"},
                   {"detail", "f = alpha_z * Delta_eps with checks " + std::string(v.passed() ? "passed" : "failed")}});
  j["certificates"] = certs;
  if (!v.passed()) warnings.push_back("verification failed; see details.checks");
  j["warnings"] = warnings;
  j["closed_form"] = nullptr;
  Json atoms = Json::array();
  for (const auto& a : f.atoms()) {
    atoms.push_back({{"multiple", a.multiple}, {"location", a.location}, {"weight", a.weight}});
  }
  j["details"] = Json{{"domain", to_json(omega)},
                      {"point", to_json(z)},
                      {"epsilon", built.epsilon},
                      {"min_separation", built.min_separation},
                      {"min_interior", built.min_interior},
                      {"expected", expected},
                      {"atoms", atoms},
                      {"checks", Json::array({check_json(v.value_at_zero), check_json(v.value_at_z),
                                              check_json(v.support), check_json(v.positive_definite)})}};

  Section s;
  if (spec.section) {
    s = *spec.section;
  } else {
    for (double c : z.approx()) {
      s.from.push_back(-2.0 * c);
      s.to.push_back(2.0 * c);
    }
    s.count = 401;
  }
  if (s.from.size() != omega.dim() || s.to.size() != omega.dim()) {
    throw SpecError("/params/section", "dimension mismatch");
  }
  std::string csv = "t";
  for (std::size_t i = 0; i < omega.dim(); ++i) csv += ",x" + std::to_string(i + 1);
  csv += ",f\n";
  const auto rows = sample_section(f, s.from, s.to, s.count);
  for (const auto& [t, value] : rows) {
    csv += num(t);
    for (std::size_t i = 0; i < omega.dim(); ++i) csv += "," + num(s.from[i] + t * (s.to[i] - s.from[i]));
    csv += "," + num(value) + "\n";
  }
  out.csv = std::move(csv);
  return out;
}

RunOutput run_delta(const ProblemSpec& spec) {
  const DeltaResult d = delta_search(spec.n, spec.k_max, spec.solver.bracket);
  RunOutput out;
  Json& j = out.report;
  j["mode"] = to_string(spec.mode);
  j["value"] = value_json(d.enclosure.lower, d.enclosure.upper, to_string(d.enclosure.status));
  j["H"] = int_array(d.best_h);
  j["orbit"] = nullptr;
  j["witness_polynomial"] = to_json(d.enclosure.lower_witness);
  j["certificates"] = certificates(d.enclosure);
  j["warnings"] = d.enclosure.warnings;
  j["closed_form"] = nullptr;
  Json cands = Json::array();
  out.csv = "H,lower,upper,status\n";
  for (const auto& c : d.candidates) {
    cands.push_back({{"H", int_array(c.h)},
                     {"lower", c.enclosure.lower},
                     {"upper", c.enclosure.upper},
                     {"status", to_string(c.enclosure.status)}});
    out.csv += index_list(c.h) + "," + num(c.enclosure.lower) + "," + num(c.enclosure.upper) + "," +
               to_string(c.enclosure.status) + "\n";
  }
  j["details"] = Json{{"n", spec.n},
                      {"K", spec.k_max},
                      {"envelope_ok", d.envelope_ok},
                      {"envelope_lower", d.envelope_lower},
                      {"envelope_upper", d.envelope_upper},
                      {"candidates", cands}};
  return out;
}

RunOutput run_limit(const ProblemSpec& spec) {
  const LimitScan scan = limit_scan(*spec.domain, *spec.point, spec.n_list, spec.solver);
  RunOutput out = pointwise_report(spec, scan.space);
  Json rows = Json::array();
  out.csv = "N,alpha,m,lower,upper,status\n";
  for (const auto& r : scan.rows) {
    const Enclosure& e = r.result.enclosure;
    rows.push_back({{"N", r.n},
                    {"alpha", to_json(r.alpha)},
                    {"m", r.m},
                    {"lower", e.lower},
                    {"upper", e.upper},
                    {"status", to_string(e.status)},
                    {"H", int_array(r.result.h)}});
    out.csv += std::to_string(r.n) + "," + to_string(r.alpha) + "," + std::to_string(r.m) + "," + num(e.lower) +
               "," + num(e.upper) + "," + to_string(e.status) + "\n";
  }
  out.report["details"]["rows"] = rows;
  return out;
}

Mode mode_from(const std::string& s, const std::string& path) {
  if (s == "space") return Mode::Space;
  if (s == "torus") return Mode::Torus;
  if (s == "solve-h") return Mode::SolveH;
  if (s == "construct") return Mode::Construct;
  if (s == "delta") return Mode::Delta;
  if (s == "limit-scan") return Mode::LimitScan;
  throw SpecError(path, "unknown mode '" + s + "'");
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

// --- scalars, sets, points -----------------------------------------------------

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return at_path(path, [&] { return parse_rational(j.get<std::string>()); });
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  // A JSON number like 0.3 means the decimal 3/10, not the nearest double;
  // the shortest round-trip text recovers the decimal.
  if (j.is_number_float()) return at_path(path, [&] { return parse_rational(j.dump()); });
  throw SpecError(path, "expected a rational (\"p/q\" string or number)");
}

Json to_json(const IndexSet& h) {
  Json j;
  j["kind"] = "general";
  switch (h.base_kind()) {
    case IndexSet::BaseKind::Empty: j["base"] = "empty"; break;
    case IndexSet::BaseKind::Full: j["base"] = "full"; break;
    case IndexSet::BaseKind::Residues: j["base"] = "residues"; break;
  }
  if (h.base_kind() == IndexSet::BaseKind::Residues) {
    j["modulus"] = h.modulus();
    Json r = Json::array();
    for (std::int64_t i = 0; i < h.modulus(); ++i) {
      if (h.residue_mask()[static_cast<std::size_t>(i)]) r.push_back(i);
    }
    j["residues"] = r;
  }
  j["include"] = Json(std::vector<std::int64_t>(h.include().begin(), h.include().end()));
  j["exclude"] = Json(std::vector<std::int64_t>(h.exclude().begin(), h.exclude().end()));
  return j;
}

IndexSet index_set_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) {
    const auto elems = int_set(j, path);
    return at_path(path, [&] { return IndexSet::finite(elems); });
  }
  if (!j.is_object()) throw SpecError(path, "expected an index-set object or an array");
  const std::string kind = get_string(required(j, path, "kind"), join(path, "kind"));
  auto n_of = [&](const char* key) {
    return get_int(required(j, path, key), join(path, key), std::numeric_limits<std::int64_t>::min() / 4,
                   std::numeric_limits<std::int64_t>::max() / 4);
  };
  return at_path(path, [&]() -> IndexSet {
    if (kind == "finite") {
      check_object(j, path, {"kind", "elements"});
      return IndexSet::finite(int_set(required(j, path, "elements"), join(path, "elements")));
    }
    if (kind == "range") {
      check_object(j, path, {"kind", "lo", "hi"});
      return IndexSet::range(n_of("lo"), n_of("hi"));
    }
    if (kind == "singleton" || kind == "all_but" || kind == "above") {
      check_object(j, path, {"kind", "n"});
      const std::int64_t n = n_of("n");
      if (kind == "singleton") return IndexSet::singleton(n);
      if (kind == "all_but") return IndexSet::all_but(n);
      return IndexSet::above(n);
    }
    if (kind == "even" || kind == "odd" || kind == "empty" || kind == "full") {
      check_object(j, path, {"kind"});
      if (kind == "even") return IndexSet::even();
      if (kind == "odd") return IndexSet::odd();
      if (kind == "empty") return IndexSet::empty();
      return IndexSet::full();
    }
    auto residue_list = [&](std::int64_t modulus) {
      const Json& r = required(j, path, "residues");
      if (!r.is_array()) throw SpecError(join(path, "residues"), "expected an array");
      std::vector<std::int64_t> out;
      for (std::size_t i = 0; i < r.size(); ++i) out.push_back(get_int(r[i], join(join(path, "residues"), i), 0, modulus - 1));
      return out;
    };
    if (kind == "residues") {
      check_object(j, path, {"kind", "modulus", "residues"});
      const std::int64_t mod = get_int(required(j, path, "modulus"), join(path, "modulus"), 1, 1 << 20);
      return IndexSet::residues(mod, residue_list(mod));
    }
    if (kind == "general") {
      check_object(j, path, {"kind", "base", "modulus", "residues", "include", "exclude"});
      const std::string base = get_string(required(j, path, "base"), join(path, "base"));
      auto set_of = [&](const char* key) {
        return j.contains(key) ? int_set(j[key], join(path, key)) : std::set<std::int64_t>{};
      };
      if (base == "empty" || base == "full") {
        if (j.contains("modulus") || j.contains("residues")) {
          throw SpecError(path, "modulus/residues only apply to base \"residues\"");
        }
        return IndexSet::make(base == "empty" ? IndexSet::BaseKind::Empty : IndexSet::BaseKind::Full, 1, {},
                              set_of("include"), set_of("exclude"));
      }
      if (base != "residues") throw SpecError(join(path, "base"), "expected empty, full or residues");
      const std::int64_t mod = get_int(required(j, path, "modulus"), join(path, "modulus"), 1, 1 << 20);
      std::vector<bool> mask(static_cast<std::size_t>(mod), false);
      for (auto r : residue_list(mod)) mask[static_cast<std::size_t>(r)] = true;
      return IndexSet::make(IndexSet::BaseKind::Residues, mod, mask, set_of("include"), set_of("exclude"));
    }
    throw SpecError(join(path, "kind"), "unknown index-set kind '" + kind + "'");
  });
}

Json to_json(const Point& p) {
  if (p.is_exact()) return rational_array(p.coords());
  Json j;
  j["coords"] = p.approx();
  j["irrational"] = p.irrational();
  return j;
}

Point point_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) return Point::rational(rational_vector(j, path));
  check_object(j, path, {"coords", "irrational"});
  const auto coords = double_vector(required(j, path, "coords"), join(path, "coords"));
  bool irrational = false;
  if (j.contains("irrational")) {
    if (!j["irrational"].is_boolean()) throw SpecError(join(path, "irrational"), "expected a boolean");
    irrational = j["irrational"].get<bool>();
  }
  return Point::real(coords, irrational);
}

Json to_json(const Domain& d) {
  Json j;
  j["space"] = d.is_torus() ? "torus" : "euclidean";
  j["dim"] = d.dim();
  j["shape"] = shape_to_json(d.shape());
  return j;
}

Domain domain_from_json(const Json& j, const std::string& path) {
  check_object(j, path, {"space", "dim", "shape"});
  const std::string space = get_string(required(j, path, "space"), join(path, "space"));
  if (space != "euclidean" && space != "torus") throw SpecError(join(path, "space"), "expected euclidean or torus");
  const auto dim = static_cast<std::size_t>(get_int(required(j, path, "dim"), join(path, "dim"), 1, 64));
  ShapePtr shape = shape_from_json(required(j, path, "shape"), join(path, "shape"), dim);
  return at_path(path, [&] { return Domain(space == "torus" ? SpaceKind::Torus : SpaceKind::Euclidean, dim, shape); });
}

Json to_json(const CosinePolynomial& phi) {
  Json c = Json::object();
  for (const auto& [k, a] : phi.coeffs()) c[std::to_string(k)] = a;
  return Json{{"constant", phi.constant()}, {"coefficients", c}};
}

CosinePolynomial polynomial_from_json(const Json& j, const std::string& path) {
  check_object(j, path, {"constant", "coefficients"});
  const double c0 = j.contains("constant") ? get_double(j["constant"], join(path, "constant")) : 1.0;
  std::map<std::int64_t, double> coeffs;
  const Json& cj = required(j, path, "coefficients");
  if (!cj.is_object()) throw SpecError(join(path, "coefficients"), "expected an object keyed by frequency");
  for (const auto& item : cj.items()) {
    const std::string p = join(join(path, "coefficients"), item.key());
    std::size_t used = 0;
    std::int64_t k = 0;
    try {
      k = std::stoll(item.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.key().size() || k < 1) throw SpecError(p, "frequency keys must be integers >= 1");
    coeffs[k] = get_double(item.value(), p);
  }
  return CosinePolynomial(c0, std::move(coeffs));
}

Json to_json(const Enclosure& e) {
  Json j = value_json(e.lower, e.upper, to_string(e.status));
  j["upper_certificate"] = e.upper_certificate.describe();
  return j;
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Space: return "space";
    case Mode::Torus: return "torus";
    case Mode::SolveH: return "solve-h";
    case Mode::Construct: return "construct";
    case Mode::Delta: return "delta";
    case Mode::LimitScan: return "limit-scan";
  }
  return "?";
}

// --- problem files ------------------------------------------------------------

ProblemSpec parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(column),
                    "malformed JSON (" + std::string(e.what()) + ")");
  }
  check_object(j, "", {"mode", "domain", "point", "index_set", "solver_cfg", "outputs", "params"});
  ProblemSpec spec;
  spec.mode = mode_from(get_string(required(j, "", "mode"), "/mode"), "/mode");

  const bool needs_geometry = spec.mode != Mode::SolveH && spec.mode != Mode::Delta;
  if (needs_geometry) {
    spec.domain = domain_from_json(required(j, "", "domain"), "/domain");
    spec.point = point_from_json(required(j, "", "point"), "/point");
    if (spec.point->dim() != spec.domain->dim()) throw SpecError("/point", "dimension differs from the domain");
    const bool torus = spec.domain->is_torus();
    if (spec.mode == Mode::Space && torus) throw SpecError("/domain/space", "space mode needs a euclidean domain");
    if (spec.mode == Mode::Torus && !torus) throw SpecError("/domain/space", "torus mode needs a torus domain");
    if (spec.mode == Mode::LimitScan && torus) throw SpecError("/domain/space", "limit-scan needs a euclidean domain");
  } else {
    for (const char* key : {"domain", "point"}) {
      if (j.contains(key)) throw SpecError(join("", key), "not used by mode " + to_string(spec.mode));
    }
  }
  if (spec.mode == Mode::SolveH) {
    spec.index_set = index_set_from_json(required(j, "", "index_set"), "/index_set");
  } else if (j.contains("index_set")) {
    throw SpecError("/index_set", "only used by mode solve-h");
  }

  if (j.contains("solver_cfg")) {
    const Json& c = j["solver_cfg"];
    check_object(c, "/solver_cfg", {"N_trunc", "m_grid", "N_samples", "arithmetic"});
    BracketConfig& b = spec.solver.bracket;
    if (c.contains("N_trunc")) b.n_trunc = get_int(c["N_trunc"], "/solver_cfg/N_trunc", 2, 4096);
    if (c.contains("m_grid")) {
      b.m_grid = get_int(c["m_grid"], "/solver_cfg/m_grid", 0, kMaxGrid);
      if (b.m_grid != 0 && b.m_grid < 2 * b.n_trunc + 1) {
        throw SpecError("/solver_cfg/m_grid", "must be 0 (automatic) or at least 2 N_trunc + 1");
      }
    }
    if (c.contains("N_samples")) b.n_samples = get_int(c["N_samples"], "/solver_cfg/N_samples", 256, 1 << 24);
    if (c.contains("arithmetic")) {
      const std::string a = get_string(c["arithmetic"], "/solver_cfg/arithmetic");
      if (a == "float") spec.solver.arithmetic = lp::Arithmetic::Float;
      else if (a == "rational") spec.solver.arithmetic = lp::Arithmetic::Rational;
      else throw SpecError("/solver_cfg/arithmetic", "expected float or rational");
    }
  }

  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    check_object(o, "/outputs", {"report_path", "csv_path"});
    if (o.contains("report_path")) spec.report_path = get_string(o["report_path"], "/outputs/report_path");
    if (o.contains("csv_path")) spec.csv_path = get_string(o["csv_path"], "/outputs/csv_path");
  }

  const Json params = j.contains("params") ? j["params"] : Json::object();
  const std::string pp = "/params";
  switch (spec.mode) {
    case Mode::Space:
      check_object(params, pp, {});
      break;
    case Mode::Torus:
      check_object(params, pp, {"structure"});
      if (params.contains("structure")) spec.structure = index_set_from_json(params["structure"], pp + "/structure");
      break;
    case Mode::SolveH:
      check_object(params, pp, {"m"});
      if (params.contains("m")) spec.m = get_int(params["m"], pp + "/m", 2, kMaxGrid);
      break;
    case Mode::Construct:
      check_object(params, pp, {"phi", "epsilon", "section"});
      if (params.contains("phi")) spec.phi = polynomial_from_json(params["phi"], pp + "/phi");
      if (params.contains("epsilon")) {
        spec.epsilon = get_double(params["epsilon"], pp + "/epsilon");
        if (!(*spec.epsilon > 0.0)) throw SpecError(pp + "/epsilon", "must be positive");
      }
      if (params.contains("section")) {
        const Json& s = params["section"];
        const std::string sp = pp + "/section";
        check_object(s, sp, {"from", "to", "count"});
        Section sec;
        sec.from = double_vector(required(s, sp, "from"), sp + "/from");
        sec.to = double_vector(required(s, sp, "to"), sp + "/to");
        if (s.contains("count")) sec.count = static_cast<std::size_t>(get_int(s["count"], sp + "/count", 2, 1 << 20));
        if (sec.from.size() != spec.domain->dim() || sec.to.size() != spec.domain->dim()) {
          throw SpecError(sp, "dimension differs from the domain");
        }
        spec.section = sec;
      }
      break;
    case Mode::Delta:
      check_object(params, pp, {"n", "K"});
      spec.n = static_cast<int>(get_int(required(params, pp, "n"), pp + "/n", 1, 4));
      spec.k_max = get_int(required(params, pp, "K"), pp + "/K", 2, 16);
      if (spec.k_max - 1 < spec.n) throw SpecError(pp + "/K", "[2, K] has fewer than n elements");
      break;
    case Mode::LimitScan: {
      check_object(params, pp, {"N_list"});
      const Json& l = required(params, pp, "N_list");
      if (!l.is_array() || l.empty()) throw SpecError(pp + "/N_list", "expected a non-empty array");
      for (std::size_t i = 0; i < l.size(); ++i) spec.n_list.push_back(get_int(l[i], join(pp + "/N_list", i), 1, 4096));
      break;
    }
  }
  return spec;
}

RunOutput run_spec(const ProblemSpec& spec) {
  switch (spec.mode) {
    case Mode::Space:
      return pointwise_report(spec, pointwise_space(*spec.domain, *spec.point, spec.solver));
    case Mode::Torus: {
      RunOutput out = pointwise_report(spec, pointwise_torus(*spec.domain, *spec.point, spec.solver, spec.structure));
      if (spec.structure) out.report["details"]["structure"] = to_json(*spec.structure);
      return out;
    }
    case Mode::SolveH:
      return run_solve_h(spec);
    case Mode::Construct:
      return run_construct(spec);
    case Mode::Delta:
      return run_delta(spec);
    case Mode::LimitScan:
      return run_limit(spec);
  }
  throw std::logic_error("unhandled mode");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace turan
