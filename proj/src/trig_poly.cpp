#include "turan/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace turan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(2 pi num / den) for 0 <= num <= den / 2.
double cos_folded(std::int64_t num, std::int64_t den) {
  if (num == 0) return 1.0;
  if (4 * num == den) return 0.0;
  if (2 * num == den) return -1.0;
  if (4 * num > den) return -cos_folded(den - 2 * num, 2 * den);
  if (6 * num == den) return 0.5;
  if (8 * num == den) return std::sqrt(0.5);
  if (8 * num < den) return std::cos(kTwoPi * static_cast<double>(num) / static_cast<double>(den));
  return std::sin(kTwoPi * static_cast<double>(den - 4 * num) / static_cast<double>(4 * den));
}

// Rounding allowance for sum_k |a_k| (2 pi k)^power cos(...): covers table
// lookups, direct evaluation and the rotation recurrence in jet(), whose
// error grows linearly in k.
double evaluation_slack(const CosinePolynomial& phi, int power = 0) {
  double s = 0.0;
  for (const auto& [k, a] : phi.coeffs()) {
    const double kk = static_cast<double>(k);
    s += std::abs(a) * std::pow(kTwoPi * kk, power) * (kk + 1.0);
  }
  return 16.0 * std::numeric_limits<double>::epsilon() * s * (1.0 + std::log2(1.0 + phi.degree()));
}

struct Jet {
  double value, d1, d2;
};

// phi, phi', phi'' at t. Dense spectra step through cos/sin(2 pi k t) by
// repeated rotation; sparse ones evaluate each term directly.
Jet jet(const CosinePolynomial& phi, double t) {
  Jet out{phi.constant(), 0.0, 0.0};
  const auto& coeffs = phi.coeffs();
  if (coeffs.empty()) return out;
  auto add = [&](std::int64_t k, double a, double c, double s) {
    const double w = kTwoPi * static_cast<double>(k);
    out.value += a * c;
    out.d1 -= a * w * s;
    out.d2 -= a * w * w * c;
  };
  const std::int64_t degree = coeffs.rbegin()->first;
  if (degree > 4 * static_cast<std::int64_t>(coeffs.size()) + 16) {
    for (const auto& [k, a] : coeffs) {
      double x = static_cast<double>(k) * t;
      x -= std::nearbyint(x);
      add(k, a, std::cos(kTwoPi * x), std::sin(kTwoPi * x));
    }
    return out;
  }
  double x = t - std::nearbyint(t);
  const double wc = std::cos(kTwoPi * x), ws = std::sin(kTwoPi * x);
  double c = 1.0, s = 0.0;
  std::int64_t k = 0;
  for (const auto& [kk, a] : coeffs) {
    while (k < kk) {
      const double nc = c * wc - s * ws;
      s = s * wc + c * ws;
      c = nc;
      ++k;
    }
    add(kk, a, c, s);
  }
  return out;
}

// phi(j / n) for j = 0..count-1 via an exact-index cosine table.
std::vector<double> uniform_samples(const CosinePolynomial& phi, std::int64_t n, std::int64_t count) {
  std::vector<double> table(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) table[static_cast<std::size_t>(r)] = cos_two_pi_fraction(r, n);
  std::vector<double> out(static_cast<std::size_t>(count), phi.constant());
  for (const auto& [k, a] : phi.coeffs()) {
    std::int64_t step = k % n;
    std::int64_t idx = 0;
    for (std::int64_t j = 0; j < count; ++j) {
      out[static_cast<std::size_t>(j)] += a * table[static_cast<std::size_t>(idx)];
      idx += step;
      if (idx >= n) idx -= n;
    }
  }
  return out;
}

}  // namespace

CosinePolynomial::CosinePolynomial(double constant, std::map<std::int64_t, double> coeffs)
    : constant_(constant) {
  for (const auto& [k, a] : coeffs) set_coeff(k, a);
}

double CosinePolynomial::coeff(std::int64_t k) const {
  if (k == 0) return constant_;
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void CosinePolynomial::set_coeff(std::int64_t k, double value) {
  if (k < 0) throw std::invalid_argument("cosine coefficients are indexed by k >= 0");
  if (k == 0) {
    constant_ = value;
    return;
  }
  if (value == 0.0) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = value;
  }
}

std::int64_t CosinePolynomial::degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

std::vector<std::int64_t> CosinePolynomial::spectrum() const {
  std::vector<std::int64_t> out;
  for (const auto& [k, a] : coeffs_) {
    if (k >= 2) out.push_back(k);
  }
  return out;
}

std::vector<std::int64_t> CosinePolynomial::full_spectrum() const {
  std::vector<std::int64_t> out{-1, 0, 1};
  for (std::int64_t k : spectrum()) {
    out.push_back(k);
    out.push_back(-k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CosinePolynomial CosinePolynomial::shifted_normalized(double shift) const {
  const double scale = 1.0 / (constant_ + shift);
  CosinePolynomial out(1.0);
  for (const auto& [k, a] : coeffs_) out.set_coeff(k, a * scale);
  return out;
}

double CosinePolynomial::weighted_l1(int power) const {
  double s = 0.0;
  for (const auto& [k, a] : coeffs_) s += std::pow(static_cast<double>(k), power) * std::abs(a);
  return s;
}

double evaluate(const CosinePolynomial& phi, double t) {
  double s = phi.constant();
  for (const auto& [k, a] : phi.coeffs()) {
    double x = static_cast<double>(k) * t;
    x -= std::nearbyint(x);
    s += a * std::cos(kTwoPi * x);
  }
  return s;
}

double derivative(const CosinePolynomial& phi, double t, int order) {
  double s = 0.0;
  for (const auto& [k, a] : phi.coeffs()) {
    double x = static_cast<double>(k) * t;
    x -= std::nearbyint(x);
    const double w = kTwoPi * static_cast<double>(k);
    switch (order) {
      case 1:
        s -= a * w * std::sin(kTwoPi * x);
        break;
      case 2:
        s -= a * w * w * std::cos(kTwoPi * x);
        break;
      default:
        throw std::invalid_argument("derivative order must be 1 or 2");
    }
  }
  return s;
}

double cos_two_pi_fraction(std::int64_t r, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("cos_two_pi_fraction needs m > 0");
  r %= m;
  if (r < 0) r += m;
  if (2 * r > m) r = m - r;
  return cos_folded(r, m);
}

std::vector<double> grid_values(const CosinePolynomial& phi, std::int64_t m) {
  if (m < 2) throw std::domain_error("grid_values requires m >= 2");
  return uniform_samples(phi, m, m);
}

double grid_coefficient(const std::vector<double>& values, std::int64_t k) {
  const auto m = static_cast<std::int64_t>(values.size());
  if (m < 2 || k < 0 || 2 * k > m) throw std::domain_error("grid_coefficient requires 0 <= k <= m/2");
  double s = 0.0;
  for (std::int64_t j = 0; j < m; ++j) {
    s += values[static_cast<std::size_t>(j)] * cos_two_pi_fraction((k * j) % m, m);
  }
  if (k == 0 || 2 * k == m) return s / static_cast<double>(m);
  return 2.0 * s / static_cast<double>(m);
}

MinBound certified_min(const CosinePolynomial& phi, std::int64_t n_samples, double refine_tol) {
  if (n_samples < 2) throw std::invalid_argument("certified_min needs at least 2 samples");
  const double l1 = kTwoPi * phi.weighted_l1(1);
  const double l2 = kTwoPi * kTwoPi * phi.weighted_l1(2);
  const double l3 = kTwoPi * kTwoPi * kTwoPi * phi.weighted_l1(3);
  const double slack = evaluation_slack(phi);
  const double slack1 = evaluation_slack(phi, 1);
  const double slack2 = evaluation_slack(phi, 2);

  // phi is even and 1-periodic: cells covering [0, 1/2] suffice.
  const std::int64_t half = n_samples / 2 + 1;
  std::vector<double> v = uniform_samples(phi, n_samples, half + 1);

  // A cell is first bounded from its endpoint values. When it comes up for
  // refinement its midpoint jet gives a Taylor bound (phi'' varies by at most
  // l3 |s|); only if that is still the lowest bound is the cell bisected.
  struct Cell {
    double lower;
    double a, b;
    double va, vb;
    bool expanded;
    double vm;  // midpoint value once expanded
    bool operator<(const Cell& o) const { return lower > o.lower; }
  };
  auto cell_bound = [&](double va, double vb, double h) {
    double first = 0.5 * (va + vb) - 0.5 * l1 * h;
    double second = std::min(va, vb) - l2 * h * h / 8.0;
    return std::max(first, second);
  };
  auto taylor_bound = [&](const Jet& j, double r) {
    const double curv = j.d2 - l3 * r;
    auto q = [&](double u) { return j.value + j.d1 * u + 0.5 * curv * u * u; };
    double lo = std::min(q(-r), q(r));
    if (curv > 0.0 && std::abs(j.d1) < curv * r) lo = std::min(lo, j.value - j.d1 * j.d1 / (2.0 * curv));
    return lo - slack1 * r - 0.5 * slack2 * r * r;
  };

  MinBound out;
  out.sampled_min = v[0];
  out.argmin = 0.0;
  for (std::int64_t j = 0; j <= half; ++j) {
    if (v[static_cast<std::size_t>(j)] < out.sampled_min) {
      out.sampled_min = v[static_cast<std::size_t>(j)];
      out.argmin = static_cast<double>(j) / static_cast<double>(n_samples);
    }
  }

  const double h = 1.0 / static_cast<double>(n_samples);
  std::priority_queue<Cell> cells;
  for (std::int64_t j = 0; j < half; ++j) {
    const double va = v[static_cast<std::size_t>(j)];
    const double vb = v[static_cast<std::size_t>(j + 1)];
    cells.push({cell_bound(va, vb, h), static_cast<double>(j) * h, static_cast<double>(j + 1) * h, va, vb, false, 0.0});
  }

  if (refine_tol > 0.0) {
    std::int64_t budget = 4'000'000;
    while (!cells.empty() && budget-- > 0) {
      Cell top = cells.top();
      if (top.lower >= out.sampled_min - refine_tol) break;
      cells.pop();
      const double mid = 0.5 * (top.a + top.b);
      const double hh = 0.5 * (top.b - top.a);
      if (!top.expanded) {
        const Jet jm = jet(phi, mid);
        if (jm.value < out.sampled_min) {
          out.sampled_min = jm.value;
          out.argmin = mid;
        }
        top.lower = std::max(top.lower, taylor_bound(jm, hh));
        top.expanded = true;
        top.vm = jm.value;
        cells.push(top);
        continue;
      }
      const double vm = top.vm;
      cells.push({std::max(top.lower, cell_bound(top.va, vm, hh)), top.a, mid, top.va, vm, false, 0.0});
      cells.push({std::max(top.lower, cell_bound(vm, top.vb, hh)), mid, top.b, vm, top.vb, false, 0.0});
    }
  }

  double lowest = cells.empty() ? out.sampled_min : cells.top().lower;
  out.certified_lower = std::min(lowest, out.sampled_min) - slack;
  return out;
}

std::vector<double> negative_local_minima(const CosinePolynomial& phi, std::int64_t n_samples,
                                          double threshold, std::size_t max_count) {
  const std::int64_t half = n_samples / 2;
  std::vector<double> v = uniform_samples(phi, n_samples, half + 2);
  const double h = 1.0 / static_cast<double>(n_samples);
  std::vector<std::pair<double, double>> found;
  for (std::int64_t j = 0; j <= half; ++j) {
    const double left = j == 0 ? v[1] : v[static_cast<std::size_t>(j - 1)];
    const double right = v[static_cast<std::size_t>(j + 1)];
    const double here = v[static_cast<std::size_t>(j)];
    if (here > left || here > right) continue;
    double t = static_cast<double>(j) * h;
    for (int it = 0; it < 30; ++it) {
      const Jet j3 = jet(phi, t);
      const double d1 = j3.d1;
      const double d2 = j3.d2;
      if (d2 <= 0.0) break;
      double next = std::clamp(t - d1 / d2, static_cast<double>(j - 1) * h, static_cast<double>(j + 1) * h);
      next = std::clamp(next, 0.0, 0.5);
      if (std::abs(next - t) < 1e-16) break;
      t = next;
    }
    double value = evaluate(phi, t);
    if (value > here) {
      t = static_cast<double>(j) * h;
      value = here;
    }
    if (value < threshold) found.emplace_back(value, t);
  }
  std::sort(found.begin(), found.end());
  std::vector<double> out;
  for (const auto& [value, t] : found) {
    bool duplicate = false;
    for (double u : out) duplicate = duplicate || std::abs(u - t) < 0.25 * h;
    if (!duplicate) out.push_back(t);
    if (out.size() >= max_count) break;
  }
  return out;
}

CosinePolynomial witness_zinomega(std::int64_t m) {
  if (m < 2) throw std::domain_error("witness_zinomega requires m >= 2");
  CosinePolynomial phi(1.0);
  std::map<std::int64_t, double> c;
  for (std::int64_t k = 1; k <= (m - 1) / 2; ++k) c[k] += 1.0;
  for (std::int64_t k = 1; k <= m / 2; ++k) c[k] += 1.0;
  for (const auto& [k, a] : c) phi.set_coeff(k, a);
  return phi;
}

CosinePolynomial witness_evencase(std::int64_t m) {
  if (m < 4 || m % 2 != 0) throw std::domain_error("witness_evencase requires an even m >= 4");
  const std::int64_t n = m / 2;
  CosinePolynomial phi(1.0);
  for (std::int64_t k = 1; k < n; ++k) phi.set_coeff(k, 1.0 + cos_two_pi_fraction(k, 2 * n));
  return phi;
}

}  // namespace turan
