#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace turan {

/// phi(t) = constant + sum_k a_k cos(2 pi k t), with a_1 playing the role of
/// lambda and a_k (k >= 2) the free coefficients c_k. Cosine (not exponential)
/// convention: the exponential coefficient at +-k is a_k / 2.
class CosinePolynomial {
 public:
  CosinePolynomial() = default;
  explicit CosinePolynomial(double constant, std::map<std::int64_t, double> coeffs = {});

  double constant() const { return constant_; }
  const std::map<std::int64_t, double>& coeffs() const { return coeffs_; }
  double coeff(std::int64_t k) const;
  double lambda() const { return coeff(1); }
  void set_coeff(std::int64_t k, double value);

  std::int64_t degree() const;
  /// {k >= 2 : a_k != 0}.
  std::vector<std::int64_t> spectrum() const;
  /// {-1, 0, 1} united with +-spectrum(), ascending.
  std::vector<std::int64_t> full_spectrum() const;

  /// (phi + shift) / (1 + shift): keeps the constant term normalized.
  CosinePolynomial shifted_normalized(double shift) const;

  /// sum_k k^power |a_k|.
  double weighted_l1(int power) const;

 private:
  double constant_ = 1.0;
  std::map<std::int64_t, double> coeffs_;
};

double evaluate(const CosinePolynomial& phi, double t);

/// phi'(t) and phi''(t).
double derivative(const CosinePolynomial& phi, double t, int order);

/// cos(2 pi r / m) evaluated by octant reduction so that symmetric grid
/// entries agree bit-for-bit and the values at 0, 1/6, 1/4, 1/3, 1/2 are
/// exact.
double cos_two_pi_fraction(std::int64_t r, std::int64_t m);

/// [phi(j/m)] for j = 0..m-1.
std::vector<double> grid_values(const CosinePolynomial& phi, std::int64_t m);

/// Coefficient a_k recovered from grid values v_j = phi(j/m):
/// (2/m) sum v_j cos(2 pi j k/m) for 1 <= k < m/2, (1/m) sum v_j (-1)^j for
/// k = m/2, and the mean for k = 0.
double grid_coefficient(const std::vector<double>& values, std::int64_t k);

struct MinBound {
  double certified_lower = 0.0;  // <= min over [0, 1)
  double sampled_min = 0.0;      // >= min over [0, 1)
  double argmin = 0.0;           // sample attaining sampled_min
};

/// Certified two-sided bound on min_t phi(t) from samples at j / n_samples.
/// Every sampling cell is bounded below by the better of a first-derivative
/// (L1 = 2 pi sum k|a_k|) and a second-derivative (L2 = 4 pi^2 sum k^2 |a_k|)
/// estimate, so the result is never worse than sampled_min - L1 / (2 n).
/// When refine_tol > 0, cells whose bound falls more than refine_tol below the
/// best sampled value are refined (a Taylor bound at the midpoint, then
/// bisection) until that gap closes.
MinBound certified_min(const CosinePolynomial& phi, std::int64_t n_samples, double refine_tol = 0.0);

/// Local minimizers of phi on [0, 1/2] with phi < threshold, polished by
/// Newton steps; sorted by value, at most max_count of them.
std::vector<double> negative_local_minima(const CosinePolynomial& phi, std::int64_t n_samples,
                                          double threshold, std::size_t max_count);

/// 1 + sum_{k=1}^{[(m-1)/2]} cos 2 pi k t + sum_{k=1}^{[m/2]} cos 2 pi k t;
/// its grid values at j/m are m at j = 0 and 0 elsewhere.
CosinePolynomial witness_zinomega(std::int64_t m);

/// For even m = 2n: 1 + sum_{k=1}^{n-1} (1 + cos(pi k / n)) cos 2 pi k t,
/// extremal for the grid problem with spectrum [2, m/2).
CosinePolynomial witness_evencase(std::int64_t m);

}  // namespace turan
