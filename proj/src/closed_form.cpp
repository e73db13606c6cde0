#include "turan/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace turan {

double SymbolicValue::value() const {
  double v = coefficient.get_d();
  for (const auto& [q, e] : cos_powers) v *= std::pow(std::cos(std::numbers::pi / static_cast<double>(q)), e);
  return v * std::pow(std::numbers::pi, pi_power);
}

std::string SymbolicValue::expression() const {
  std::ostringstream os;
  os << to_string(coefficient);
  for (const auto& [q, e] : cos_powers) {
    os << " * cos(pi/" << q << ")";
    if (e != 1) os << "^" << e;
  }
  if (pi_power != 0) {
    os << " * pi";
    if (pi_power != 1) os << "^" << pi_power;
  }
  return os.str();
}

SymbolicValue operator*(const SymbolicValue& a, const SymbolicValue& b) {
  SymbolicValue out = a;
  out.coefficient *= b.coefficient;
  out.pi_power += b.pi_power;
  for (const auto& [q, e] : b.cos_powers) {
    int& slot = out.cos_powers[q];
    slot += e;
    if (slot == 0) out.cos_powers.erase(q);
  }
  return out;
}

bool operator==(const SymbolicValue& a, const SymbolicValue& b) {
  return a.coefficient == b.coefficient && a.cos_powers == b.cos_powers && a.pi_power == b.pi_power;
}

namespace {

SymbolicValue make(Rational coefficient, std::int64_t q = 0, int cos_power = 0, int pi_power = 0) {
  SymbolicValue v;
  v.coefficient = std::move(coefficient);
  if (q > 0 && cos_power != 0) v.cos_powers[q] = cos_power;
  v.pi_power = pi_power;
  return v;
}

// Largest n with {2..n} equal to the given sorted set, or 0.
std::int64_t initial_segment_end(const std::set<std::int64_t>& s) {
  if (s.empty() || *s.begin() != 2) return 0;
  std::int64_t expected = 2;
  for (std::int64_t k : s) {
    if (k != expected) return 0;
    ++expected;
  }
  return expected - 1;
}

#ifdef TURAN_NEGATIVE_CONTROL
// Deliberately corrupted table entries, used to check that the self test
// notices a broken registry.
const Rational kEvenCoefficient(1, 3);
const Rational kOddCoefficient(4);
#else
const Rational kEvenCoefficient(1, 2);
const Rational kOddCoefficient(4);
#endif

}  // namespace

std::optional<ClosedForm> closed_form(const IndexSet& h) {
  using Kind = IndexSet::BaseKind;
  switch (h.base_kind()) {
    case Kind::Empty: {
      const auto& s = h.include();
      if (s.empty()) return ClosedForm{make(1), "empty"};
      if (std::int64_t n = initial_segment_end(s)) {
        return ClosedForm{make(2, n + 2, 1), "interval[2," + std::to_string(n) + "]"};
      }
      if (s.size() == 1) {
        std::int64_t n = *s.begin();
        return ClosedForm{make(1, 2 * n, -1), "singleton{" + std::to_string(n) + "}"};
      }
      return std::nullopt;
    }
    case Kind::Full: {
      const auto& s = h.exclude();
      if (s.empty()) return ClosedForm{make(2), "full"};
      if (std::int64_t n = initial_segment_end(s)) {
        return ClosedForm{make(1, n + 2, -1), "tail(" + std::to_string(n) + ",inf)"};
      }
      if (s.size() == 1) {
        std::int64_t n = *s.begin();
        return ClosedForm{make(2, 2 * n, 1), "all-but{" + std::to_string(n) + "}"};
      }
      return std::nullopt;
    }
    case Kind::Residues: {
      if (h.modulus() != 2 || !h.include().empty() || !h.exclude().empty()) return std::nullopt;
      if (h.residue_mask()[0]) return ClosedForm{make(kEvenCoefficient, 0, 0, 1), "even"};
      return ClosedForm{make(kOddCoefficient, 0, 0, -1), "odd"};
    }
  }
  return std::nullopt;
}

}  // namespace turan
