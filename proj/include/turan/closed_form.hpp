#pragma once

#include "turan/index_set.hpp"
#include "turan/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace turan {

/// Symbolic value  coefficient * prod_q cos(pi/q)^e_q * pi^pi_power.
/// Products stay symbolic, so identities such as M(H) M(complement) = 2 can
/// be checked exactly.
struct SymbolicValue {
  Rational coefficient = 1;
  std::map<std::int64_t, int> cos_powers;
  int pi_power = 0;

  double value() const;
  std::string expression() const;

  friend SymbolicValue operator*(const SymbolicValue& a, const SymbolicValue& b);
  friend bool operator==(const SymbolicValue& a, const SymbolicValue& b);
};

struct ClosedForm {
  SymbolicValue value;
  /// Short name of the matched family, e.g. "interval[2,4]" or "odd".
  std::string source;
};

/// Known values of M(H): [2,n], the empty set, {n}, N2\{n}, (n,inf), odd,
/// even and the full set. Intervals are matched before singletons and tails
/// before punctured sets, so {2} and N2\{2} resolve consistently.
std::optional<ClosedForm> closed_form(const IndexSet& h);

}  // namespace turan
