#include "turan/index_set.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace turan {

IndexSet::IndexSet() = default;

IndexSet IndexSet::empty() { return IndexSet(); }

IndexSet IndexSet::full() { return make(BaseKind::Full, 1, {true}, {}, {}); }

IndexSet IndexSet::residues(std::int64_t modulus, const std::vector<std::int64_t>& residues) {
  if (modulus < 1) throw std::invalid_argument("residue modulus must be positive");
  std::vector<bool> mask(static_cast<std::size_t>(modulus), false);
  for (std::int64_t r : residues) {
    std::int64_t rr = ((r % modulus) + modulus) % modulus;
    mask[static_cast<std::size_t>(rr)] = true;
  }
  return make(BaseKind::Residues, modulus, std::move(mask), {}, {});
}

IndexSet IndexSet::finite(const std::set<std::int64_t>& elements, std::int64_t cap) {
  return make(BaseKind::Empty, 1, {false}, elements, {}, cap);
}

IndexSet IndexSet::range(std::int64_t lo, std::int64_t hi) {
  std::set<std::int64_t> s;
  for (std::int64_t k = std::max<std::int64_t>(lo, 2); k <= hi; ++k) s.insert(k);
  return finite(s);
}

IndexSet IndexSet::singleton(std::int64_t n) { return finite({n}); }

IndexSet IndexSet::all_but(std::int64_t n) { return make(BaseKind::Full, 1, {true}, {}, {n}); }

IndexSet IndexSet::above(std::int64_t n) {
  std::set<std::int64_t> ex;
  for (std::int64_t k = 2; k <= n; ++k) ex.insert(k);
  return make(BaseKind::Full, 1, {true}, {}, ex);
}

IndexSet IndexSet::even() { return residues(2, {0}); }

IndexSet IndexSet::odd() { return residues(2, {1}); }

IndexSet IndexSet::make(BaseKind kind, std::int64_t modulus, std::vector<bool> residue_mask,
                        std::set<std::int64_t> include, std::set<std::int64_t> exclude,
                        std::int64_t cap) {
  for (std::int64_t k : include) {
    if (k < 2) throw std::invalid_argument("index set elements must be >= 2, got " + std::to_string(k));
  }
  for (std::int64_t k : exclude) {
    if (k < 2) throw std::invalid_argument("index set elements must be >= 2, got " + std::to_string(k));
    if (include.count(k)) {
      throw std::invalid_argument("index " + std::to_string(k) + " both included and excluded");
    }
  }
  IndexSet s;
  s.kind_ = kind;
  switch (kind) {
    case BaseKind::Empty:
      s.modulus_ = 1;
      s.mask_ = {false};
      break;
    case BaseKind::Full:
      s.modulus_ = 1;
      s.mask_ = {true};
      break;
    case BaseKind::Residues:
      if (modulus < 1 || residue_mask.size() != static_cast<std::size_t>(modulus)) {
        throw std::invalid_argument("residue mask size must equal the modulus");
      }
      s.modulus_ = modulus;
      s.mask_ = std::move(residue_mask);
      break;
  }
  s.include_ = std::move(include);
  s.exclude_ = std::move(exclude);
  s.canonicalize(cap);
  return s;
}

void IndexSet::canonicalize(std::int64_t cap) {
  for (std::int64_t k : include_) {
    if (k > cap) throw std::invalid_argument("index " + std::to_string(k) + " exceeds the element cap");
  }
  for (std::int64_t k : exclude_) {
    if (k > cap) throw std::invalid_argument("index " + std::to_string(k) + " exceeds the element cap");
  }

  // Shrink the residue pattern to its minimal period.
  if (kind_ == BaseKind::Residues) {
    std::int64_t q = modulus_;
    for (std::int64_t d = 1; d <= q; ++d) {
      if (q % d != 0) continue;
      bool periodic = true;
      for (std::int64_t r = 0; r < q && periodic; ++r) {
        periodic = mask_[static_cast<std::size_t>(r)] == mask_[static_cast<std::size_t>(r % d)];
      }
      if (periodic) {
        mask_.resize(static_cast<std::size_t>(d));
        modulus_ = d;
        break;
      }
    }
    if (modulus_ == 1) kind_ = mask_[0] ? BaseKind::Full : BaseKind::Empty;
  }

  std::set<std::int64_t> inc, exc;
  for (std::int64_t k : include_) {
    if (!base_contains(k)) inc.insert(k);
  }
  for (std::int64_t k : exclude_) {
    if (base_contains(k)) exc.insert(k);
  }
  include_ = std::move(inc);
  exclude_ = std::move(exc);
}

bool IndexSet::base_contains(std::int64_t k) const {
  switch (kind_) {
    case BaseKind::Empty:
      return false;
    case BaseKind::Full:
      return true;
    case BaseKind::Residues:
      return mask_[static_cast<std::size_t>(k % modulus_)];
  }
  return false;
}

bool IndexSet::contains(std::int64_t k) const {
  if (k < 2) throw std::domain_error("index set membership is defined for k >= 2, got " + std::to_string(k));
  if (include_.count(k)) return true;
  return base_contains(k) && !exclude_.count(k);
}

IndexSet IndexSet::complement() const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = !mask_[i];
  BaseKind kind = BaseKind::Residues;
  if (kind_ == BaseKind::Empty) kind = BaseKind::Full;
  if (kind_ == BaseKind::Full) kind = BaseKind::Empty;
  return make(kind, modulus_, std::move(mask), exclude_, include_,
              std::numeric_limits<std::int64_t>::max());
}

std::vector<std::int64_t> IndexSet::truncate(std::int64_t n) const {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 2; k <= n; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::int64_t IndexSet::max_element() const {
  if (!is_finite()) throw std::logic_error("max_element of an infinite index set");
  return include_.empty() ? 1 : *include_.rbegin();
}

std::vector<bool> IndexSet::residues_mod(std::int64_t m) const {
  std::vector<bool> hit(static_cast<std::size_t>(m), false);
  if (kind_ != BaseKind::Empty) {
    // Each base residue class r (mod q) is infinite, so it meets every class
    // x = r (mod gcd(q, m)) modulo m infinitely often; finite exclusions
    // cannot remove any of them.
    std::int64_t g = std::gcd(modulus_, m);
    for (std::int64_t x = 0; x < m; ++x) {
      for (std::int64_t r = 0; r < modulus_; ++r) {
        if (mask_[static_cast<std::size_t>(r)] && (x - r) % g == 0) {
          hit[static_cast<std::size_t>(x)] = true;
          break;
        }
      }
    }
  }
  for (std::int64_t k : include_) hit[static_cast<std::size_t>(k % m)] = true;
  return hit;
}

std::string IndexSet::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case BaseKind::Empty:
      os << "{}";
      break;
    case BaseKind::Full:
      os << "N2";
      break;
    case BaseKind::Residues: {
      os << "{k>=2 : k mod " << modulus_ << " in {";
      bool first = true;
      for (std::size_t r = 0; r < mask_.size(); ++r) {
        if (!mask_[r]) continue;
        os << (first ? "" : ",") << r;
        first = false;
      }
      os << "}}";
      break;
    }
  }
  auto list = [&os](const std::set<std::int64_t>& s) {
    os << "{";
    bool first = true;
    for (auto k : s) {
      os << (first ? "" : ",") << k;
      first = false;
    }
    os << "}";
  };
  if (!include_.empty()) {
    os << " + ";
    list(include_);
  }
  if (!exclude_.empty()) {
    os << " - ";
    list(exclude_);
  }
  return os.str();
}

bool operator==(const IndexSet& a, const IndexSet& b) {
  return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.mask_ == b.mask_ &&
         a.include_ == b.include_ && a.exclude_ == b.exclude_;
}

ModReduction reduce_mod(const IndexSet& h, std::int64_t m) {
  if (m < 2) throw std::domain_error("reduce_mod requires m >= 2");
  std::vector<bool> hit = h.residues_mod(m);
  for (std::int64_t r : {std::int64_t{0}, std::int64_t{1}, m - 1}) {
    if (hit[static_cast<std::size_t>(r % m)]) return DegenerateReduction{r % m};
  }
  ReducedIndices out;
  for (std::int64_t k = 2; 2 * k <= m; ++k) {
    if (hit[static_cast<std::size_t>(k)] || hit[static_cast<std::size_t>(m - k)]) out.indices.push_back(k);
  }
  return out;
}

}  // namespace turan
