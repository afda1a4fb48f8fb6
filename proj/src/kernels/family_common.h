// Helpers shared by the serial and OpenMP kernels.
#pragma once

#include <algorithm>

#include "iradic/error.h"
#include "iradic/kernels.h"

namespace iradic::kernels::detail {

inline bool SizeThenLex(const EventSet& a, const EventSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline void sort_unique(Family& family) {
  std::sort(family.begin(), family.end(), SizeThenLex);
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

/// One bit per index modulo 64. A subset's signature is covered by its superset's.
inline std::uint64_t signature(const EventSet& s) {
  std::uint64_t sig = 0;
  for (EventIndex e : s) sig |= std::uint64_t{1} << (e & 63);
  return sig;
}

inline std::vector<std::uint64_t> signatures(const Family& family) {
  std::vector<std::uint64_t> out(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) out[i] = signature(family[i]);
  return out;
}

inline double set_probability(const EventSet& s, std::span<const double> p) {
  double prob = 1.0;
  for (EventIndex e : s) prob *= p[e];
  return prob;
}

inline void check_product_size(const Family& a, const Family& b, const ProductLimits& limits) {
  if (!a.empty() && b.size() > static_cast<std::size_t>(limits.max_sets) / a.size()) {
    throw ResourceLimitError("intermediate cut-set count exceeded while expanding an AND",
                             limits.max_sets);
  }
}

inline bool passes(const EventSet& u, const ProductLimits& limits) {
  if (limits.max_order && static_cast<int>(u.size()) > *limits.max_order) return false;
  if (limits.min_probability && set_probability(u, limits.probabilities) < *limits.min_probability) {
    return false;
  }
  return true;
}

}  // namespace iradic::kernels::detail
