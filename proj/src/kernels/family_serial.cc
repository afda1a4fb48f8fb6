// Serial reference kernels.
#include <algorithm>

#include "family_common.h"
#include "iradic/error.h"
#include "iradic/kernels.h"

namespace iradic::kernels {

bool is_subset(const EventSet& small, const EventSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

EventSet merge(const EventSet& a, const EventSet& b) {
  EventSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void minimize_serial(Family& family) {
  detail::sort_unique(family);
  std::vector<std::uint64_t> sigs = detail::signatures(family);
  Family kept;
  std::vector<std::uint64_t> kept_sigs;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < kept.size() && kept[j].size() < family[i].size(); ++j) {
      if ((kept_sigs[j] & ~sigs[i]) == 0 && is_subset(kept[j], family[i])) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      kept.push_back(std::move(family[i]));
      kept_sigs.push_back(sigs[i]);
    }
  }
  family = std::move(kept);
}

Family product_serial(const Family& a, const Family& b, const ProductLimits& limits) {
  detail::check_product_size(a, b, limits);
  Family out;
  for (const EventSet& x : a) {
    for (const EventSet& y : b) {
      EventSet u = merge(x, y);
      if (detail::passes(u, limits)) out.push_back(std::move(u));
    }
  }
  return out;
}

std::vector<double> set_probabilities_serial(const Family& family, std::span<const double> p) {
  std::vector<double> out(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) out[i] = detail::set_probability(family[i], p);
  return out;
}

}  // namespace iradic::kernels
