// OpenMP kernels. Output matches the serial reference exactly.
#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "family_common.h"
#include "iradic/kernels.h"

namespace iradic::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void minimize_parallel(Family& family) {
  detail::sort_unique(family);
  const std::vector<std::uint64_t> sigs = detail::signatures(family);
  const std::int64_t n = static_cast<std::int64_t>(family.size());
  std::vector<char> keep(family.size(), 1);
  std::vector<std::size_t> kept;  // indices of minimal sets of smaller sizes

  // Sets of one size cannot absorb each other once duplicates are gone, so
  // each size band is checked in parallel against the kept smaller sets.
  std::int64_t band_begin = 0;
  while (band_begin < n) {
    std::int64_t band_end = band_begin;
    const std::size_t size = family[band_begin].size();
    while (band_end < n && family[band_end].size() == size) ++band_end;

    const std::int64_t kept_count = static_cast<std::int64_t>(kept.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = band_begin; i < band_end; ++i) {
      for (std::int64_t j = 0; j < kept_count; ++j) {
        const std::size_t k = kept[j];
        if ((sigs[k] & ~sigs[i]) == 0 && is_subset(family[k], family[i])) {
          keep[i] = 0;
          break;
        }
      }
    }
    for (std::int64_t i = band_begin; i < band_end; ++i) {
      if (keep[i]) kept.push_back(static_cast<std::size_t>(i));
    }
    band_begin = band_end;
  }

  Family out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(std::move(family[i]));
  family = std::move(out);
}

Family product_parallel(const Family& a, const Family& b, const ProductLimits& limits) {
  detail::check_product_size(a, b, limits);
  const std::int64_t rows = static_cast<std::int64_t>(a.size());
  std::vector<Family> partial(a.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < rows; ++i) {
    Family& local = partial[i];
    local.reserve(b.size());
    for (const EventSet& y : b) {
      EventSet u = merge(a[i], y);
      if (detail::passes(u, limits)) local.push_back(std::move(u));
    }
  }
  std::size_t total = 0;
  for (const Family& f : partial) total += f.size();
  Family out;
  out.reserve(total);
  for (Family& f : partial) {
    for (EventSet& s : f) out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> set_probabilities_parallel(const Family& family, std::span<const double> p) {
  std::vector<double> out(family.size());
  const std::int64_t n = static_cast<std::int64_t>(family.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = detail::set_probability(family[i], p);
  return out;
}

}  // namespace iradic::kernels
