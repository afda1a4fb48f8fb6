/// @file
/// Set-family kernels behind cut-set generation.
///
/// Each kernel has a serial reference and an OpenMP version. Both produce
/// identical output; the serial one is kept for tests and benchmarks.
/// Sets are sorted vectors of event indices.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace iradic::kernels {

using EventIndex = std::uint32_t;
using EventSet = std::vector<EventIndex>;
using Family = std::vector<EventSet>;

/// Bounds applied while multiplying families.
struct ProductLimits {
  std::optional<int> max_order;        ///< Drop unions larger than this.
  std::optional<double> min_probability;  ///< Drop unions below this product.
  std::span<const double> probabilities;  ///< Needed when min_probability is set.
  std::int64_t max_sets = 5'000'000;   ///< Throw when a product would exceed this.
};

/// Sorts by (size, lexicographic), removes duplicates and every proper
/// superset of another member. The result is the minimal family.
void minimize_serial(Family& family);
void minimize_parallel(Family& family);

/// Pairwise unions of a and b, filtered by limits. Not minimized.
/// Throws ResourceLimitError when |a|*|b| exceeds limits.max_sets.
Family product_serial(const Family& a, const Family& b, const ProductLimits& limits);
Family product_parallel(const Family& a, const Family& b, const ProductLimits& limits);

/// Product of member probabilities, multiplied in ascending index order.
std::vector<double> set_probabilities_serial(const Family& family, std::span<const double> p);
std::vector<double> set_probabilities_parallel(const Family& family, std::span<const double> p);

/// Family sizes below this use the serial kernels in the dispatchers.
inline constexpr std::size_t kParallelThreshold = 2048;

inline void minimize(Family& family) {
  if (family.size() < kParallelThreshold) {
    minimize_serial(family);
  } else {
    minimize_parallel(family);
  }
}

inline Family product(const Family& a, const Family& b, const ProductLimits& limits) {
  return a.size() * b.size() < kParallelThreshold ? product_serial(a, b, limits)
                                                  : product_parallel(a, b, limits);
}

inline std::vector<double> set_probabilities(const Family& family, std::span<const double> p) {
  return family.size() < kParallelThreshold ? set_probabilities_serial(family, p)
                                            : set_probabilities_parallel(family, p);
}

/// True when every element of small occurs in big. Both sorted.
bool is_subset(const EventSet& small, const EventSet& big);

/// Sorted union of two sorted sets.
EventSet merge(const EventSet& a, const EventSet& b);

/// Number of worker threads OpenMP would use (1 without OpenMP).
int max_threads();

}  // namespace iradic::kernels
