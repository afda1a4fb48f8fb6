/// @file
/// Minimal cut sets, top-event quantification and importance.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iradic/model.h"

namespace iradic {

struct CutSet {
  std::vector<std::string> events;  ///< Sorted, duplicate-free.
  double probability = 0;           ///< Product of member probabilities in sorted order.

  int order() const { return static_cast<int>(events.size()); }
  bool contains(const std::string& id) const;

  bool operator==(const CutSet&) const = default;
};

/// Canonical list: ascending order, then descending probability, then ids.
struct CutSetList {
  std::vector<CutSet> cutsets;
  std::int64_t truncated_count = 0;
  double truncation_probability = 0;
  std::optional<int> max_order;
  std::string source_top;

  bool operator==(const CutSetList&) const = default;
};

/// Minimal cut sets of the function rooted at `top` (the tree's top when
/// empty). House events are treated as constants. Truncation by probability
/// and order is applied to the final minimal sets and counted; with
/// cfg.truncate_during_expansion the same bounds also prune intermediate
/// products and the count covers final drops only.
///
/// Throws ResourceLimitError past cfg.max_intermediate_sets, and DomainError
/// when an atleast gate has more than 20 inputs or the top is constant true.
CutSetList minimal_cut_sets(const FaultTree& ft, const AnalysisConfig& cfg,
                            const std::string& top = {});

/// Minimal sets without any truncation.
std::vector<CutSet> untruncated_cut_sets(const FaultTree& ft, const AnalysisConfig& cfg,
                                         const std::string& top = {});

/// Sorts into canonical order and drops sets below the threshold or above
/// the order limit, counting drops.
CutSetList truncate_cut_sets(std::vector<CutSet> sets, double truncation_probability,
                             std::optional<int> max_order, std::string source_top);

void sort_canonical(std::vector<CutSet>& sets);

/// Sum of cut-set probabilities. Not clamped.
double rare_event_probability(const CutSetList& cs);

/// 1 - prod(1 - P(cut set)).
double mcub_probability(const CutSetList& cs);

struct ImportanceResult {
  std::string event;
  double fussell_vesely = 0;

  bool operator==(const ImportanceResult&) const = default;
};

/// Fussell-Vesely importance with rare-event denominators, descending.
/// Throws DomainError on an empty list or zero total.
std::vector<ImportanceResult> fussell_vesely(const CutSetList& cs);

/// Ids of order-1 cut sets in canonical order.
std::vector<std::string> find_spofs(const CutSetList& cs);

/// Exact P(top) under independence by Shannon decomposition on a reduced
/// ordered BDD, variables ordered most-shared first. Throws DomainError when
/// the cone of `top` holds more than event_limit basic events.
double exact_top_probability(const FaultTree& ft, int event_limit = 25,
                             const std::string& top = {});

/// Top probability by the chosen method. Cut-set methods use cfg truncation.
double top_probability(const FaultTree& ft, const AnalysisConfig& cfg, QuantMethod method,
                       const std::string& top = {});

}  // namespace iradic
