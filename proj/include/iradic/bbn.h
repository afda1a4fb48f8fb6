/// @file
/// Exact inference on binary belief networks and the generic-to-specific
/// software failure estimate built on it.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iradic/model.h"

namespace iradic {

/// Node states keyed by id; true = fail.
using Evidence = std::map<std::string, bool>;

struct Marginal {
  double ok = 0;
  double fail = 0;
};

/// P(query | evidence) by variable elimination with a min-degree order.
/// Throws DomainError for an invalid network or evidence of probability zero,
/// ReferenceError for unknown ids.
Marginal infer_distribution(const Bbn& b, const std::string& query, const Evidence& evidence = {});

/// Same, eliminating variables in the given order. The order must list every
/// node except the query and the evidence nodes exactly once.
Marginal infer_distribution(const Bbn& b, const std::string& query, const Evidence& evidence,
                            std::span<const std::string> order);

/// P(query = fail | evidence).
double infer_marginal(const Bbn& b, const std::string& query, const Evidence& evidence = {});

/// Min-degree elimination order for the given query and evidence. Ties go to
/// the lexicographically smaller id.
std::vector<std::string> min_degree_order(const Bbn& b, const std::string& query,
                                          const Evidence& evidence = {});

struct BahamasResult {
  double generic = 0;
  double specific = 0;
  double individual = 0;
  std::map<std::string, double> ccf;  ///< level label -> probability
  std::optional<std::string> warning;  ///< Set when specific was clamped.
};

/// generic = P(query fails); specific = generic * factor clamped to [0,1];
/// specific is then beta-split into an individual part and one part per level.
BahamasResult bahamas_estimate(const Bbn& b, const std::string& query, double adjustment_factor,
                               std::span<const BetaLevel> levels);

/// Runs the estimate from the network's own bahamas settings.
BahamasResult bahamas_estimate(const Bbn& b);

/// Writes the network's estimate back into the model: the linked CCF group
/// gets the specific probability as its total and the betas of levels with
/// matching labels; UCA members get the specific probability.
/// Throws DomainError when the network has no bahamas settings or no group.
Model apply_bahamas(const Model& m, const std::string& bbn_id);

}  // namespace iradic
