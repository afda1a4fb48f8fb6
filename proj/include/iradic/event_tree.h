/// @file
/// Event tree quantification, sequence cut sets and before/after comparison.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iradic/cutset.h"
#include "iradic/model.h"

namespace iradic {

/// Failure probability of the functional event's linked gate by the model's
/// configured method.
double branch_probability(const Model& m, const FunctionalEvent& fe);

/// Frequency times the product of branch outcome probabilities along the
/// path. `failure` holds one failure probability per functional event.
double sequence_probability(const EventTree& et, const Sequence& seq,
                            const std::vector<double>& failure);

/// Same, computing branch probabilities from the model. Injected sequence
/// frequencies take precedence.
double sequence_probability(const Model& m, const EventTree& et, const Sequence& seq);

struct SequenceResult {
  std::string id;
  std::string end_state;
  double probability = 0;
  std::optional<std::int64_t> cutset_count;
  bool below_truncation = false;  ///< Probability under the truncation value.
  bool injected = false;          ///< Probability supplied in the model file.

  bool operator==(const SequenceResult&) const = default;
};

struct EventTreeResult {
  std::string event_tree;
  std::string end_state_filter;  ///< Empty for all end states.
  std::vector<SequenceResult> sequences;  ///< Sorted by id.
  double total = 0;

  bool operator==(const EventTreeResult&) const = default;
};

/// Quantifies every sequence whose end state matches the filter (all when
/// empty). With `with_cutsets`, sequences lacking an injected count get one
/// from sequence_cutsets.
EventTreeResult quantify_event_tree(const Model& m, const std::string& et_id,
                                    const std::string& end_state_filter = {},
                                    bool with_cutsets = false);

/// Minimal cut sets of AND(initiator marker, failed branches) with every set
/// removed that contains a cut set of a succeeded branch, then truncated.
/// The marker is a basic event named after the initiating event whose
/// probability is the initiator frequency.
CutSetList sequence_cutsets(const Model& m, const std::string& et_id, const std::string& seq_id,
                            const AnalysisConfig& cfg);

struct ComparisonRow {
  std::string sequence;
  double a = 0;
  double b = 0;
  double delta = 0;  ///< (b - a) / a; 0 when equal, NaN when a = 0 < b.
  std::optional<std::int64_t> count_a;
  std::optional<std::int64_t> count_b;
  double share_b = 0;  ///< b / total of b.

  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonReport {
  std::string label;  ///< Prefix for sequence names, usually the event tree id.
  std::vector<ComparisonRow> rows;  ///< Descending a, then id.
  ComparisonRow total;
};

/// Row-wise comparison of two results over the same sequence ids.
/// Throws DomainError when the sequence sets differ.
ComparisonReport compare_event_trees(const EventTreeResult& a, const EventTreeResult& b);

/// Relative change (b - a) / a with the conventions of ComparisonRow.
double relative_change(double a, double b);

}  // namespace iradic
