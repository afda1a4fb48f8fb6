/// @file
/// Structural checks on a loaded model.
#pragma once

#include <string>
#include <vector>

#include "iradic/model.h"

namespace iradic {

enum class Severity { kWarning, kError };

struct Finding {
  Severity severity = Severity::kError;
  std::string location;  ///< e.g. "fault_tree RTS / gate DIV_A"
  std::string message;

  bool operator==(const Finding&) const = default;
};

using ValidationReport = std::vector<Finding>;

bool has_errors(const ValidationReport& report);

/// Ids that do not resolve. Each entry names the location and missing id.
struct DanglingReference {
  std::string location;
  std::string id;
};
std::vector<DanglingReference> dangling_references(const Model& model);

/// Checks one fault tree: reachability from the top, cycles, gate arity,
/// probabilities and house states.
ValidationReport validate_fault_tree(const FaultTree& tree);

/// Checks one belief network: missing parents, cycles, CPT sizes and ranges.
ValidationReport validate_bbn(const Bbn& bbn);

/// Every invariant of the model. Empty iff the model is valid.
ValidationReport validate_model(const Model& model);

/// True when the id uses only letters, digits, '_' and '-'.
bool is_valid_id(const std::string& id);

}  // namespace iradic
