/// @file
/// Integration of software failures (UCAs) and software CCFs into a hardware
/// fault tree, and the hazard report drawn from its cut sets.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iradic/cutset.h"
#include "iradic/model.h"

namespace iradic {

enum class OriginKind : std::uint8_t { kHardwareOriginal, kSoftwareUca, kSoftwareCcf, kHardwareCcf };

struct Origin {
  OriginKind kind = OriginKind::kHardwareOriginal;
  std::string source;  ///< UCA id or CCF group id; empty for hardware.

  bool operator==(const Origin&) const = default;
};

const char* to_string(OriginKind kind);

struct IntegratedFaultTree {
  FaultTree tree;
  std::map<std::string, Origin> provenance;  ///< One entry per basic event.

  bool operator==(const IntegratedFaultTree&) const = default;
};

/// Provenance read back from event kinds and their uca / ccf_group fields.
IntegratedFaultTree derive_provenance(const FaultTree& tree, const Model& context);

/// UCAs whose category applies to the top kind, in catalog order.
std::vector<UcaRecord> filter_applicable_ucas(const std::vector<UcaRecord>& catalog, TopKind top,
                                              const ApplicabilityMatrix& matrix);

/// Adds one software event "<uca>-SW" per UCA under an OR at its controller.
/// An OR controller gains the event as an input. Any other gate keeps its id
/// and becomes OR("<gate>-HW", event) with the old logic moved to
/// "<gate>-HW". A basic-event controller is wrapped in "<event>-INT" =
/// OR(event, software event) and its parents are redirected there.
IntegratedFaultTree attach_software_failures(const FaultTree& ft, const std::vector<UcaRecord>& ucas);

/// Expands software CCF groups (members are UCA ids) over the attached
/// software events. A scope that is a proper subset of the group must not mix
/// redundancy layers.
IntegratedFaultTree attach_software_ccf(const IntegratedFaultTree& ift,
                                        const std::vector<CcfGroup>& groups,
                                        const std::vector<UcaRecord>& catalog);

struct SpofEntry {
  std::string event;
  Origin origin;

  bool operator==(const SpofEntry&) const = default;
};

struct HazardReport {
  std::string top;
  std::vector<SpofEntry> spofs;
  std::map<int, std::int64_t> cutset_histogram;  ///< order -> count
  /// Software events in cut sets of order <= low_order_threshold.
  std::map<CauseClass, std::vector<std::string>> by_cause_class;
  int low_order_threshold = 2;
  CutSetList cutsets;
};

/// Cut sets, SPOFs and cause-class grouping of low-order software events.
/// `context` supplies the UCA catalog and CCF groups for cause lookup.
HazardReport hazard_report(const IntegratedFaultTree& ift, const AnalysisConfig& cfg,
                           const Model& context);

/// Groups whose members are all UCA ids.
std::vector<CcfGroup> software_groups(const Model& m);

/// Full integration of one fault tree: applicability filter, UCA attachment
/// (UCA probabilities, 0 when absent) and expansion of the software groups
/// that cover attached UCAs. Returns the model with the tree replaced.
Model integrate(const Model& m, const std::string& fault_tree_id);

}  // namespace iradic
