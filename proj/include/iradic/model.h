/// @file
/// Domain model shared by every analysis: fault trees, event trees,
/// common cause groups, the unsafe control action catalog and belief networks.
///
/// The model is a plain value. It is immutable once loaded; analyses take it
/// by const reference and transformations return new copies.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iradic {

enum class GateKind : std::uint8_t { kAnd, kOr, kAtLeast };

/// Logic gate. AtLeast gates carry an explicit vote count.
struct Gate {
  std::string id;
  GateKind kind = GateKind::kOr;
  int k = 0;  ///< Only meaningful for kAtLeast.
  std::vector<std::string> inputs;
  std::string label;

  bool operator==(const Gate&) const = default;
};

enum class EventKind : std::uint8_t { kHardware, kSoftware, kCcf, kHouse };

struct BasicEvent {
  std::string id;
  double probability = 0;
  EventKind kind = EventKind::kHardware;
  std::optional<bool> house_state;       ///< House events only.
  std::optional<std::string> ccf_group;  ///< Set on events produced by a CCF group.
  std::optional<std::string> uca;        ///< Set on software events derived from a UCA.
  std::string label;

  bool operator==(const BasicEvent&) const = default;
};

enum class TopKind : std::uint8_t { kFailureOnDemand, kSpuriousActuation };

/// Coherent failure logic. Gates and basic events share one id namespace.
struct FaultTree {
  std::string id;
  std::string top;
  TopKind top_kind = TopKind::kFailureOnDemand;
  std::string label;
  std::map<std::string, Gate> gates;
  std::map<std::string, BasicEvent> events;

  bool has_node(const std::string& node) const {
    return gates.count(node) || events.count(node);
  }
  std::size_t node_count() const { return gates.size() + events.size(); }

  bool operator==(const FaultTree&) const = default;
};

/// One coupling level of a beta-factor group. Each scope lists the members
/// that share a single CCF event at this level.
struct CcfLevel {
  std::string label;
  double beta = 0;
  std::vector<std::vector<std::string>> scopes;

  bool operator==(const CcfLevel&) const = default;
};

/// Common cause component group.
///
/// Members name basic events, or UCA records standing for the software event
/// created when that UCA is attached to a fault tree.
struct CcfGroup {
  std::string id;
  std::vector<std::string> members;
  double total_probability = 0;
  std::vector<CcfLevel> levels;
  std::string label;

  bool operator==(const CcfGroup&) const = default;
};

enum class UcaCategory : std::uint8_t {
  kNotProvided,
  kProvidedUnneeded,
  kWrongTimingOrOrder,
  kWrongDuration,
};

enum class CauseClass : std::uint8_t { kUnsafeControllerBehavior, kInadequateFeedback };

struct UcaRecord {
  std::string id;
  std::string controller;  ///< Gate or basic event the software failure attaches to.
  std::string control_action;
  UcaCategory category = UcaCategory::kNotProvided;
  bool continuous_action = false;
  CauseClass cause_class = CauseClass::kUnsafeControllerBehavior;
  std::string redundancy_layer;
  std::optional<double> probability;

  bool operator==(const UcaRecord&) const = default;
};

/// Binary belief network node. The CPT holds P(fail | parents) indexed by the
/// parent states read as a binary number, first parent most significant,
/// ok = 0 and fail = 1.
struct BbnNode {
  std::string id;
  std::vector<std::string> parents;
  std::vector<double> cpt;

  bool operator==(const BbnNode&) const = default;
};

struct BetaLevel {
  std::string label;
  double beta = 0;

  bool operator==(const BetaLevel&) const = default;
};

/// Generic-to-specific software failure estimation settings for one network.
struct BahamasConfig {
  std::string query;
  double adjustment_factor = 1;
  std::vector<BetaLevel> levels;
  std::optional<std::string> ccf_group;  ///< Group whose total/betas receive the result.

  bool operator==(const BahamasConfig&) const = default;
};

struct Bbn {
  std::string id;
  std::map<std::string, BbnNode> nodes;
  std::vector<std::string> queries;
  std::optional<BahamasConfig> bahamas;

  bool operator==(const Bbn&) const = default;
};

struct FunctionalEvent {
  std::string id;
  std::string fault_tree;
  std::string gate;

  bool operator==(const FunctionalEvent&) const = default;
};

enum class Branch : std::uint8_t { kSuccess, kFailure, kBypass };

/// Event tree sequence. The path has one entry per functional event it
/// questions; trailing events may be omitted and intermediate ones bypassed.
/// A sequence may carry an externally computed frequency and cut-set count,
/// which then take precedence over quantification.
struct Sequence {
  std::string id;
  std::vector<Branch> path;
  std::string end_state;
  std::optional<double> frequency;
  std::optional<std::int64_t> cutset_count;

  bool operator==(const Sequence&) const = default;
};

struct InitiatingEvent {
  std::string id;
  double frequency = 0;  ///< Per reactor-year.

  bool operator==(const InitiatingEvent&) const = default;
};

struct EventTree {
  std::string id;
  InitiatingEvent initiating_event;
  std::vector<FunctionalEvent> functional_events;
  std::vector<Sequence> sequences;

  bool operator==(const EventTree&) const = default;
};

enum class QuantMethod : std::uint8_t { kRareEvent, kMcub, kExact };

/// UCA category applicability per top-event kind.
class ApplicabilityMatrix {
 public:
  /// Not-provided, wrong-timing and wrong-duration UCAs fail a demand;
  /// provided-unneeded UCAs cause spurious actuation.
  static ApplicabilityMatrix Default();

  bool applies(UcaCategory category, TopKind top) const {
    return cells_[Index(category, top)];
  }
  void set(UcaCategory category, TopKind top, bool value) {
    cells_[Index(category, top)] = value;
  }

  bool operator==(const ApplicabilityMatrix&) const = default;

 private:
  static std::size_t Index(UcaCategory category, TopKind top) {
    return static_cast<std::size_t>(category) * 2 + static_cast<std::size_t>(top);
  }
  std::array<bool, 8> cells_{};
};

struct AnalysisConfig {
  double truncation_probability = 1e-12;
  std::optional<int> max_cutset_order;  ///< Unlimited when empty.
  ApplicabilityMatrix applicability = ApplicabilityMatrix::Default();
  QuantMethod method = QuantMethod::kRareEvent;
  int exact_event_limit = 25;
  int low_order_threshold = 2;
  /// Cap on intermediate cut sets held during expansion.
  std::int64_t max_intermediate_sets = 5'000'000;
  /// Drop intermediate products below the truncation value while expanding.
  bool truncate_during_expansion = false;

  bool operator==(const AnalysisConfig&) const = default;
};

struct Model {
  std::map<std::string, FaultTree> fault_trees;
  std::map<std::string, EventTree> event_trees;
  std::map<std::string, CcfGroup> ccf_groups;
  std::vector<UcaRecord> uca_catalog;
  std::map<std::string, Bbn> bbns;
  AnalysisConfig config;

  const UcaRecord* find_uca(const std::string& id) const;
  /// Fault tree that owns the gate or basic event, if any.
  const FaultTree* find_tree_with_node(const std::string& node) const;

  bool operator==(const Model&) const = default;
};

/// Id of the software event created for a UCA.
std::string software_event_id(const std::string& uca_id);

// Enum spellings used by the model file and reports.
const char* to_string(GateKind kind);
const char* to_string(EventKind kind);
const char* to_string(TopKind kind);
const char* to_string(UcaCategory category);
const char* to_string(CauseClass cause);
const char* to_string(QuantMethod method);
char to_char(Branch branch);

std::optional<GateKind> gate_kind_from(const std::string& s);
std::optional<EventKind> event_kind_from(const std::string& s);
std::optional<TopKind> top_kind_from(const std::string& s);
std::optional<UcaCategory> uca_category_from(const std::string& s);
std::optional<CauseClass> cause_class_from(const std::string& s);
std::optional<QuantMethod> quant_method_from(const std::string& s);
std::optional<Branch> branch_from(const std::string& s);

inline constexpr std::array<UcaCategory, 4> kAllUcaCategories = {
    UcaCategory::kNotProvided, UcaCategory::kProvidedUnneeded,
    UcaCategory::kWrongTimingOrOrder, UcaCategory::kWrongDuration};
inline constexpr std::array<TopKind, 2> kAllTopKinds = {TopKind::kFailureOnDemand,
                                                       TopKind::kSpuriousActuation};

}  // namespace iradic
