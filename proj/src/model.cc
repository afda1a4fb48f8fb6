#include "iradic/model.h"

#include <algorithm>

namespace iradic {

ApplicabilityMatrix ApplicabilityMatrix::Default() {
  ApplicabilityMatrix m;
  m.set(UcaCategory::kNotProvided, TopKind::kFailureOnDemand, true);
  m.set(UcaCategory::kWrongTimingOrOrder, TopKind::kFailureOnDemand, true);
  m.set(UcaCategory::kWrongDuration, TopKind::kFailureOnDemand, true);
  m.set(UcaCategory::kProvidedUnneeded, TopKind::kSpuriousActuation, true);
  return m;
}

const UcaRecord* Model::find_uca(const std::string& id) const {
  auto it = std::find_if(uca_catalog.begin(), uca_catalog.end(),
                         [&id](const UcaRecord& u) { return u.id == id; });
  return it == uca_catalog.end() ? nullptr : &*it;
}

const FaultTree* Model::find_tree_with_node(const std::string& node) const {
  for (const auto& [id, tree] : fault_trees) {
    if (tree.has_node(node)) return &tree;
  }
  return nullptr;
}

std::string software_event_id(const std::string& uca_id) { return uca_id + "-SW"; }

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kAtLeast: return "atleast";
  }
  return "?";
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kHardware: return "hardware";
    case EventKind::kSoftware: return "software";
    case EventKind::kCcf: return "ccf";
    case EventKind::kHouse: return "house";
  }
  return "?";
}

const char* to_string(TopKind kind) {
  switch (kind) {
    case TopKind::kFailureOnDemand: return "failure-on-demand";
    case TopKind::kSpuriousActuation: return "spurious-actuation";
  }
  return "?";
}

const char* to_string(UcaCategory category) {
  switch (category) {
    case UcaCategory::kNotProvided: return "not-provided";
    case UcaCategory::kProvidedUnneeded: return "provided-unneeded";
    case UcaCategory::kWrongTimingOrOrder: return "wrong-timing";
    case UcaCategory::kWrongDuration: return "wrong-duration";
  }
  return "?";
}

const char* to_string(CauseClass cause) {
  switch (cause) {
    case CauseClass::kUnsafeControllerBehavior: return "controller";
    case CauseClass::kInadequateFeedback: return "feedback";
  }
  return "?";
}

const char* to_string(QuantMethod method) {
  switch (method) {
    case QuantMethod::kRareEvent: return "rare-event";
    case QuantMethod::kMcub: return "mcub";
    case QuantMethod::kExact: return "exact";
  }
  return "?";
}

char to_char(Branch branch) {
  switch (branch) {
    case Branch::kSuccess: return 'S';
    case Branch::kFailure: return 'F';
    case Branch::kBypass: return '-';
  }
  return '?';
}

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> FromString(const std::string& s, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<GateKind> gate_kind_from(const std::string& s) {
  return FromString(s, std::array{GateKind::kAnd, GateKind::kOr, GateKind::kAtLeast});
}

std::optional<EventKind> event_kind_from(const std::string& s) {
  return FromString(s, std::array{EventKind::kHardware, EventKind::kSoftware, EventKind::kCcf,
                                  EventKind::kHouse});
}

std::optional<TopKind> top_kind_from(const std::string& s) { return FromString(s, kAllTopKinds); }

std::optional<UcaCategory> uca_category_from(const std::string& s) {
  return FromString(s, kAllUcaCategories);
}

std::optional<CauseClass> cause_class_from(const std::string& s) {
  return FromString(s, std::array{CauseClass::kUnsafeControllerBehavior,
                                  CauseClass::kInadequateFeedback});
}

std::optional<QuantMethod> quant_method_from(const std::string& s) {
  return FromString(s, std::array{QuantMethod::kRareEvent, QuantMethod::kMcub, QuantMethod::kExact});
}

std::optional<Branch> branch_from(const std::string& s) {
  if (s == "S") return Branch::kSuccess;
  if (s == "F") return Branch::kFailure;
  if (s == "-") return Branch::kBypass;
  return std::nullopt;
}

}  // namespace iradic
