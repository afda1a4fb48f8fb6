#include "iradic/integration.h"

#include <algorithm>
#include <set>

#include "iradic/ccf.h"
#include "iradic/error.h"

namespace iradic {

const char* to_string(OriginKind kind) {
  switch (kind) {
    case OriginKind::kHardwareOriginal: return "hardware";
    case OriginKind::kSoftwareUca: return "software-uca";
    case OriginKind::kSoftwareCcf: return "software-ccf";
    case OriginKind::kHardwareCcf: return "hardware-ccf";
  }
  return "?";
}

namespace {

bool IsSoftwareGroup(const CcfGroup& g, const std::vector<UcaRecord>& catalog) {
  if (g.members.empty()) return false;
  return std::all_of(g.members.begin(), g.members.end(), [&catalog](const std::string& id) {
    return std::any_of(catalog.begin(), catalog.end(),
                       [&id](const UcaRecord& u) { return u.id == id; });
  });
}

const UcaRecord* FindUca(const std::vector<UcaRecord>& catalog, const std::string& id) {
  auto it = std::find_if(catalog.begin(), catalog.end(),
                         [&id](const UcaRecord& u) { return u.id == id; });
  return it == catalog.end() ? nullptr : &*it;
}

Origin OriginOf(const BasicEvent& e, const std::map<std::string, CcfGroup>& groups,
                const std::vector<UcaRecord>& catalog) {
  switch (e.kind) {
    case EventKind::kSoftware:
      return {OriginKind::kSoftwareUca, e.uca.value_or("")};
    case EventKind::kCcf: {
      const std::string group = e.ccf_group.value_or("");
      auto it = groups.find(group);
      bool software = it != groups.end() && IsSoftwareGroup(it->second, catalog);
      return {software ? OriginKind::kSoftwareCcf : OriginKind::kHardwareCcf, group};
    }
    case EventKind::kHardware:
    case EventKind::kHouse:
      break;
  }
  return {OriginKind::kHardwareOriginal, ""};
}

}  // namespace

IntegratedFaultTree derive_provenance(const FaultTree& tree, const Model& context) {
  IntegratedFaultTree out{tree, {}};
  for (const auto& [id, e] : tree.events) {
    out.provenance[id] = OriginOf(e, context.ccf_groups, context.uca_catalog);
  }
  return out;
}

std::vector<UcaRecord> filter_applicable_ucas(const std::vector<UcaRecord>& catalog, TopKind top,
                                              const ApplicabilityMatrix& matrix) {
  std::vector<UcaRecord> out;
  std::copy_if(catalog.begin(), catalog.end(), std::back_inserter(out),
               [&](const UcaRecord& u) { return matrix.applies(u.category, top); });
  return out;
}

IntegratedFaultTree attach_software_failures(const FaultTree& ft, const std::vector<UcaRecord>& ucas) {
  IntegratedFaultTree out{ft, {}};
  FaultTree& tree = out.tree;
  for (const auto& [id, e] : tree.events) {
    // Events already present keep whatever they were; attachment adds only software.
    out.provenance[id] = e.kind == EventKind::kSoftware
                             ? Origin{OriginKind::kSoftwareUca, e.uca.value_or("")}
                             : Origin{OriginKind::kHardwareOriginal, ""};
  }

  std::set<std::string> attached;
  for (const UcaRecord& uca : ucas) {
    const std::string sw = software_event_id(uca.id);
    if (!attached.insert(uca.id).second || tree.has_node(sw)) {
      throw DomainError("UCA \"" + uca.id + "\" is already attached");
    }
    if (!tree.has_node(uca.controller)) {
      throw ReferenceError("UCA \"" + uca.id + "\": controller \"" + uca.controller +
                               "\" not found in fault tree " + tree.id,
                           uca.controller);
    }
    BasicEvent event;
    event.id = sw;
    event.kind = EventKind::kSoftware;
    event.probability = uca.probability.value_or(0.0);
    event.uca = uca.id;
    event.label = uca.control_action;

    if (auto g = tree.gates.find(uca.controller); g != tree.gates.end()) {
      if (g->second.kind != GateKind::kOr) {
        Gate hardware = g->second;
        hardware.id = uca.controller + "-HW";
        if (tree.has_node(hardware.id)) {
          throw DomainError("id \"" + hardware.id + "\" already in use");
        }
        g->second.kind = GateKind::kOr;
        g->second.k = 0;
        g->second.inputs = {hardware.id};
        tree.gates.emplace(hardware.id, std::move(hardware));
      }
      tree.gates.at(uca.controller).inputs.push_back(sw);
    } else {
      const std::string wrapper = uca.controller + "-INT";
      if (!tree.gates.count(wrapper)) {
        if (tree.has_node(wrapper)) throw DomainError("id \"" + wrapper + "\" already in use");
        for (auto& [gid, gate] : tree.gates) {
          std::replace(gate.inputs.begin(), gate.inputs.end(), uca.controller, wrapper);
        }
        Gate wrap;
        wrap.id = wrapper;
        wrap.kind = GateKind::kOr;
        wrap.inputs = {uca.controller};
        wrap.label = tree.events.at(uca.controller).label;
        tree.gates.emplace(wrapper, std::move(wrap));
      }
      tree.gates.at(wrapper).inputs.push_back(sw);
    }
    tree.events.emplace(sw, std::move(event));
    out.provenance[sw] = {OriginKind::kSoftwareUca, uca.id};
  }
  return out;
}

IntegratedFaultTree attach_software_ccf(const IntegratedFaultTree& ift,
                                        const std::vector<CcfGroup>& groups,
                                        const std::vector<UcaRecord>& catalog) {
  IntegratedFaultTree out = ift;
  for (const CcfGroup& group : groups) {
    std::map<std::string, std::string> member_events;
    std::set<std::string> all(group.members.begin(), group.members.end());
    for (const std::string& member : group.members) {
      const UcaRecord* uca = FindUca(catalog, member);
      if (!uca) {
        throw ReferenceError("ccf group " + group.id + ": member \"" + member + "\" is not a UCA",
                             member);
      }
      const std::string sw = software_event_id(member);
      auto origin = out.provenance.find(sw);
      bool attached = out.tree.events.count(sw) && origin != out.provenance.end() &&
                      origin->second.kind == OriginKind::kSoftwareUca;
      if (!attached && out.tree.gates.count(sw)) {
        throw DomainError("ccf group " + group.id + ": member \"" + member + "\" already expanded");
      }
      if (!attached) {
        throw ReferenceError("ccf group " + group.id + ": UCA \"" + member +
                                 "\" has no attached software event",
                             member);
      }
      member_events[member] = sw;
    }
    for (const CcfLevel& level : group.levels) {
      for (const auto& scope : level.scopes) {
        std::set<std::string> in_scope(scope.begin(), scope.end());
        if (in_scope == all || scope.empty()) continue;
        const UcaRecord* first = FindUca(catalog, scope.front());
        for (const std::string& id : scope) {
          const UcaRecord* other = FindUca(catalog, id);
          if (!first || !other) {
            throw ReferenceError("ccf group " + group.id + ": scope names unknown UCA", id);
          }
          if (other->redundancy_layer != first->redundancy_layer) {
            throw DomainError("ccf group " + group.id + " level " + level.label + ": scope mixes \"" +
                              first->id + "\" (" + first->redundancy_layer + ") and \"" + other->id +
                              "\" (" + other->redundancy_layer + ")");
          }
        }
      }
    }
    expand_group_in_tree(out.tree, group, member_events);
  }

  // Refresh provenance for everything the expansion created or removed.
  std::map<std::string, Origin> provenance;
  for (const auto& [id, e] : out.tree.events) {
    if (auto it = out.provenance.find(id); it != out.provenance.end()) {
      provenance[id] = it->second;
    } else if (e.kind == EventKind::kCcf) {
      provenance[id] = {OriginKind::kSoftwareCcf, e.ccf_group.value_or("")};
    } else if (e.kind == EventKind::kSoftware) {
      provenance[id] = {OriginKind::kSoftwareUca, e.uca.value_or("")};
    } else {
      provenance[id] = {OriginKind::kHardwareOriginal, ""};
    }
  }
  out.provenance = std::move(provenance);
  return out;
}

HazardReport hazard_report(const IntegratedFaultTree& ift, const AnalysisConfig& cfg,
                           const Model& context) {
  HazardReport report;
  report.top = ift.tree.top;
  report.low_order_threshold = cfg.low_order_threshold;
  report.cutsets = minimal_cut_sets(ift.tree, cfg);

  auto origin_of = [&ift](const std::string& id) {
    auto it = ift.provenance.find(id);
    return it == ift.provenance.end() ? Origin{} : it->second;
  };
  for (const std::string& id : find_spofs(report.cutsets)) report.spofs.push_back({id, origin_of(id)});

  std::map<CauseClass, std::set<std::string>> grouped;
  for (const CutSet& cs : report.cutsets.cutsets) {
    ++report.cutset_histogram[cs.order()];
    if (cs.order() > cfg.low_order_threshold) continue;
    for (const std::string& id : cs.events) {
      Origin origin = origin_of(id);
      if (origin.kind == OriginKind::kSoftwareUca) {
        if (const UcaRecord* u = context.find_uca(origin.source)) grouped[u->cause_class].insert(id);
      } else if (origin.kind == OriginKind::kSoftwareCcf) {
        auto g = context.ccf_groups.find(origin.source);
        if (g == context.ccf_groups.end()) continue;
        for (const std::string& member : g->second.members) {
          if (const UcaRecord* u = context.find_uca(member)) grouped[u->cause_class].insert(id);
        }
      }
    }
  }
  for (auto& [cause, ids] : grouped) {
    report.by_cause_class[cause] = std::vector<std::string>(ids.begin(), ids.end());
  }
  return report;
}

std::vector<CcfGroup> software_groups(const Model& m) {
  std::vector<CcfGroup> out;
  for (const auto& [id, g] : m.ccf_groups) {
    if (IsSoftwareGroup(g, m.uca_catalog)) out.push_back(g);
  }
  return out;
}

Model integrate(const Model& m, const std::string& fault_tree_id) {
  auto it = m.fault_trees.find(fault_tree_id);
  if (it == m.fault_trees.end()) {
    throw ReferenceError("unknown fault tree \"" + fault_tree_id + "\"", fault_tree_id);
  }
  const FaultTree& ft = it->second;
  std::vector<UcaRecord> ucas =
      filter_applicable_ucas(m.uca_catalog, ft.top_kind, m.config.applicability);
  IntegratedFaultTree ift = attach_software_failures(ft, ucas);

  std::set<std::string> attached;
  for (const UcaRecord& u : ucas) attached.insert(u.id);
  std::vector<CcfGroup> groups;
  for (const CcfGroup& g : software_groups(m)) {
    std::size_t present = std::count_if(g.members.begin(), g.members.end(),
                                        [&attached](const std::string& id) { return attached.count(id) > 0; });
    if (present == 0) continue;
    if (present != g.members.size()) {
      throw DomainError("ccf group " + g.id + " mixes applicable and inapplicable UCAs for " +
                        fault_tree_id);
    }
    groups.push_back(g);
  }
  ift = attach_software_ccf(ift, groups, m.uca_catalog);

  Model out = m;
  out.fault_trees.at(fault_tree_id) = std::move(ift.tree);
  return out;
}

}  // namespace iradic
