#include "iradic/ccf.h"

#include <cmath>

#include "iradic/error.h"

namespace iradic {

namespace {

bool InUnit(double v) { return std::isfinite(v) && v >= 0 && v <= 1; }

}  // namespace

SplitResult beta_split(double total, std::span<const double> betas) {
  if (!InUnit(total)) throw DomainError("total probability outside [0,1]");
  double beta_sum = 0;
  for (double b : betas) {
    if (!InUnit(b)) throw DomainError("beta outside [0,1]");
    beta_sum += b;
  }
  if (beta_sum > 1) throw DomainError("betas sum above 1");
  SplitResult out;
  double share_sum = 0;
  for (double b : betas) {
    out.shares.push_back(b * total);
    share_sum += out.shares.back();
  }
  out.independent = total - share_sum;
  // Rounding can leave a tiny negative remainder when the betas sum to one.
  if (out.independent < 0) out.independent = 0;
  return out;
}

std::vector<double> betas_of(const CcfGroup& group) {
  std::vector<double> betas;
  for (const CcfLevel& l : group.levels) betas.push_back(l.beta);
  return betas;
}

std::string ccf_event_id(const CcfGroup& group, std::size_t level, std::size_t scope) {
  const CcfLevel& l = group.levels.at(level);
  std::string id = group.id + "-CCF-" + l.label;
  if (l.scopes.size() > 1) id += "-" + std::to_string(scope + 1);
  return id;
}

void expand_group_in_tree(FaultTree& tree, const CcfGroup& group,
                          const std::map<std::string, std::string>& member_events) {
  const SplitResult split = beta_split(group.total_probability, betas_of(group));

  for (const auto& [member, event_id] : member_events) {
    if (auto g = tree.gates.find(event_id); g != tree.gates.end()) {
      throw DomainError("ccf group " + group.id + ": member \"" + member + "\" already expanded");
    }
    auto e = tree.events.find(event_id);
    if (e == tree.events.end()) {
      throw ReferenceError("ccf group " + group.id + ": member not found \"" + member + "\"", member);
    }
    if (e->second.kind != EventKind::kHardware && e->second.kind != EventKind::kSoftware) {
      throw DomainError("ccf group " + group.id + ": member \"" + member +
                        "\" must be a hardware or software event");
    }
  }

  auto add_event = [&tree, &group](BasicEvent ev) {
    if (tree.has_node(ev.id)) {
      throw DomainError("ccf group " + group.id + ": id \"" + ev.id + "\" already in use");
    }
    tree.events.emplace(ev.id, std::move(ev));
  };

  // Shared events first, so each is created once per tree.
  std::map<std::string, std::vector<std::string>> ccf_inputs;  // event id -> ccf event ids
  for (std::size_t li = 0; li < group.levels.size(); ++li) {
    const CcfLevel& level = group.levels[li];
    if (level.beta == 0) continue;
    for (std::size_t si = 0; si < level.scopes.size(); ++si) {
      bool present = false;
      for (const std::string& member : level.scopes[si]) {
        if (auto it = member_events.find(member); it != member_events.end()) {
          present = true;
          ccf_inputs[it->second].push_back(ccf_event_id(group, li, si));
        }
      }
      if (!present) continue;
      BasicEvent ccf;
      ccf.id = ccf_event_id(group, li, si);
      ccf.kind = EventKind::kCcf;
      ccf.probability = split.shares[li];
      ccf.ccf_group = group.id;
      ccf.label = "CCF of " + group.id + " (" + level.label + ")";
      add_event(std::move(ccf));
    }
  }

  for (const auto& [member, event_id] : member_events) {
    BasicEvent original = tree.events.at(event_id);
    tree.events.erase(event_id);

    BasicEvent independent = original;
    independent.id = event_id + "-IND";
    independent.probability = split.independent;
    add_event(independent);

    Gate gate;
    gate.id = event_id;
    gate.kind = GateKind::kOr;
    gate.label = original.label;
    gate.inputs.push_back(independent.id);
    for (const std::string& ccf : ccf_inputs[event_id]) gate.inputs.push_back(ccf);
    tree.gates.emplace(gate.id, std::move(gate));
  }
}

std::string resolve_member(const Model& m, const std::string& member) {
  if (m.find_tree_with_node(member)) return member;
  if (m.find_uca(member)) {
    std::string sw = software_event_id(member);
    if (m.find_tree_with_node(sw)) return sw;
  }
  return {};
}

Model expand_ccf_groups(const Model& m, const std::vector<std::string>& group_ids) {
  std::vector<std::string> ids = group_ids;
  if (ids.empty()) {
    for (const auto& [id, g] : m.ccf_groups) ids.push_back(id);
  }
  Model out = m;
  for (const std::string& gid : ids) {
    auto git = out.ccf_groups.find(gid);
    if (git == out.ccf_groups.end()) throw ReferenceError("unknown ccf group \"" + gid + "\"", gid);
    const CcfGroup& group = git->second;
    std::map<std::string, std::map<std::string, std::string>> per_tree;
    for (const std::string& member : group.members) {
      std::string event_id = resolve_member(out, member);
      if (event_id.empty()) {
        throw ReferenceError("ccf group " + gid + ": member not found \"" + member + "\"", member);
      }
      for (const auto& [tid, tree] : out.fault_trees) {
        if (tree.has_node(event_id)) per_tree[tid][member] = event_id;
      }
    }
    for (auto& [tid, members] : per_tree) {
      expand_group_in_tree(out.fault_trees.at(tid), group, members);
    }
  }
  return out;
}

}  // namespace iradic
