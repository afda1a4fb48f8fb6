#include "iradic/validate.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace iradic {

namespace {

bool IsProbability(double p) { return std::isfinite(p) && p >= 0 && p <= 1; }

void Add(ValidationReport& report, Severity severity, std::string location, std::string message) {
  report.push_back({severity, std::move(location), std::move(message)});
}

void Prefix(ValidationReport& into, const ValidationReport& from, const std::string& prefix) {
  for (const Finding& f : from) {
    into.push_back({f.severity, f.location.empty() ? prefix : prefix + " / " + f.location,
                    f.message});
  }
}

void CheckId(ValidationReport& report, const std::string& id, const std::string& location) {
  if (!is_valid_id(id)) Add(report, Severity::kError, location, "invalid id \"" + id + "\"");
}

std::string Chain(const std::vector<std::string>& stack, const std::string& back_to) {
  std::string out = "cycle: ";
  auto start = std::find(stack.begin(), stack.end(), back_to);
  for (auto it = start; it != stack.end(); ++it) out += *it + "→";
  return out + back_to;
}

/// Depth-first cycle search over an adjacency function. Reports each cycle
/// once, as the chain of ids from its first-visited node back to itself.
void FindCycles(const std::vector<std::string>& roots,
                const std::function<const std::vector<std::string>*(const std::string&)>& next,
                ValidationReport& report, const std::string& kind) {
  enum Color { kWhite, kGrey, kBlack };
  std::map<std::string, Color> color;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    color[id] = kGrey;
    stack.push_back(id);
    if (const auto* children = next(id)) {
      for (const std::string& child : *children) {
        Color c = color.count(child) ? color[child] : kWhite;
        if (c == kGrey) {
          Add(report, Severity::kError, kind + " " + child, Chain(stack, child));
        } else if (c == kWhite) {
          visit(child);
        }
      }
    }
    stack.pop_back();
    color[id] = kBlack;
  };
  for (const std::string& root : roots) {
    if (!color.count(root)) visit(root);
  }
}

}  // namespace

bool is_valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (unsigned char c : id) {
    if (!(std::isalnum(c) || c == '_' || c == '-')) return false;
  }
  return true;
}

bool has_errors(const ValidationReport& report) {
  return std::any_of(report.begin(), report.end(),
                     [](const Finding& f) { return f.severity == Severity::kError; });
}

std::vector<DanglingReference> dangling_references(const Model& m) {
  std::vector<DanglingReference> out;
  auto missing = [&out](std::string location, const std::string& id) {
    out.push_back({std::move(location), id});
  };
  for (const auto& [tid, ft] : m.fault_trees) {
    std::string where = "fault_tree " + tid;
    if (!ft.gates.count(ft.top)) missing(where + " / top", ft.top);
    for (const auto& [gid, g] : ft.gates) {
      for (const std::string& in : g.inputs) {
        if (!ft.has_node(in)) missing(where + " / gate " + gid, in);
      }
    }
    for (const auto& [eid, e] : ft.events) {
      if (e.ccf_group && !m.ccf_groups.count(*e.ccf_group)) {
        missing(where + " / event " + eid, *e.ccf_group);
      }
      if (e.uca && !m.find_uca(*e.uca)) missing(where + " / event " + eid, *e.uca);
    }
  }
  for (const auto& [etid, et] : m.event_trees) {
    for (const auto& fe : et.functional_events) {
      std::string where = "event_tree " + etid + " / functional_event " + fe.id;
      auto ft = m.fault_trees.find(fe.fault_tree);
      if (ft == m.fault_trees.end()) {
        missing(where, fe.fault_tree);
      } else if (!ft->second.has_node(fe.gate)) {
        missing(where, fe.gate);
      }
    }
  }
  for (const auto& [gid, g] : m.ccf_groups) {
    for (const std::string& member : g.members) {
      if (!m.find_tree_with_node(member) && !m.find_uca(member)) {
        missing("ccf_group " + gid, member);
      }
    }
  }
  for (const auto& u : m.uca_catalog) {
    if (!m.find_tree_with_node(u.controller)) missing("uca " + u.id, u.controller);
  }
  for (const auto& [bid, b] : m.bbns) {
    for (const auto& [nid, node] : b.nodes) {
      for (const std::string& p : node.parents) {
        if (!b.nodes.count(p)) missing("bbn " + bid + " / node " + nid, p);
      }
    }
    for (const std::string& q : b.queries) {
      if (!b.nodes.count(q)) missing("bbn " + bid + " / queries", q);
    }
    if (b.bahamas) {
      if (!b.nodes.count(b.bahamas->query)) missing("bbn " + bid + " / bahamas", b.bahamas->query);
      if (b.bahamas->ccf_group && !m.ccf_groups.count(*b.bahamas->ccf_group)) {
        missing("bbn " + bid + " / bahamas", *b.bahamas->ccf_group);
      }
    }
  }
  return out;
}

ValidationReport validate_fault_tree(const FaultTree& ft) {
  ValidationReport report;
  CheckId(report, ft.id, "");
  if (!ft.gates.count(ft.top)) {
    Add(report, Severity::kError, "top",
        ft.events.count(ft.top) ? "top \"" + ft.top + "\" must be a gate"
                                : "undefined top \"" + ft.top + "\"");
  }
  for (const auto& [id, g] : ft.gates) {
    std::string where = "gate " + id;
    CheckId(report, id, where);
    if (g.inputs.empty()) Add(report, Severity::kError, where, "gate has no inputs");
    std::set<std::string> seen;
    for (const std::string& in : g.inputs) {
      if (in == id) Add(report, Severity::kError, where, "gate lists itself as input");
      if (!ft.has_node(in)) Add(report, Severity::kError, where, "undefined input \"" + in + "\"");
      if (!seen.insert(in).second) Add(report, Severity::kError, where, "duplicate input \"" + in + "\"");
    }
    if (g.kind == GateKind::kAtLeast) {
      int n = static_cast<int>(g.inputs.size());
      if (g.k < 1 || g.k > n) {
        Add(report, Severity::kError, where,
            "atleast gate needs 1 <= k <= n (k=" + std::to_string(g.k) + ", n=" + std::to_string(n) + ")");
      }
    }
  }
  for (const auto& [id, e] : ft.events) {
    std::string where = "event " + id;
    CheckId(report, id, where);
    if (!IsProbability(e.probability)) {
      Add(report, Severity::kError, where, "probability out of [0,1]");
    }
    if (e.kind == EventKind::kHouse) {
      if (!e.house_state) {
        Add(report, Severity::kError, where, "house event without state");
      } else if (e.probability != (*e.house_state ? 1.0 : 0.0)) {
        Add(report, Severity::kError, where, "house event probability must match its state");
      }
    } else if (e.house_state) {
      Add(report, Severity::kError, where, "only house events carry a state");
    }
    if (e.kind == EventKind::kCcf && !e.ccf_group) {
      Add(report, Severity::kError, where, "ccf event does not name its group");
    }
  }

  std::vector<std::string> roots{ft.top};
  for (const auto& [id, g] : ft.gates) roots.push_back(id);
  FindCycles(
      roots,
      [&ft](const std::string& id) -> const std::vector<std::string>* {
        auto it = ft.gates.find(id);
        return it == ft.gates.end() ? nullptr : &it->second.inputs;
      },
      report, "gate");

  // Reachability from the top.
  std::set<std::string> reached;
  std::vector<std::string> todo;
  if (ft.has_node(ft.top)) todo.push_back(ft.top);
  while (!todo.empty()) {
    std::string id = todo.back();
    todo.pop_back();
    if (!reached.insert(id).second) continue;
    if (auto it = ft.gates.find(id); it != ft.gates.end()) {
      for (const std::string& in : it->second.inputs) {
        if (ft.has_node(in) && !reached.count(in)) todo.push_back(in);
      }
    }
  }
  for (const auto& [id, g] : ft.gates) {
    if (!reached.count(id)) Add(report, Severity::kError, "gate " + id, "not reachable from top");
  }
  for (const auto& [id, e] : ft.events) {
    if (!reached.count(id)) Add(report, Severity::kError, "event " + id, "not reachable from top");
  }
  return report;
}

ValidationReport validate_bbn(const Bbn& b) {
  ValidationReport report;
  CheckId(report, b.id, "");
  for (const auto& [id, node] : b.nodes) {
    std::string where = "node " + id;
    CheckId(report, id, where);
    std::set<std::string> seen;
    for (const std::string& p : node.parents) {
      if (p == id) {
        Add(report, Severity::kError, where, "cycle: " + id + "→" + id);
      } else if (!b.nodes.count(p)) {
        Add(report, Severity::kError, where, "missing parent \"" + p + "\"");
      }
      if (!seen.insert(p).second) Add(report, Severity::kError, where, "duplicate parent \"" + p + "\"");
    }
    if (node.parents.size() >= 30) {
      Add(report, Severity::kError, where, "too many parents");
    } else {
      std::size_t expected = std::size_t{1} << node.parents.size();
      if (node.cpt.size() != expected) {
        Add(report, Severity::kError, where,
            "cpt has " + std::to_string(node.cpt.size()) + " entries, expected " +
                std::to_string(expected));
      }
    }
    for (double v : node.cpt) {
      if (!IsProbability(v)) {
        Add(report, Severity::kError, where, "cpt entry out of [0,1]");
        break;
      }
    }
  }
  std::vector<std::string> roots;
  for (const auto& [id, node] : b.nodes) roots.push_back(id);
  // Self-loops were reported above; search longer cycles over child->parent edges.
  ValidationReport cycles;
  FindCycles(
      roots,
      [&b](const std::string& id) -> const std::vector<std::string>* {
        auto it = b.nodes.find(id);
        return it == b.nodes.end() ? nullptr : &it->second.parents;
      },
      cycles, "node");
  for (Finding& f : cycles) {
    bool self_loop = f.message.find("→") == f.message.rfind("→");
    if (!self_loop) report.push_back(std::move(f));
  }
  for (const std::string& q : b.queries) {
    if (!b.nodes.count(q)) Add(report, Severity::kError, "queries", "unknown query node \"" + q + "\"");
  }
  if (b.bahamas) {
    const BahamasConfig& cfg = *b.bahamas;
    if (!b.nodes.count(cfg.query)) {
      Add(report, Severity::kError, "bahamas", "unknown query node \"" + cfg.query + "\"");
    }
    if (!std::isfinite(cfg.adjustment_factor) || cfg.adjustment_factor < 0) {
      Add(report, Severity::kError, "bahamas", "adjustment factor must be >= 0");
    }
    double sum = 0;
    for (const BetaLevel& l : cfg.levels) {
      if (!IsProbability(l.beta)) Add(report, Severity::kError, "bahamas", "beta out of [0,1]");
      sum += l.beta;
    }
    if (sum > 1) Add(report, Severity::kError, "bahamas", "betas sum above 1");
  }
  return report;
}

ValidationReport validate_model(const Model& m) {
  ValidationReport report;
  for (const DanglingReference& d : dangling_references(m)) {
    Add(report, Severity::kError, d.location, "undefined reference \"" + d.id + "\"");
  }

  for (const auto& [id, ft] : m.fault_trees) {
    Prefix(report, validate_fault_tree(ft), "fault_tree " + id);
  }

  for (const auto& [gid, g] : m.ccf_groups) {
    std::string where = "ccf_group " + gid;
    CheckId(report, gid, where);
    if (g.members.empty()) Add(report, Severity::kError, where, "group has no members");
    std::set<std::string> members(g.members.begin(), g.members.end());
    if (members.size() != g.members.size()) Add(report, Severity::kError, where, "duplicate member");
    if (!IsProbability(g.total_probability)) {
      Add(report, Severity::kError, where, "total probability out of [0,1]");
    }
    double beta_sum = 0;
    for (const CcfLevel& level : g.levels) {
      std::string lwhere = where + " / level " + level.label;
      if (!IsProbability(level.beta)) Add(report, Severity::kError, lwhere, "beta out of [0,1]");
      beta_sum += level.beta;
      std::map<std::string, int> covered;
      for (const auto& scope : level.scopes) {
        if (scope.empty()) Add(report, Severity::kError, lwhere, "empty scope");
        for (const std::string& id : scope) {
          if (!members.count(id)) {
            Add(report, Severity::kError, lwhere, "scope names non-member \"" + id + "\"");
          }
          ++covered[id];
        }
      }
      for (const std::string& id : members) {
        if (covered[id] != 1) {
          Add(report, Severity::kError, lwhere,
              "member \"" + id + "\" must appear in exactly one scope");
        }
      }
    }
    if (beta_sum > 1) Add(report, Severity::kError, where, "betas sum above 1");
    for (const std::string& member : g.members) {
      const FaultTree* ft = m.find_tree_with_node(member);
      if (!ft) continue;
      auto e = ft->events.find(member);
      if (e == ft->events.end()) continue;  // already expanded into a gate
      if (e->second.kind != EventKind::kHardware && e->second.kind != EventKind::kSoftware) {
        Add(report, Severity::kError, where,
            "member \"" + member + "\" must be a hardware or software event");
      } else if (e->second.probability != g.total_probability) {
        Add(report, Severity::kWarning, where,
            "member \"" + member + "\" probability differs from group total; expansion uses the total");
      }
    }
  }

  for (const UcaRecord& u : m.uca_catalog) {
    std::string where = "uca " + u.id;
    CheckId(report, u.id, where);
    if (u.category == UcaCategory::kWrongDuration && !u.continuous_action) {
      Add(report, Severity::kError, where, "wrong-duration applies only to continuous control actions");
    }
    if (u.probability && !IsProbability(*u.probability)) {
      Add(report, Severity::kError, where, "probability out of [0,1]");
    }
  }

  for (const auto& [etid, et] : m.event_trees) {
    std::string where = "event_tree " + etid;
    CheckId(report, etid, where);
    const double f = et.initiating_event.frequency;
    if (!std::isfinite(f) || f < 0) Add(report, Severity::kError, where, "initiating frequency must be >= 0");
    std::set<std::vector<Branch>> paths;
    for (const Sequence& s : et.sequences) {
      std::string swhere = where + " / sequence " + s.id;
      if (s.path.size() > et.functional_events.size()) {
        Add(report, Severity::kError, swhere, "path longer than the functional event list");
      }
      std::vector<Branch> full = s.path;
      full.resize(et.functional_events.size(), Branch::kBypass);
      if (!paths.insert(full).second) Add(report, Severity::kError, swhere, "duplicate path");
      if (s.frequency && (!std::isfinite(*s.frequency) || *s.frequency < 0)) {
        Add(report, Severity::kError, swhere, "sequence frequency must be >= 0");
      }
      if (s.cutset_count && *s.cutset_count < 0) {
        Add(report, Severity::kError, swhere, "cut-set count must be >= 0");
      }
    }
  }

  for (const auto& [bid, b] : m.bbns) Prefix(report, validate_bbn(b), "bbn " + bid);

  const AnalysisConfig& c = m.config;
  if (!std::isfinite(c.truncation_probability) || c.truncation_probability < 0) {
    Add(report, Severity::kError, "config", "truncation must be >= 0");
  }
  if (c.max_cutset_order && *c.max_cutset_order < 1) {
    Add(report, Severity::kError, "config", "max_order must be positive");
  }
  return report;
}

}  // namespace iradic
