#include "iradic/bbn.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "iradic/ccf.h"
#include "iradic/error.h"
#include "iradic/validate.h"

namespace iradic {

namespace {

// Table over binary variables. Bit i of a row index is the state of vars[i].
struct Factor {
  std::vector<int> vars;  // ascending
  std::vector<double> table;

  bool has(int v) const { return std::binary_search(vars.begin(), vars.end(), v); }
};

std::size_t Project(std::size_t row, const std::vector<int>& from, const std::vector<int>& to) {
  std::size_t out = 0;
  for (std::size_t i = 0, j = 0; i < to.size(); ++i) {
    while (from[j] != to[i]) ++j;
    if (row >> j & 1) out |= std::size_t{1} << i;
  }
  return out;
}

Factor Multiply(const Factor& a, const Factor& b) {
  Factor out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                 std::back_inserter(out.vars));
  out.table.resize(std::size_t{1} << out.vars.size());
  for (std::size_t row = 0; row < out.table.size(); ++row) {
    out.table[row] = a.table[Project(row, out.vars, a.vars)] * b.table[Project(row, out.vars, b.vars)];
  }
  return out;
}

Factor SumOut(const Factor& f, int var) {
  Factor out;
  std::size_t pos = std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin();
  for (int v : f.vars) {
    if (v != var) out.vars.push_back(v);
  }
  out.table.assign(std::size_t{1} << out.vars.size(), 0.0);
  for (std::size_t row = 0; row < f.table.size(); ++row) {
    std::size_t low = row & ((std::size_t{1} << pos) - 1);
    std::size_t high = row >> (pos + 1);
    out.table[low | high << pos] += f.table[row];
  }
  return out;
}

Factor Restrict(const Factor& f, int var, bool state) {
  Factor out;
  std::size_t pos = std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin();
  for (int v : f.vars) {
    if (v != var) out.vars.push_back(v);
  }
  out.table.resize(std::size_t{1} << out.vars.size());
  for (std::size_t row = 0; row < out.table.size(); ++row) {
    std::size_t low = row & ((std::size_t{1} << pos) - 1);
    std::size_t high = row >> pos;
    std::size_t full = low | (state ? std::size_t{1} << pos : 0) | high << (pos + 1);
    out.table[row] = f.table[full];
  }
  return out;
}

class Network {
 public:
  Network(const Bbn& b, const std::string& query, const Evidence& evidence) {
    for (const Finding& f : validate_bbn(b)) {
      if (f.severity == Severity::kError) {
        throw DomainError("bbn " + b.id + ": " + f.location + ": " + f.message);
      }
    }
    int next = 0;
    for (const auto& [id, node] : b.nodes) {
      index_[id] = next++;
      names_.push_back(id);
    }
    query_ = IndexOf(query);
    for (const auto& [id, state] : evidence) evidence_[IndexOf(id)] = state;

    for (const auto& [id, node] : b.nodes) {
      const int self = index_.at(id);
      std::vector<int> scope{self};
      for (const std::string& p : node.parents) scope.push_back(index_.at(p));
      Factor f;
      f.vars = scope;
      std::sort(f.vars.begin(), f.vars.end());
      f.table.resize(std::size_t{1} << f.vars.size());
      const std::size_t n = node.parents.size();
      for (std::size_t row = 0; row < f.table.size(); ++row) {
        auto state = [&](int var) {
          std::size_t pos = std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin();
          return (row >> pos & 1) != 0;
        };
        std::size_t cpt_row = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (state(scope[i + 1])) cpt_row |= std::size_t{1} << (n - 1 - i);
        }
        double p_fail = node.cpt[cpt_row];
        f.table[row] = state(self) ? p_fail : 1.0 - p_fail;
      }
      for (const auto& [var, value] : evidence_) {
        if (f.has(var)) f = Restrict(f, var, value);
      }
      factors_.push_back(std::move(f));
    }
  }

  int IndexOf(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ReferenceError("unknown bbn node \"" + id + "\"", id);
    return it->second;
  }

  std::vector<int> MinDegreeOrder() const {
    std::map<int, std::set<int>> graph;
    for (int v = 0; v < static_cast<int>(names_.size()); ++v) {
      if (v != query_ && !evidence_.count(v)) graph[v];
    }
    for (const Factor& f : factors_) {
      for (int a : f.vars) {
        for (int b : f.vars) {
          if (a != b) graph[a].insert(b);
        }
      }
    }
    std::vector<int> order;
    while (true) {
      int best = -1;
      std::size_t best_degree = 0;
      // Node indices follow id order, so the first minimum is the smallest id.
      for (const auto& [v, adj] : graph) {
        if (v == query_) continue;
        if (best < 0 || adj.size() < best_degree) {
          best = v;
          best_degree = adj.size();
        }
      }
      if (best < 0) break;
      const std::set<int> adj = graph[best];
      for (int a : adj) {
        graph[a].erase(best);
        for (int b : adj) {
          if (a != b) graph[a].insert(b);
        }
      }
      graph.erase(best);
      order.push_back(best);
    }
    return order;
  }

  Marginal Run(const std::vector<int>& order) const {
    std::vector<Factor> pool = factors_;
    for (int var : order) {
      Factor product{{}, {1.0}};
      std::vector<Factor> rest;
      for (Factor& f : pool) {
        if (f.has(var)) {
          product = Multiply(product, f);
        } else {
          rest.push_back(std::move(f));
        }
      }
      rest.push_back(SumOut(product, var));
      pool = std::move(rest);
    }
    Factor joint{{}, {1.0}};
    for (const Factor& f : pool) joint = Multiply(joint, f);

    double ok = 0;
    double fail = 0;
    if (auto e = evidence_.find(query_); e != evidence_.end()) {
      (e->second ? fail : ok) = joint.table.at(0);
    } else {
      ok = joint.table.at(0);
      fail = joint.table.at(1);
    }
    const double z = ok + fail;
    if (!(z > 0)) throw DomainError("evidence has probability zero; conditional is undefined");
    return {ok / z, fail / z};
  }

  std::vector<int> OrderFromIds(std::span<const std::string> ids) const {
    std::vector<int> order;
    std::set<int> seen;
    for (const std::string& id : ids) {
      int v = IndexOf(id);
      if (v == query_ || evidence_.count(v) || !seen.insert(v).second) {
        throw DomainError("elimination order: \"" + id + "\" is the query, evidence or repeated");
      }
      order.push_back(v);
    }
    if (order.size() + 1 + evidence_.size() - (evidence_.count(query_) ? 1 : 0) != names_.size()) {
      throw DomainError("elimination order must cover every hidden node");
    }
    return order;
  }

  const std::string& Name(int v) const { return names_[v]; }

 private:
  std::map<std::string, int> index_;
  std::vector<std::string> names_;
  int query_ = -1;
  std::map<int, bool> evidence_;
  std::vector<Factor> factors_;
};

}  // namespace

Marginal infer_distribution(const Bbn& b, const std::string& query, const Evidence& evidence) {
  Network net(b, query, evidence);
  return net.Run(net.MinDegreeOrder());
}

Marginal infer_distribution(const Bbn& b, const std::string& query, const Evidence& evidence,
                            std::span<const std::string> order) {
  Network net(b, query, evidence);
  return net.Run(net.OrderFromIds(order));
}

double infer_marginal(const Bbn& b, const std::string& query, const Evidence& evidence) {
  return infer_distribution(b, query, evidence).fail;
}

std::vector<std::string> min_degree_order(const Bbn& b, const std::string& query,
                                          const Evidence& evidence) {
  Network net(b, query, evidence);
  std::vector<std::string> out;
  for (int v : net.MinDegreeOrder()) out.push_back(net.Name(v));
  return out;
}

BahamasResult bahamas_estimate(const Bbn& b, const std::string& query, double adjustment_factor,
                               std::span<const BetaLevel> levels) {
  if (!(adjustment_factor >= 0) || !std::isfinite(adjustment_factor)) {
    throw DomainError("adjustment factor must be finite and >= 0");
  }
  BahamasResult out;
  out.generic = infer_marginal(b, query);
  out.specific = out.generic * adjustment_factor;
  if (out.specific > 1) {
    out.warning = "specific probability " + std::to_string(out.specific) + " clamped to 1";
    out.specific = 1;
  }
  std::vector<double> betas;
  for (const BetaLevel& l : levels) betas.push_back(l.beta);
  SplitResult split = beta_split(out.specific, betas);
  out.individual = split.independent;
  for (std::size_t i = 0; i < levels.size(); ++i) out.ccf[levels[i].label] = split.shares[i];
  return out;
}

BahamasResult bahamas_estimate(const Bbn& b) {
  if (!b.bahamas) throw DomainError("bbn " + b.id + " has no bahamas settings");
  return bahamas_estimate(b, b.bahamas->query, b.bahamas->adjustment_factor, b.bahamas->levels);
}

Model apply_bahamas(const Model& m, const std::string& bbn_id) {
  auto bit = m.bbns.find(bbn_id);
  if (bit == m.bbns.end()) throw ReferenceError("unknown bbn \"" + bbn_id + "\"", bbn_id);
  const Bbn& b = bit->second;
  if (!b.bahamas || !b.bahamas->ccf_group) {
    throw DomainError("bbn " + bbn_id + " names no ccf group to receive its estimate");
  }
  const std::string& gid = *b.bahamas->ccf_group;
  Model out = m;
  auto git = out.ccf_groups.find(gid);
  if (git == out.ccf_groups.end()) throw ReferenceError("unknown ccf group \"" + gid + "\"", gid);
  const BahamasResult r = bahamas_estimate(b);
  CcfGroup& group = git->second;
  group.total_probability = r.specific;
  for (const BetaLevel& bl : b.bahamas->levels) {
    auto level = std::find_if(group.levels.begin(), group.levels.end(),
                              [&bl](const CcfLevel& l) { return l.label == bl.label; });
    if (level == group.levels.end()) {
      throw DomainError("ccf group " + gid + " has no level \"" + bl.label + "\"");
    }
    level->beta = bl.beta;
  }
  for (UcaRecord& u : out.uca_catalog) {
    if (std::find(group.members.begin(), group.members.end(), u.id) != group.members.end()) {
      u.probability = r.specific;
    }
  }
  return out;
}

}  // namespace iradic
