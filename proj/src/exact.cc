// Exact top-event probability through a reduced ordered BDD.
#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

#include "iradic/cutset.h"
#include "iradic/error.h"

namespace iradic {

namespace {

/// Minimal ROBDD with AND/OR apply. Node 0 is false, node 1 is true.
class Bdd {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit Bdd(std::uint32_t var_count) : terminal_level_(var_count) {
    nodes_.push_back({terminal_level_, 0, 0});
    nodes_.push_back({terminal_level_, 1, 1});
  }

  Ref Var(std::uint32_t level) { return Make(level, kFalse, kTrue); }

  Ref And(Ref a, Ref b) { return Apply(a, b, true); }
  Ref Or(Ref a, Ref b) { return Apply(a, b, false); }

  /// P(f = 1) with p[level] the probability of the variable at that level.
  double Probability(Ref root, const std::vector<double>& p) {
    std::unordered_map<Ref, double> memo;
    return Prob(root, p, memo);
  }

 private:
  struct Node {
    std::uint32_t level;
    Ref low;
    Ref high;
  };

  static std::uint64_t Key(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return (a * 0x9E3779B97F4A7C15ULL) ^ (b << 21) ^ (b >> 43) ^ (c * 0xC2B2AE3D27D4EB4FULL);
  }

  struct Triple {
    std::uint32_t a, b, c;
    bool operator==(const Triple&) const = default;
  };
  struct TripleHash {
    std::size_t operator()(const Triple& t) const { return Key(t.a, t.b, t.c); }
  };

  Ref Make(std::uint32_t level, Ref low, Ref high) {
    if (low == high) return low;
    Triple key{level, low, high};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    Ref r = static_cast<Ref>(nodes_.size());
    nodes_.push_back({level, low, high});
    unique_.emplace(key, r);
    return r;
  }

  Ref Apply(Ref a, Ref b, bool conj) {
    if (conj) {
      if (a == kFalse || b == kFalse) return kFalse;
      if (a == kTrue) return b;
      if (b == kTrue) return a;
    } else {
      if (a == kTrue || b == kTrue) return kTrue;
      if (a == kFalse) return b;
      if (b == kFalse) return a;
    }
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    Triple key{a, b, conj ? 1u : 0u};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Node na = nodes_[a];
    const Node nb = nodes_[b];
    std::uint32_t level = std::min(na.level, nb.level);
    Ref a0 = na.level == level ? na.low : a;
    Ref a1 = na.level == level ? na.high : a;
    Ref b0 = nb.level == level ? nb.low : b;
    Ref b1 = nb.level == level ? nb.high : b;
    Ref low = Apply(a0, b0, conj);
    Ref high = Apply(a1, b1, conj);
    Ref r = Make(level, low, high);
    cache_.emplace(key, r);
    return r;
  }

  double Prob(Ref r, const std::vector<double>& p, std::unordered_map<Ref, double>& memo) {
    if (r == kFalse) return 0.0;
    if (r == kTrue) return 1.0;
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const Node n = nodes_[r];
    double q = p[n.level];
    double v = q * Prob(n.high, p, memo) + (1.0 - q) * Prob(n.low, p, memo);
    memo.emplace(r, v);
    return v;
  }

  std::uint32_t terminal_level_;
  std::vector<Node> nodes_;
  std::unordered_map<Triple, Ref, TripleHash> unique_;
  std::unordered_map<Triple, Ref, TripleHash> cache_;
};

class BddBuilder {
 public:
  BddBuilder(const FaultTree& ft, const std::string& top, int event_limit) : ft_(ft) {
    Collect(top);
    if (static_cast<int>(share_.size()) > event_limit) {
      throw DomainError("exact quantification limited to " + std::to_string(event_limit) +
                        " basic events; cone of \"" + top + "\" has " +
                        std::to_string(share_.size()));
    }
    // Most-shared first, ties by id.
    std::vector<std::pair<std::string, int>> order(share_.begin(), share_.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::uint32_t level = 0; level < order.size(); ++level) {
      level_[order[level].first] = level;
      probs_.push_back(ft_.events.at(order[level].first).probability);
    }
    bdd_ = std::make_unique<Bdd>(static_cast<std::uint32_t>(order.size()));
  }

  double Run(const std::string& top) {
    Bdd::Ref root = Build(top);
    return bdd_->Probability(root, probs_);
  }

 private:
  void Collect(const std::string& id) {
    if (auto g = ft_.gates.find(id); g != ft_.gates.end()) {
      if (!seen_gates_.insert(id).second) return;
      for (const std::string& in : g->second.inputs) {
        if (ft_.events.count(in) && ft_.events.at(in).kind != EventKind::kHouse) ++share_[in];
        Collect(in);
      }
      return;
    }
    if (!ft_.events.count(id)) throw ReferenceError("undefined node \"" + id + "\"", id);
  }

  Bdd::Ref Build(const std::string& id) {
    if (auto e = ft_.events.find(id); e != ft_.events.end()) {
      if (e->second.kind == EventKind::kHouse) {
        return e->second.probability == 1.0 ? Bdd::kTrue : Bdd::kFalse;
      }
      return bdd_->Var(level_.at(id));
    }
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    if (!in_progress_.insert(id).second) throw DomainError("cycle through gate " + id);
    const Gate& g = ft_.gates.at(id);
    Bdd::Ref r = Bdd::kFalse;
    switch (g.kind) {
      case GateKind::kOr:
        for (const std::string& in : g.inputs) r = bdd_->Or(r, Build(in));
        break;
      case GateKind::kAnd:
        r = Bdd::kTrue;
        for (const std::string& in : g.inputs) r = bdd_->And(r, Build(in));
        break;
      case GateKind::kAtLeast: {
        const std::size_t n = g.inputs.size();
        const std::size_t k = static_cast<std::size_t>(g.k);
        if (g.k < 1 || k > n) throw DomainError("atleast gate " + g.id + " needs 1 <= k <= n");
        std::vector<Bdd::Ref> children;
        for (const std::string& in : g.inputs) children.push_back(Build(in));
        std::vector<Bdd::Ref> next(k + 1, Bdd::kFalse);
        next[0] = Bdd::kTrue;
        for (std::size_t i = n; i-- > 0;) {
          std::vector<Bdd::Ref> cur(k + 1, Bdd::kFalse);
          cur[0] = Bdd::kTrue;
          for (std::size_t j = 1; j <= k; ++j) {
            cur[j] = bdd_->Or(bdd_->And(children[i], next[j - 1]), next[j]);
          }
          next = std::move(cur);
        }
        r = next[k];
        break;
      }
    }
    in_progress_.erase(id);
    memo_.emplace(id, r);
    return r;
  }

  const FaultTree& ft_;
  std::set<std::string> seen_gates_;
  std::set<std::string> in_progress_;
  std::map<std::string, int> share_;
  std::map<std::string, std::uint32_t> level_;
  std::vector<double> probs_;
  std::map<std::string, Bdd::Ref> memo_;
  std::unique_ptr<Bdd> bdd_;
};

}  // namespace

double exact_top_probability(const FaultTree& ft, int event_limit, const std::string& top) {
  const std::string& root = top.empty() ? ft.top : top;
  if (!ft.has_node(root)) throw ReferenceError("undefined top \"" + root + "\"", root);
  if (auto e = ft.events.find(root); e != ft.events.end()) {
    if (event_limit < 1 && e->second.kind != EventKind::kHouse) {
      throw DomainError("exact quantification limited to 0 basic events");
    }
    return e->second.probability;
  }
  BddBuilder builder(ft, root, event_limit);
  return builder.Run(root);
}

}  // namespace iradic
