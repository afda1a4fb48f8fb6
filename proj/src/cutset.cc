#include "iradic/cutset.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "iradic/error.h"
#include "iradic/kernels.h"

namespace iradic {

namespace {

using kernels::EventIndex;
using kernels::EventSet;
using kernels::Family;

constexpr std::size_t kMaxVoteInputs = 20;

/// Bottom-up expansion of one gate cone into minimal set families, memoized
/// per gate so shared subtrees expand once.
class Expander {
 public:
  Expander(const FaultTree& ft, const AnalysisConfig& cfg, const std::string& top)
      : ft_(ft), cfg_(cfg), top_(top) {
    CollectEvents(top_);
    EventIndex next = 0;
    for (auto& [id, index] : index_) {
      index = next++;
      names_.push_back(id);
      probs_.push_back(ft_.events.at(id).probability);
    }
    if (cfg_.truncate_during_expansion) {
      limits_.max_order = cfg_.max_cutset_order;
      limits_.min_probability = cfg_.truncation_probability;
      limits_.probabilities = probs_;
    }
    limits_.max_sets = cfg_.max_intermediate_sets;
  }

  Family Run() { return Node(top_); }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& probabilities() const { return probs_; }

 private:
  void CollectEvents(const std::string& id) {
    if (!visited_.insert(id).second) return;
    if (auto g = ft_.gates.find(id); g != ft_.gates.end()) {
      for (const std::string& in : g->second.inputs) CollectEvents(in);
      return;
    }
    auto e = ft_.events.find(id);
    if (e == ft_.events.end()) throw ReferenceError("undefined node \"" + id + "\"", id);
    if (e->second.kind != EventKind::kHouse) index_.emplace(id, 0);
  }

  Family Node(const std::string& id) {
    if (auto e = ft_.events.find(id); e != ft_.events.end()) {
      const BasicEvent& ev = e->second;
      if (ev.kind == EventKind::kHouse) {
        return ev.probability == 1.0 ? Family{EventSet{}} : Family{};
      }
      return Family{EventSet{index_.at(id)}};
    }
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    if (!in_progress_.insert(id).second) throw DomainError("cycle through gate " + id);
    const Gate& g = ft_.gates.at(id);
    Family result;
    switch (g.kind) {
      case GateKind::kOr:
        for (const std::string& in : g.inputs) {
          Family child = Node(in);
          result.insert(result.end(), std::make_move_iterator(child.begin()),
                        std::make_move_iterator(child.end()));
          CheckSize(result);
        }
        kernels::minimize(result);
        break;
      case GateKind::kAnd:
        result = Family{EventSet{}};
        for (const std::string& in : g.inputs) {
          result = kernels::product(result, Node(in), limits_);
          kernels::minimize(result);
        }
        break;
      case GateKind::kAtLeast:
        result = Vote(g);
        break;
    }
    in_progress_.erase(id);
    memo_.emplace(id, result);
    return result;
  }

  /// at-least-k-of-n by the recurrence
  ///   F(i, j) = x_i * F(i+1, j-1) + F(i+1, j),
  /// which yields the same minimal family as the OR over all k-subsets.
  Family Vote(const Gate& g) {
    const std::size_t n = g.inputs.size();
    if (n > kMaxVoteInputs) {
      throw DomainError("atleast gate " + g.id + " has more than 20 inputs");
    }
    const std::size_t k = static_cast<std::size_t>(g.k);
    if (g.k < 1 || k > n) throw DomainError("atleast gate " + g.id + " needs 1 <= k <= n");
    std::vector<Family> children;
    for (const std::string& in : g.inputs) children.push_back(Node(in));
    // next[j] holds F(i+1, j); start from i = n.
    std::vector<Family> next(k + 1);
    next[0] = Family{EventSet{}};
    for (std::size_t i = n; i-- > 0;) {
      std::vector<Family> cur(k + 1);
      cur[0] = Family{EventSet{}};
      for (std::size_t j = 1; j <= k; ++j) {
        if (n - i < j) continue;
        Family take = kernels::product(children[i], next[j - 1], limits_);
        Family& skip = next[j];
        take.insert(take.end(), skip.begin(), skip.end());
        CheckSize(take);
        kernels::minimize(take);
        cur[j] = std::move(take);
      }
      next = std::move(cur);
    }
    return next[k];
  }

  void CheckSize(const Family& f) const {
    if (static_cast<std::int64_t>(f.size()) > limits_.max_sets) {
      throw ResourceLimitError("intermediate cut-set count exceeded", limits_.max_sets);
    }
  }

  const FaultTree& ft_;
  const AnalysisConfig& cfg_;
  std::string top_;
  std::set<std::string> visited_;
  std::set<std::string> in_progress_;
  std::map<std::string, EventIndex> index_;
  std::vector<std::string> names_;
  std::vector<double> probs_;
  std::map<std::string, Family> memo_;
  kernels::ProductLimits limits_;
};

bool CanonicalLess(const CutSet& a, const CutSet& b) {
  if (a.events.size() != b.events.size()) return a.events.size() < b.events.size();
  if (a.probability != b.probability) return a.probability > b.probability;
  return a.events < b.events;
}

}  // namespace

bool CutSet::contains(const std::string& id) const {
  return std::binary_search(events.begin(), events.end(), id);
}

void sort_canonical(std::vector<CutSet>& sets) {
  std::sort(sets.begin(), sets.end(), CanonicalLess);
}

std::vector<CutSet> untruncated_cut_sets(const FaultTree& ft, const AnalysisConfig& cfg,
                                         const std::string& top) {
  const std::string& root = top.empty() ? ft.top : top;
  if (!ft.has_node(root)) throw ReferenceError("undefined top \"" + root + "\"", root);
  Expander expander(ft, cfg, root);
  Family family = expander.Run();
  if (!family.empty() && family.front().empty()) {
    throw DomainError("top \"" + root + "\" is true regardless of basic events");
  }
  std::vector<double> probs = kernels::set_probabilities(family, expander.probabilities());
  std::vector<CutSet> sets;
  sets.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    CutSet cs;
    cs.events.reserve(family[i].size());
    for (EventIndex e : family[i]) cs.events.push_back(expander.names()[e]);
    cs.probability = probs[i];
    sets.push_back(std::move(cs));
  }
  return sets;
}

CutSetList truncate_cut_sets(std::vector<CutSet> sets, double truncation_probability,
                             std::optional<int> max_order, std::string source_top) {
  CutSetList out;
  out.truncation_probability = truncation_probability;
  out.max_order = max_order;
  out.source_top = std::move(source_top);
  sort_canonical(sets);
  for (CutSet& cs : sets) {
    bool too_long = max_order && cs.order() > *max_order;
    if (too_long || cs.probability < truncation_probability) {
      ++out.truncated_count;
    } else {
      out.cutsets.push_back(std::move(cs));
    }
  }
  return out;
}

CutSetList minimal_cut_sets(const FaultTree& ft, const AnalysisConfig& cfg, const std::string& top) {
  const std::string& root = top.empty() ? ft.top : top;
  return truncate_cut_sets(untruncated_cut_sets(ft, cfg, root), cfg.truncation_probability,
                           cfg.max_cutset_order, root);
}

double rare_event_probability(const CutSetList& cs) {
  double sum = 0;
  for (const CutSet& c : cs.cutsets) sum += c.probability;
  return sum;
}

double mcub_probability(const CutSetList& cs) {
  // log1p/expm1 keep precision when every term is tiny.
  double log_survival = 0;
  for (const CutSet& c : cs.cutsets) log_survival += std::log1p(-c.probability);
  return -std::expm1(log_survival);
}

std::vector<ImportanceResult> fussell_vesely(const CutSetList& cs) {
  if (cs.cutsets.empty()) throw DomainError("importance needs at least one cut set");
  const double total = rare_event_probability(cs);
  if (!(total > 0)) throw DomainError("importance needs a positive total probability");
  std::map<std::string, double> contribution;
  for (const CutSet& c : cs.cutsets) {
    for (const std::string& e : c.events) contribution[e] += c.probability;
  }
  std::vector<ImportanceResult> out;
  for (const auto& [id, sum] : contribution) out.push_back({id, sum / total});
  std::stable_sort(out.begin(), out.end(), [](const ImportanceResult& a, const ImportanceResult& b) {
    return a.fussell_vesely > b.fussell_vesely;
  });
  return out;
}

std::vector<std::string> find_spofs(const CutSetList& cs) {
  std::vector<std::string> out;
  for (const CutSet& c : cs.cutsets) {
    if (c.order() == 1) out.push_back(c.events.front());
  }
  return out;
}

double top_probability(const FaultTree& ft, const AnalysisConfig& cfg, QuantMethod method,
                       const std::string& top) {
  switch (method) {
    case QuantMethod::kExact:
      return exact_top_probability(ft, cfg.exact_event_limit, top);
    case QuantMethod::kMcub:
      return mcub_probability(minimal_cut_sets(ft, cfg, top));
    case QuantMethod::kRareEvent:
      return rare_event_probability(minimal_cut_sets(ft, cfg, top));
  }
  return 0;
}

}  // namespace iradic
