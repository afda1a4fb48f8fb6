#include "iradic/event_tree.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <set>

#include "iradic/error.h"

namespace iradic {

namespace {

const EventTree& FindTree(const Model& m, const std::string& et_id) {
  auto it = m.event_trees.find(et_id);
  if (it == m.event_trees.end()) throw ReferenceError("unknown event tree \"" + et_id + "\"", et_id);
  return it->second;
}

const FaultTree& LinkedTree(const Model& m, const FunctionalEvent& fe) {
  auto it = m.fault_trees.find(fe.fault_tree);
  if (it == m.fault_trees.end()) {
    throw ReferenceError("functional event " + fe.id + ": unknown fault tree \"" + fe.fault_tree + "\"",
                         fe.fault_tree);
  }
  if (!it->second.has_node(fe.gate)) {
    throw ReferenceError("functional event " + fe.id + ": unknown gate \"" + fe.gate + "\"", fe.gate);
  }
  return it->second;
}

// Runs body(i) for i in [0, n) across threads and rethrows the first failure.
template <typename Body>
void ParallelFor(std::size_t n, Body body) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Copies every node of `src` into `dst`. Shared ids must agree.
void MergeInto(FaultTree& dst, const FaultTree& src) {
  for (const auto& [id, g] : src.gates) {
    if (dst.events.count(id)) throw DomainError("id \"" + id + "\" is a gate in " + src.id + " only");
    auto [it, added] = dst.gates.emplace(id, g);
    if (!added && !(it->second == g)) {
      throw DomainError("gate \"" + id + "\" differs between linked fault trees");
    }
  }
  for (const auto& [id, e] : src.events) {
    if (dst.gates.count(id)) throw DomainError("id \"" + id + "\" is an event in " + src.id + " only");
    auto [it, added] = dst.events.emplace(id, e);
    if (!added && !(it->second == e)) {
      throw DomainError("event \"" + id + "\" differs between linked fault trees");
    }
  }
}

bool ContainsAll(const std::vector<std::string>& big, const std::vector<std::string>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

double branch_probability(const Model& m, const FunctionalEvent& fe) {
  const FaultTree& ft = LinkedTree(m, fe);
  return top_probability(ft, m.config, m.config.method, fe.gate);
}

double sequence_probability(const EventTree& et, const Sequence& seq,
                            const std::vector<double>& failure) {
  if (seq.path.size() > et.functional_events.size() || failure.size() < seq.path.size()) {
    throw DomainError("sequence " + seq.id + ": path longer than the functional event list");
  }
  double p = et.initiating_event.frequency;
  for (std::size_t i = 0; i < seq.path.size(); ++i) {
    switch (seq.path[i]) {
      case Branch::kFailure: p *= failure[i]; break;
      case Branch::kSuccess: p *= 1.0 - failure[i]; break;
      case Branch::kBypass: break;
    }
  }
  return p;
}

double sequence_probability(const Model& m, const EventTree& et, const Sequence& seq) {
  if (seq.frequency) return *seq.frequency;
  std::vector<double> failure(seq.path.size(), 0.0);
  for (std::size_t i = 0; i < seq.path.size(); ++i) {
    if (seq.path[i] != Branch::kBypass) failure[i] = branch_probability(m, et.functional_events.at(i));
  }
  return sequence_probability(et, seq, failure);
}

EventTreeResult quantify_event_tree(const Model& m, const std::string& et_id,
                                    const std::string& end_state_filter, bool with_cutsets) {
  const EventTree& et = FindTree(m, et_id);
  std::vector<const Sequence*> selected;
  for (const Sequence& s : et.sequences) {
    if (end_state_filter.empty() || s.end_state == end_state_filter) selected.push_back(&s);
  }
  std::sort(selected.begin(), selected.end(),
            [](const Sequence* a, const Sequence* b) { return a->id < b->id; });

  // Branch probabilities once per functional event that a computed sequence questions.
  std::vector<bool> needed(et.functional_events.size(), false);
  for (const Sequence* s : selected) {
    if (s->frequency) continue;
    if (s->path.size() > et.functional_events.size()) {
      throw DomainError("sequence " + s->id + ": path longer than the functional event list");
    }
    for (std::size_t i = 0; i < s->path.size(); ++i) {
      if (s->path[i] != Branch::kBypass) needed[i] = true;
    }
  }
  std::vector<double> failure(et.functional_events.size(), 0.0);
  ParallelFor(failure.size(), [&](std::size_t i) {
    if (needed[i]) failure[i] = branch_probability(m, et.functional_events[i]);
  });

  EventTreeResult out;
  out.event_tree = et_id;
  out.end_state_filter = end_state_filter;
  out.sequences.resize(selected.size());
  ParallelFor(selected.size(), [&](std::size_t i) {
    const Sequence& s = *selected[i];
    SequenceResult& r = out.sequences[i];
    r.id = s.id;
    r.end_state = s.end_state;
    r.injected = s.frequency.has_value();
    r.probability = s.frequency ? *s.frequency : sequence_probability(et, s, failure);
    r.below_truncation = r.probability < m.config.truncation_probability;
    if (s.cutset_count) {
      r.cutset_count = s.cutset_count;
    } else if (with_cutsets) {
      r.cutset_count = static_cast<std::int64_t>(sequence_cutsets(m, et_id, s.id, m.config).cutsets.size());
    }
  });
  // Summed serially in id order so the total does not depend on scheduling.
  for (const SequenceResult& r : out.sequences) out.total += r.probability;
  return out;
}

CutSetList sequence_cutsets(const Model& m, const std::string& et_id, const std::string& seq_id,
                            const AnalysisConfig& cfg) {
  const EventTree& et = FindTree(m, et_id);
  auto sit = std::find_if(et.sequences.begin(), et.sequences.end(),
                          [&seq_id](const Sequence& s) { return s.id == seq_id; });
  if (sit == et.sequences.end()) {
    throw ReferenceError("event tree " + et_id + ": unknown sequence \"" + seq_id + "\"", seq_id);
  }
  const Sequence& seq = *sit;
  if (seq.path.size() > et.functional_events.size()) {
    throw DomainError("sequence " + seq.id + ": path longer than the functional event list");
  }

  FaultTree merged;
  merged.id = et_id + ":" + seq_id;
  std::vector<std::string> failed;
  std::vector<std::string> succeeded;
  std::set<std::string> linked;
  for (std::size_t i = 0; i < seq.path.size(); ++i) {
    if (seq.path[i] == Branch::kBypass) continue;
    const FunctionalEvent& fe = et.functional_events[i];
    const FaultTree& ft = LinkedTree(m, fe);
    if (linked.insert(ft.id).second) MergeInto(merged, ft);
    (seq.path[i] == Branch::kFailure ? failed : succeeded).push_back(fe.gate);
  }
  CutSetList empty;
  empty.truncation_probability = cfg.truncation_probability;
  empty.max_order = cfg.max_cutset_order;
  empty.source_top = merged.id;
  if (failed.empty()) return empty;

  const std::string marker = et.initiating_event.id;
  const std::string top = seq_id + "-SEQ";
  if (merged.has_node(marker) || merged.has_node(top)) {
    throw DomainError("sequence " + seq_id + ": id clash with \"" + marker + "\" or \"" + top + "\"");
  }
  BasicEvent ie;
  ie.id = marker;
  ie.probability = et.initiating_event.frequency;
  ie.label = "initiating event";
  merged.events.emplace(marker, std::move(ie));
  Gate and_gate;
  and_gate.id = top;
  and_gate.kind = GateKind::kAnd;
  and_gate.inputs.push_back(marker);
  and_gate.inputs.insert(and_gate.inputs.end(), failed.begin(), failed.end());
  merged.gates.emplace(top, and_gate);
  merged.top = top;

  // Success-branch cut sets are taken untruncated so that delete-term does
  // not depend on the threshold.
  AnalysisConfig full = cfg;
  full.truncate_during_expansion = false;
  std::vector<std::vector<std::string>> success_sets;
  for (const std::string& gate : succeeded) {
    for (CutSet& cs : untruncated_cut_sets(merged, full, gate)) success_sets.push_back(std::move(cs.events));
  }

  std::vector<CutSet> sets = untruncated_cut_sets(merged, cfg, top);
  std::erase_if(sets, [&success_sets](const CutSet& cs) {
    return std::any_of(success_sets.begin(), success_sets.end(),
                       [&cs](const std::vector<std::string>& s) { return ContainsAll(cs.events, s); });
  });
  return truncate_cut_sets(std::move(sets), cfg.truncation_probability, cfg.max_cutset_order, top);
}

double relative_change(double a, double b) {
  if (a == b) return 0;
  if (a == 0) return std::numeric_limits<double>::quiet_NaN();
  return (b - a) / a;
}

ComparisonReport compare_event_trees(const EventTreeResult& a, const EventTreeResult& b) {
  std::map<std::string, const SequenceResult*> rows_b;
  for (const SequenceResult& r : b.sequences) rows_b[r.id] = &r;
  if (rows_b.size() != a.sequences.size()) {
    throw DomainError("compared results hold different sequence sets");
  }
  ComparisonReport report;
  report.label = a.event_tree;
  for (const SequenceResult& ra : a.sequences) {
    auto it = rows_b.find(ra.id);
    if (it == rows_b.end()) throw DomainError("sequence " + ra.id + " missing from the second result");
    const SequenceResult& rb = *it->second;
    ComparisonRow row;
    row.sequence = ra.id;
    row.a = ra.probability;
    row.b = rb.probability;
    row.delta = relative_change(row.a, row.b);
    row.count_a = ra.cutset_count;
    row.count_b = rb.cutset_count;
    report.rows.push_back(std::move(row));
  }
  ComparisonRow& total = report.total;
  total.sequence = "Total";
  total.count_a = 0;
  total.count_b = 0;
  for (const ComparisonRow& row : report.rows) {
    total.a += row.a;
    total.b += row.b;
    if (row.count_a && total.count_a) {
      *total.count_a += *row.count_a;
    } else {
      total.count_a.reset();
    }
    if (row.count_b && total.count_b) {
      *total.count_b += *row.count_b;
    } else {
      total.count_b.reset();
    }
  }
  total.delta = relative_change(total.a, total.b);
  total.share_b = total.b > 0 ? 1.0 : 0.0;
  for (ComparisonRow& row : report.rows) row.share_b = total.b > 0 ? row.b / total.b : 0.0;
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ComparisonRow& x, const ComparisonRow& y) {
                     if (x.a != y.a) return x.a > y.a;
                     return x.sequence < y.sequence;
                   });
  return report;
}

}  // namespace iradic
