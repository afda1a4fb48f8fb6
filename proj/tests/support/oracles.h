// Random model generators and brute-force oracles for the test suites.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iradic/bbn.h"
#include "iradic/model.h"

namespace iradic::testing {

using Rng = std::mt19937_64;

struct FtShape {
  int max_events = 12;
  int max_gates = 8;
  int max_fan_in = 4;
  double min_p = 1e-4;
  double max_p = 0.5;
  bool allow_atleast = true;
};

/// Coherent tree with gates G0 (top) .. Gn and events E0 .. Em, every node
/// reachable from the top.
FaultTree random_fault_tree(Rng& rng, const FtShape& shape = {});

/// Minimal cut sets by truth table: the minimal true vectors of the top.
std::set<std::vector<std::string>> oracle_cut_sets(const FaultTree& ft, const std::string& top = {});

/// P(top) by summing over every assignment of the cone's basic events.
double oracle_probability(const FaultTree& ft, const std::string& top = {});

/// Evaluates a node for a set of failed events.
bool evaluate(const FaultTree& ft, const std::string& node, const std::set<std::string>& failed);

/// Acyclic network over N0 .. Nk with up to three parents per node.
Bbn random_bbn(Rng& rng, int max_nodes = 10, bool allow_extremes = false);

/// P(query = fail | evidence) by full joint enumeration; NaN when P(e) = 0.
double oracle_marginal(const Bbn& b, const std::string& query, const Evidence& evidence = {});

/// Event tree with a complete binary path set over single-event fault trees.
/// The returned model holds the tree as "ET" and one fault tree per
/// functional event.
Model random_event_tree_model(Rng& rng, int max_functional_events = 5);

/// Sequence probability by enumerating every outcome of the functional events.
double oracle_sequence_probability(const Model& m, const EventTree& et, const Sequence& seq);

double log_uniform(Rng& rng, double lo, double hi);

}  // namespace iradic::testing
