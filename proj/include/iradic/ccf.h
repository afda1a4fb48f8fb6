/// @file
/// Beta-factor common cause failure model.
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "iradic/model.h"

namespace iradic {

/// Split of a component's total failure probability into an independent
/// part and one CCF part per level.
struct SplitResult {
  double independent = 0;
  std::vector<double> shares;  ///< Same order as the betas.

  bool operator==(const SplitResult&) const = default;
};

/// share_k = beta_k * total; independent = total - sum(shares).
/// Throws DomainError when a beta or the total is outside [0,1] or the betas
/// sum above 1.
SplitResult beta_split(double total, std::span<const double> betas);

std::vector<double> betas_of(const CcfGroup& group);

/// Id of the shared event for one scope of one level.
std::string ccf_event_id(const CcfGroup& group, std::size_t level, std::size_t scope);

/// Expands a group inside one tree. `member_events` maps the group members
/// present in this tree to their basic-event ids. Each such event becomes an
/// OR gate (same id) over "<event>-IND" and one shared event per non-zero
/// level. Throws on missing members, double expansion and id clashes.
void expand_group_in_tree(FaultTree& tree, const CcfGroup& group,
                          const std::map<std::string, std::string>& member_events);

/// Basic-event id standing for a group member: the member itself, or the
/// software event of the UCA it names. Empty when neither exists.
std::string resolve_member(const Model& m, const std::string& member);

/// Expands the listed groups (all groups when empty) in every fault tree
/// that holds a member. The input model is left untouched.
Model expand_ccf_groups(const Model& m, const std::vector<std::string>& group_ids = {});

}  // namespace iradic
