/// @file
/// Text and JSON renderings of analysis results. Output is byte-deterministic.
#pragma once

#include <string>
#include <vector>

#include "iradic/bbn.h"
#include "iradic/cutset.h"
#include "iradic/event_tree.h"
#include "iradic/integration.h"
#include "iradic/validate.h"

namespace iradic {

enum class ReportFormat { kText, kJson };

std::string render_findings(const ValidationReport& report, ReportFormat format);

std::string render_cutsets(const CutSetList& list, ReportFormat format);

std::string render_top_probability(const std::string& top, QuantMethod method, double probability,
                                   ReportFormat format);

std::string render_importance(const std::vector<ImportanceResult>& rows, ReportFormat format);

std::string render_hazard(const HazardReport& report, ReportFormat format);

std::string render_marginal(const std::string& query, const Evidence& evidence, const Marginal& m,
                            ReportFormat format);

std::string render_bahamas(const std::string& query, const BahamasResult& r, ReportFormat format);

std::string render_event_tree(const EventTreeResult& r, ReportFormat format);

/// Table with columns Sequence, CDF-A, CDF-B, delta, cut-set counts and the
/// share of B's total. Rows where both values are zero are hidden unless
/// `all_rows`.
std::string render_comparison(const ComparisonReport& r, bool all_rows, ReportFormat format);

}  // namespace iradic
