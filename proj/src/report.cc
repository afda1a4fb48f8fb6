#include "iradic/report.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "iradic/probability_format.h"

namespace iradic {

namespace {

using json = nlohmann::ordered_json;

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

std::string Join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
json OptionalJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string CountText(const std::optional<std::int64_t>& n) { return n ? std::to_string(*n) : "-"; }

// Display width of UTF-8 text: continuation bytes do not count.
std::size_t Width(const std::string& s) {
  return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
}

// Left-aligns the first column and right-aligns the rest.
std::string Table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], Width(row[c]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string pad(width[c] - Width(row[c]), ' ');
      if (c == 0) {
        line += row[c] + pad;
      } else {
        line += "  " + pad + row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::string render_findings(const ValidationReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json list = json::array();
    for (const Finding& f : report) {
      list.push_back({{"severity", f.severity == Severity::kError ? "error" : "warning"},
                      {"location", f.location},
                      {"message", f.message}});
    }
    return Dump({{"findings", std::move(list)}, {"errors", has_errors(report)}});
  }
  std::string out;
  for (const Finding& f : report) {
    out += std::string(f.severity == Severity::kError ? "error" : "warning") + ": " + f.location +
           ": " + f.message + "\n";
  }
  out += std::to_string(report.size()) + (report.size() == 1 ? " finding\n" : " findings\n");
  return out;
}

std::string render_cutsets(const CutSetList& list, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json sets = json::array();
    for (const CutSet& cs : list.cutsets) {
      sets.push_back({{"order", cs.order()}, {"probability", cs.probability}, {"events", cs.events}});
    }
    return Dump({{"top", list.source_top},
                 {"truncation", list.truncation_probability},
                 {"max_order", OptionalJson(list.max_order)},
                 {"count", list.cutsets.size()},
                 {"truncated", list.truncated_count},
                 {"rare_event", rare_event_probability(list)},
                 {"cutsets", std::move(sets)}});
  }
  std::ostringstream out;
  out << "# top " << list.source_top << "\n";
  out << "# truncation " << render_probability(list.truncation_probability) << ", max order "
      << (list.max_order ? std::to_string(*list.max_order) : "none") << "\n";
  out << "# " << list.cutsets.size() << " cut sets, " << list.truncated_count << " truncated, sum "
      << render_probability(rare_event_probability(list)) << "\n";
  out << "order\tprob\tids\n";
  for (const CutSet& cs : list.cutsets) {
    out << cs.order() << "\t" << render_probability(cs.probability) << "\t" << Join(cs.events, ",")
        << "\n";
  }
  return out.str();
}

std::string render_top_probability(const std::string& top, QuantMethod method, double probability,
                                   ReportFormat format) {
  if (format == ReportFormat::kJson) {
    return Dump({{"top", top}, {"method", to_string(method)}, {"probability", probability}});
  }
  return top + "\t" + to_string(method) + "\t" + render_probability(probability) + "\n";
}

std::string render_importance(const std::vector<ImportanceResult>& rows, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json list = json::array();
    for (const ImportanceResult& r : rows) list.push_back({{"event", r.event}, {"fussell_vesely", r.fussell_vesely}});
    return Dump({{"importance", std::move(list)}});
  }
  std::vector<std::vector<std::string>> table{{"event", "FV"}};
  for (const ImportanceResult& r : rows) table.push_back({r.event, render_probability(r.fussell_vesely)});
  return Table(table);
}

std::string render_hazard(const HazardReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json spofs = json::array();
    for (const SpofEntry& s : report.spofs) {
      spofs.push_back({{"event", s.event}, {"origin", to_string(s.origin.kind)}, {"source", s.origin.source}});
    }
    json histogram = json::object();
    for (const auto& [order, n] : report.cutset_histogram) histogram[std::to_string(order)] = n;
    json causes = json::object();
    for (const auto& [cause, ids] : report.by_cause_class) causes[to_string(cause)] = ids;
    return Dump({{"top", report.top},
                 {"spofs", std::move(spofs)},
                 {"histogram", std::move(histogram)},
                 {"low_order_threshold", report.low_order_threshold},
                 {"by_cause_class", std::move(causes)}});
  }
  std::ostringstream out;
  out << "# top " << report.top << "\n";
  out << report.spofs.size() << (report.spofs.size() == 1 ? " single point of failure\n" : " single points of failure\n");
  for (const SpofEntry& s : report.spofs) {
    out << "  " << s.event << "\t" << to_string(s.origin.kind);
    if (!s.origin.source.empty()) out << "\t" << s.origin.source;
    out << "\n";
  }
  out << "cut sets by order\n";
  for (const auto& [order, n] : report.cutset_histogram) out << "  " << order << "\t" << n << "\n";
  out << "software events in cut sets of order <= " << report.low_order_threshold << "\n";
  for (const auto& [cause, ids] : report.by_cause_class) {
    out << "  " << to_string(cause) << "\t" << Join(ids, " ") << "\n";
  }
  return out.str();
}

std::string render_marginal(const std::string& query, const Evidence& evidence, const Marginal& m,
                            ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json ev = json::object();
    for (const auto& [id, state] : evidence) ev[id] = state ? "fail" : "ok";
    return Dump({{"query", query}, {"evidence", std::move(ev)}, {"fail", m.fail}, {"ok", m.ok}});
  }
  std::vector<std::string> given;
  for (const auto& [id, state] : evidence) given.push_back(id + "=" + (state ? "fail" : "ok"));
  std::string out = "P(" + query + "=fail";
  if (!given.empty()) out += " | " + Join(given, ", ");
  return out + ") = " + render_probability(m.fail) + "\n";
}

std::string render_bahamas(const std::string& query, const BahamasResult& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json ccf = json::object();
    for (const auto& [level, p] : r.ccf) ccf[level] = p;
    return Dump({{"query", query},
                 {"generic", r.generic},
                 {"specific", r.specific},
                 {"individual", r.individual},
                 {"ccf", std::move(ccf)},
                 {"warning", OptionalJson(r.warning)}});
  }
  std::vector<std::vector<std::string>> table{{"generic", render_probability(r.generic)},
                                              {"specific", render_probability(r.specific)},
                                              {"individual", render_probability(r.individual)}};
  for (const auto& [level, p] : r.ccf) table.push_back({"ccf " + level, render_probability(p)});
  std::string out = "# " + query + "\n" + Table(table);
  if (r.warning) out += "warning: " + *r.warning + "\n";
  return out;
}

std::string render_event_tree(const EventTreeResult& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json seqs = json::array();
    for (const SequenceResult& s : r.sequences) {
      seqs.push_back({{"id", s.id},
                      {"end_state", s.end_state},
                      {"probability", s.probability},
                      {"cutsets", OptionalJson(s.cutset_count)},
                      {"below_truncation", s.below_truncation},
                      {"injected", s.injected}});
    }
    return Dump({{"event_tree", r.event_tree},
                 {"end_state", r.end_state_filter.empty() ? json(nullptr) : json(r.end_state_filter)},
                 {"sequences", std::move(seqs)},
                 {"total", r.total}});
  }
  std::vector<std::vector<std::string>> table{{"Sequence", "End", "Frequency", "#CutSets", "Note"}};
  for (const SequenceResult& s : r.sequences) {
    std::string note = s.below_truncation ? "truncated" : "";
    if (s.injected) note += note.empty() ? "injected" : ",injected";
    table.push_back({r.event_tree + ":" + s.id, s.end_state, render_probability(s.probability),
                     CountText(s.cutset_count), note});
  }
  table.push_back({"Total", r.end_state_filter.empty() ? "*" : r.end_state_filter, render_probability(r.total), "", ""});
  return Table(table);
}

std::string render_comparison(const ComparisonReport& r, bool all_rows, ReportFormat format) {
  auto visible = [all_rows](const ComparisonRow& row) { return all_rows || row.a != 0 || row.b != 0; };
  if (format == ReportFormat::kJson) {
    auto row_json = [](const ComparisonRow& row) {
      return json{{"sequence", row.sequence},
                  {"a", row.a},
                  {"b", row.b},
                  {"delta", NumberOrNull(row.delta)},
                  {"cutsets_a", OptionalJson(row.count_a)},
                  {"cutsets_b", OptionalJson(row.count_b)},
                  {"share_b", row.share_b}};
    };
    json rows = json::array();
    for (const ComparisonRow& row : r.rows) {
      if (visible(row)) rows.push_back(row_json(row));
    }
    return Dump({{"label", r.label}, {"rows", std::move(rows)}, {"total", row_json(r.total)}});
  }
  std::vector<std::vector<std::string>> table{
      {"Sequence", "CDF-A", "CDF-B", "Δ%", "#CutSets-A", "#CutSets-B", "Share-B"}};
  auto cells = [](const std::string& name, const ComparisonRow& row) {
    return std::vector<std::string>{name,
                                    render_probability(row.a),
                                    render_probability(row.b),
                                    render_percent(row.delta),
                                    CountText(row.count_a),
                                    CountText(row.count_b),
                                    render_percent(row.share_b)};
  };
  for (const ComparisonRow& row : r.rows) {
    if (visible(row)) table.push_back(cells(r.label.empty() ? row.sequence : r.label + ":" + row.sequence, row));
  }
  table.push_back(cells("Total", r.total));
  return Table(table);
}

}  // namespace iradic
