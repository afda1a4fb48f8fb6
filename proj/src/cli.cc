#include "iradic/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "iradic/bbn.h"
#include "iradic/ccf.h"
#include "iradic/error.h"
#include "iradic/event_tree.h"
#include "iradic/integration.h"
#include "iradic/model_io.h"
#include "iradic/probability_format.h"
#include "iradic/report.h"
#include "iradic/validate.h"

namespace iradic {

namespace {

constexpr int kOk = 0;
constexpr int kModelError = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Options shared by the subcommands. Numbers stay text until used so that
/// E-notation parses the same way as in model files.
struct Options {
  std::vector<std::string> models;
  std::string ft;
  std::string top;
  std::string truncate;
  std::string order;
  std::string method;
  std::string et;
  std::string end_state;
  std::string out;
  std::string format = "text";
  std::vector<std::string> groups;
  std::string bbn;
  std::string query;
  std::vector<std::string> evidence;
  std::string sequence;
  bool all = false;
  bool cutsets = false;
};

double ParseProbabilityFlag(const std::string& flag, const std::string& text) {
  std::optional<double> v = parse_number(text);
  if (!v || *v < 0 || *v > 1) throw UsageError(flag + " expects a probability, got \"" + text + "\"");
  return *v;
}

ReportFormat FormatOf(const Options& o) {
  if (o.format == "text") return ReportFormat::kText;
  if (o.format == "json") return ReportFormat::kJson;
  throw UsageError("--format expects text or json");
}

// Applies command-line and environment overrides to the model configuration.
void Configure(Model& m, const Options& o) {
  AnalysisConfig& cfg = m.config;
  if (!o.truncate.empty()) cfg.truncation_probability = ParseProbabilityFlag("--truncate", o.truncate);
  if (!o.order.empty()) {
    char* end = nullptr;
    long n = std::strtol(o.order.c_str(), &end, 10);
    if (*end || n < 1) throw UsageError("--order expects a positive integer");
    cfg.max_cutset_order = static_cast<int>(n);
  }
  if (!o.method.empty()) {
    auto method = quant_method_from(o.method);
    if (!method) throw UsageError("--method expects exact, rare-event or mcub");
    cfg.method = *method;
  }
  if (const char* env = std::getenv("IRADIC_MAX_SETS")) {
    char* end = nullptr;
    long long n = std::strtoll(env, &end, 10);
    if (*end || n < 1) throw UsageError("IRADIC_MAX_SETS must be a positive integer");
    cfg.max_intermediate_sets = n;
  }
}

struct Loaded {
  Model model;
  ValidationReport findings;
};

Loaded Load(const std::string& path, const Options& o) {
  if (!std::filesystem::exists(path)) throw Error("no such file: " + path);
  Loaded l{load_model(path), {}};
  Configure(l.model, o);
  l.findings = validate_model(l.model);
  return l;
}

// Loads and insists on a model free of error findings.
Model LoadValid(const std::string& path, const Options& o, CommandOutcome& outcome) {
  Loaded l = Load(path, o);
  if (has_errors(l.findings)) {
    throw DomainError(path + " is invalid:\n" + render_findings(l.findings, ReportFormat::kText));
  }
  for (const Finding& f : l.findings) outcome.err += "warning: " + f.location + ": " + f.message + "\n";
  return std::move(l.model);
}

const FaultTree& PickTree(const Model& m, const Options& o) {
  if (!o.ft.empty()) {
    auto it = m.fault_trees.find(o.ft);
    if (it == m.fault_trees.end()) throw ReferenceError("unknown fault tree \"" + o.ft + "\"", o.ft);
    return it->second;
  }
  if (!o.top.empty()) {
    if (const FaultTree* ft = m.find_tree_with_node(o.top)) return *ft;
    throw ReferenceError("no fault tree holds \"" + o.top + "\"", o.top);
  }
  if (m.fault_trees.size() == 1) return m.fault_trees.begin()->second;
  throw UsageError("several fault trees; choose one with --ft or --top");
}

const Bbn& PickBbn(const Model& m, const Options& o) {
  if (!o.bbn.empty()) {
    auto it = m.bbns.find(o.bbn);
    if (it == m.bbns.end()) throw ReferenceError("unknown bbn \"" + o.bbn + "\"", o.bbn);
    return it->second;
  }
  if (m.bbns.size() == 1) return m.bbns.begin()->second;
  throw UsageError("choose a belief network with --bbn");
}

std::string PickEventTree(const Model& m, const Options& o) {
  if (!o.et.empty()) return o.et;
  if (m.event_trees.size() == 1) return m.event_trees.begin()->first;
  throw UsageError("choose an event tree with --et");
}

Evidence ParseEvidence(const std::vector<std::string>& items) {
  Evidence ev;
  for (const std::string& item : items) {
    auto eq = item.find('=');
    std::string id = item.substr(0, eq);
    std::string state = eq == std::string::npos ? "" : item.substr(eq + 1);
    if (id.empty() || (state != "fail" && state != "ok")) {
      throw UsageError("--evidence expects NODE=fail or NODE=ok, got \"" + item + "\"");
    }
    ev[id] = state == "fail";
  }
  return ev;
}

// Transformed models go to --out when given, otherwise to stdout.
void EmitModel(const Model& m, const Options& o, CommandOutcome& outcome) {
  std::string text = render_model(m);
  if (o.out.empty()) {
    outcome.out += text;
  } else {
    write_file_atomic(o.out, text);
    outcome.out += "wrote " + o.out + "\n";
  }
}

using Handler = std::function<void(const Options&, CommandOutcome&)>;

void Validate(const Options& o, CommandOutcome& outcome) {
  Loaded l = Load(o.models.at(0), o);
  outcome.out += render_findings(l.findings, FormatOf(o));
  if (has_errors(l.findings)) outcome.exit_code = kModelError;
}

void Cutsets(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const FaultTree& ft = PickTree(m, o);
  outcome.out += render_cutsets(minimal_cut_sets(ft, m.config, o.top), FormatOf(o));
}

void QuantifyFt(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const FaultTree& ft = PickTree(m, o);
  const std::string top = o.top.empty() ? ft.top : o.top;
  double p = top_probability(ft, m.config, m.config.method, top);
  outcome.out += render_top_probability(top, m.config.method, p, FormatOf(o));
}

void Spof(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  IntegratedFaultTree ift = derive_provenance(PickTree(m, o), m);
  if (!o.top.empty()) ift.tree.top = o.top;
  outcome.out += render_hazard(hazard_report(ift, m.config, m), FormatOf(o));
}

void Importance(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const FaultTree& ft = PickTree(m, o);
  outcome.out += render_importance(fussell_vesely(minimal_cut_sets(ft, m.config, o.top)), FormatOf(o));
}

void ExpandCcf(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  EmitModel(expand_ccf_groups(m, o.groups), o, outcome);
}

void Integrate(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const FaultTree& ft = PickTree(m, o);
  EmitModel(integrate(m, ft.id), o, outcome);
}

void BbnInfer(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const Bbn& b = PickBbn(m, o);
  std::string query = o.query;
  if (query.empty()) {
    if (b.queries.size() != 1) throw UsageError("choose a query node with --query");
    query = b.queries.front();
  }
  Evidence ev = ParseEvidence(o.evidence);
  outcome.out += render_marginal(query, ev, infer_distribution(b, query, ev), FormatOf(o));
}

void Bahamas(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  const Bbn& b = PickBbn(m, o);
  BahamasResult r = bahamas_estimate(b);
  if (r.warning) outcome.err += "warning: " + *r.warning + "\n";
  if (!o.out.empty()) {
    write_file_atomic(o.out, render_model(apply_bahamas(m, b.id)));
    outcome.err += "wrote " + o.out + "\n";
  }
  outcome.out += render_bahamas(b.bahamas->query, r, FormatOf(o));
}

void QuantifyEt(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  outcome.out += render_event_tree(quantify_event_tree(m, PickEventTree(m, o), o.end_state, o.cutsets),
                                   FormatOf(o));
}

void SeqCutsets(const Options& o, CommandOutcome& outcome) {
  Model m = LoadValid(o.models.at(0), o, outcome);
  if (o.sequence.empty()) throw UsageError("choose a sequence with --sequence");
  outcome.out += render_cutsets(sequence_cutsets(m, PickEventTree(m, o), o.sequence, m.config), FormatOf(o));
}

void Compare(const Options& o, CommandOutcome& outcome) {
  if (o.models.size() != 2) throw UsageError("compare needs two model files");
  Model a = LoadValid(o.models[0], o, outcome);
  Model b = LoadValid(o.models[1], o, outcome);
  const std::string et = PickEventTree(a, o);
  ComparisonReport report = compare_event_trees(quantify_event_tree(a, et, o.end_state, o.cutsets),
                                                quantify_event_tree(b, et, o.end_state, o.cutsets));
  outcome.out += render_comparison(report, o.all, FormatOf(o));
}

struct Command {
  const char* name;
  const char* help;
  Handler run;
  int model_count;
};

const std::vector<Command>& Commands() {
  static const std::vector<Command> kCommands = {
      {"validate", "Check a model and list findings", Validate, 1},
      {"cutsets", "Minimal cut sets of a gate", Cutsets, 1},
      {"quantify-ft", "Top-event probability", QuantifyFt, 1},
      {"spof", "Single points of failure and cut-set profile", Spof, 1},
      {"importance", "Fussell-Vesely importance", Importance, 1},
      {"expand-ccf", "Expand common cause groups into the fault trees", ExpandCcf, 1},
      {"integrate", "Attach software failures and software CCFs to a fault tree", Integrate, 1},
      {"bbn-infer", "Marginal failure probability of a network node", BbnInfer, 1},
      {"bahamas", "Software failure estimate and beta split", Bahamas, 1},
      {"quantify-et", "Sequence frequencies of an event tree", QuantifyEt, 1},
      {"seq-cutsets", "Cut sets of one event tree sequence", SeqCutsets, 1},
      {"compare", "Compare one event tree across two models", Compare, 2},
  };
  return kCommands;
}

}  // namespace

CommandOutcome run_command(const std::vector<std::string>& args) {
  CommandOutcome outcome;
  CLI::App app{"Integrated hardware/software risk analysis", "iradic"};
  app.require_subcommand(1);
  Options o;
  const Command* chosen = nullptr;
  for (const Command& c : Commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("model", o.models, c.model_count == 2 ? "Model files A and B" : "Model file")
        ->required()
        ->expected(c.model_count);
    sub->add_option("--ft", o.ft, "Fault tree id");
    sub->add_option("--top", o.top, "Gate to analyse (default: the tree's top)");
    sub->add_option("--truncate", o.truncate, "Cut-set truncation probability (default 1E-12)");
    sub->add_option("--order", o.order, "Maximum cut-set order");
    sub->add_option("--method", o.method, "exact, rare-event or mcub");
    sub->add_option("--et", o.et, "Event tree id");
    sub->add_option("--end-state", o.end_state, "Only sequences ending in this state");
    sub->add_option("--out", o.out, "Write the resulting model here");
    sub->add_option("--format", o.format, "text or json");
    sub->add_option("--group", o.groups, "CCF group to expand (repeatable; default all)");
    sub->add_option("--bbn", o.bbn, "Belief network id");
    sub->add_option("--query", o.query, "Network node to query");
    sub->add_option("--evidence", o.evidence, "NODE=fail|ok (repeatable or comma separated)")
        ->delimiter(',');
    sub->add_option("--sequence", o.sequence, "Event tree sequence id");
    sub->add_flag("--all", o.all, "Show zero rows too");
    sub->add_flag("--cutsets", o.cutsets, "Generate cut-set counts for sequences without one");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.out = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kUsage;
    outcome.err = std::string(e.what()) + "\n" + app.help();
    return outcome;
  }
  if (!chosen) {
    outcome.exit_code = kUsage;
    outcome.err = app.help();
    return outcome;
  }

  try {
    chosen->run(o, outcome);
  } catch (const UsageError& e) {
    outcome.exit_code = kUsage;
    outcome.err += std::string("usage: ") + e.what() + "\n";
  } catch (const ResourceLimitError& e) {
    outcome.exit_code = kResource;
    outcome.err += std::string("resource limit: ") + e.what() + "\n";
  } catch (const ParseError& e) {
    outcome.exit_code = kModelError;
    outcome.err += std::string("parse error: ") + e.what() + "\n";
  } catch (const ReferenceError& e) {
    outcome.exit_code = kModelError;
    outcome.err += std::string("reference error: ") + e.what() + "\n";
  } catch (const DomainError& e) {
    outcome.exit_code = kModelError;
    outcome.err += std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    outcome.exit_code = kUsage;
    outcome.err += std::string("error: ") + e.what() + "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    outcome.exit_code = kUsage;
    outcome.err += std::string("error: ") + e.what() + "\n";
  }
  if (outcome.exit_code != kOk && outcome.exit_code != kModelError) outcome.out.clear();
  return outcome;
}

}  // namespace iradic
