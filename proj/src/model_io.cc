#include "iradic/model_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "iradic/error.h"
#include "iradic/probability_format.h"
#include "iradic/validate.h"

namespace iradic {

using nlohmann::json;

namespace {

/// Reads one JSON object field by field and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ParseError(where_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& at(const std::string& key) {
    if (!has(key)) throw ParseError(where_ + ": missing field \"" + key + "\"");
    return j_.at(key);
  }

  std::string str(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ParseError(where_ + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  std::string str_or(const std::string& key, std::string fallback) {
    return has(key) ? str(key) : std::move(fallback);
  }

  bool boolean(const std::string& key) {
    const json& v = at(key);
    if (!v.is_boolean()) throw ParseError(where_ + ": field \"" + key + "\" must be a boolean");
    return v.get<bool>();
  }

  double number(const std::string& key) { return ToNumber(at(key), key); }

  std::int64_t integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) {
      throw ParseError(where_ + ": field \"" + key + "\" must be an integer");
    }
    return v.get<std::int64_t>();
  }

  std::vector<std::string> strings(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) throw ParseError(where_ + ": field \"" + key + "\" must be an array");
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) throw ParseError(where_ + ": \"" + key + "\" must hold strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  const json& array(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) throw ParseError(where_ + ": field \"" + key + "\" must be an array");
    return v;
  }

  double ToNumber(const json& v, const std::string& key) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      if (auto parsed = parse_number(v.get<std::string>())) return *parsed;
      throw ParseError(where_ + ": field \"" + key + "\" is not a number or is out of range: \"" +
                       v.get<std::string>() + "\"");
    }
    throw ParseError(where_ + ": field \"" + key + "\" must be a number");
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ParseError(where_ + ": unknown field \"" + key + "\"");
    }
  }

  const std::string& where() const { return where_; }
  void set_where(std::string where) { where_ = std::move(where); }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

template <typename Enum>
Enum ParseEnum(ObjectReader& r, const std::string& key,
               std::optional<Enum> (*from)(const std::string&)) {
  std::string text = r.str(key);
  if (auto v = from(text)) return *v;
  throw ParseError(r.where() + ": invalid " + key + " \"" + text + "\"");
}

template <typename Map>
void InsertUnique(Map& map, const std::string& id, typename Map::mapped_type value,
                  const std::string& where) {
  if (!map.emplace(id, std::move(value)).second) {
    throw ParseError(where + ": duplicate id \"" + id + "\"");
  }
}

Gate ParseGate(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  Gate g;
  g.id = r.str("id");
  g.kind = ParseEnum(r, "kind", &gate_kind_from);
  if (g.kind == GateKind::kAtLeast) {
    std::int64_t k = r.integer("k");
    if (k < 0 || k > 1'000'000) throw ParseError(where + ": k out of range");
    g.k = static_cast<int>(k);
  }
  g.inputs = r.strings("inputs");
  g.label = r.str_or("label", "");
  r.finish();
  return g;
}

BasicEvent ParseEvent(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  BasicEvent e;
  e.id = r.str("id");
  e.kind = ParseEnum(r, "kind", &event_kind_from);
  if (e.kind == EventKind::kHouse) {
    e.house_state = r.boolean("state");
    e.probability = *e.house_state ? 1.0 : 0.0;
  } else {
    e.probability = r.number("p");
  }
  if (r.has("ccf_group")) e.ccf_group = r.str("ccf_group");
  if (r.has("uca")) e.uca = r.str("uca");
  e.label = r.str_or("label", "");
  r.finish();
  return e;
}

FaultTree ParseFaultTree(const json& j) {
  ObjectReader named(j, "fault tree");
  FaultTree ft;
  ft.id = named.str("id");
  std::string where = "fault_tree " + ft.id;
  named.set_where(where);
  ft.top = named.str("top");
  ft.top_kind = named.has("top_kind") ? ParseEnum(named, "top_kind", &top_kind_from)
                                      : TopKind::kFailureOnDemand;
  ft.label = named.str_or("label", "");
  for (const json& g : named.array("gates")) {
    Gate gate = ParseGate(g, where + " / gate");
    std::string id = gate.id;
    InsertUnique(ft.gates, id, std::move(gate), where);
  }
  for (const json& e : named.array("events")) {
    BasicEvent event = ParseEvent(e, where + " / event");
    std::string id = event.id;
    if (ft.gates.count(id)) throw ParseError(where + ": duplicate id \"" + id + "\"");
    InsertUnique(ft.events, id, std::move(event), where);
  }
  named.finish();
  return ft;
}

CcfGroup ParseCcfGroup(const json& j) {
  ObjectReader r(j, "ccf group");
  CcfGroup g;
  g.id = r.str("id");
  std::string where = "ccf_group " + g.id;
  g.members = r.strings("members");
  g.total_probability = r.number("total_p");
  g.label = r.str_or("label", "");
  if (r.has("levels")) {
    for (const json& lj : r.array("levels")) {
      ObjectReader lr(lj, where + " / level");
      CcfLevel level;
      level.label = lr.str("label");
      level.beta = lr.number("beta");
      for (const json& scope : lr.array("scope")) {
        if (!scope.is_array()) throw ParseError(where + ": each scope must be an array of ids");
        std::vector<std::string> ids;
        for (const json& id : scope) {
          if (!id.is_string()) throw ParseError(where + ": scope ids must be strings");
          ids.push_back(id.get<std::string>());
        }
        level.scopes.push_back(std::move(ids));
      }
      lr.finish();
      g.levels.push_back(std::move(level));
    }
  }
  r.finish();
  return g;
}

UcaRecord ParseUca(const json& j) {
  ObjectReader r(j, "uca");
  UcaRecord u;
  u.id = r.str("id");
  u.controller = r.str("controller");
  u.control_action = r.str_or("action", "");
  u.category = ParseEnum(r, "category", &uca_category_from);
  u.continuous_action = r.has("continuous") ? r.boolean("continuous") : false;
  u.cause_class = ParseEnum(r, "cause_class", &cause_class_from);
  u.redundancy_layer = r.str_or("layer", "");
  if (r.has("p")) u.probability = r.number("p");
  r.finish();
  return u;
}

std::vector<BetaLevel> ParseBetaLevels(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": levels must be an array");
  std::vector<BetaLevel> levels;
  for (const json& lj : arr) {
    ObjectReader lr(lj, where + " / level");
    BetaLevel level;
    level.label = lr.str("label");
    level.beta = lr.number("beta");
    lr.finish();
    levels.push_back(std::move(level));
  }
  return levels;
}

Bbn ParseBbn(const json& j) {
  ObjectReader r(j, "bbn");
  Bbn b;
  b.id = r.str("id");
  std::string where = "bbn " + b.id;
  for (const json& nj : r.array("nodes")) {
    ObjectReader nr(nj, where + " / node");
    BbnNode node;
    node.id = nr.str("id");
    node.parents = nr.has("parents") ? nr.strings("parents") : std::vector<std::string>{};
    for (const json& v : nr.array("cpt")) node.cpt.push_back(nr.ToNumber(v, "cpt"));
    nr.finish();
    std::string id = node.id;
    InsertUnique(b.nodes, id, std::move(node), where);
  }
  b.queries = r.has("queries") ? r.strings("queries") : std::vector<std::string>{};
  if (r.has("bahamas")) {
    ObjectReader br(r.at("bahamas"), where + " / bahamas");
    BahamasConfig cfg;
    cfg.query = br.str("query");
    cfg.adjustment_factor = br.has("adjustment_factor") ? br.number("adjustment_factor") : 1.0;
    if (br.has("levels")) cfg.levels = ParseBetaLevels(br.at("levels"), where);
    if (br.has("ccf_group")) cfg.ccf_group = br.str("ccf_group");
    br.finish();
    b.bahamas = std::move(cfg);
  }
  r.finish();
  return b;
}

EventTree ParseEventTree(const json& j) {
  ObjectReader r(j, "event tree");
  EventTree et;
  et.id = r.str("id");
  std::string where = "event_tree " + et.id;
  {
    ObjectReader ir(r.at("initiating_event"), where + " / initiating_event");
    et.initiating_event.id = ir.str("id");
    et.initiating_event.frequency = ir.number("frequency");
    ir.finish();
  }
  std::set<std::string> fe_ids;
  for (const json& fj : r.array("functional_events")) {
    ObjectReader fr(fj, where + " / functional_event");
    FunctionalEvent fe;
    fe.id = fr.str("id");
    fe.fault_tree = fr.str("fault_tree");
    fe.gate = fr.str("gate");
    fr.finish();
    if (!fe_ids.insert(fe.id).second) throw ParseError(where + ": duplicate id \"" + fe.id + "\"");
    et.functional_events.push_back(std::move(fe));
  }
  std::set<std::string> seq_ids;
  for (const json& sj : r.array("sequences")) {
    ObjectReader sr(sj, where + " / sequence");
    Sequence seq;
    seq.id = sr.str("id");
    for (const std::string& step : sr.strings("path")) {
      auto branch = branch_from(step);
      if (!branch) throw ParseError(where + " / sequence " + seq.id + ": bad path entry \"" + step + "\"");
      seq.path.push_back(*branch);
    }
    seq.end_state = sr.str("end_state");
    if (sr.has("frequency")) seq.frequency = sr.number("frequency");
    if (sr.has("cutsets")) seq.cutset_count = sr.integer("cutsets");
    sr.finish();
    if (!seq_ids.insert(seq.id).second) throw ParseError(where + ": duplicate id \"" + seq.id + "\"");
    et.sequences.push_back(std::move(seq));
  }
  r.finish();
  return et;
}

AnalysisConfig ParseConfig(const json& j) {
  ObjectReader r(j, "config");
  AnalysisConfig cfg;
  if (r.has("truncation")) cfg.truncation_probability = r.number("truncation");
  if (r.has("max_order")) {
    std::int64_t order = r.integer("max_order");
    if (order < 1 || order > 1'000'000) throw ParseError("config: max_order out of range");
    cfg.max_cutset_order = static_cast<int>(order);
  }
  if (r.has("method")) cfg.method = ParseEnum(r, "method", &quant_method_from);
  if (r.has("exact_event_limit")) {
    std::int64_t limit = r.integer("exact_event_limit");
    if (limit < 0 || limit > 100'000) throw ParseError("config: exact_event_limit out of range");
    cfg.exact_event_limit = static_cast<int>(limit);
  }
  if (r.has("low_order_threshold")) {
    std::int64_t t = r.integer("low_order_threshold");
    if (t < 1 || t > 1'000'000) throw ParseError("config: low_order_threshold out of range");
    cfg.low_order_threshold = static_cast<int>(t);
  }
  if (r.has("truncate_during_expansion")) {
    cfg.truncate_during_expansion = r.boolean("truncate_during_expansion");
  }
  if (r.has("applicability")) {
    ObjectReader ar(r.at("applicability"), "config / applicability");
    ApplicabilityMatrix matrix;
    for (TopKind top : kAllTopKinds) {
      for (const std::string& c : ar.strings(to_string(top))) {
        auto category = uca_category_from(c);
        if (!category) throw ParseError("config / applicability: invalid category \"" + c + "\"");
        matrix.set(*category, top, true);
      }
    }
    ar.finish();
    cfg.applicability = matrix;
  }
  r.finish();
  return cfg;
}

void CheckReferences(const Model& model) {
  auto dangling = dangling_references(model);
  if (!dangling.empty()) {
    const auto& d = dangling.front();
    throw ReferenceError(d.location + ": undefined reference \"" + d.id + "\"", d.id);
  }
}

json ProbabilityJson(double p) { return serialize_probability(p); }

}  // namespace

Model parse_model(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
  ObjectReader r(root, "model");
  Model m;
  if (r.has("fault_trees")) {
    for (const json& j : r.array("fault_trees")) {
      FaultTree ft = ParseFaultTree(j);
      std::string id = ft.id;
      InsertUnique(m.fault_trees, id, std::move(ft), "fault_trees");
    }
  }
  if (r.has("event_trees")) {
    for (const json& j : r.array("event_trees")) {
      EventTree et = ParseEventTree(j);
      std::string id = et.id;
      InsertUnique(m.event_trees, id, std::move(et), "event_trees");
    }
  }
  if (r.has("ccf_groups")) {
    for (const json& j : r.array("ccf_groups")) {
      CcfGroup g = ParseCcfGroup(j);
      std::string id = g.id;
      InsertUnique(m.ccf_groups, id, std::move(g), "ccf_groups");
    }
  }
  if (r.has("uca_catalog")) {
    std::set<std::string> ids;
    for (const json& j : r.array("uca_catalog")) {
      UcaRecord u = ParseUca(j);
      if (!ids.insert(u.id).second) throw ParseError("uca_catalog: duplicate id \"" + u.id + "\"");
      m.uca_catalog.push_back(std::move(u));
    }
  }
  if (r.has("bbns")) {
    for (const json& j : r.array("bbns")) {
      Bbn b = ParseBbn(j);
      std::string id = b.id;
      InsertUnique(m.bbns, id, std::move(b), "bbns");
    }
  }
  if (r.has("config")) m.config = ParseConfig(r.at("config"));
  r.finish();
  CheckReferences(m);
  return m;
}

std::string render_model(const Model& m) {
  json root = json::object();

  json fts = json::array();
  for (const auto& [id, ft] : m.fault_trees) {
    json jt = {{"id", ft.id}, {"top", ft.top}, {"top_kind", to_string(ft.top_kind)}};
    if (!ft.label.empty()) jt["label"] = ft.label;
    json gates = json::array();
    for (const auto& [gid, g] : ft.gates) {
      json jg = {{"id", g.id}, {"kind", to_string(g.kind)}};
      if (g.kind == GateKind::kAtLeast) jg["k"] = g.k;
      jg["inputs"] = g.inputs;
      if (!g.label.empty()) jg["label"] = g.label;
      gates.push_back(std::move(jg));
    }
    json events = json::array();
    for (const auto& [eid, e] : ft.events) {
      json je = {{"id", e.id}, {"kind", to_string(e.kind)}};
      if (e.kind == EventKind::kHouse) {
        je["state"] = e.house_state.value_or(e.probability == 1.0);
      } else {
        je["p"] = ProbabilityJson(e.probability);
      }
      if (e.ccf_group) je["ccf_group"] = *e.ccf_group;
      if (e.uca) je["uca"] = *e.uca;
      if (!e.label.empty()) je["label"] = e.label;
      events.push_back(std::move(je));
    }
    jt["gates"] = std::move(gates);
    jt["events"] = std::move(events);
    fts.push_back(std::move(jt));
  }
  root["fault_trees"] = std::move(fts);

  json ets = json::array();
  for (const auto& [id, et] : m.event_trees) {
    json je = {{"id", et.id},
               {"initiating_event",
                {{"id", et.initiating_event.id},
                 {"frequency", ProbabilityJson(et.initiating_event.frequency)}}}};
    json fes = json::array();
    for (const auto& fe : et.functional_events) {
      fes.push_back({{"id", fe.id}, {"fault_tree", fe.fault_tree}, {"gate", fe.gate}});
    }
    je["functional_events"] = std::move(fes);
    json seqs = json::array();
    for (const auto& s : et.sequences) {
      json path = json::array();
      for (Branch b : s.path) path.push_back(std::string(1, to_char(b)));
      json js = {{"id", s.id}, {"path", std::move(path)}, {"end_state", s.end_state}};
      if (s.frequency) js["frequency"] = ProbabilityJson(*s.frequency);
      if (s.cutset_count) js["cutsets"] = *s.cutset_count;
      seqs.push_back(std::move(js));
    }
    je["sequences"] = std::move(seqs);
    ets.push_back(std::move(je));
  }
  root["event_trees"] = std::move(ets);

  json groups = json::array();
  for (const auto& [id, g] : m.ccf_groups) {
    json jg = {{"id", g.id}, {"members", g.members}, {"total_p", ProbabilityJson(g.total_probability)}};
    json levels = json::array();
    for (const auto& l : g.levels) {
      levels.push_back({{"label", l.label}, {"beta", ProbabilityJson(l.beta)}, {"scope", l.scopes}});
    }
    jg["levels"] = std::move(levels);
    if (!g.label.empty()) jg["label"] = g.label;
    groups.push_back(std::move(jg));
  }
  root["ccf_groups"] = std::move(groups);

  json ucas = json::array();
  for (const auto& u : m.uca_catalog) {
    json ju = {{"id", u.id},
               {"controller", u.controller},
               {"action", u.control_action},
               {"category", to_string(u.category)},
               {"continuous", u.continuous_action},
               {"cause_class", to_string(u.cause_class)},
               {"layer", u.redundancy_layer}};
    if (u.probability) ju["p"] = ProbabilityJson(*u.probability);
    ucas.push_back(std::move(ju));
  }
  root["uca_catalog"] = std::move(ucas);

  json bbns = json::array();
  for (const auto& [id, b] : m.bbns) {
    json nodes = json::array();
    for (const auto& [nid, n] : b.nodes) {
      json cpt = json::array();
      for (double v : n.cpt) cpt.push_back(ProbabilityJson(v));
      nodes.push_back({{"id", n.id}, {"parents", n.parents}, {"cpt", std::move(cpt)}});
    }
    json jb = {{"id", b.id}, {"nodes", std::move(nodes)}, {"queries", b.queries}};
    if (b.bahamas) {
      json levels = json::array();
      for (const auto& l : b.bahamas->levels) {
        levels.push_back({{"label", l.label}, {"beta", ProbabilityJson(l.beta)}});
      }
      json cfg = {{"query", b.bahamas->query},
                  {"adjustment_factor", ProbabilityJson(b.bahamas->adjustment_factor)},
                  {"levels", std::move(levels)}};
      if (b.bahamas->ccf_group) cfg["ccf_group"] = *b.bahamas->ccf_group;
      jb["bahamas"] = std::move(cfg);
    }
    bbns.push_back(std::move(jb));
  }
  root["bbns"] = std::move(bbns);

  const AnalysisConfig& c = m.config;
  json cfg = {{"truncation", ProbabilityJson(c.truncation_probability)},
              {"method", to_string(c.method)},
              {"exact_event_limit", c.exact_event_limit},
              {"low_order_threshold", c.low_order_threshold},
              {"truncate_during_expansion", c.truncate_during_expansion}};
  if (c.max_cutset_order) cfg["max_order"] = *c.max_cutset_order;
  json matrix = json::object();
  for (TopKind top : kAllTopKinds) {
    json cats = json::array();
    for (UcaCategory cat : kAllUcaCategories) {
      if (c.applicability.applies(cat, top)) cats.push_back(to_string(cat));
    }
    matrix[to_string(top)] = std::move(cats);
  }
  cfg["applicability"] = std::move(matrix);
  root["config"] = std::move(cfg);

  return root.dump(2) + "\n";
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace iradic
