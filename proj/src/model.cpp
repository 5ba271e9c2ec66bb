#include "edl/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "edl/formula.hpp"
#include "json.hpp"

namespace edl {

using json = nlohmann::json;
using Code = ModelError::Code;

std::string_view error_code_name(Code code) {
  switch (code) {
    case Code::format: return "format";
    case Code::bad_name: return "bad_name";
    case Code::duplicate_name: return "duplicate_name";
    case Code::name_clash: return "name_clash";
    case Code::unknown_name: return "unknown_name";
    case Code::missing_entry: return "missing_entry";
    case Code::bad_value: return "bad_value";
    case Code::unknown_world: return "unknown_world";
    case Code::unknown_world_in_partition: return "unknown_world_in_partition";
    case Code::world_not_covered: return "world_not_covered";
    case Code::overlapping_cells: return "overlapping_cells";
    case Code::empty_cell: return "empty_cell";
    case Code::mirror_violation: return "mirror_violation";
    case Code::bad_mirror: return "bad_mirror";
    case Code::empty_model: return "empty_model";
  }
  return "unknown";
}

namespace {

void check_name(const std::string& name, std::string_view what) {
  if (!is_identifier(name) || is_reserved_word(name))
    throw ModelError(Code::bad_name,
                     "invalid " + std::string(what) + " name '" + name + "'");
}

template <class Index>
void build_partition(const std::vector<std::vector<std::string>>& cells,
                     const Index& world_index, std::size_t world_count,
                     std::string_view which,
                     std::vector<std::vector<World>>& out_cells,
                     std::vector<std::size_t>& out_of) {
  const std::size_t none = static_cast<std::size_t>(-1);
  out_of.assign(world_count, none);
  out_cells.clear();
  for (const auto& cell : cells) {
    if (cell.empty())
      throw ModelError(Code::empty_cell,
                       "empty cell in " + std::string(which) + " partition");
    std::vector<World> ws;
    for (const auto& id : cell) {
      auto it = world_index.find(id);
      if (it == world_index.end())
        throw ModelError(Code::unknown_world_in_partition,
                         "unknown world '" + id + "' in " + std::string(which) +
                             " partition");
      if (out_of[it->second] != none)
        throw ModelError(Code::overlapping_cells,
                         "world '" + id + "' occurs in two cells of " +
                             std::string(which) + " partition");
      out_of[it->second] = out_cells.size();
      ws.push_back(it->second);
    }
    std::sort(ws.begin(), ws.end());
    out_cells.push_back(std::move(ws));
  }
  for (const auto& [id, w] : world_index)
    if (out_of[w] == none)
      throw ModelError(Code::world_not_covered,
                       "world not covered by partition: '" + id + "' missing from " +
                           std::string(which) + " partition");
}

}  // namespace

KripkeModel::KripkeModel(ModelData data) : mirrors_(std::move(data.mirrors)) {
  if (data.worlds.empty()) throw ModelError(Code::empty_model, "model has no worlds");

  for (const auto& p : data.propositions) {
    check_name(p, "proposition");
    if (!prop_index_.emplace(p, props_.size()).second)
      throw ModelError(Code::duplicate_name, "proposition '" + p + "' declared twice");
    props_.push_back(p);
  }
  for (const auto& v : data.variables) {
    check_name(v.name, "variable");
    if (!var_index_.emplace(v.name, vars_.size()).second)
      throw ModelError(Code::duplicate_name, "variable '" + v.name + "' declared twice");
    vars_.push_back(v);
  }

  for (const auto& [p, bar] : mirrors_) {
    if (!prop_index_.count(p))
      throw ModelError(Code::bad_mirror, "mirror for undeclared proposition '" + p + "'");
    auto vi = var_index_.find(bar);
    if (vi == var_index_.end())
      throw ModelError(Code::bad_mirror, "mirror variable '" + bar + "' is not declared");
    if (vars_[vi->second].hidden)
      throw ModelError(Code::bad_mirror, "mirror variable '" + bar + "' is hidden");
  }
  for (const auto& p : props_) {
    if (!var_index_.count(p)) continue;
    auto m = mirrors_.find(p);
    if (m == mirrors_.end() || m->second != p)
      throw ModelError(Code::name_clash,
                       "name '" + p + "' is both a proposition and a variable");
  }

  for (const auto& w : data.worlds) {
    check_name(w.id, "world");
    if (!world_index_.emplace(w.id, worlds_.size()).second)
      throw ModelError(Code::duplicate_name, "world '" + w.id + "' declared twice");
    worlds_.push_back(w.id);

    for (const auto& [name, value] : w.props)
      if (!prop_index_.count(name))
        throw ModelError(Code::unknown_name, "world '" + w.id +
                                                 "' values undeclared proposition '" +
                                                 name + "'");
    for (const auto& [name, value] : w.vals)
      if (!var_index_.count(name))
        throw ModelError(Code::unknown_name, "world '" + w.id +
                                                 "' assigns undeclared variable '" +
                                                 name + "'");

    std::vector<bool> truth(props_.size());
    for (std::size_t i = 0; i < props_.size(); ++i) {
      auto it = w.props.find(props_[i]);
      if (it == w.props.end())
        throw ModelError(Code::missing_entry, "missing valuation entry: world '" +
                                                  w.id + "' has no value for proposition '" +
                                                  props_[i] + "'");
      truth[i] = it->second;
    }
    std::vector<Value> values(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = w.vals.find(vars_[i].name);
      if (it == w.vals.end())
        throw ModelError(Code::missing_entry, "missing assignment entry: world '" +
                                                  w.id + "' has no value for variable '" +
                                                  vars_[i].name + "'");
      values[i] = it->second;
    }
    truth_.push_back(std::move(truth));
    values_.push_back(std::move(values));
  }

  build_partition(data.epistemic_partition, world_index_, worlds_.size(),
                  "epistemic", epistemic_cells_, epistemic_of_);
  build_partition(data.nomic_partition, world_index_, worlds_.size(), "nomic",
                  nomic_cells_, nomic_of_);

  for (const auto& [p, bar] : mirrors_) {
    const std::size_t pi = prop_index_.find(p)->second;
    const std::size_t vi = var_index_.find(bar)->second;
    for (World w = 0; w < worlds_.size(); ++w) {
      const Value t = truth_[w][pi] ? 1 : 0;
      if (values_[w][vi] != t)
        throw ModelError(Code::mirror_violation,
                         "mirror violation at world '" + worlds_[w] + "': " + p +
                             "=" + std::to_string(t) + " but " + bar + "=" +
                             std::to_string(values_[w][vi]));
    }
  }
}

const std::string& KripkeModel::world_name(World w) const {
  check_world(w);
  return worlds_[w];
}

World KripkeModel::world(std::string_view id) const {
  auto w = find_world(id);
  if (!w) throw ModelError(Code::unknown_world, "unknown world '" + std::string(id) + "'");
  return *w;
}

std::optional<World> KripkeModel::find_world(std::string_view id) const {
  auto it = world_index_.find(id);
  if (it == world_index_.end()) return std::nullopt;
  return it->second;
}

void KripkeModel::check_world(World w) const {
  if (w >= worlds_.size())
    throw ModelError(Code::unknown_world, "unknown world #" + std::to_string(w));
}

std::optional<std::size_t> KripkeModel::proposition_index(std::string_view name) const {
  auto it = prop_index_.find(name);
  if (it == prop_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> KripkeModel::variable_index(std::string_view name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

bool KripkeModel::is_named_variable(std::string_view name) const {
  auto i = variable_index(name);
  return i && !vars_[*i].hidden;
}

VarSet KripkeModel::named_variables() const {
  std::vector<std::string> names;
  for (const auto& v : vars_)
    if (!v.hidden) names.push_back(v.name);
  return VarSet(std::move(names));
}

const std::vector<World>& KripkeModel::epistemic_class(World w) const {
  check_world(w);
  return epistemic_cells_[epistemic_of_[w]];
}

const std::vector<World>& KripkeModel::nomic_class(World w) const {
  check_world(w);
  return nomic_cells_[nomic_of_[w]];
}

ModelData KripkeModel::data() const {
  ModelData d;
  d.propositions = props_;
  d.variables = vars_;
  for (World w = 0; w < worlds_.size(); ++w) {
    WorldData wd;
    wd.id = worlds_[w];
    for (std::size_t i = 0; i < props_.size(); ++i) wd.props[props_[i]] = truth_[w][i];
    for (std::size_t i = 0; i < vars_.size(); ++i) wd.vals[vars_[i].name] = values_[w][i];
    d.worlds.push_back(std::move(wd));
  }
  auto names = [&](const std::vector<std::vector<World>>& cells) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : cells) {
      std::vector<std::string> ids;
      for (World w : c) ids.push_back(worlds_[w]);
      out.push_back(std::move(ids));
    }
    return out;
  };
  d.epistemic_partition = names(epistemic_cells_);
  d.nomic_partition = names(nomic_cells_);
  d.mirrors = mirrors_;
  return d;
}

// --- documents --------------------------------------------------------------

namespace {

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ModelError(Code::format, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const json& j, std::string_view what) {
  if (!j.is_string())
    throw ModelError(Code::format, std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::vector<std::string>> partition_of(const json& j, std::string_view which) {
  if (!j.is_array())
    throw ModelError(Code::format, std::string(which) + " must be a list of lists");
  std::vector<std::vector<std::string>> cells;
  for (const auto& cell : j) {
    if (!cell.is_array())
      throw ModelError(Code::format, std::string(which) + " must be a list of lists");
    std::vector<std::string> ids;
    for (const auto& id : cell) ids.push_back(string_of(id, "world id"));
    cells.push_back(std::move(ids));
  }
  return cells;
}

}  // namespace

KripkeModel load_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ModelError(Code::format, std::string("malformed model document: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError(Code::format, "model document must be an object");

  ModelData d;
  if (doc.contains("propositions")) {
    const json& ps = doc["propositions"];
    if (!ps.is_array()) throw ModelError(Code::format, "'propositions' must be a list");
    for (const auto& p : ps) d.propositions.push_back(string_of(p, "proposition"));
  }
  if (doc.contains("variables")) {
    const json& vs = doc["variables"];
    if (!vs.is_array()) throw ModelError(Code::format, "'variables' must be a list");
    for (const auto& v : vs) {
      VariableDecl decl;
      if (v.is_string()) {
        decl.name = v.get<std::string>();
      } else if (v.is_object()) {
        decl.name = string_of(field(v, "name"), "variable name");
        if (v.contains("hidden")) {
          if (!v["hidden"].is_boolean())
            throw ModelError(Code::format, "'hidden' must be a boolean");
          decl.hidden = v["hidden"].get<bool>();
        }
      } else {
        throw ModelError(Code::format, "variable entries must be objects");
      }
      d.variables.push_back(std::move(decl));
    }
  }

  const json& ws = field(doc, "worlds");
  if (!ws.is_array()) throw ModelError(Code::format, "'worlds' must be a list");
  for (const auto& w : ws) {
    if (!w.is_object()) throw ModelError(Code::format, "world entries must be objects");
    WorldData wd;
    wd.id = string_of(field(w, "id"), "world id");
    if (w.contains("props")) {
      if (!w["props"].is_object())
        throw ModelError(Code::format, "'props' of world '" + wd.id + "' must be an object");
      for (const auto& [name, v] : w["props"].items()) {
        bool truth;
        if (v.is_boolean()) {
          truth = v.get<bool>();
        } else if (v.is_number_integer() && (v.get<std::int64_t>() == 0 ||
                                             v.get<std::int64_t>() == 1)) {
          truth = v.get<std::int64_t>() == 1;
        } else {
          throw ModelError(Code::bad_value, "world '" + wd.id + "': proposition '" + name +
                                                "' must be 0 or 1, got " + v.dump());
        }
        wd.props[name] = truth;
      }
    }
    if (w.contains("vals")) {
      if (!w["vals"].is_object())
        throw ModelError(Code::format, "'vals' of world '" + wd.id + "' must be an object");
      for (const auto& [name, v] : w["vals"].items()) {
        if (!v.is_number_unsigned())
          throw ModelError(Code::bad_value, "world '" + wd.id + "': variable '" + name +
                                                "' must be a non-negative integer, got " +
                                                v.dump());
        wd.vals[name] = v.get<Value>();
      }
    }
    d.worlds.push_back(std::move(wd));
  }

  d.epistemic_partition = partition_of(field(doc, "epistemic_partition"), "epistemic_partition");
  d.nomic_partition = partition_of(field(doc, "nomic_partition"), "nomic_partition");

  if (doc.contains("mirrors")) {
    const json& ms = doc["mirrors"];
    if (!ms.is_object()) throw ModelError(Code::format, "'mirrors' must be an object");
    for (const auto& [p, v] : ms.items()) d.mirrors[p] = string_of(v, "mirror variable");
  }
  return KripkeModel(std::move(d));
}

KripkeModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(Code::format, "cannot open model file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string dump_model(const KripkeModel& m) {
  const ModelData d = m.data();
  json doc;
  doc["propositions"] = d.propositions;
  doc["variables"] = json::array();
  for (const auto& v : d.variables)
    doc["variables"].push_back({{"name", v.name}, {"hidden", v.hidden}});
  doc["worlds"] = json::array();
  for (const auto& w : d.worlds) {
    json props = json::object();
    for (const auto& [p, t] : w.props) props[p] = t ? 1 : 0;
    json vals = json::object();
    for (const auto& [v, x] : w.vals) vals[v] = x;
    doc["worlds"].push_back({{"id", w.id}, {"props", props}, {"vals", vals}});
  }
  doc["epistemic_partition"] = d.epistemic_partition;
  doc["nomic_partition"] = d.nomic_partition;
  if (!d.mirrors.empty()) doc["mirrors"] = d.mirrors;
  return doc.dump(2);
}

// --- agreement predicates ---------------------------------------------------

namespace {

std::vector<bool> named_mask(const KripkeModel& m, const VarSet& xs) {
  std::vector<bool> mask(m.variables().size(), false);
  for (const auto& x : xs) {
    auto i = m.variable_index(x);
    if (!i || m.variables()[*i].hidden)
      throw ModelError(Code::unknown_name, "unknown variable '" + x + "'");
    mask[*i] = true;
  }
  return mask;
}

}  // namespace

VarSet delta(const KripkeModel& m, World u, World v) {
  m.check_world(u);
  m.check_world(v);
  const auto& vars = m.variables();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m.value(u, i) == m.value(v, i)) continue;
    if (vars[i].hidden) return {};
    out.push_back(vars[i].name);
  }
  return VarSet(std::move(out));
}

bool agree_outside(const KripkeModel& m, World u, World v, const VarSet& xy) {
  m.check_world(u);
  m.check_world(v);
  const auto mask = named_mask(m, xy);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (!mask[i] && m.value(u, i) != m.value(v, i)) return false;
  return true;
}

bool differs_on(const KripkeModel& m, World u, World v, const VarSet& x) {
  m.check_world(u);
  m.check_world(v);
  const auto mask = named_mask(m, x);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i] && m.value(u, i) != m.value(v, i)) return true;
  return false;
}

const std::vector<World>& nomic_class(const KripkeModel& m, World s) {
  return m.nomic_class(s);
}

const std::vector<World>& epistemic_class(const KripkeModel& m, World s) {
  return m.epistemic_class(s);
}

}  // namespace edl
