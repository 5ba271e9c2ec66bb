#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "edl/bisim.hpp"
#include "edl/dependency.hpp"
#include "edl/formula.hpp"
#include "edl/harness.hpp"
#include "edl/model.hpp"
#include "edl/semantics.hpp"
#include "json.hpp"

#ifndef EDL_FIXTURE_DIR
#define EDL_FIXTURE_DIR "fixtures"
#endif

namespace edl::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Thrown for a model that cannot be loaded; maps to Exit::load. Any other
// ModelError raised afterwards is an evaluation problem.
struct LoadFailure {
  std::string path;
  ModelError error;
};

// Malformed command-line values that CLI11 itself cannot catch.
struct UsageFailure {
  std::string message;
};

struct Options {
  std::string model, model2, world, world2, formula, kind = "g", varset, name;
  std::optional<std::size_t> depth;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t per_schema = 2;
  bool json = false;
};

KripkeModel load(const std::string& path) {
  try {
    return load_model_file(path);
  } catch (const ModelError& e) {
    throw LoadFailure{path, e};
  }
}

DepKind parse_kind(const std::string& k) {
  if (k == "g" || k == "global") return DepKind::global;
  if (k == "l" || k == "local") return DepKind::local;
  throw UsageFailure{"--kind must be g or l, got '" + k + "'"};
}

VarSet parse_varset(std::string text) {
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw UsageFailure{"unbalanced braces in varset '" + text + "'"};
    text = text.substr(1, text.size() - 2);
  }
  std::vector<std::string> names;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (!is_identifier(item)) throw UsageFailure{"bad variable name '" + item + "'"};
    names.push_back(item);
  }
  return VarSet(std::move(names));
}

std::string world_list(const KripkeModel& m, const std::vector<World>& ws) {
  std::string out = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ',';
    out += m.world_name(ws[i]);
  }
  return out + "}";
}

json world_array(const KripkeModel& m, const std::vector<World>& ws) {
  json a = json::array();
  for (World w : ws) a.push_back(m.world_name(w));
  return a;
}

json family_json(const EvidenceFamily& f) {
  json a = json::array();
  std::vector<VarSet> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end(), BySizeThenLex{});
  for (const VarSet& w : sorted) a.push_back(w.names());
  return a;
}

std::string kind_tag(DepKind k) { return k == DepKind::global ? "g" : "l"; }

// Both routes, or exit 5.
struct Checked {
  bool value;
  bool agree;
  bool direct, evidence;
};

Checked check_both(const KripkeModel& m, World s, const Formula& f) {
  const bool d = eval(m, s, f, Route::direct);
  const bool e = eval(m, s, f, Route::evidence);
  return {d, d == e, d, e};
}

int report_disagreement(std::ostream& err, const KripkeModel& m, World s, const Formula& f,
                        const Checked& c) {
  err << "internal error: evaluation routes disagree on " << render(f) << " at "
      << m.world_name(s) << " (direct=" << (c.direct ? "true" : "false")
      << ", evidence=" << (c.evidence ? "true" : "false") << ")\n";
  return Exit::disagreement;
}

// --- commands ----------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const KripkeModel m = load(o.model);
  const World s = m.world(o.world);
  const Formula f = parse_formula(o.formula);
  const Checked c = check_both(m, s, f);
  if (!c.agree) return report_disagreement(err, m, s, f, c);
  if (o.json) {
    out << json{{"world", o.world},
                {"formula", render(f)},
                {"value", c.value},
                {"routes", {{"direct", c.direct}, {"evidence", c.evidence}}}}
               .dump(2)
        << "\n";
  } else {
    out << (c.value ? "true" : "false") << "\n";
  }
  return Exit::ok;
}

int cmd_extension(const Options& o, std::ostream& out, std::ostream& err) {
  const KripkeModel m = load(o.model);
  const Formula f = parse_formula(o.formula);
  const auto direct = extension(m, f, Route::direct);
  const auto evidence = extension(m, f, Route::evidence);
  if (direct != evidence) {
    for (World s = 0; s < m.world_count(); ++s) {
      const Checked c = check_both(m, s, f);
      if (!c.agree) return report_disagreement(err, m, s, f, c);
    }
  }
  if (o.json)
    out << json{{"formula", render(f)}, {"worlds", world_array(m, direct)}}.dump(2) << "\n";
  else
    out << world_list(m, direct) << "\n";
  return Exit::ok;
}

int cmd_generative(const Options& o, std::ostream& out, std::ostream&) {
  const KripkeModel m = load(o.model);
  const World s = m.world(o.world);
  const DepKind kind = parse_kind(o.kind);
  const EvidenceFamily p = p_family(m, s, kind);
  const EvidenceFamily g = generative_family(p);
  const std::string tag = kind_tag(kind);

  std::vector<VarSet> candidates;
  std::optional<VarSet> w;
  if (!o.varset.empty()) {
    w = parse_varset(o.varset);
    if (w->empty()) throw UsageFailure{"--varset must be nonempty"};
    for (const auto& v : *w)
      if (!m.is_named_variable(v))
        throw ModelError(ModelError::Code::unknown_name, "'" + v + "' is not a named variable");
    candidates.push_back(*w);
  } else {
    candidates = subsets_of(p.support(), false, true);
  }

  const std::vector<GenerativeMethod> methods = {
      GenerativeMethod::cuts, GenerativeMethod::partition, GenerativeMethod::graph};

  if (o.json) {
    json j{{"world", o.world}, {"kind", tag}, {"P", family_json(p)}, {"G", family_json(g)}};
    if (w) {
      const auto members = sigma(p, *w);
      j["sigma"] = family_json(EvidenceFamily(std::set<VarSet>(members.begin(), members.end())));
    }
    j["verdicts"] = json::array();
    for (const VarSet& c : candidates) {
      json row{{"W", c.names()}};
      for (auto method : methods) row[std::string(method_name(method))] = is_generative(p, c, method);
      j["verdicts"].push_back(row);
    }
    out << j.dump(2) << "\n";
    return Exit::ok;
  }

  out << "P_" << tag << "(" << o.world << ") = " << p.str() << "\n";
  if (w) {
    auto members = sigma(p, *w);
    std::sort(members.begin(), members.end(), BySizeThenLex{});
    out << "Sigma(" << o.world << "," << w->str() << ") = {";
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? "," : "") << members[i].str();
    out << "}\n";
  }
  for (const VarSet& c : candidates) {
    out << "generative " << c.str() << ":";
    for (auto method : methods)
      out << " " << method_name(method) << "=" << (is_generative(p, c, method) ? "true" : "false");
    out << "\n";
  }
  out << "G_" << tag << "(" << o.world << ") = " << g.str() << "\n";
  return Exit::ok;
}

int cmd_bisim(const Options& o, std::ostream& out, std::ostream&) {
  const KripkeModel m = load(o.model);
  const KripkeModel m2 = load(o.model2);
  const World s = m.world(o.world);
  const World s2 = m2.world(o.world2);
  if (!same_signature(m, m2))
    throw std::invalid_argument(
        "signature mismatch: models must declare the same propositions and named variables");

  const bool bisimilar = are_bisimilar({m, s}, {m2, s2});
  const std::size_t depth = o.depth.value_or(m.world_count() * m2.world_count());
  std::optional<Formula> f;
  if (!bisimilar) f = find_distinguishing_formula({m, s}, {m2, s2}, depth);

  if (o.json) {
    json j{{"bisimilar", bisimilar}, {"depth", depth}};
    if (f) {
      j["distinguishing"] = render(*f);
      j["modal_depth"] = f->modal_depth();
    }
    out << j.dump(2) << "\n";
    return Exit::ok;
  }
  out << (bisimilar ? "bisimilar" : "not bisimilar") << "\n";
  if (f)
    out << "distinguishing formula (depth " << f->modal_depth() << "): " << render(*f) << "\n";
  else if (!bisimilar)
    out << "no distinguishing formula of depth <= " << depth << "\n";
  return Exit::ok;
}

int cmd_axioms(const Options& o, std::ostream& out, std::ostream&) {
  if (o.trials == 0) throw UsageFailure{"--trials must be at least 1"};
  GenParams params;
  params.seed = o.seed;
  SoundnessOptions opts;
  opts.per_schema = o.per_schema;
  const SoundnessReport r = soundness_suite(params, o.trials, opts);
  out << (o.json ? report_json(r) + "\n" : format_report(r));
  return r.count(Counterexample::Kind::route_disagreement) ? Exit::disagreement : Exit::ok;
}

std::size_t count_hidden(const KripkeModel& m) {
  return std::count_if(m.variables().begin(), m.variables().end(),
                       [](const VariableDecl& v) { return v.hidden; });
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream&) {
  const KripkeModel m = load(o.model);
  const std::size_t hidden = count_hidden(m);
  if (o.json) {
    out << json{{"valid", true},
                {"worlds", m.world_count()},
                {"propositions", m.propositions().size()},
                {"variables", m.variables().size()},
                {"hidden", hidden},
                {"epistemic_cells", m.epistemic_partition().size()},
                {"nomic_cells", m.nomic_partition().size()},
                {"mirrors", m.mirrors().size()}}
               .dump(2)
        << "\n";
    return Exit::ok;
  }
  out << "ok: " << m.world_count() << " worlds, " << m.propositions().size()
      << " propositions, " << m.variables().size() << " variables (" << hidden
      << " hidden), " << m.epistemic_partition().size() << " epistemic cells, "
      << m.nomic_partition().size() << " nomic cells, " << m.mirrors().size() << " mirrors\n";
  return Exit::ok;
}

// A fixture carries a "claims" array next to the model:
//   {"world": "s", "formula": "...", "expect": true}
//   {"formula": "...", "valid": true}
//   {"formula": "...", "extension": ["s", "t"]}
int cmd_examples(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.name.empty()) {
    for (const auto& n : fixture_names()) out << n << "\n";
    return Exit::ok;
  }
  const fs::path path = fixture_dir() / (o.name + ".edl");
  if (!fs::exists(path)) throw UsageFailure{"no bundled fixture named '" + o.name + "'"};
  const KripkeModel m = load(path.string());

  std::ifstream in(path);
  const json doc = json::parse(in, nullptr, true, true);
  if (!doc.contains("claims") || !doc["claims"].is_array())
    throw UsageFailure{"fixture '" + o.name + "' has no claims"};

  std::size_t passed = 0, total = 0;
  json results = json::array();
  for (const json& claim : doc["claims"]) {
    const std::string text = claim.at("formula").get<std::string>();
    const Formula f = parse_formula(text);
    std::string what;
    bool holds;
    std::vector<World> ext;
    for (World s = 0; s < m.world_count(); ++s) {
      const Checked c = check_both(m, s, f);
      if (!c.agree) return report_disagreement(err, m, s, f, c);
      if (c.value) ext.push_back(s);
    }
    auto truth_at = [&](World s) { return std::find(ext.begin(), ext.end(), s) != ext.end(); };

    if (claim.contains("world")) {
      const std::string id = claim["world"].get<std::string>();
      const bool expect = claim.value("expect", true);
      holds = truth_at(m.world(id)) == expect;
      what = id + (expect ? " |= " : " |/= ") + text;
    } else if (claim.contains("valid")) {
      const bool expect = claim["valid"].get<bool>();
      holds = (ext.size() == m.world_count()) == expect;
      what = std::string(expect ? "valid: " : "not valid: ") + text;
    } else if (claim.contains("extension")) {
      std::vector<World> want;
      for (const auto& id : claim["extension"]) want.push_back(m.world(id.get<std::string>()));
      std::sort(want.begin(), want.end());
      holds = want == ext;
      what = "[[" + text + "]] = " + world_list(m, want);
    } else {
      throw UsageFailure{"claim without world, valid or extension in '" + o.name + "'"};
    }
    ++total;
    if (holds) ++passed;
    results.push_back({{"claim", what}, {"ok", holds}});
    if (!o.json) out << (holds ? "ok    " : "FAIL  ") << what << "\n";
  }
  const bool all = passed == total;
  if (o.json)
    out << json{{"fixture", o.name}, {"claims", results}, {"pass", all}}.dump(2) << "\n";
  else
    out << (all ? "PASS" : "FAIL") << " " << o.name << " (" << passed << "/" << total
        << " claims)\n";
  return all ? Exit::ok : Exit::claim_failed;
}

}  // namespace

fs::path fixture_dir() {
  if (const char* env = std::getenv("EDL_FIXTURES"); env && *env) return env;
  return EDL_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(fixture_dir(), ec)) {
    if (entry.path().extension() != ".edl") continue;
    // Crafted-invalid models live beside the bundled examples but are not examples.
    std::ifstream in(entry.path());
    const json doc = json::parse(in, nullptr, false, true);
    if (!doc.is_discarded() && doc.contains("claims")) out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependence epistemic logic toolkit", "edl"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");

  auto model_opt = [&](CLI::App* sub) {
    sub->add_option("-m,--model,model", o.model, "Model file")->required();
  };

  auto* check = app.add_subcommand("check", "Evaluate a formula at a world");
  model_opt(check);
  check->add_option("-w,--world,world", o.world, "World id")->required();
  check->add_option("-f,--formula,formula", o.formula, "Formula")->required();

  auto* ext = app.add_subcommand("extension", "List the worlds where a formula holds");
  model_opt(ext);
  ext->add_option("-f,--formula,formula", o.formula, "Formula")->required();

  auto* gen = app.add_subcommand("generative", "Evidence family and generative sets at a world");
  model_opt(gen);
  gen->add_option("-w,--world,world", o.world, "World id")->required();
  gen->add_option("--kind", o.kind, "g (global) or l (local)");
  gen->add_option("--varset,varset", o.varset, "Candidate set W, e.g. {x,y}");

  auto* bis = app.add_subcommand("bisim", "Decide bisimilarity of two pointed models");
  model_opt(bis);
  bis->add_option("-w,--world,world", o.world, "World of the first model")->required();
  bis->add_option("--model2,model2", o.model2, "Second model file")->required();
  bis->add_option("--world2,world2", o.world2, "World of the second model")->required();
  bis->add_option("--depth", o.depth, "Search depth (default |S|*|S'|)");

  auto* ax = app.add_subcommand("axioms", "Check the axiom schemas on random models");
  ax->add_option("--trials", o.trials, "Number of random models");
  ax->add_option("--seed", o.seed, "Seed of the first model");
  ax->add_option("--per-schema", o.per_schema, "Instances per schema and model");

  auto* val = app.add_subcommand("validate", "Load and validate a model file");
  model_opt(val);

  auto* exs = app.add_subcommand("examples", "Replay a bundled fixture's claims");
  exs->add_option("name", o.name, "Fixture name; lists fixtures when omitted");

  for (auto* sub : {check, ext, gen, bis, ax, val, exs})
    sub->add_flag("--json", o.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*check) return cmd_check(o, out, err);
    if (*ext) return cmd_extension(o, out, err);
    if (*gen) return cmd_generative(o, out, err);
    if (*bis) return cmd_bisim(o, out, err);
    if (*ax) return cmd_axioms(o, out, err);
    if (*val) return cmd_validate(o, out, err);
    if (*exs) return cmd_examples(o, out, err);
  } catch (const LoadFailure& f) {
    err << "error: " << f.path << ": [" << error_code_name(f.error.code()) << "] "
        << f.error.what() << "\n";
    return Exit::load;
  } catch (const UsageFailure& f) {
    err << "error: " << f.message << "\n";
    return Exit::usage;
  } catch (const ParseError& e) {
    err << "error: formula: " << e.what() << "\n";
    return Exit::usage;
  } catch (const ModelError& e) {
    err << "error: [" << error_code_name(e.code()) << "] " << e.what() << "\n";
    return Exit::evaluation;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::evaluation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::evaluation;
  } catch (const json::exception& e) {
    err << "error: fixture: " << e.what() << "\n";
    return Exit::load;
  }
  return Exit::usage;
}

}  // namespace edl::cli
