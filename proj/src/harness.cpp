#include "edl/harness.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace edl {

namespace {

// Modulo draws keep the streams identical across standard libraries;
// std::uniform_int_distribution is implementation-defined.
std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

bool coin(std::mt19937_64& rng) { return rng() & 1; }

std::vector<std::vector<std::string>> random_partition(std::mt19937_64& rng,
                                                       const std::vector<std::string>& ids,
                                                       std::size_t max_cells) {
  const std::size_t n = ids.size();
  const std::size_t limit = max_cells == 0 ? n : std::min(max_cells, n);
  const std::size_t cells = 1 + draw(rng, limit);
  std::vector<std::vector<std::string>> out(cells);
  for (const auto& id : ids) out[draw(rng, cells)].push_back(id);
  std::erase_if(out, [](const auto& c) { return c.empty(); });
  return out;
}

VarSet random_varset(std::mt19937_64& rng, const VarSet& pool, std::size_t max_size,
                     bool nonempty) {
  std::vector<std::string> names;
  for (const auto& v : pool)
    if (coin(rng)) names.push_back(v);
  while (names.size() > max_size) names.erase(names.begin() + draw(rng, names.size()));
  if (nonempty && names.empty() && !pool.empty())
    names.push_back(pool.names()[draw(rng, pool.size())]);
  return VarSet(std::move(names));
}

Formula box(bool epistemic, Formula f) {
  return epistemic ? know(std::move(f)) : all(std::move(f));
}

}  // namespace

KripkeModel random_model(const GenParams& params) {
  if (params.min_worlds == 0 || params.max_worlds < params.min_worlds)
    throw std::invalid_argument("random_model: infeasible world count range");
  if (params.value_bound == 0)
    throw std::invalid_argument("random_model: value bound must be at least 1");

  std::mt19937_64 rng(params.seed);
  const std::size_t n =
      params.min_worlds + draw(rng, params.max_worlds - params.min_worlds + 1);

  ModelData d;
  for (std::size_t i = 0; i < params.propositions; ++i)
    d.propositions.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < params.named_variables; ++i)
    d.variables.push_back({"x" + std::to_string(i), false});
  for (std::size_t i = 0; i < params.hidden_variables; ++i)
    d.variables.push_back({"h" + std::to_string(i), true});

  std::vector<std::string> ids;
  for (std::size_t w = 0; w < n; ++w) {
    WorldData wd;
    wd.id = "w" + std::to_string(w);
    for (const auto& p : d.propositions) wd.props[p] = coin(rng);
    for (const auto& v : d.variables) wd.vals[v.name] = rng() % params.value_bound;
    ids.push_back(wd.id);
    d.worlds.push_back(std::move(wd));
  }
  d.epistemic_partition = random_partition(rng, ids, params.max_epistemic_cells);
  d.nomic_partition = random_partition(rng, ids, params.max_nomic_cells);
  return KripkeModel(std::move(d));
}

Formula random_formula(std::mt19937_64& rng, const KripkeModel& m, std::size_t depth,
                       std::size_t max_varset) {
  const VarSet vars = m.named_variables();
  auto atom = [&]() -> Formula {
    const std::size_t choice = draw(rng, 4);
    if (choice == 0 || (choice == 1 && m.propositions().empty()) ||
        (choice >= 2 && vars.empty()))
      return Formula::top();
    if (choice == 1) return Formula::prop(m.propositions()[draw(rng, m.propositions().size())]);
    const DepKind kind = coin(rng) ? DepKind::global : DepKind::local;
    VarSet x = random_varset(rng, vars, max_varset, true);
    VarSet y = random_varset(rng, vars, max_varset, true);
    return Formula::dep(kind, std::move(x), std::move(y));
  };

  std::function<Formula(std::size_t, std::size_t)> gen = [&](std::size_t d,
                                                             std::size_t budget) -> Formula {
    if (budget == 0) return atom();
    switch (draw(rng, d > 0 ? 5 : 3)) {
      case 0: return atom();
      case 1: return neg(gen(d, budget - 1));
      case 2: return conj(gen(d, budget - 1), gen(d, budget - 1));
      case 3: return know(gen(d - 1, budget - 1));
      default: return all(gen(d - 1, budget - 1));
    }
  };
  return gen(depth, 3);
}

// --- schemas -----------------------------------------------------------------

std::string_view schema_name(Schema s) {
  switch (s) {
    case Schema::k_t: return "T-for-K";
    case Schema::k_4: return "4-for-K";
    case Schema::k_5: return "5-for-K";
    case Schema::k_dist: return "DIST-for-K";
    case Schema::a_t: return "T-for-A";
    case Schema::a_4: return "4-for-A";
    case Schema::a_5: return "5-for-A";
    case Schema::a_dist: return "DIST-for-A";
    case Schema::q_for_d: return "Q-for-D";
    case Schema::e_for_d: return "E-for-D";
    case Schema::four_for_dg: return "4-for-Dg";
    case Schema::empty_set: return "EmptySet";
    case Schema::symmetry: return "Symmetry";
    case Schema::weakening: return "Weakening";
    case Schema::separation: return "Separation";
    case Schema::dg_definability: return "Dg-definability";
  }
  return "?";
}

const std::vector<Schema>& all_schemas() {
  static const std::vector<Schema> schemas = {
      Schema::k_t,     Schema::k_4,         Schema::k_5,       Schema::k_dist,
      Schema::a_t,     Schema::a_4,         Schema::a_5,       Schema::a_dist,
      Schema::q_for_d, Schema::e_for_d,     Schema::four_for_dg, Schema::empty_set,
      Schema::symmetry, Schema::weakening, Schema::separation, Schema::dg_definability};
  return schemas;
}

bool schema_is_kind_generic(Schema s) {
  switch (s) {
    case Schema::q_for_d:
    case Schema::e_for_d:
    case Schema::empty_set:
    case Schema::symmetry:
    case Schema::weakening:
    case Schema::separation: return true;
    default: return false;
  }
}

std::string SchemaInstance::label() const {
  std::string out(schema_name(schema));
  if (schema_is_kind_generic(schema)) out += kind == DepKind::global ? "[g]" : "[l]";
  return out;
}

Formula instantiate(const SchemaInstance& s) {
  auto need = [&](std::size_t n) {
    if (s.formulas.size() < n)
      throw SideConditionError(std::string(schema_name(s.schema)) + " needs " +
                               std::to_string(n) + " component formula(s)");
  };
  auto D = [&](VarSet x, VarSet y) { return Formula::dep(s.kind, std::move(x), std::move(y)); };

  switch (s.schema) {
    case Schema::k_t:
    case Schema::a_t: {
      need(1);
      const bool k = s.schema == Schema::k_t;
      return implies(box(k, s.formulas[0]), s.formulas[0]);
    }
    case Schema::k_4:
    case Schema::a_4: {
      need(1);
      const bool k = s.schema == Schema::k_4;
      return implies(box(k, s.formulas[0]), box(k, box(k, s.formulas[0])));
    }
    case Schema::k_5:
    case Schema::a_5: {
      need(1);
      const bool k = s.schema == Schema::k_5;
      return implies(neg(box(k, s.formulas[0])), box(k, neg(box(k, s.formulas[0]))));
    }
    case Schema::k_dist:
    case Schema::a_dist: {
      need(2);
      const bool k = s.schema == Schema::k_dist;
      const Formula& phi = s.formulas[0];
      const Formula& psi = s.formulas[1];
      return implies(box(k, implies(phi, psi)), implies(box(k, phi), box(k, psi)));
    }
    case Schema::q_for_d: {
      if (s.x.empty() || s.y.empty())
        throw SideConditionError("Q-for-D requires nonempty X and Y");
      std::set<VarSet, BySizeThenLex> ws;
      for (const VarSet& xp : subsets_of(s.x, false, true))
        for (const VarSet& yp : subsets_of(s.y, false, true)) ws.insert(xp | yp);
      std::vector<Formula> disjuncts;
      for (const VarSet& w : ws) disjuncts.push_back(build_q(s.kind, w));
      return iff(D(s.x, s.y), disj_all(disjuncts));
    }
    case Schema::e_for_d:
      return conj(iff(D({}, s.x), D(s.x, {})), iff(D(s.x, {}), bot()));
    case Schema::four_for_dg:
      return implies(dep_g(s.x, s.y), all(dep_g(s.x, s.y)));
    case Schema::empty_set:
      return iff(D({}, s.x), bot());
    case Schema::symmetry:
      return iff(D(s.x, s.y), D(s.y, s.x));
    case Schema::weakening:
      if (!s.x.subset_of(s.x_prime))
        throw SideConditionError("Weakening requires X to be a subset of X'");
      return implies(D(s.x, s.y), D(s.x_prime, s.y));
    case Schema::separation:
      return iff(D(s.x, s.y), disj(D(s.x - s.y, s.y), D(s.x & s.y, s.y)));
    case Schema::dg_definability:
      return iff(dep_g(s.x, s.y), neg(all(neg(dep_l(s.x, s.y)))));
  }
  throw SideConditionError("unknown schema");
}

std::vector<SchemaInstance> sample_instances(const KripkeModel& m, std::uint64_t seed,
                                             std::size_t per_schema) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const VarSet vars = m.named_variables();
  constexpr std::size_t kDepth = 2;
  constexpr std::size_t kVarset = 3;

  std::vector<SchemaInstance> out;
  for (Schema schema : all_schemas()) {
    std::vector<DepKind> kinds{DepKind::global};
    if (schema_is_kind_generic(schema)) kinds.push_back(DepKind::local);
    for (DepKind kind : kinds)
      for (std::size_t i = 0; i < per_schema; ++i) {
        SchemaInstance inst;
        inst.schema = schema;
        inst.kind = kind;
        switch (schema) {
          case Schema::k_dist:
          case Schema::a_dist:
            inst.formulas.push_back(random_formula(rng, m, kDepth, kVarset));
            [[fallthrough]];
          case Schema::k_t: case Schema::k_4: case Schema::k_5:
          case Schema::a_t: case Schema::a_4: case Schema::a_5:
            inst.formulas.push_back(random_formula(rng, m, kDepth, kVarset));
            break;
          case Schema::q_for_d:
            if (vars.empty()) continue;
            inst.x = random_varset(rng, vars, kVarset, true);
            inst.y = random_varset(rng, vars, kVarset, true);
            break;
          case Schema::weakening:
            inst.x = random_varset(rng, vars, kVarset, false);
            inst.y = random_varset(rng, vars, kVarset, false);
            inst.x_prime = inst.x | random_varset(rng, vars, kVarset, false);
            break;
          default:
            inst.x = random_varset(rng, vars, kVarset, false);
            inst.y = random_varset(rng, vars, kVarset, false);
            break;
        }
        out.push_back(std::move(inst));
      }
  }
  return out;
}

// --- suite -------------------------------------------------------------------

namespace {

// The instance itself plus every D atom inside it. A wrong dependency clause
// can leave a whole instance valid while its atoms still disagree.
void cross_checked(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::dep) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return;
  }
  if (f.kind() == Formula::Kind::top || f.kind() == Formula::Kind::prop) return;
  cross_checked(f.left(), out);
  if (f.kind() == Formula::Kind::conj) cross_checked(f.right(), out);
}

}  // namespace

std::size_t SoundnessReport::count(Counterexample::Kind k) const {
  return std::count_if(counterexamples.begin(), counterexamples.end(),
                       [&](const Counterexample& c) { return c.kind == k; });
}

SoundnessReport soundness_suite(const GenParams& params, std::size_t trials,
                                const SoundnessOptions& options) {
  if (trials == 0) throw std::invalid_argument("soundness_suite: trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  SoundnessReport report;
  std::set<std::string> labels;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    GenParams p = params;
    p.seed = params.seed + trial;
    const KripkeModel m = random_model(p);
    const Evaluator tested = options.oracle ? Evaluator(m, options.oracle)
                                            : Evaluator(m, Route::direct);
    const Evaluator reference(m, Route::evidence);

    for (const SchemaInstance& inst : sample_instances(m, p.seed, options.per_schema)) {
      const Formula f = instantiate(inst);
      const std::string label = inst.label();
      labels.insert(label);
      ++report.instances;

      const auto got = tested.truth_table(f);
      for (World w = 0; w < m.world_count(); ++w)
        if (!got[w]) {
          report.counterexamples.push_back({p.seed, label, render(f), m.world_name(w),
                                            Counterexample::Kind::invalid});
          break;
        }

      std::vector<Formula> checked{f};
      cross_checked(f, checked);
      bool disagreed = false;
      for (const Formula& g : checked) {
        const auto a = g == f ? got : tested.truth_table(g);
        const auto b = reference.truth_table(g);
        for (World w = 0; w < m.world_count() && !disagreed; ++w)
          if (a[w] != b[w]) {
            report.counterexamples.push_back({p.seed, label, render(f), m.world_name(w),
                                              Counterexample::Kind::route_disagreement});
            disagreed = true;
          }
        if (disagreed) break;
      }
    }
    report.trials++;
  }
  report.schemas = labels.size();
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

namespace {

std::string_view kind_name(Counterexample::Kind k) {
  return k == Counterexample::Kind::invalid ? "invalid" : "route-disagreement";
}

}  // namespace

std::string format_report(const SoundnessReport& r) {
  std::string out;
  for (const auto& c : r.counterexamples) {
    out += "counterexample seed=" + std::to_string(c.seed) + " schema=" + c.schema +
           " world=" + c.world + " kind=" + std::string(kind_name(c.kind)) + " instance=" +
           nlohmann::json(c.instance).dump() + "\n";
  }
  out += "summary trials=" + std::to_string(r.trials) + " schemas=" + std::to_string(r.schemas) +
         " instances=" + std::to_string(r.instances) +
         " counterexamples=" + std::to_string(r.counterexamples.size()) +
         " elapsed_ms=" + std::to_string(r.elapsed.count()) + "\n";
  return out;
}

std::string report_json(const SoundnessReport& r) {
  nlohmann::json j;
  j["trials"] = r.trials;
  j["schemas"] = r.schemas;
  j["instances"] = r.instances;
  j["elapsed_ms"] = r.elapsed.count();
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : r.counterexamples)
    j["counterexamples"].push_back({{"seed", c.seed},
                                    {"schema", c.schema},
                                    {"instance", c.instance},
                                    {"world", c.world},
                                    {"kind", kind_name(c.kind)}});
  return j.dump(2);
}

}  // namespace edl
