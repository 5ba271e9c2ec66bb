#include "edl/semantics.hpp"

#include <algorithm>

#include "edl/dependency.hpp"

namespace edl {

std::string_view route_name(Route r) {
  return r == Route::direct ? "direct" : "evidence";
}

bool direct_dep(const KripkeModel& m, World s, DepKind kind, const VarSet& x,
                const VarSet& y) {
  m.check_world(s);
  const std::size_t n = m.variables().size();
  // 0: outside X u Y, 1: in X only, 2: in Y only, 3: in both.
  std::vector<unsigned char> role(n, 0);
  for (const auto& v : x) {
    auto i = m.variable_index(v);
    if (!i || m.variables()[*i].hidden) throw EvalError("unknown variable '" + v + "'");
    role[*i] |= 1;
  }
  for (const auto& v : y) {
    auto i = m.variable_index(v);
    if (!i || m.variables()[*i].hidden) throw EvalError("unknown variable '" + v + "'");
    role[*i] |= 2;
  }

  auto witness = [&](World u, World v) {
    bool dx = false, dy = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.value(u, i) == m.value(v, i)) continue;
      if (role[i] == 0) return false;
      if (role[i] & 1) dx = true;
      if (role[i] & 2) dy = true;
    }
    return dx && dy;
  };

  const auto& cls = m.nomic_class(s);
  if (kind == DepKind::local)
    return std::any_of(cls.begin(), cls.end(), [&](World t) { return witness(t, s); });
  for (World u : cls)
    for (World v : cls)
      if (witness(u, v)) return true;
  return false;
}

DepOracle oracle_for(Route r) {
  if (r == Route::direct) return direct_dep;
  return evidence_eval_d;
}

void check_names(const KripkeModel& m, const Formula& f) {
  for (const auto& p : f.propositions())
    if (!m.proposition_index(p)) throw EvalError("undeclared proposition '" + p + "'");
  for (const auto& v : f.variables()) {
    if (!m.variable_index(v)) throw EvalError("undeclared variable '" + v + "'");
    if (!m.is_named_variable(v))
      throw EvalError("variable '" + v + "' is hidden and cannot occur in formulas");
  }
}

Evaluator::Evaluator(const KripkeModel& m, Route route) : model_(m), route_(route) {
  for (auto& memo : memo_) memo.resize(m.world_count());
}

Evaluator::Evaluator(const KripkeModel& m, DepOracle oracle)
    : model_(m), route_(Route::direct), oracle_(std::move(oracle)) {
  for (auto& memo : memo_) memo.resize(m.world_count());
}

const EvidenceFamily& Evaluator::family(World s, DepKind kind) const {
  model_.check_world(s);
  auto& memo = memo_[kind == DepKind::global ? 0 : 1];
  std::lock_guard lock(memo_mutex_);
  if (!memo[s]) memo[s] = p_family(model_, s, kind);
  return *memo[s];
}

bool Evaluator::dep(World s, DepKind kind, const VarSet& x, const VarSet& y) const {
  if (oracle_) return oracle_(model_, s, kind, x, y);
  if (route_ == Route::direct) return direct_dep(model_, s, kind, x, y);
  return has_evidence(family(s, kind), x, y);
}

std::vector<bool> Evaluator::table(const Formula& f) const {
  const KripkeModel& m = model_;
  const std::size_t n = m.world_count();
  std::vector<bool> out(n);
  switch (f.kind()) {
    case Formula::Kind::top:
      out.assign(n, true);
      break;
    case Formula::Kind::prop: {
      const std::size_t p = *m.proposition_index(f.name());
      for (World w = 0; w < n; ++w) out[w] = m.truth(w, p);
      break;
    }
    case Formula::Kind::neg: {
      out = table(f.child());
      out.flip();
      break;
    }
    case Formula::Kind::conj: {
      out = table(f.left());
      const auto rhs = table(f.right());
      for (World w = 0; w < n; ++w) out[w] = out[w] && rhs[w];
      break;
    }
    case Formula::Kind::know:
    case Formula::Kind::all: {
      const auto inner = table(f.child());
      const auto& cells = f.kind() == Formula::Kind::know ? m.epistemic_partition()
                                                          : m.nomic_partition();
      for (const auto& cell : cells) {
        const bool holds =
            std::all_of(cell.begin(), cell.end(), [&](World t) { return inner[t]; });
        for (World w : cell) out[w] = holds;
      }
      break;
    }
    case Formula::Kind::dep:
      for (World w = 0; w < n; ++w) out[w] = dep(w, f.dep_kind(), f.lhs(), f.rhs());
      break;
  }
  return out;
}

std::vector<bool> Evaluator::truth_table(const Formula& f) const {
  check_names(model_, f);
  return table(f);
}

bool Evaluator::eval(World s, const Formula& f) const {
  model_.check_world(s);
  return truth_table(f)[s];
}

std::vector<bool> truth_table(const KripkeModel& m, const Formula& f, const DepOracle& dep) {
  return Evaluator(m, dep).truth_table(f);
}

std::vector<bool> truth_table(const KripkeModel& m, const Formula& f, Route route) {
  return Evaluator(m, route).truth_table(f);
}

bool eval(const KripkeModel& m, World s, const Formula& f, Route route) {
  m.check_world(s);
  return truth_table(m, f, route)[s];
}

bool eval_evidence(const KripkeModel& m, World s, const Formula& f) {
  return eval(m, s, f, Route::evidence);
}

Verdict verdict(const KripkeModel& m, World s, const Formula& f, Route route) {
  return {eval(m, s, f, route), route};
}

std::vector<World> extension(const KripkeModel& m, const Formula& f, Route route) {
  const auto t = truth_table(m, f, route);
  std::vector<World> out;
  for (World w = 0; w < t.size(); ++w)
    if (t[w]) out.push_back(w);
  return out;
}

bool valid_on_model(const KripkeModel& m, const Formula& f, Route route) {
  const auto t = truth_table(m, f, route);
  return std::all_of(t.begin(), t.end(), [](bool b) { return b; });
}

}  // namespace edl
