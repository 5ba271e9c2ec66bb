// Brute-force reference implementations used only by the tests. They follow
// the definitions literally and share no code with the library beyond the
// data types.

#ifndef EDL_TESTS_ORACLES_HPP
#define EDL_TESTS_ORACLES_HPP

#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "edl/bisim.hpp"
#include "edl/dependency.hpp"
#include "edl/formula.hpp"
#include "edl/harness.hpp"
#include "edl/model.hpp"
#include "edl/semantics.hpp"

namespace oracle {

using namespace edl;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(EDL_FIXTURE_DIR) / (name + ".edl");
}

inline KripkeModel load_fixture(const std::string& name) {
  return load_model_file(fixture(name));
}

// Every subset of w, including the empty set and w itself, in no particular order.
inline std::vector<VarSet> power_set(const VarSet& w) {
  std::vector<VarSet> out{VarSet{}};
  for (const auto& v : w) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].with(v));
  }
  return out;
}

inline std::vector<VarSet> nonempty_subsets(const VarSet& w) {
  std::vector<VarSet> out;
  for (auto& s : power_set(w))
    if (!s.empty()) out.push_back(std::move(s));
  return out;
}

inline bool evidence(const VarSet& w, const VarSet& x, const VarSet& y) {
  return w.intersects(x) && w.intersects(y) && w.subset_of(x | y);
}

// Literal reading of the D clause: look up each variable by name.
inline bool dep_by_definition(const KripkeModel& m, World s, DepKind kind, const VarSet& x,
                              const VarSet& y) {
  const VarSet xy = x | y;
  auto ok = [&](World u, World v) {
    for (const auto& var : m.variables())
      if (!xy.contains(var.name)) {
        const auto i = *m.variable_index(var.name);
        if (m.value(u, i) != m.value(v, i)) return false;
      }
    auto differs = [&](const VarSet& z) {
      for (const auto& name : z) {
        const auto i = *m.variable_index(name);
        if (m.value(u, i) != m.value(v, i)) return true;
      }
      return false;
    };
    return differs(x) && differs(y);
  };
  for (World u = 0; u < m.world_count(); ++u) {
    if (m.nomic_cell(u) != m.nomic_cell(s)) continue;
    if (kind == DepKind::local) {
      if (ok(u, s)) return true;
      continue;
    }
    for (World v = 0; v < m.world_count(); ++v)
      if (m.nomic_cell(v) == m.nomic_cell(s) && ok(u, v)) return true;
  }
  return false;
}

// The definition of generativity with the quantification over X, Y cut down
// to pairs with X u Y = w.
inline bool generative_by_cuts(const EvidenceFamily& p, const VarSet& w) {
  const auto subs = nonempty_subsets(w);
  for (const VarSet& x : subs)
    for (const VarSet& y : subs) {
      if ((x | y) != w) continue;
      bool found = false;
      for (const VarSet& member : p)
        if (evidence(member, x, y)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

// Unions of all nonempty sub-collections whose intersection graph is connected.
inline std::set<VarSet> connected_unions(const EvidenceFamily& p) {
  const std::vector<VarSet> members(p.begin(), p.end());
  const std::size_t n = members.size();
  std::set<VarSet> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) picked.push_back(i);
    std::vector<bool> seen(picked.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < picked.size(); ++b)
        if (!seen[b] && members[picked[a]].intersects(members[picked[b]])) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) continue;
    VarSet u;
    for (std::size_t i : picked) u = u | members[i];
    out.insert(u);
  }
  return out;
}

inline EvidenceFamily random_family(std::mt19937_64& rng, const VarSet& universe,
                                    std::size_t max_members) {
  const auto subs = nonempty_subsets(universe);
  std::set<VarSet> members;
  const std::size_t k = rng() % (max_members + 1);
  for (std::size_t i = 0; i < k && !subs.empty(); ++i) members.insert(subs[rng() % subs.size()]);
  return EvidenceFamily(std::move(members));
}

inline VarSet names(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return VarSet(std::move(out));
}

// Copy of m in which the worlds picked by `dup` get a twin sharing their
// valuation and both of their cells.
inline KripkeModel inflate(const KripkeModel& m, const std::function<bool(World)>& dup) {
  ModelData d = m.data();
  const std::size_t n = d.worlds.size();
  auto twin = [](const std::string& id) { return id + "_twin"; };
  for (World w = 0; w < n; ++w) {
    if (!dup(w)) continue;
    WorldData copy = d.worlds[w];
    copy.id = twin(copy.id);
    d.worlds.push_back(copy);
    const std::string id = d.worlds[w].id;
    for (auto* part : {&d.epistemic_partition, &d.nomic_partition})
      for (auto& cell : *part)
        if (std::find(cell.begin(), cell.end(), id) != cell.end()) cell.push_back(twin(id));
  }
  return KripkeModel(std::move(d));
}

// Atoms over every ordered pair of the given sets, both kinds.
inline std::vector<Formula> dep_atoms(const std::vector<VarSet>& sets) {
  std::vector<Formula> out;
  for (DepKind k : {DepKind::global, DepKind::local})
    for (const auto& x : sets)
      for (const auto& y : sets) out.push_back(Formula::dep(k, x, y));
  return out;
}

}  // namespace oracle

#endif  // EDL_TESTS_ORACLES_HPP
