#include "edl/bisim.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <tuple>

#include "edl/semantics.hpp"

namespace edl {

std::vector<DependencyProfile> dependency_profiles(const KripkeModel& m) {
  std::vector<DependencyProfile> out;
  out.reserve(m.world_count());
  for (World s = 0; s < m.world_count(); ++s)
    out.push_back({generative_family(p_family(m, s, DepKind::global)),
                   generative_family(p_family(m, s, DepKind::local))});
  return out;
}

bool same_signature(const KripkeModel& m, const KripkeModel& m2) {
  auto props = [](const KripkeModel& k) {
    return std::set<std::string>(k.propositions().begin(), k.propositions().end());
  };
  return props(m) == props(m2) && m.named_variables() == m2.named_variables();
}

namespace {

// Truth of every proposition, listed in sorted-name order.
std::vector<bool> prop_row(const KripkeModel& m, World s) {
  std::vector<std::string> names = m.propositions();
  std::sort(names.begin(), names.end());
  std::vector<bool> row;
  for (const auto& p : names) row.push_back(m.truth(s, *m.proposition_index(p)));
  return row;
}

class PairCheck {
 public:
  PairCheck(const KripkeModel& m, const KripkeModel& m2)
      : m_(m), m2_(m2), signature_(same_signature(m, m2)) {
    if (!signature_) return;
    prof_ = dependency_profiles(m);
    prof2_ = dependency_profiles(m2);
    for (World s = 0; s < m.world_count(); ++s) rows_.push_back(prop_row(m, s));
    for (World s = 0; s < m2.world_count(); ++s) rows2_.push_back(prop_row(m2, s));
  }

  bool base(World s, World s2) const {
    return signature_ && rows_[s] == rows2_[s2] && prof_[s] == prof2_[s2];
  }

  // Zig and zag for ~i and ~ against relation b.
  bool transfer(World s, World s2, const BisimRelation& b) const {
    for (bool epistemic : {true, false}) {
      const auto& c = epistemic ? m_.epistemic_class(s) : m_.nomic_class(s);
      const auto& c2 = epistemic ? m2_.epistemic_class(s2) : m2_.nomic_class(s2);
      for (World t : c)
        if (std::none_of(c2.begin(), c2.end(), [&](World t2) { return b.contains(t, t2); }))
          return false;
      for (World t2 : c2)
        if (std::none_of(c.begin(), c.end(), [&](World t) { return b.contains(t, t2); }))
          return false;
    }
    return true;
  }

 private:
  const KripkeModel& m_;
  const KripkeModel& m2_;
  bool signature_;
  std::vector<DependencyProfile> prof_, prof2_;
  std::vector<std::vector<bool>> rows_, rows2_;
};

}  // namespace

bool check_bisimulation(const KripkeModel& m, const KripkeModel& m2, const BisimRelation& b) {
  for (const auto& [s, s2] : b) {
    m.check_world(s);
    m2.check_world(s2);
  }
  if (b.empty()) return false;
  const PairCheck check(m, m2);
  for (const auto& [s, s2] : b)
    if (!check.base(s, s2) || !check.transfer(s, s2, b)) return false;
  return true;
}

BisimRelation greatest_bisimulation(const KripkeModel& m, const KripkeModel& m2) {
  const PairCheck check(m, m2);
  BisimRelation b;
  for (World s = 0; s < m.world_count(); ++s)
    for (World s2 = 0; s2 < m2.world_count(); ++s2)
      if (check.base(s, s2)) b.insert(s, s2);

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<BisimRelation::Pair> doomed;
    for (const auto& [s, s2] : b)
      if (!check.transfer(s, s2, b)) doomed.emplace_back(s, s2);
    for (const auto& [s, s2] : doomed) b.erase(s, s2);
    changed = !doomed.empty();
  }
  return b;
}

bool are_bisimilar(const PointedModel& a, const PointedModel& b) {
  a.model.check_world(a.point);
  b.model.check_world(b.point);
  return greatest_bisimulation(a.model, b.model).contains(a.point, b.point);
}

// --- distinguishing formulas -------------------------------------------------

namespace {

// Disjoint union of the two models; worlds of the second are offset by n1.
class Refinement {
 public:
  Refinement(const KripkeModel& m, const KripkeModel& m2) : n1_(m.world_count()) {
    models_[0] = &m;
    models_[1] = &m2;
    for (int side = 0; side < 2; ++side) {
      const KripkeModel& k = *models_[side];
      auto prof = dependency_profiles(k);
      std::vector<std::string> props = k.propositions();
      std::sort(props.begin(), props.end());
      props_ = props;
      for (World s = 0; s < k.world_count(); ++s) {
        profiles_.push_back(prof[s]);
        pfam_.push_back({p_family(k, s, DepKind::global), p_family(k, s, DepKind::local)});
        rows_.push_back(prop_row(k, s));
      }
    }

    std::map<std::pair<std::vector<bool>, std::pair<std::string, std::string>>, std::size_t> ids;
    std::vector<std::size_t> blocks;
    for (std::size_t w = 0; w < size(); ++w) {
      auto key = std::make_pair(rows_[w], std::make_pair(profiles_[w].global.str(),
                                                         profiles_[w].local.str()));
      blocks.push_back(ids.emplace(key, ids.size()).first->second);
    }
    rounds_.push_back(std::move(blocks));

    for (;;) {
      const auto& prev = rounds_.back();
      std::map<std::tuple<std::size_t, std::set<std::size_t>, std::set<std::size_t>>,
               std::size_t>
          next_ids;
      std::vector<std::size_t> next;
      for (std::size_t w = 0; w < size(); ++w) {
        std::set<std::size_t> kb, ab;
        for (std::size_t t : cls(w, true)) kb.insert(prev[t]);
        for (std::size_t t : cls(w, false)) ab.insert(prev[t]);
        auto key = std::make_tuple(prev[w], std::move(kb), std::move(ab));
        next.push_back(next_ids.emplace(std::move(key), next_ids.size()).first->second);
      }
      const std::size_t before = ids_in(prev);
      const std::size_t after = next_ids.size();
      if (after == before) break;
      rounds_.push_back(std::move(next));
    }
  }

  std::size_t size() const { return rows_.size(); }

  // First round at which u and v fall in different blocks.
  std::optional<std::size_t> separation(std::size_t u, std::size_t v) const {
    for (std::size_t r = 0; r < rounds_.size(); ++r)
      if (rounds_[r][u] != rounds_[r][v]) return r;
    return std::nullopt;
  }

  // True at u, false at v. Requires u and v to be separated.
  Formula distinguish(std::size_t u, std::size_t v) {
    auto key = std::make_pair(u, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::size_t r = *separation(u, v);
    Formula f = r == 0 ? base_formula(u, v) : modal_formula(u, v, r);
    memo_.emplace(key, f);
    return f;
  }

 private:
  static std::size_t ids_in(const std::vector<std::size_t>& blocks) {
    return std::set<std::size_t>(blocks.begin(), blocks.end()).size();
  }

  std::vector<std::size_t> cls(std::size_t w, bool epistemic) const {
    const int side = w < n1_ ? 0 : 1;
    const std::size_t off = side == 0 ? 0 : n1_;
    const KripkeModel& k = *models_[side];
    const auto& c = epistemic ? k.epistemic_class(w - off) : k.nomic_class(w - off);
    std::vector<std::size_t> out;
    for (World t : c) out.push_back(t + off);
    return out;
  }

  Formula base_formula(std::size_t u, std::size_t v) const {
    for (std::size_t i = 0; i < props_.size(); ++i)
      if (rows_[u][i] != rows_[v][i]) {
        Formula p = Formula::prop(props_[i]);
        return rows_[u][i] ? p : neg(p);
      }
    for (DepKind kind : {DepKind::global, DepKind::local}) {
      const auto& gu = kind == DepKind::global ? profiles_[u].global : profiles_[u].local;
      const auto& gv = kind == DepKind::global ? profiles_[v].global : profiles_[v].local;
      const int k = kind == DepKind::global ? 0 : 1;
      for (const VarSet& w : gu)
        if (!gv.contains(w)) return cut_atom(kind, w, pfam_[v][k]);
      for (const VarSet& w : gv)
        if (!gu.contains(w)) return neg(cut_atom(kind, w, pfam_[u][k]));
    }
    throw std::logic_error("base blocks differ but no base distinction found");
  }

  // w is generative on one side but not from `other`. Returns an atom that
  // holds on the generative side and fails against `other`.
  static Formula cut_atom(DepKind kind, const VarSet& w, const EvidenceFamily& other) {
    if (w.size() == 1) return Formula::dep(kind, w, w);
    for (const VarSet& z : subsets_of(w, false, false))
      if (!has_evidence(other, z, w - z)) return Formula::dep(kind, z, w - z);
    throw std::logic_error("generative set has no failing cut");
  }

  Formula modal_formula(std::size_t u, std::size_t v, std::size_t r) {
    const auto& prev = rounds_[r - 1];
    for (bool epistemic : {true, false}) {
      const auto cu = cls(u, epistemic);
      const auto cv = cls(v, epistemic);
      auto box = [&](Formula f) { return epistemic ? know(std::move(f)) : all(std::move(f)); };
      auto unmatched = [&](std::size_t t, const std::vector<std::size_t>& others) {
        return std::none_of(others.begin(), others.end(),
                            [&](std::size_t o) { return prev[o] == prev[t]; });
      };
      for (std::size_t t : cu)
        if (unmatched(t, cv)) {
          // Some successor of u matches nothing reachable from v: <M> phi.
          std::vector<Formula> parts;
          for (std::size_t o : cv) push_unique(parts, distinguish(t, o));
          return neg(box(neg(conj_all(parts))));
        }
      for (std::size_t t : cv)
        if (unmatched(t, cu)) {
          // Some successor of v matches nothing reachable from u: [M] !psi.
          std::vector<Formula> parts;
          for (std::size_t o : cu) push_unique(parts, distinguish(t, o));
          return box(neg(conj_all(parts)));
        }
    }
    throw std::logic_error("points separated without a modal witness");
  }

  static void push_unique(std::vector<Formula>& parts, Formula f) {
    if (std::find(parts.begin(), parts.end(), f) == parts.end()) parts.push_back(std::move(f));
  }

  std::size_t n1_;
  const KripkeModel* models_[2];
  std::vector<std::string> props_;
  std::vector<DependencyProfile> profiles_;
  std::vector<std::array<EvidenceFamily, 2>> pfam_;
  std::vector<std::vector<bool>> rows_;
  std::vector<std::vector<std::size_t>> rounds_;
  std::map<std::pair<std::size_t, std::size_t>, Formula> memo_;
};

}  // namespace

std::optional<Formula> find_distinguishing_formula(const PointedModel& a,
                                                   const PointedModel& b,
                                                   std::size_t depth) {
  a.model.check_world(a.point);
  b.model.check_world(b.point);
  if (!same_signature(a.model, b.model))
    throw std::invalid_argument("models have different signatures");

  Refinement ref(a.model, b.model);
  const std::size_t u = a.point;
  const std::size_t v = a.model.world_count() + b.point;
  const auto r = ref.separation(u, v);
  if (!r || *r > depth) return std::nullopt;

  Formula f = ref.distinguish(u, v);
  if (!eval(a.model, a.point, f) || eval(b.model, b.point, f))
    throw std::logic_error("constructed formula does not distinguish the points: " + render(f));
  return f;
}

}  // namespace edl
