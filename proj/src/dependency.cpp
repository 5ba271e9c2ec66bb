#include "edl/dependency.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace edl {

EvidenceFamily::EvidenceFamily(std::set<VarSet> members) : members_(std::move(members)) {
  for (const auto& w : members_)
    if (w.empty()) throw std::invalid_argument("evidence family member is empty");
}

EvidenceFamily::EvidenceFamily(std::initializer_list<VarSet> members)
    : EvidenceFamily(std::set<VarSet>(members)) {}

VarSet EvidenceFamily::support() const {
  VarSet out;
  for (const auto& w : members_) out = out | w;
  return out;
}

std::string EvidenceFamily::str() const {
  std::vector<VarSet> sorted(members_.begin(), members_.end());
  std::sort(sorted.begin(), sorted.end(), BySizeThenLex{});
  std::string out = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out += ',';
    out += sorted[i].str();
  }
  return out + "}";
}

bool is_evidence(const VarSet& w, const VarSet& x, const VarSet& y) {
  return w.intersects(x) && w.intersects(y) && w.subset_of(x | y);
}

EvidenceFamily p_family(const KripkeModel& m, World s, DepKind kind) {
  std::set<VarSet> out;
  const auto& cls = m.nomic_class(s);
  if (kind == DepKind::local) {
    for (World t : cls) {
      VarSet d = delta(m, t, s);
      if (!d.empty()) out.insert(std::move(d));
    }
  } else {
    for (World u : cls)
      for (World v : cls) {
        if (v <= u) continue;  // delta is symmetric and delta(u,u) is empty
        VarSet d = delta(m, u, v);
        if (!d.empty()) out.insert(std::move(d));
      }
  }
  return EvidenceFamily(std::move(out));
}

std::vector<VarSet> sigma(const EvidenceFamily& p, const VarSet& w) {
  std::vector<VarSet> out;
  for (const auto& m : p)
    if (m.subset_of(w)) out.push_back(m);
  return out;
}

std::string_view method_name(GenerativeMethod m) {
  switch (m) {
    case GenerativeMethod::cuts: return "cuts";
    case GenerativeMethod::partition: return "partition";
    case GenerativeMethod::graph: return "graph";
  }
  return "?";
}

namespace {

bool covers(const std::vector<VarSet>& sig, const VarSet& w) {
  VarSet u;
  for (const auto& s : sig) u = u | s;
  return u == w;
}

bool by_cuts(const EvidenceFamily& p, const VarSet& w) {
  if (w.size() == 1) return p.contains(w);
  for (const VarSet& z : subsets_of(w, false, false)) {
    const VarSet rest = w - z;
    bool found = false;
    for (const auto& m : p)
      if (is_evidence(m, z, rest)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool by_partition(const EvidenceFamily& p, const VarSet& w) {
  const auto sig = sigma(p, w);
  if (!covers(sig, w)) return false;
  const std::size_t n = sig.size();
  if (n >= 31) throw std::length_error("is_generative: sigma too large for partition form");
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t gamma = 1; gamma < full; ++gamma) {
    VarSet in, out;
    for (std::size_t i = 0; i < n; ++i) {
      if (gamma & (1u << i)) in = in | sig[i];
      else out = out | sig[i];
    }
    if (!in.intersects(out)) return false;
  }
  return true;
}

bool by_graph(const EvidenceFamily& p, const VarSet& w) {
  const auto sig = sigma(p, w);
  if (!covers(sig, w)) return false;
  const std::size_t n = sig.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && sig[i].intersects(sig[j])) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
  }
  return reached == n;
}

}  // namespace

bool is_generative(const EvidenceFamily& p, const VarSet& w, GenerativeMethod method) {
  if (w.empty()) throw std::invalid_argument("is_generative: empty variable set");
  switch (method) {
    case GenerativeMethod::cuts: return by_cuts(p, w);
    case GenerativeMethod::partition: return by_partition(p, w);
    case GenerativeMethod::graph: return by_graph(p, w);
  }
  return false;
}

EvidenceFamily generative_family(const EvidenceFamily& p) {
  // Closure of p under unions of intersecting pairs, computed on bitmasks over
  // the support. Adding members one at a time along a spanning tree shows the
  // closure is exactly the set of unions of connected sub-collections.
  const VarSet support = p.support();
  const auto& names = support.names();
  if (names.size() > 64)
    throw std::length_error("generative_family: support exceeds 64 variables");
  auto mask_of = [&](const VarSet& w) {
    std::uint64_t mask = 0;
    for (const auto& v : w) {
      auto it = std::lower_bound(names.begin(), names.end(), v);
      mask |= std::uint64_t{1} << (it - names.begin());
    }
    return mask;
  };

  std::vector<std::uint64_t> family;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& w : p) {
    const auto m = mask_of(w);
    if (seen.insert(m).second) family.push_back(m);
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if ((family[i] & family[j]) == 0) continue;
      const auto u = family[i] | family[j];
      if (seen.insert(u).second) family.push_back(u);
    }

  std::set<VarSet> out;
  for (const auto m : family) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (m & (std::uint64_t{1} << i)) members.push_back(names[i]);
    out.emplace(std::move(members));
  }
  return EvidenceFamily(std::move(out));
}

bool evidence_eval_d(const KripkeModel& m, World s, DepKind kind, const VarSet& x,
                     const VarSet& y) {
  for (const VarSet* side : {&x, &y})
    for (const auto& v : *side)
      if (!m.is_named_variable(v))
        throw ModelError(ModelError::Code::unknown_name, "unknown variable '" + v + "'");
  return has_evidence(p_family(m, s, kind), x, y);
}

bool has_evidence(const EvidenceFamily& p, const VarSet& x, const VarSet& y) {
  return std::any_of(p.begin(), p.end(),
                     [&](const VarSet& w) { return is_evidence(w, x, y); });
}

}  // namespace edl
