// Bisimulation between finite models.

#ifndef EDL_BISIM_HPP
#define EDL_BISIM_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "edl/dependency.hpp"
#include "edl/formula.hpp"
#include "edl/model.hpp"

namespace edl {

// Pairs (world of M, world of M').
class BisimRelation {
 public:
  using Pair = std::pair<World, World>;

  BisimRelation() = default;
  BisimRelation(std::initializer_list<Pair> pairs) : pairs_(pairs) {}

  void insert(World s, World s2) { pairs_.emplace(s, s2); }
  void erase(World s, World s2) { pairs_.erase({s, s2}); }
  bool contains(World s, World s2) const { return pairs_.count({s, s2}) > 0; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::set<Pair> pairs_;
};

// The generative families G_g(s) and G_l(s) of one world.
struct DependencyProfile {
  EvidenceFamily global;
  EvidenceFamily local;
  friend bool operator==(const DependencyProfile&, const DependencyProfile&) = default;
};

std::vector<DependencyProfile> dependency_profiles(const KripkeModel& m);

// Models are comparable only when they declare the same propositions and the
// same named variables.
bool same_signature(const KripkeModel& m, const KripkeModel& m2);

// Nonempty, and every pair agrees on propositions, G_g and G_l, and satisfies
// zig and zag for both relations. Throws ModelError for out-of-range worlds.
bool check_bisimulation(const KripkeModel& m, const KripkeModel& m2, const BisimRelation& b);

// Largest relation meeting the pair conditions; empty when none exists.
BisimRelation greatest_bisimulation(const KripkeModel& m, const KripkeModel& m2);

bool are_bisimilar(const PointedModel& a, const PointedModel& b);

// A formula of modal depth <= depth true at `a` and false at `b`, or nothing
// if the points agree on every formula of that depth. Built from partition
// refinement over the disjoint union: the formula's depth equals the round at
// which the two points were first separated. Throws std::invalid_argument on
// a signature mismatch.
std::optional<Formula> find_distinguishing_formula(const PointedModel& a,
                                                   const PointedModel& b,
                                                   std::size_t depth);

}  // namespace edl

#endif  // EDL_BISIM_HPP
