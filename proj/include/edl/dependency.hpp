// Evidence sets, the P(s) families and generative sets.
//
// A set W is an evidence of <X,Y> when it meets X, meets Y and lies inside
// X u Y. D(X,Y) holds at s exactly when some member of P(s) is an evidence of
// <X,Y>, so P(s) (and its generative closure) fully determines the truth of
// dependency atoms at s.

#ifndef EDL_DEPENDENCY_HPP
#define EDL_DEPENDENCY_HPP

#include <set>
#include <vector>

#include "edl/formula.hpp"
#include "edl/model.hpp"
#include "edl/varset.hpp"

namespace edl {

// A finite family of nonempty variable sets.
class EvidenceFamily {
 public:
  EvidenceFamily() = default;
  // Throws std::invalid_argument if a member is empty.
  explicit EvidenceFamily(std::set<VarSet> members);
  EvidenceFamily(std::initializer_list<VarSet> members);

  const std::set<VarSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const VarSet& w) const { return members_.count(w) > 0; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  // Union of all members.
  VarSet support() const;

  std::string str() const;

  friend bool operator==(const EvidenceFamily&, const EvidenceFamily&) = default;

 private:
  std::set<VarSet> members_;
};

bool is_evidence(const VarSet& w, const VarSet& x, const VarSet& y);

// P_g(s): nonempty delta(u,v) for u, v in the nomic class of s.
// P_l(s): nonempty delta(t,s) for t in the nomic class of s.
EvidenceFamily p_family(const KripkeModel& m, World s, DepKind kind);

// Members of p contained in w.
std::vector<VarSet> sigma(const EvidenceFamily& p, const VarSet& w);

enum class GenerativeMethod {
  cuts,       // |W|=1: W in P; otherwise every cut <Z, W\Z> has an evidence in P
  partition,  // union of sigma is W and no proper split of sigma is disjoint
  graph,      // union of sigma is W and the intersection graph of sigma is connected
};

std::string_view method_name(GenerativeMethod m);

// Throws std::invalid_argument for an empty w.
bool is_generative(const EvidenceFamily& p, const VarSet& w, GenerativeMethod method);

// All sets generative from p: the unions of connected sub-collections of p.
EvidenceFamily generative_family(const EvidenceFamily& p);

// Some member of p is an evidence of <x,y>.
bool has_evidence(const EvidenceFamily& p, const VarSet& x, const VarSet& y);

// Some member of P(s) of the given kind is an evidence of <x,y>.
bool evidence_eval_d(const KripkeModel& m, World s, DepKind kind, const VarSet& x,
                     const VarSet& y);

}  // namespace edl

#endif  // EDL_DEPENDENCY_HPP
