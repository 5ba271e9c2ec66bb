// Truth of formulas at pointed models.
//
// Two routes compute dependency atoms: `direct` follows the defining clause
// (search the nomic class for a witnessing pair), `evidence` searches P(s) for
// an evidence set. The routes must agree everywhere; each serves as the other's
// oracle. Everything else (booleans, K, A) is shared.

#ifndef EDL_SEMANTICS_HPP
#define EDL_SEMANTICS_HPP

#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edl/dependency.hpp"
#include "edl/formula.hpp"
#include "edl/model.hpp"

namespace edl {

enum class Route { direct, evidence };

std::string_view route_name(Route r);

struct Verdict {
  bool value;
  Route route;
};

// Raised when a formula names a proposition or variable the model lacks.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decides a single D(X,Y) atom at world s.
using DepOracle =
    std::function<bool(const KripkeModel&, World, DepKind, const VarSet&, const VarSet&)>;

// Dg: some u, v in the nomic class of s agree outside X u Y and differ on both
// X and Y. Dl: the same with v fixed to s.
bool direct_dep(const KripkeModel& m, World s, DepKind kind, const VarSet& x,
                const VarSet& y);

DepOracle oracle_for(Route r);

// Throws EvalError unless every proposition and variable in f is declared
// (variables must be named, not hidden).
void check_names(const KripkeModel& m, const Formula& f);

// Evaluates many formulas against one model. The evidence route memoizes P(s)
// per world; the memo is guarded so an Evaluator can be shared across threads.
// The model must outlive the Evaluator.
class Evaluator {
 public:
  Evaluator(const KripkeModel& m, Route route);
  // Dependency atoms decided by a caller-supplied oracle instead of a route.
  Evaluator(const KripkeModel& m, DepOracle oracle);

  const KripkeModel& model() const { return model_; }

  std::vector<bool> truth_table(const Formula& f) const;
  bool eval(World s, const Formula& f) const;
  bool dep(World s, DepKind kind, const VarSet& x, const VarSet& y) const;
  const EvidenceFamily& family(World s, DepKind kind) const;

 private:
  std::vector<bool> table(const Formula& f) const;

  const KripkeModel& model_;
  Route route_;
  DepOracle oracle_;
  mutable std::mutex memo_mutex_;
  mutable std::vector<std::optional<EvidenceFamily>> memo_[2];
};

// Truth value of f at every world, indexed by World.
std::vector<bool> truth_table(const KripkeModel& m, const Formula& f, const DepOracle& dep);
std::vector<bool> truth_table(const KripkeModel& m, const Formula& f,
                              Route route = Route::direct);

bool eval(const KripkeModel& m, World s, const Formula& f, Route route = Route::direct);
bool eval_evidence(const KripkeModel& m, World s, const Formula& f);
Verdict verdict(const KripkeModel& m, World s, const Formula& f, Route route);

std::vector<World> extension(const KripkeModel& m, const Formula& f,
                             Route route = Route::direct);
bool valid_on_model(const KripkeModel& m, const Formula& f, Route route = Route::direct);

}  // namespace edl

#endif  // EDL_SEMANTICS_HPP
