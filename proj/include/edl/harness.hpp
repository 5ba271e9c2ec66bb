// Random models and semantic soundness checks for the proof system.

#ifndef EDL_HARNESS_HPP
#define EDL_HARNESS_HPP

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "edl/formula.hpp"
#include "edl/model.hpp"
#include "edl/semantics.hpp"

namespace edl {

struct GenParams {
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 8;
  std::size_t propositions = 2;
  std::size_t named_variables = 3;
  std::size_t hidden_variables = 1;
  Value value_bound = 3;  // values drawn from [0, value_bound)
  // Upper bound on the number of cells per partition; 0 means the world count.
  std::size_t max_epistemic_cells = 0;
  std::size_t max_nomic_cells = 0;
  std::uint64_t seed = 0;
};

// Deterministic in params (including the seed). Worlds are w0.., propositions
// p0.., named variables x0.., hidden variables h0... Throws
// std::invalid_argument for infeasible parameters.
KripkeModel random_model(const GenParams& params);

// Random formula over the model's propositions and named variables with modal
// depth <= depth and varsets of at most max_varset members.
Formula random_formula(std::mt19937_64& rng, const KripkeModel& m, std::size_t depth,
                       std::size_t max_varset);

enum class Schema {
  k_t, k_4, k_5, k_dist,
  a_t, a_4, a_5, a_dist,
  q_for_d,      // D(X,Y) <-> OR over X'<=X, Y'<=Y nonempty of Q(X' u Y')
  e_for_d,      // D({},X) <-> D(X,{}) <-> bot
  four_for_dg,  // Dg(X,Y) -> A Dg(X,Y)
  empty_set,    // D({},X) <-> bot
  symmetry,     // D(X,Y) <-> D(Y,X)
  weakening,    // D(X,Y) -> D(X',Y) for X <= X'
  separation,   // D(X,Y) <-> D(X\Y,Y) | D(X&Y,Y)
  dg_definability,  // Dg(X,Y) <-> !A!Dl(X,Y)
};

std::string_view schema_name(Schema s);
const std::vector<Schema>& all_schemas();
// Schemas stated for an unsubscripted D, checked for both Dg and Dl.
bool schema_is_kind_generic(Schema s);

struct SchemaInstance {
  Schema schema = Schema::k_t;
  DepKind kind = DepKind::global;
  std::vector<Formula> formulas;  // phi (and psi for DIST)
  VarSet x, y;
  VarSet x_prime;  // Weakening only

  std::string label() const;  // e.g. "Q-for-D[l]"
};

class SideConditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The closed formula for an instance. Throws SideConditionError when the
// instance violates its schema's side condition.
Formula instantiate(const SchemaInstance& s);

// Draws `per_schema` instances of every applicable schema (and kind) for m.
std::vector<SchemaInstance> sample_instances(const KripkeModel& m, std::uint64_t seed,
                                             std::size_t per_schema = 2);

struct Counterexample {
  enum class Kind { invalid, route_disagreement };
  std::uint64_t seed;
  std::string schema;
  std::string instance;
  std::string world;
  Kind kind;
};

struct SoundnessReport {
  std::size_t trials = 0;
  std::size_t schemas = 0;    // distinct schema labels exercised
  std::size_t instances = 0;  // schema instances checked
  std::vector<Counterexample> counterexamples;
  std::chrono::milliseconds elapsed{0};

  std::size_t count(Counterexample::Kind k) const;
};

struct SoundnessOptions {
  std::size_t per_schema = 2;
  // Decides dependency atoms for the evaluator under test. Defaults to the
  // direct route. Every instance is also compared against the evidence route.
  DepOracle oracle;
};

// Trial i uses a model generated with seed params.seed + i.
SoundnessReport soundness_suite(const GenParams& params, std::size_t trials,
                                const SoundnessOptions& options = {});

// One line per counterexample, then a summary line.
std::string format_report(const SoundnessReport& r);
std::string report_json(const SoundnessReport& r);

}  // namespace edl

#endif  // EDL_HARNESS_HPP
