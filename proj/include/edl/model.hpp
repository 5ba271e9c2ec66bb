// Finite dependence epistemic models.

#ifndef EDL_MODEL_HPP
#define EDL_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edl/varset.hpp"

namespace edl {

using World = std::size_t;
using Value = std::uint64_t;

class ModelError : public std::runtime_error {
 public:
  enum class Code {
    format,                      // malformed document or field of wrong type
    bad_name,                    // invalid or reserved identifier
    duplicate_name,              // world/proposition/variable declared twice
    name_clash,                  // name used as both proposition and variable
    unknown_name,                // entry for an undeclared proposition/variable
    missing_entry,               // world lacks a valuation/assignment entry
    bad_value,                   // negative, non-integer or non-boolean value
    unknown_world,               // world id not declared
    unknown_world_in_partition,  // partition mentions an undeclared world
    world_not_covered,           // partition omits a world
    overlapping_cells,           // a world occurs in two cells
    empty_cell,                  // a partition cell with no worlds
    mirror_violation,            // U(s, bar_p) != T(s, p)
    bad_mirror,                  // mirror refers to undeclared/hidden names
    empty_model,                 // no worlds
  };

  ModelError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

std::string_view error_code_name(ModelError::Code code);

struct VariableDecl {
  std::string name;
  bool hidden = false;
  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

struct WorldData {
  std::string id;
  std::map<std::string, bool> props;
  std::map<std::string, Value> vals;
};

// Plain description of a model, keyed by names. KripkeModel validates it.
struct ModelData {
  std::vector<std::string> propositions;
  std::vector<VariableDecl> variables;
  std::vector<WorldData> worlds;
  std::vector<std::vector<std::string>> epistemic_partition;
  std::vector<std::vector<std::string>> nomic_partition;
  std::map<std::string, std::string> mirrors;  // proposition -> variable
};

// A validated finite model <S, T, V, U, ~i, ~>. The two equivalence relations
// are stored as partitions of the world set. Hidden variables are the part of
// V that the formula language cannot name. Immutable after construction.
class KripkeModel {
 public:
  // Throws ModelError if any invariant fails.
  explicit KripkeModel(ModelData data);

  std::size_t world_count() const { return worlds_.size(); }
  const std::string& world_name(World w) const;
  World world(std::string_view id) const;  // throws unknown_world
  std::optional<World> find_world(std::string_view id) const;
  void check_world(World w) const;

  const std::vector<std::string>& propositions() const { return props_; }
  const std::vector<VariableDecl>& variables() const { return vars_; }
  std::optional<std::size_t> proposition_index(std::string_view name) const;
  std::optional<std::size_t> variable_index(std::string_view name) const;
  bool is_named_variable(std::string_view name) const;
  VarSet named_variables() const;
  const std::map<std::string, std::string>& mirrors() const { return mirrors_; }

  bool truth(World w, std::size_t prop) const { return truth_[w][prop]; }
  Value value(World w, std::size_t var) const { return values_[w][var]; }

  const std::vector<std::vector<World>>& epistemic_partition() const {
    return epistemic_cells_;
  }
  const std::vector<std::vector<World>>& nomic_partition() const {
    return nomic_cells_;
  }
  const std::vector<World>& epistemic_class(World w) const;
  const std::vector<World>& nomic_class(World w) const;
  std::size_t epistemic_cell(World w) const { return epistemic_of_[w]; }
  std::size_t nomic_cell(World w) const { return nomic_of_[w]; }

  ModelData data() const;

 private:
  std::vector<std::string> worlds_;
  std::map<std::string, World, std::less<>> world_index_;
  std::vector<std::string> props_;
  std::map<std::string, std::size_t, std::less<>> prop_index_;
  std::vector<VariableDecl> vars_;
  std::map<std::string, std::size_t, std::less<>> var_index_;
  std::vector<std::vector<bool>> truth_;
  std::vector<std::vector<Value>> values_;
  std::vector<std::vector<World>> epistemic_cells_, nomic_cells_;
  std::vector<std::size_t> epistemic_of_, nomic_of_;
  std::map<std::string, std::string> mirrors_;
};

struct PointedModel {
  const KripkeModel& model;
  World point;
};

// Model documents are JSON; // and /* */ comments are accepted.
KripkeModel load_model(std::string_view document);
KripkeModel load_model_file(const std::filesystem::path& path);
std::string dump_model(const KripkeModel& m);

// Named variables on which u and v differ, provided they agree on every hidden
// variable; the empty set otherwise.
VarSet delta(const KripkeModel& m, World u, World v);

// Every variable, hidden or named, outside xy has equal values at u and v.
bool agree_outside(const KripkeModel& m, World u, World v, const VarSet& xy);

// Some member of x takes different values at u and v.
bool differs_on(const KripkeModel& m, World u, World v, const VarSet& x);

const std::vector<World>& nomic_class(const KripkeModel& m, World s);
const std::vector<World>& epistemic_class(const KripkeModel& m, World s);

}  // namespace edl

#endif  // EDL_MODEL_HPP
