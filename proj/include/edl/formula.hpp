// Formula trees of dependence epistemic logic.

#ifndef EDL_FORMULA_HPP
#define EDL_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edl/varset.hpp"

namespace edl {

// Which of the two dependency modalities: evaluated over a whole nomic
// class (global) or against the current world (local).
enum class DepKind { global, local };

std::string_view dep_kind_name(DepKind k);

// An immutable formula. Only the core constructors appear in the tree:
// top, propositions, negation, conjunction, K, A, Dg and Dl. Disjunction,
// implication, biconditional and bottom are built from these.
//
// Copies share structure; a Formula is safe to read from many threads.
class Formula {
 public:
  enum class Kind { top, prop, neg, conj, know, all, dep };

  static Formula top();
  static Formula prop(std::string name);
  static Formula dep(DepKind kind, VarSet x, VarSet y);

  Kind kind() const { return node_->kind; }

  // Accessors are only meaningful for the matching kind.
  const std::string& name() const { return node_->name; }
  const Formula& child() const { return node_->children.at(0); }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  DepKind dep_kind() const { return node_->dep_kind; }
  const VarSet& lhs() const { return node_->x; }
  const VarSet& rhs() const { return node_->y; }

  bool is_atom() const;
  std::size_t modal_depth() const;
  std::size_t size() const;

  // Propositions and variables mentioned anywhere in the tree.
  std::vector<std::string> propositions() const;
  VarSet variables() const;

  friend bool operator==(const Formula& a, const Formula& b);

  friend Formula neg(Formula f);
  friend Formula conj(Formula a, Formula b);
  friend Formula know(Formula f);
  friend Formula all(Formula f);

 private:
  struct Node {
    Kind kind = Kind::top;
    std::string name;
    std::vector<Formula> children;
    DepKind dep_kind = DepKind::global;
    VarSet x, y;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula know(Formula f);
Formula all(Formula f);

// Derived connectives, expanded into the core constructors.
Formula bot();
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);

// Left-nested folds; an empty conjunction is top, an empty disjunction bot.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

inline Formula dep_g(VarSet x, VarSet y) {
  return Formula::dep(DepKind::global, std::move(x), std::move(y));
}
inline Formula dep_l(VarSet x, VarSet y) {
  return Formula::dep(DepKind::local, std::move(x), std::move(y));
}

bool is_reserved_word(std::string_view word);
bool is_identifier(std::string_view word);

// Q(W): D(W,W) for a singleton, otherwise the conjunction of D(Z, W\Z) over
// every proper nonempty Z of W, taken in (size, lexicographic) order.
Formula build_q(DepKind kind, const VarSet& w);

// Concrete syntax. render() output is accepted by parse_formula() and parses
// back to an equal tree.
std::string render(const Formula& f);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text);

// Every formula of modal depth <= depth in the canonical fragment built from
// top, the given propositions and D atoms over ordered pairs of the given
// varsets. See enumerate.cpp for the exact shape of the fragment.
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& props,
                                        const std::vector<VarSet>& varsets,
                                        std::size_t depth);

}  // namespace edl

#endif  // EDL_FORMULA_HPP
