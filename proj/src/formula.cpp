#include "edl/formula.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace edl {

std::string_view dep_kind_name(DepKind k) {
  return k == DepKind::global ? "global" : "local";
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>());
  return t;
}

Formula Formula::prop(std::string name) {
  if (!is_identifier(name) || is_reserved_word(name))
    throw std::invalid_argument("invalid proposition name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::prop;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::dep(DepKind kind, VarSet x, VarSet y) {
  for (const VarSet* s : {&x, &y})
    for (const auto& v : *s)
      if (!is_identifier(v) || is_reserved_word(v))
        throw std::invalid_argument("invalid variable name '" + v + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::dep;
  n->dep_kind = kind;
  n->x = std::move(x);
  n->y = std::move(y);
  return Formula(std::move(n));
}

Formula neg(Formula f) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::neg;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula conj(Formula a, Formula b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::conj;
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return Formula(std::move(n));
}

Formula know(Formula f) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::know;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula all(Formula f) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::all;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula bot() { return neg(Formula::top()); }

Formula disj(Formula a, Formula b) {
  return neg(conj(neg(std::move(a)), neg(std::move(b))));
}

Formula implies(Formula a, Formula b) {
  return neg(conj(std::move(a), neg(std::move(b))));
}

Formula iff(Formula a, Formula b) {
  return conj(implies(a, b), implies(b, a));
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Formula::Kind::top: return true;
    case Formula::Kind::prop: return x.name == y.name;
    case Formula::Kind::dep:
      return x.dep_kind == y.dep_kind && x.x == y.x && x.y == y.y;
    default: return x.children == y.children;
  }
}

bool Formula::is_atom() const {
  return kind() == Kind::top || kind() == Kind::prop || kind() == Kind::dep;
}

std::size_t Formula::modal_depth() const {
  switch (kind()) {
    case Kind::top:
    case Kind::prop:
    case Kind::dep: return 0;
    case Kind::neg: return child().modal_depth();
    case Kind::conj:
      return std::max(left().modal_depth(), right().modal_depth());
    case Kind::know:
    case Kind::all: return 1 + child().modal_depth();
  }
  return 0;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

namespace {

void collect(const Formula& f, std::set<std::string>& props,
             std::vector<std::string>& vars) {
  switch (f.kind()) {
    case Formula::Kind::prop: props.insert(f.name()); break;
    case Formula::Kind::dep:
      vars.insert(vars.end(), f.lhs().begin(), f.lhs().end());
      vars.insert(vars.end(), f.rhs().begin(), f.rhs().end());
      break;
    case Formula::Kind::top: break;
    case Formula::Kind::conj:
      collect(f.left(), props, vars);
      collect(f.right(), props, vars);
      break;
    default: collect(f.child(), props, vars);
  }
}

}  // namespace

std::vector<std::string> Formula::propositions() const {
  std::set<std::string> props;
  std::vector<std::string> vars;
  collect(*this, props, vars);
  return {props.begin(), props.end()};
}

VarSet Formula::variables() const {
  std::set<std::string> props;
  std::vector<std::string> vars;
  collect(*this, props, vars);
  return VarSet(std::move(vars));
}

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 6> kReserved = {
      "top", "bot", "K", "A", "Dg", "Dl"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

bool is_identifier(std::string_view word) {
  if (word.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(word[0])) return false;
  return std::all_of(word.begin() + 1, word.end(), [&](char c) {
    return alpha(c) || (c >= '0' && c <= '9');
  });
}

Formula build_q(DepKind kind, const VarSet& w) {
  if (w.empty()) throw std::invalid_argument("build_q: empty variable set");
  if (w.size() == 1) return Formula::dep(kind, w, w);
  std::vector<Formula> conjuncts;
  for (const VarSet& z : subsets_of(w, false, false))
    conjuncts.push_back(Formula::dep(kind, z, w - z));
  return conj_all(conjuncts);
}

}  // namespace edl
