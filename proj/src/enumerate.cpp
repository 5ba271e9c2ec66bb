// Canonical finite formula fragment used to drive Hennessy-Milner checks.
//
// At depth d the literal base L(d) holds top, every proposition, Dg(X;Y) and
// Dl(X;Y) for every ordered pair of the given varsets, and (for d > 0) K f and
// A f for every f of depth d-1. The fragment E(d) is
//
//   L(d)  u  { !l : l in L(d) }  u  { a & b : a < b, a,b non-top signed literals }
//
// where < is the order on rendered text, so each unordered pair appears once.
// E(d) is contained in E(d+1).

#include <map>
#include <set>

#include "edl/formula.hpp"

namespace edl {

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& props,
                                        const std::vector<VarSet>& varsets,
                                        std::size_t depth) {
  std::set<VarSet> distinct(varsets.begin(), varsets.end());

  std::vector<Formula> base;
  base.push_back(Formula::top());
  for (const std::string& p : std::set<std::string>(props.begin(), props.end()))
    base.push_back(Formula::prop(p));
  for (DepKind kind : {DepKind::global, DepKind::local})
    for (const VarSet& x : distinct)
      for (const VarSet& y : distinct) base.push_back(Formula::dep(kind, x, y));

  std::vector<Formula> previous;
  for (std::size_t d = 0; d <= depth; ++d) {
    std::vector<Formula> literals = base;
    for (const Formula& f : previous) literals.push_back(know(f));
    for (const Formula& f : previous) literals.push_back(all(f));

    // Keyed by rendered text: deduplicates and fixes a canonical order.
    std::map<std::string, Formula> signed_lits;
    for (const Formula& l : literals) {
      signed_lits.emplace(render(l), l);
      Formula n = neg(l);
      signed_lits.emplace(render(n), n);
    }

    std::map<std::string, Formula> out = signed_lits;
    std::vector<Formula> nontrivial;
    for (const auto& [text, f] : signed_lits) {
      const bool trivial =
          f.kind() == Formula::Kind::top ||
          (f.kind() == Formula::Kind::neg &&
           f.child().kind() == Formula::Kind::top);
      if (!trivial) nontrivial.push_back(f);
    }
    for (std::size_t i = 0; i < nontrivial.size(); ++i)
      for (std::size_t j = i + 1; j < nontrivial.size(); ++j) {
        Formula c = conj(nontrivial[i], nontrivial[j]);
        out.emplace(render(c), c);
      }

    previous.clear();
    for (auto& [text, f] : out) previous.push_back(f);
  }
  return previous;
}

}  // namespace edl
