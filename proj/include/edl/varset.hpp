// Finite sets of variable names.

#ifndef EDL_VARSET_HPP
#define EDL_VARSET_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace edl {

// An immutable, duplicate-free set of variable names kept in sorted order.
// Equality is therefore order-insensitive with respect to construction.
class VarSet {
 public:
  using const_iterator = std::vector<std::string>::const_iterator;

  VarSet() = default;
  VarSet(std::initializer_list<std::string> names);
  explicit VarSet(std::vector<std::string> names);

  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  const_iterator begin() const { return names_.begin(); }
  const_iterator end() const { return names_.end(); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(std::string_view name) const;
  bool subset_of(const VarSet& other) const;
  bool intersects(const VarSet& other) const;

  VarSet with(std::string name) const;

  // "{a,b}" with members in sorted order; "{}" for the empty set.
  std::string str() const;

  friend VarSet operator|(const VarSet& a, const VarSet& b);
  friend VarSet operator&(const VarSet& a, const VarSet& b);
  friend VarSet operator-(const VarSet& a, const VarSet& b);

  friend bool operator==(const VarSet&, const VarSet&) = default;
  friend std::strong_ordering operator<=>(const VarSet& a, const VarSet& b) {
    return a.names_ <=> b.names_;
  }

 private:
  std::vector<std::string> names_;
};

// Orders sets by cardinality first, then lexicographically on sorted members.
struct BySizeThenLex {
  bool operator()(const VarSet& a, const VarSet& b) const;
};

// All subsets of `w` in (size, lexicographic) order. The empty set and `w`
// itself are included only when asked for.
std::vector<VarSet> subsets_of(const VarSet& w, bool include_empty,
                               bool include_full);

}  // namespace edl

#endif  // EDL_VARSET_HPP
