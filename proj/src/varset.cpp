#include "edl/varset.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <stdexcept>

namespace edl {

VarSet::VarSet(std::initializer_list<std::string> names)
    : VarSet(std::vector<std::string>(names)) {}

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool VarSet::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

bool VarSet::subset_of(const VarSet& other) const {
  return std::includes(other.names_.begin(), other.names_.end(),
                       names_.begin(), names_.end());
}

bool VarSet::intersects(const VarSet& other) const {
  auto a = names_.begin();
  auto b = other.names_.begin();
  while (a != names_.end() && b != other.names_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

VarSet VarSet::with(std::string name) const {
  std::vector<std::string> names = names_;
  names.push_back(std::move(name));
  return VarSet(std::move(names));
}

std::string VarSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ',';
    out += names_[i];
  }
  out += '}';
  return out;
}

VarSet operator|(const VarSet& a, const VarSet& b) {
  std::vector<std::string> out;
  std::set_union(a.names_.begin(), a.names_.end(), b.names_.begin(),
                 b.names_.end(), std::back_inserter(out));
  VarSet r;
  r.names_ = std::move(out);
  return r;
}

VarSet operator&(const VarSet& a, const VarSet& b) {
  std::vector<std::string> out;
  std::set_intersection(a.names_.begin(), a.names_.end(), b.names_.begin(),
                        b.names_.end(), std::back_inserter(out));
  VarSet r;
  r.names_ = std::move(out);
  return r;
}

VarSet operator-(const VarSet& a, const VarSet& b) {
  std::vector<std::string> out;
  std::set_difference(a.names_.begin(), a.names_.end(), b.names_.begin(),
                      b.names_.end(), std::back_inserter(out));
  VarSet r;
  r.names_ = std::move(out);
  return r;
}

bool BySizeThenLex::operator()(const VarSet& a, const VarSet& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<VarSet> subsets_of(const VarSet& w, bool include_empty,
                               bool include_full) {
  const std::size_t n = w.size();
  if (n >= 31) throw std::length_error("subsets_of: set too large");
  std::vector<VarSet> out;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (mask == 0 && !include_empty) continue;
    if (mask == full && !include_full) continue;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) names.push_back(w.names()[i]);
    out.emplace_back(std::move(names));
  }
  std::sort(out.begin(), out.end(), BySizeThenLex{});
  // n == 0 with both flags set yields {} twice.
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace edl
