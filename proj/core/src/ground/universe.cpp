#include "ctfrec/ground/universe.hpp"

#include <stdexcept>

namespace ctfrec::ground {

void Universe::add(const std::string& sort, const std::string& constant) {
  auto& by_const = index_[sort];
  auto* entry = [&]() -> std::vector<std::string>* {
    for (auto& e : entries_) {
      if (e.first == sort) return &e.second;
    }
    entries_.emplace_back(sort, std::vector<std::string>{});
    return &entries_.back().second;
  }();
  if (by_const.emplace(constant, static_cast<int>(entry->size())).second) {
    entry->push_back(constant);
  }
}

const std::vector<std::string>& Universe::constants(std::string_view sort) const {
  static const std::vector<std::string> kEmpty;
  for (const auto& e : entries_) {
    if (e.first == sort) return e.second;
  }
  return kEmpty;
}

int Universe::const_index(std::string_view sort, std::string_view constant) const {
  auto it = index_.find(sort);
  if (it == index_.end()) return -1;
  auto jt = it->second.find(constant);
  return jt == it->second.end() ? -1 : jt->second;
}

const std::string& Universe::const_name(std::string_view sort, int index) const {
  const auto& cs = constants(sort);
  if (index < 0 || index >= static_cast<int>(cs.size())) {
    throw std::out_of_range("constant index out of range for sort");
  }
  return cs[index];
}

bool Universe::has_sort(std::string_view sort) const {
  return index_.find(sort) != index_.end();
}

}  // namespace ctfrec::ground
