#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ctfrec::ground {

// Constants per sort, in declaration order. Order matters: variable offsets
// ("t+1") step through a sort's constants in this order.
class Universe {
 public:
  void add(const std::string& sort, const std::string& constant);

  const std::vector<std::string>& constants(std::string_view sort) const;
  // -1 when the constant is not declared in the sort.
  int const_index(std::string_view sort, std::string_view constant) const;
  const std::string& const_name(std::string_view sort, int index) const;
  bool has_sort(std::string_view sort) const;

  const std::vector<std::pair<std::string, std::vector<std::string>>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::vector<std::string>>> entries_;
  std::map<std::string, std::map<std::string, int, std::less<>>, std::less<>> index_;
};

}  // namespace ctfrec::ground
