#include "bss/pairs.hpp"

#include <algorithm>
#include <stdexcept>

#include "bss/pdb.hpp"

namespace bss {

std::vector<PairTask> unique_pairs(const std::vector<std::string>& ids) {
  if (ids.empty()) throw std::runtime_error("no ids");

  std::vector<std::string> norm;
  norm.reserve(ids.size());
  for (const auto& id : ids) norm.push_back(normalize_pdb_id(id));
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

  std::vector<PairTask> tasks;
  int index = 0;
  for (std::size_t i = 0; i < norm.size(); ++i)
    for (std::size_t j = i + 1; j < norm.size(); ++j)
      tasks.push_back({index++, norm[i], norm[j]});
  return tasks;
}

}  // namespace bss
