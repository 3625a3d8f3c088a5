#pragma once

#include <string>
#include <vector>

namespace bss {

struct PairTask {
  int index = 0;  // position in canonical pair order
  std::string id_a;
  std::string id_b;  // id_a < id_b lexicographically
};

// All n(n-1)/2 unordered pairs of the (normalized, deduplicated) ids, in
// lexicographic order of (id_a, id_b). Throws "no ids" on empty input.
std::vector<PairTask> unique_pairs(const std::vector<std::string>& ids);

}  // namespace bss
