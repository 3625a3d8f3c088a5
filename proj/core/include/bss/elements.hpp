#pragma once

#include <string>
#include <string_view>

namespace bss {

// Covalent radius in Å for a recognized element symbol ("C", "Fe", ...).
// Throws std::runtime_error("unknown element: <sym>") otherwise.
double covalent_radius(std::string_view symbol);

bool is_known_element(std::string_view symbol);

// "FE" / "fe" -> "Fe"
std::string normalize_element(std::string_view symbol);

inline bool is_hydrogen(std::string_view symbol) {
  return symbol == "H" || symbol == "D";
}

}  // namespace bss
