#include "bss/elements.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace bss {

namespace {

// Single-bond covalent radii in Å, classic tabulation (r(C) = 0.77).
// Covers the elements that occur in PDB entries of biological interest.
const std::unordered_map<std::string_view, double>& radius_table() {
  static const std::unordered_map<std::string_view, double> table = {
      {"H", 0.37},  {"D", 0.37},  {"He", 0.32}, {"Li", 1.34}, {"Be", 0.90},
      {"B", 0.82},  {"C", 0.77},  {"N", 0.75},  {"O", 0.73},  {"F", 0.71},
      {"Ne", 0.69}, {"Na", 1.54}, {"Mg", 1.30}, {"Al", 1.18}, {"Si", 1.11},
      {"P", 1.06},  {"S", 1.02},  {"Cl", 0.99}, {"Ar", 0.97}, {"K", 1.96},
      {"Ca", 1.74}, {"Sc", 1.44}, {"Ti", 1.36}, {"V", 1.25},  {"Cr", 1.27},
      {"Mn", 1.39}, {"Fe", 1.25}, {"Co", 1.26}, {"Ni", 1.21}, {"Cu", 1.38},
      {"Zn", 1.31}, {"Ga", 1.26}, {"Ge", 1.22}, {"As", 1.19}, {"Se", 1.16},
      {"Br", 1.14}, {"Kr", 1.10}, {"Rb", 2.11}, {"Sr", 1.92}, {"Y", 1.62},
      {"Zr", 1.48}, {"Nb", 1.37}, {"Mo", 1.45}, {"Tc", 1.56}, {"Ru", 1.26},
      {"Rh", 1.35}, {"Pd", 1.31}, {"Ag", 1.53}, {"Cd", 1.48}, {"In", 1.44},
      {"Sn", 1.41}, {"Sb", 1.38}, {"Te", 1.35}, {"I", 1.33},  {"Xe", 1.30},
      {"Cs", 2.25}, {"Ba", 1.98}, {"La", 1.69}, {"W", 1.46},  {"Re", 1.59},
      {"Os", 1.28}, {"Ir", 1.37}, {"Pt", 1.28}, {"Au", 1.44}, {"Hg", 1.49},
      {"Tl", 1.48}, {"Pb", 1.47}, {"Bi", 1.46}, {"U", 1.96},
  };
  return table;
}

}  // namespace

std::string normalize_element(std::string_view symbol) {
  std::string out;
  for (char c : symbol) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(c);
  }
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    for (std::size_t i = 1; i < out.size(); ++i)
      out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
  }
  return out;
}

bool is_known_element(std::string_view symbol) {
  return radius_table().count(symbol) != 0;
}

double covalent_radius(std::string_view symbol) {
  auto it = radius_table().find(symbol);
  if (it == radius_table().end())
    throw std::runtime_error("unknown element: " + std::string(symbol));
  return it->second;
}

}  // namespace bss
