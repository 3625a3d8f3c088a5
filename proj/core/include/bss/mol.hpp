#pragma once

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bss/pdb.hpp"

namespace bss {

struct LigandKey {
  std::string residue_name;
  char chain = ' ';
  int residue_seq = 0;

  auto operator<=>(const LigandKey&) const = default;
  std::string str() const;
};

using Edge = std::pair<int, int>;  // ordered: first < second
using EdgeSet = std::set<Edge>;

// Element-labeled molecular graph of one HETATM group (hydrogens excluded).
// Positions are carried alongside the topology for the geometric scoring.
struct MolecularGraph {
  LigandKey ligand_key;
  std::vector<std::string> elements;  // vertex labels, index = vertex id
  EdgeSet edges;
  std::vector<Vec3> positions;

  int vertex_count() const { return static_cast<int>(elements.size()); }
  bool has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) != 0;
  }
  // sorted element multiset, the cheap candidate prefilter
  std::vector<std::string> element_multiset() const;
};

// CONECT pairs that join two atoms of the group win outright; otherwise a
// bond is perceived between atoms closer than r(e1) + r(e2) + 0.4 Å.
EdgeSet perceive_bonds(const std::vector<Atom>& atoms,
                       const std::vector<std::pair<int, int>>& conect);

struct LigandFilter {
  std::vector<std::string> excluded_residues = {"HOH"};
  int min_heavy_atoms = 6;
};

// HETATM groups by (residue_name, chain, residue_seq), filtered and bonded,
// ordered by (chain, residue_seq).
std::vector<MolecularGraph> extract_ligands(const Structure& s,
                                            const LigandFilter& filter = {});

}  // namespace bss
