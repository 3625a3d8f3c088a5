#include "bss/mol.hpp"

#include <algorithm>
#include <map>

#include "bss/elements.hpp"

namespace bss {

std::string LigandKey::str() const {
  return residue_name + ":" + std::string(1, chain) + ":" + std::to_string(residue_seq);
}

std::vector<std::string> MolecularGraph::element_multiset() const {
  std::vector<std::string> m = elements;
  std::sort(m.begin(), m.end());
  return m;
}

EdgeSet perceive_bonds(const std::vector<Atom>& atoms,
                       const std::vector<std::pair<int, int>>& conect) {
  std::map<int, int> serial_to_index;
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i)
    serial_to_index.emplace(atoms[i].serial, i);

  EdgeSet from_conect;
  for (const auto& [sa, sb] : conect) {
    auto ia = serial_to_index.find(sa);
    auto ib = serial_to_index.find(sb);
    if (ia == serial_to_index.end() || ib == serial_to_index.end()) continue;
    if (ia->second == ib->second) continue;
    from_conect.insert({std::min(ia->second, ib->second),
                        std::max(ia->second, ib->second)});
  }
  if (!from_conect.empty()) return from_conect;

  EdgeSet edges;
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
    double ri = covalent_radius(atoms[i].element);
    for (int j = i + 1; j < static_cast<int>(atoms.size()); ++j) {
      double limit = ri + covalent_radius(atoms[j].element) + 0.4;
      if ((atoms[i].position - atoms[j].position).norm() <= limit)
        edges.insert({i, j});
    }
  }
  return edges;
}

std::vector<MolecularGraph> extract_ligands(const Structure& s,
                                            const LigandFilter& filter) {
  // group HETATM heavy atoms by ligand key
  std::map<LigandKey, std::vector<Atom>> groups;
  for (const Atom& a : s.atoms) {
    if (!a.is_hetatm || is_hydrogen(a.element)) continue;
    groups[{a.residue_name, a.chain, a.residue_seq}].push_back(a);
  }

  std::vector<MolecularGraph> out;
  std::vector<std::pair<std::pair<char, int>, const std::map<LigandKey, std::vector<Atom>>::value_type*>> order;
  for (const auto& kv : groups)
    order.push_back({{kv.first.chain, kv.first.residue_seq}, &kv});
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [key_order, kv] : order) {
    const LigandKey& key = kv->first;
    std::vector<Atom> atoms = kv->second;
    if (std::find(filter.excluded_residues.begin(), filter.excluded_residues.end(),
                  key.residue_name) != filter.excluded_residues.end())
      continue;
    if (static_cast<int>(atoms.size()) < filter.min_heavy_atoms) continue;

    // deterministic vertex order regardless of file order
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.serial < b.serial; });

    MolecularGraph g;
    g.ligand_key = key;
    for (const Atom& a : atoms) {
      g.elements.push_back(a.element);
      g.positions.push_back(a.position);
    }
    g.edges = perceive_bonds(atoms, s.conect);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace bss
