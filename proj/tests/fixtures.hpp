// Shared synthetic fixtures: hand-built PDB text, deterministic synthetic
// proteins with ligands, and small graph builders.
#pragma once

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bss/mol.hpp"
#include "bss/pdb.hpp"

namespace fixtures {

inline std::string pdb_line(const char* record, int serial, const std::string& name,
                            const std::string& res, char chain, int seq,
                            const bss::Vec3& p, const std::string& element) {
  char buf[96];
  std::string padded_name = name;
  if (padded_name.size() < 4 && element.size() == 1) padded_name = " " + padded_name;
  std::string el = element;
  for (char& c : el) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::snprintf(buf, sizeof buf, "%-6s%5d %-4s %-3s %c%4d    %8.3f%8.3f%8.3f%22s%2s\n",
                record, serial, padded_name.c_str(), res.c_str(), chain, seq, p.x(),
                p.y(), p.z(), "", el.c_str());
  return buf;
}

// all-carbon ring; adjacent atoms ~1.5 A apart, no other contacts
inline std::vector<bss::Vec3> ring_positions(int n, const bss::Vec3& center,
                                             double bond = 1.5) {
  double r = bond / (2.0 * std::sin(std::numbers::pi / n));
  std::vector<bss::Vec3> out;
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * std::numbers::pi * i / n;
    out.push_back(center + bss::Vec3(r * std::cos(a), r * std::sin(a), 0.0));
  }
  return out;
}

inline bss::MolecularGraph ring_graph(int n, const std::string& element = "C") {
  bss::MolecularGraph g;
  g.ligand_key = {"LIG", 'A', 1};
  auto pos = ring_positions(n, bss::Vec3::Zero());
  for (int i = 0; i < n; ++i) {
    g.elements.push_back(element);
    g.positions.push_back(pos[i]);
    g.edges.insert({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  }
  return g;
}

// deterministic random element-labeled graph for the oracle comparisons
inline bss::MolecularGraph random_graph(unsigned seed, int n, double edge_p,
                                        const std::vector<std::string>& alphabet = {
                                            "C", "N", "O"}) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);

  bss::MolecularGraph g;
  g.ligand_key = {"RND", 'A', static_cast<int>(seed % 1000)};
  for (int i = 0; i < n; ++i) {
    g.elements.push_back(alphabet[pick(rng)]);
    g.positions.push_back(bss::Vec3::Zero());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < edge_p) g.edges.insert({i, j});
  return g;
}

// relabel a graph by a random permutation; isomorphic to the input
inline bss::MolecularGraph permuted(const bss::MolecularGraph& g, unsigned seed) {
  std::vector<int> perm(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) perm[i] = i;
  std::mt19937 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  bss::MolecularGraph out;
  out.ligand_key = g.ligand_key;
  out.elements.resize(g.vertex_count());
  out.positions.resize(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) {
    out.elements[perm[i]] = g.elements[i];
    out.positions[perm[i]] = g.positions[i];
  }
  for (const auto& [a, b] : g.edges)
    out.edges.insert({std::min(perm[a], perm[b]), std::max(perm[a], perm[b])});
  return out;
}

struct ProteinSpec {
  unsigned seed = 1;
  int site_residues = 12;       // Cα shell around the ligand
  int far_residues = 8;         // distant bulk, shifts the protein centroid
  std::vector<int> ligand_rings = {6};  // one all-C ring ligand per entry
  std::string ligand_res = "LIG";
  // when set, these replace the rings: topology comes from CONECT records,
  // atoms are scattered in a small ball at the pocket center
  std::vector<bss::MolecularGraph> custom_ligands;
};

// A synthetic protein: an irregular Cα shell 4-6.5 A from each ligand ring
// plus far-away bulk residues. Irregular spacing keeps self-alignment
// cliques on the diagonal.
inline std::string make_protein_pdb(const ProteinSpec& spec) {
  static const std::vector<std::string> residue_names = {
      "ALA", "PHE", "SER", "LYS", "ASP", "LEU", "TYR", "THR", "ARG", "GLU",
      "VAL", "TRP", "ASN", "HIS", "MET", "GLN"};

  std::mt19937 rng(spec.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto rand_dir = [&] {
    // rejection-sampled unit vector
    while (true) {
      bss::Vec3 v(2 * u(rng) - 1, 2 * u(rng) - 1, 2 * u(rng) - 1);
      double n = v.norm();
      if (n > 0.1 && n < 1.0) return bss::Vec3(v / n);
    }
  };

  std::string out;
  int serial = 1, seq = 1;
  std::vector<bss::Vec3> placed;

  auto place_ca = [&](const bss::Vec3& center, double rmin, double rmax) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      bss::Vec3 p = center + rand_dir() * (rmin + (rmax - rmin) * u(rng));
      bool clear = true;
      for (const bss::Vec3& q : placed)
        if ((p - q).norm() < 3.0) { clear = false; break; }
      if (!clear) continue;
      placed.push_back(p);
      return p;
    }
    throw std::runtime_error("fixture: cannot place residue");
  };

  const std::size_t ligand_count = spec.custom_ligands.empty()
                                       ? spec.ligand_rings.size()
                                       : spec.custom_ligands.size();
  std::vector<bss::Vec3> ligand_centers;
  for (std::size_t li = 0; li < ligand_count; ++li)
    ligand_centers.push_back(bss::Vec3(30.0 * static_cast<double>(li), 0, 0));

  for (std::size_t li = 0; li < ligand_count; ++li) {
    for (int i = 0; i < spec.site_residues; ++i) {
      bss::Vec3 p = place_ca(ligand_centers[li], 4.0, 6.2);
      const std::string& res = residue_names[(seq - 1) % residue_names.size()];
      out += pdb_line("ATOM", serial++, "CA", res, 'A', seq++, p, "C");
    }
  }
  for (int i = 0; i < spec.far_residues; ++i) {
    bss::Vec3 p = place_ca(bss::Vec3(0, 40, 0), 0.0, 12.0);
    const std::string& res = residue_names[(seq - 1) % residue_names.size()];
    out += pdb_line("ATOM", serial++, "CA", res, 'A', seq++, p, "C");
  }

  int het_seq = 900;
  std::string conect;
  for (std::size_t li = 0; li < ligand_count; ++li) {
    if (spec.custom_ligands.empty()) {
      auto ring = ring_positions(spec.ligand_rings[li], ligand_centers[li]);
      for (std::size_t i = 0; i < ring.size(); ++i)
        out += pdb_line("HETATM", serial++, "C" + std::to_string(i + 1),
                        spec.ligand_res, 'A', het_seq, ring[i], "C");
    } else {
      const bss::MolecularGraph& g = spec.custom_ligands[li];
      int first_serial = serial;
      for (int i = 0; i < g.vertex_count(); ++i) {
        bss::Vec3 p = ligand_centers[li] + rand_dir() * (0.5 + 1.8 * u(rng));
        out += pdb_line("HETATM", serial++,
                        g.elements[i] + std::to_string(i + 1), spec.ligand_res, 'A',
                        het_seq, p, g.elements[i]);
      }
      char buf[32];
      for (const auto& [ea, eb] : g.edges) {
        std::snprintf(buf, sizeof buf, "CONECT%5d%5d\n", first_serial + ea,
                      first_serial + eb);
        conect += buf;
      }
    }
    ++het_seq;
  }
  out += conect;
  out += "END\n";
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("bss-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
