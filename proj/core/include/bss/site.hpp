#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bss/align.hpp"
#include "bss/graph_match.hpp"
#include "bss/mol.hpp"

namespace bss {

struct SiteResidue {
  std::string residue_name;
  char chain = ' ';
  int residue_seq = 0;
  Vec3 ca_position = Vec3::Zero();
};

struct BindingSite {
  std::string pdb_id;
  LigandKey ligand_key;
  std::vector<SiteResidue> residues;      // ordered by (chain, residue_seq)
  Vec3 centroid = Vec3::Zero();           // mean of the Cα positions
  Vec3 protein_centroid = Vec3::Zero();   // mean over all protein Cα atoms
};

struct SiteParams {
  double site_cutoff = 5.0;        // Å, ligand heavy atom to residue atom
  double eps = 1.0;                // Å, distance-compatibility tolerance
  double dmax = 15.0;              // Å, intra-site distance ceiling for edges
  int min_patch = 10;              // minimum accepted correspondence size
  double patch_rmsd_cutoff = 2.0;  // Å
  double angle_cutoff = 90.0;      // degrees, surface-vector angle
  bool exact_residue_names = false;
};

struct SiteAlignment {
  std::vector<std::pair<int, int>> correspondence;  // residue indices (A, B)
  std::optional<Superposition> superposition;       // absent when < 3 pairs
  double patch_rmsd = 0.0;
  double surface_vector_angle = 0.0;  // degrees
  bool accepted = false;
};

// Residue-class grouping used for vertex compatibility when
// exact_residue_names is off: hydrophobic / aromatic / polar /
// positive / negative. Unknown residue names form their own class.
std::string residue_class(const std::string& residue_name);

// Residues with any heavy ATOM atom within cutoff of any ligand heavy atom,
// represented by their Cα. Throws "empty binding site" when none qualify.
BindingSite extract_binding_site(const Structure& s, const MolecularGraph& ligand,
                                 double cutoff = 5.0);

// Vertices are class-compatible residue pairs; edges require both intra-site
// Cα distances < dmax and their difference <= eps.
CompatGraph build_site_product_graph(const BindingSite& a, const BindingSite& b,
                                     const SiteParams& params = {});

// Maximum-clique correspondence + Kabsch. accepted requires the patch size,
// patch RMSD and surface-vector angle gates all to pass.
SiteAlignment align_sites(const BindingSite& a, const BindingSite& b,
                          const SiteParams& params = {});

// Angle between the two outer-pointing patch vectors (patch centroid minus
// protein centroid, site B rotated into A's frame), in [0, 180] degrees.
// Throws "degenerate surface vector" on a zero-length vector.
double surface_vector_angle(const BindingSite& a, const BindingSite& b,
                            const std::vector<std::pair<int, int>>& correspondence,
                            const Superposition& superposition);

}  // namespace bss
