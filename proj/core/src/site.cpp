#include "bss/site.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bss/elements.hpp"

namespace bss {

namespace {

Vec3 mean_of(const std::vector<Vec3>& pts) {
  Vec3 m = Vec3::Zero();
  for (const Vec3& p : pts) m += p;
  return pts.empty() ? m : Vec3(m / static_cast<double>(pts.size()));
}

Vec3 patch_centroid(const BindingSite& site, const std::vector<int>& indices) {
  Vec3 m = Vec3::Zero();
  for (int i : indices) m += site.residues[i].ca_position;
  return m / static_cast<double>(indices.size());
}

}  // namespace

std::string residue_class(const std::string& residue_name) {
  static const std::map<std::string, std::string> classes = {
      {"ALA", "hydrophobic"}, {"VAL", "hydrophobic"}, {"LEU", "hydrophobic"},
      {"ILE", "hydrophobic"}, {"MET", "hydrophobic"}, {"PRO", "hydrophobic"},
      {"GLY", "hydrophobic"}, {"CYS", "hydrophobic"},
      {"PHE", "aromatic"},    {"TYR", "aromatic"},    {"TRP", "aromatic"},
      {"SER", "polar"},       {"THR", "polar"},       {"ASN", "polar"},
      {"GLN", "polar"},       {"HIS", "polar"},
      {"LYS", "positive"},    {"ARG", "positive"},
      {"ASP", "negative"},    {"GLU", "negative"},
  };
  auto it = classes.find(residue_name);
  return it == classes.end() ? residue_name : it->second;
}

BindingSite extract_binding_site(const Structure& s, const MolecularGraph& ligand,
                                 double cutoff) {
  if (cutoff <= 0) throw std::runtime_error("invalid site cutoff");

  // protein residues keyed by (chain, seq): any heavy atom near the ligand
  // plus a Cα to represent the residue
  struct ResInfo {
    std::string name;
    std::optional<Vec3> ca;
    bool near = false;
  };
  std::map<std::pair<char, int>, ResInfo> residues;
  std::vector<Vec3> protein_cas;

  for (const Atom& a : s.atoms) {
    if (a.is_hetatm || is_hydrogen(a.element)) continue;
    auto& info = residues[{a.chain, a.residue_seq}];
    info.name = a.residue_name;
    if (a.name == "CA" && a.element == "C") {
      info.ca = a.position;
      protein_cas.push_back(a.position);
    }
    if (!info.near) {
      for (const Vec3& lp : ligand.positions) {
        if ((a.position - lp).norm() <= cutoff) {
          info.near = true;
          break;
        }
      }
    }
  }

  BindingSite site;
  site.pdb_id = s.pdb_id;
  site.ligand_key = ligand.ligand_key;
  std::vector<Vec3> cas;
  for (const auto& [key, info] : residues) {
    if (!info.near || !info.ca) continue;
    site.residues.push_back({info.name, key.first, key.second, *info.ca});
    cas.push_back(*info.ca);
  }
  if (site.residues.empty()) throw std::runtime_error("empty binding site");

  site.centroid = mean_of(cas);
  site.protein_centroid = mean_of(protein_cas);
  return site;
}

CompatGraph build_site_product_graph(const BindingSite& a, const BindingSite& b,
                                     const SiteParams& params) {
  CompatGraph g;
  auto label = [&](const std::string& name) {
    return params.exact_residue_names ? name : residue_class(name);
  };
  for (int i = 0; i < static_cast<int>(a.residues.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.residues.size()); ++j)
      if (label(a.residues[i].residue_name) == label(b.residues[j].residue_name))
        g.vertices.emplace_back(i, j);

  int n = g.size();
  g.adj.assign(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    auto [i, j] = g.vertices[u];
    for (int v = u + 1; v < n; ++v) {
      auto [k, l] = g.vertices[v];
      if (i == k || j == l) continue;
      double da = (a.residues[i].ca_position - a.residues[k].ca_position).norm();
      double db = (b.residues[j].ca_position - b.residues[l].ca_position).norm();
      if (da < params.dmax && db < params.dmax && std::abs(da - db) <= params.eps) {
        g.adj[u][v] = 1;
        g.adj[v][u] = 1;
      }
    }
  }
  return g;
}

SiteAlignment align_sites(const BindingSite& a, const BindingSite& b,
                          const SiteParams& params) {
  if (a.residues.empty() || b.residues.empty())
    throw std::runtime_error("empty binding site");

  CompatGraph product = build_site_product_graph(a, b, params);
  std::vector<int> clique = max_clique(product);

  SiteAlignment out;
  for (int v : clique) out.correspondence.push_back(product.vertices[v]);
  std::sort(out.correspondence.begin(), out.correspondence.end());

  if (out.correspondence.size() < 3) {
    out.accepted = false;  // too few equivalent points
    return out;
  }

  std::vector<Vec3> pa, pb;
  for (const auto& [i, j] : out.correspondence) {
    pa.push_back(a.residues[i].ca_position);
    pb.push_back(b.residues[j].ca_position);
  }
  Superposition sup = kabsch(pa, pb);
  out.superposition = sup;
  out.patch_rmsd = rmsd(pa, bss::apply(sup, pb));
  out.surface_vector_angle = surface_vector_angle(a, b, out.correspondence, sup);

  out.accepted = static_cast<int>(out.correspondence.size()) >= params.min_patch &&
                 out.patch_rmsd <= params.patch_rmsd_cutoff &&
                 out.surface_vector_angle <= params.angle_cutoff;
  return out;
}

double surface_vector_angle(const BindingSite& a, const BindingSite& b,
                            const std::vector<std::pair<int, int>>& correspondence,
                            const Superposition& superposition) {
  std::vector<int> ia, ib;
  for (const auto& [i, j] : correspondence) { ia.push_back(i); ib.push_back(j); }

  Vec3 va = patch_centroid(a, ia) - a.protein_centroid;
  Vec3 vb = patch_centroid(b, ib) - b.protein_centroid;
  if (va.norm() < 1e-12 || vb.norm() < 1e-12)
    throw std::runtime_error("degenerate surface vector");

  Vec3 vb_rot = superposition.rotation * vb;
  double c = va.normalized().dot(vb_rot.normalized());
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace bss
