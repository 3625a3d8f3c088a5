#pragma once

#include <vector>

#include "bss/graph_match.hpp"
#include "bss/pdb.hpp"

namespace bss {

struct Superposition {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  double rmsd = 0.0;
};

struct LigandRmsdScore {
  double observed_rmsd = 0.0;  // ligand B through the site superposition
  double optimal_rmsd = 0.0;   // best ligand-only superposition
  double ligand_rmsd = 0.0;    // observed - optimal, >= 0 up to rounding
};

// sqrt(mean |p_i - q_i|^2); throws "correspondence length mismatch".
double rmsd(const std::vector<Vec3>& p, const std::vector<Vec3>& q);

// Proper rigid motion (R, t) minimizing rmsd(R q + t, p). Reflections are
// corrected by flipping the smallest singular direction. Throws
// "degenerate point set" for < 3 points or rank-deficient input.
Superposition kabsch(const std::vector<Vec3>& p, const std::vector<Vec3>& q);

std::vector<Vec3> apply(const Superposition& s, const std::vector<Vec3>& points);
Vec3 apply(const Superposition& s, const Vec3& point);

// observed = rmsd of mapped atom pairs with ligand B moved by the binding
// site superposition; optimal = Kabsch over the same pairs.
LigandRmsdScore ligand_rmsd(const std::vector<Vec3>& ligand_a,
                            const std::vector<Vec3>& ligand_b,
                            const Superposition& site_superposition,
                            const VertexMapping& mapping);

// target-query score over query-query self score; throws "invalid self-score".
double normalize_score(double target_query, double query_query);

}  // namespace bss
