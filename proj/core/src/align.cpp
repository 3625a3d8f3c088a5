#include "bss/align.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace bss {

double rmsd(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  if (p.size() != q.size() || p.empty())
    throw std::runtime_error("correspondence length mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] - q[i]).squaredNorm();
  return std::sqrt(sum / static_cast<double>(p.size()));
}

Superposition kabsch(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  if (p.size() != q.size()) throw std::runtime_error("correspondence length mismatch");
  const std::size_t n = p.size();
  if (n < 3) throw std::runtime_error("degenerate point set");

  Vec3 cp = Vec3::Zero(), cq = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) { cp += p[i]; cq += q[i]; }
  cp /= static_cast<double>(n);
  cq /= static_cast<double>(n);

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();  // covariance of q against p
  for (std::size_t i = 0; i < n; ++i) h += (q[i] - cq) * (p[i] - cp).transpose();

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // rank < 2 after centering leaves the rotation under-determined
  if (sv(1) <= 1e-9 * std::max(1.0, sv(0)))
    throw std::runtime_error("degenerate point set");

  Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((v * u.transpose()).determinant() < 0) d(2, 2) = -1;  // reflection fix

  Superposition s;
  s.rotation = v * d * u.transpose();
  s.translation = cp - s.rotation * cq;
  s.rmsd = rmsd(p, bss::apply(s, q));  // qualified: ADL would find std::apply
  return s;
}

std::vector<Vec3> apply(const Superposition& s, const std::vector<Vec3>& points) {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const Vec3& x : points) out.push_back(s.rotation * x + s.translation);
  return out;
}

Vec3 apply(const Superposition& s, const Vec3& point) {
  return s.rotation * point + s.translation;
}

LigandRmsdScore ligand_rmsd(const std::vector<Vec3>& ligand_a,
                            const std::vector<Vec3>& ligand_b,
                            const Superposition& site_superposition,
                            const VertexMapping& mapping) {
  if (mapping.pairs.size() < 3)
    throw std::runtime_error("insufficient correspondence");

  std::vector<Vec3> pa, pb;
  pa.reserve(mapping.pairs.size());
  pb.reserve(mapping.pairs.size());
  for (const auto& [ia, ib] : mapping.pairs) {
    pa.push_back(ligand_a.at(ia));
    pb.push_back(ligand_b.at(ib));
  }

  LigandRmsdScore score;
  score.observed_rmsd = rmsd(pa, bss::apply(site_superposition, pb));
  score.optimal_rmsd = kabsch(pa, pb).rmsd;
  score.ligand_rmsd = score.observed_rmsd - score.optimal_rmsd;
  return score;
}

double normalize_score(double target_query, double query_query) {
  if (query_query <= 0) throw std::runtime_error("invalid self-score");
  return target_query / query_query;
}

}  // namespace bss
