#include <cmath>
#include <string>
#include <vector>

#include "fluxspec/errors.hpp"
#include "fluxspec/fem.hpp"

namespace fluxspec::fem {

OperatorPair assemble(const mesh::Mesh& mesh) {
  const auto n = static_cast<Eigen::Index>(mesh.nodes.size());
  std::vector<Eigen::Triplet<double>> k_entries;
  std::vector<Eigen::Triplet<double>> m_entries;
  k_entries.reserve(mesh.triangles.size() * 9);
  m_entries.reserve(mesh.triangles.size() * 9);

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.triangle_area(t);
    if (area <= 1e-14) throw DomainError("assemble: degenerate triangle " + std::to_string(t));
    // Edge opposite vertex i; ∇φ_i is its outward-rotated normal over 2|T|.
    double ex[3];
    double ey[3];
    for (int i = 0; i < 3; ++i) {
      const auto& p = mesh.nodes[tri[(i + 1) % 3]];
      const auto& q = mesh.nodes[tri[(i + 2) % 3]];
      ex[i] = q[0] - p[0];
      ey[i] = q[1] - p[1];
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        k_entries.emplace_back(tri[i], tri[j], (ex[i] * ex[j] + ey[i] * ey[j]) / (4.0 * area));
        m_entries.emplace_back(tri[i], tri[j], i == j ? area / 6.0 : area / 12.0);
      }
    }
  }

  OperatorPair ops;
  ops.K.resize(n, n);
  ops.M.resize(n, n);
  ops.K.setFromTriplets(k_entries.begin(), k_entries.end());
  ops.M.setFromTriplets(m_entries.begin(), m_entries.end());
  ops.b = Eigen::VectorXd::Zero(n);
  for (const auto& e : mesh.boundary_edges) {
    const auto& p = mesh.nodes[e[0]];
    const auto& q = mesh.nodes[e[1]];
    const double half = 0.5 * std::hypot(q[0] - p[0], q[1] - p[1]);
    ops.b(e[0]) += half;
    ops.b(e[1]) += half;
  }
  ops.mesh = mesh;
  ops.area = mesh.area();
  ops.perimeter = mesh.perimeter();
  return ops;
}

}  // namespace fluxspec::fem
