#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "liouville/fft.hpp"
#include "liouville/holo_disk.hpp"

namespace liouville {
namespace {

constexpr double kGrading = 1.15;

// |Phi'| on the doubled angular grid (theta_j and theta_j + h/2) at radius r.
std::vector<double> doubled_ring(const DiskMap& d, double r, std::size_t n_angles) {
  return derivative_modulus_on_ring(d, r, 2 * n_angles);
}

struct Graph {
  std::size_t nodes = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;

  void add(std::size_t a, std::size_t b, double w) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }
};

Graph build_graph(const DiskMap& d, std::size_t L) {
  const DistanceMesh mesh = graded_mesh(L);
  const std::size_t R = mesh.radii.size();
  const double h = kTwoPi / static_cast<double>(L);
  Graph g;
  g.nodes = R * L + 1;
  g.adj.resize(g.nodes);
  auto id = [L](std::size_t ring, std::size_t j) { return ring * L + (j % L); };
  const std::size_t center = R * L;

  for (std::size_t i = 0; i < R; ++i) {
    const double r = mesh.radii[i];
    // angular edges: chord midpoint sits at r cos(h/2), angle theta_j + h/2
    auto ang = doubled_ring(d, r * std::cos(0.5 * h), L);
    const double chord = 2.0 * r * std::sin(0.5 * h);
    for (std::size_t j = 0; j < L; ++j) g.add(id(i, j), id(i, j + 1), ang[2 * j + 1] * chord);

    if (i + 1 < R) {
      const double r2 = mesh.radii[i + 1];
      auto rad = doubled_ring(d, 0.5 * (r + r2), L);
      for (std::size_t j = 0; j < L; ++j) g.add(id(i, j), id(i + 1, j), rad[2 * j] * (r - r2));
      // diagonals; the midpoint modulus is exact, its angle is taken as theta_j +- h/2
      cplx mid = 0.5 * (cplx(r, 0.0) + std::polar(r2, h));
      auto diag = doubled_ring(d, std::abs(mid), L);
      const double len = std::abs(cplx(r, 0.0) - std::polar(r2, h));
      for (std::size_t j = 0; j < L; ++j) {
        g.add(id(i, j), id(i + 1, j + 1), diag[2 * j + 1] * len);
        g.add(id(i, j + 1), id(i + 1, j), diag[2 * j + 1] * len);
      }
    } else {
      auto spoke = doubled_ring(d, 0.5 * r, L);
      for (std::size_t j = 0; j < L; ++j) g.add(id(i, j), center, spoke[2 * j] * r);
    }
  }
  return g;
}

std::vector<double> dijkstra(const Graph& g, std::size_t source) {
  std::vector<double> dist(g.nodes, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du > dist[u]) continue;
    for (const auto& [v, w] : g.adj[u]) {
      double nd = du + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

std::size_t boundary_node(cplx p, std::size_t L) {
  if (std::abs(std::abs(p) - 1.0) > 1e-9) throw Error(ErrorCode::InvalidInput, "distance endpoints must lie on S^1");
  return PeriodicGrid::nearest_index(std::arg(p), L);
}

void check_angles(std::size_t L) {
  if (L < 8 || L % 4 != 0) throw Error(ErrorCode::InvalidInput, "mesh resolution must be a multiple of 4, >= 8");
}

}  // namespace

DistanceMesh graded_mesh(std::size_t n_angles) {
  check_angles(n_angles);
  DistanceMesh m;
  m.n_angles = n_angles;
  double r = 1.0, delta = kTwoPi / static_cast<double>(n_angles);
  m.radii.push_back(r);
  while (r - delta > delta) {
    r -= delta;
    m.radii.push_back(r);
    delta *= kGrading;
  }
  return m;
}

DistanceResult conformal_distance(const DiskMap& d, cplx p, cplx q, std::size_t n_angles) {
  check_angles(n_angles);
  std::size_t a = boundary_node(p, n_angles), b = boundary_node(q, n_angles);
  if (a == b) throw Error(ErrorCode::InvalidInput, "endpoints coincide at this mesh resolution");
  Graph g = build_graph(d, n_angles);
  auto dist = dijkstra(g, a);
  DistanceResult r;
  r.distance = dist[b];
  r.mesh_h = kTwoPi / static_cast<double>(n_angles);
  for (cplx z : {p, q}) {
    if (std::abs(z + cplx(0.0, 1.0)) < 2.0 * r.mesh_h)
      r.warnings.push_back({"PuncturedMesh", "endpoint adjacent to -i; metric may be singular there"});
  }
  return r;
}

std::vector<double> conformal_distances_from(const DiskMap& d, cplx p, const std::vector<cplx>& qs,
                                             std::size_t n_angles) {
  check_angles(n_angles);
  Graph g = build_graph(d, n_angles);
  auto dist = dijkstra(g, boundary_node(p, n_angles));
  std::vector<double> out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back(dist[boundary_node(q, n_angles)]);
  return out;
}

}  // namespace liouville
