#include "eitmono/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eitmono {

namespace {

double signed_area(Point2 a, Point2 b, Point2 c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

int ceil_count(double x) {
  // ceil with a guard against 20.000000000000004-style roundoff
  return static_cast<int>(std::ceil(x - 1e-9));
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("mesh: " + what); }

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return signed_area(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
}

Point2 Mesh::triangle_centroid(int t) const {
  const auto& tri = triangles[t];
  return (1.0 / 3.0) * (nodes[tri[0]] + nodes[tri[1]] + nodes[tri[2]]);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t) a += triangle_area(t);
  return a;
}

std::vector<int> Mesh::electrode_of_node() const {
  std::vector<int> label(nodes.size(), -1);
  for (std::size_t i = 0; i < boundary_edges.size(); ++i) {
    const int e = electrode_of_edge[i];
    if (e < 0) continue;
    for (int n : boundary_edges[i]) {
      if (label[n] != -1 && label[n] != e) fail("node shared by two electrodes");
      label[n] = e;
    }
  }
  return label;
}

Mesh build_disk_mesh(double radius, const ElectrodeLayout& layout, double target_h) {
  if (!(radius > 0.0)) fail("radius must be positive");
  if (!(target_h > 0.0)) fail("target_h must be positive");
  if (layout.count < 2) fail("electrode count must be at least 2");
  if (!(layout.coverage > 0.0 && layout.coverage < 1.0)) fail("electrode coverage must lie in (0, 1)");

  const int m = layout.count;
  const double sector = 2.0 * std::numbers::pi / m;
  const double arc = layout.coverage * sector;
  const double gap = sector - arc;

  const int n_e = ceil_count(arc * radius / target_h);
  if (n_e < 2) {
    std::ostringstream os;
    os << "electrode under-resolved: target_h=" << target_h << " gives " << n_e
       << " edge(s) per electrode arc, need at least 2; decrease target_h";
    fail(os.str());
  }
  const int n_g = std::max(1, ceil_count(gap * radius / target_h));

  // One shared angular grid for every ring: electrode arcs split into n_e
  // equal steps, gaps into n_g, so boundary labels align with node columns.
  std::vector<double> theta;
  std::vector<int> edge_label;  // label of the boundary edge starting at theta[i]
  theta.reserve(static_cast<std::size_t>(m) * (n_e + n_g));
  for (int l = 0; l < m; ++l) {
    const double base = layout.start_angle + l * sector;
    for (int t = 0; t < n_e; ++t) {
      theta.push_back(base + arc * t / n_e);
      edge_label.push_back(l);
    }
    for (int t = 0; t < n_g; ++t) {
      theta.push_back(base + arc + gap * t / n_g);
      edge_label.push_back(-1);
    }
  }
  const int nb = static_cast<int>(theta.size());
  const int rings = std::max(1, ceil_count(radius / target_h));

  Mesh mesh;
  mesh.electrode_count = m;
  mesh.level = 0;
  mesh.center = {0.0, 0.0};
  mesh.radius = radius;
  mesh.nodes.reserve(1 + static_cast<std::size_t>(nb) * rings);
  mesh.nodes.push_back({0.0, 0.0});
  for (int j = 1; j <= rings; ++j) {
    const double r = radius * j / rings;
    for (int i = 0; i < nb; ++i) {
      mesh.nodes.push_back({r * std::cos(theta[i]), r * std::sin(theta[i])});
    }
  }
  const auto idx = [nb](int ring, int i) { return 1 + (ring - 1) * nb + (i % nb); };

  mesh.triangles.reserve(static_cast<std::size_t>(nb) * (2 * rings - 1));
  for (int i = 0; i < nb; ++i) {
    mesh.triangles.push_back({0, idx(1, i), idx(1, i + 1)});
  }
  for (int j = 1; j < rings; ++j) {
    for (int i = 0; i < nb; ++i) {
      const int a = idx(j, i), b = idx(j, i + 1);
      const int c = idx(j + 1, i), d = idx(j + 1, i + 1);
      mesh.triangles.push_back({a, c, d});
      mesh.triangles.push_back({a, d, b});
    }
  }

  mesh.boundary_edges.reserve(nb);
  mesh.electrode_of_edge.reserve(nb);
  for (int i = 0; i < nb; ++i) {
    mesh.boundary_edges.push_back({idx(rings, i), idx(rings, i + 1)});
    mesh.electrode_of_edge.push_back(edge_label[i]);
  }
  return mesh;
}

Mesh refine_mesh(const Mesh& in) {
  Mesh out;
  out.electrode_count = in.electrode_count;
  out.level = in.level + 1;
  out.center = in.center;
  out.radius = in.radius;
  out.nodes = in.nodes;

  std::set<std::pair<int, int>> boundary;
  for (const auto& e : in.boundary_edges) {
    boundary.insert(std::minmax(e[0], e[1]));
  }

  std::map<std::pair<int, int>, int> midpoint;
  const auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    if (const auto it = midpoint.find(key); it != midpoint.end()) return it->second;
    Point2 p = 0.5 * (in.nodes[a] + in.nodes[b]);
    if (boundary.count(key)) {
      // keep refined boundary nodes on the circle
      const Point2 d = p - in.center;
      p = in.center + (in.radius / norm(d)) * d;
    }
    const int id = static_cast<int>(out.nodes.size());
    out.nodes.push_back(p);
    midpoint.emplace(key, id);
    return id;
  };

  out.triangles.reserve(in.triangles.size() * 4);
  for (const auto& tri : in.triangles) {
    const int v0 = tri[0], v1 = tri[1], v2 = tri[2];
    const int m01 = mid(v0, v1), m12 = mid(v1, v2), m20 = mid(v2, v0);
    out.triangles.push_back({v0, m01, m20});
    out.triangles.push_back({m01, v1, m12});
    out.triangles.push_back({m20, m12, v2});
    out.triangles.push_back({m01, m12, m20});
  }

  out.boundary_edges.reserve(in.boundary_edges.size() * 2);
  out.electrode_of_edge.reserve(in.boundary_edges.size() * 2);
  for (std::size_t i = 0; i < in.boundary_edges.size(); ++i) {
    const int a = in.boundary_edges[i][0], b = in.boundary_edges[i][1];
    const int m = mid(a, b);
    out.boundary_edges.push_back({a, m});
    out.boundary_edges.push_back({m, b});
    out.electrode_of_edge.push_back(in.electrode_of_edge[i]);
    out.electrode_of_edge.push_back(in.electrode_of_edge[i]);
  }
  return out;
}

std::vector<int> elements_in_region(const Mesh& mesh, const RegionSpec& region) {
  std::vector<int> elems;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    if (region.contains(mesh.triangle_centroid(t))) elems.push_back(t);
  }
  return elems;
}

void validate_mesh(const Mesh& mesh) {
  const int nn = mesh.node_count();
  if (nn == 0 || mesh.triangles.empty()) fail("empty mesh");
  for (const auto& p : mesh.nodes) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("non-finite node coordinate");
  }
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    for (int v : mesh.triangles[t]) {
      if (v < 0 || v >= nn) fail("triangle vertex index out of range");
    }
    if (!(mesh.triangle_area(t) > 0.0)) fail("triangle not counterclockwise / degenerate");
  }

  // Edges incident to exactly one triangle must match the boundary list.
  std::map<std::pair<int, int>, int> edge_use;
  std::set<std::pair<int, int>> tri_directed;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      ++edge_use[std::minmax(a, b)];
      tri_directed.insert({a, b});
    }
  }
  std::set<std::pair<int, int>> boundary_from_tris;
  for (const auto& [e, uses] : edge_use) {
    if (uses > 2) fail("edge shared by more than two triangles");
    if (uses == 1) boundary_from_tris.insert(e);
  }
  if (mesh.boundary_edges.size() != boundary_from_tris.size()) {
    fail("boundary edge list does not match triangle incidence");
  }
  for (const auto& e : mesh.boundary_edges) {
    if (!boundary_from_tris.count(std::minmax(e[0], e[1]))) {
      fail("listed boundary edge is interior or unknown");
    }
    // counterclockwise traversal: the owning triangle uses the same direction
    if (!tri_directed.count({e[0], e[1]})) fail("boundary edge not oriented counterclockwise");
  }

  // One closed cycle covering every boundary edge.
  std::map<int, int> succ;
  for (const auto& e : mesh.boundary_edges) {
    if (!succ.emplace(e[0], e[1]).second) fail("boundary node with two outgoing edges");
  }
  int at = mesh.boundary_edges[0][0];
  std::size_t steps = 0;
  do {
    const auto it = succ.find(at);
    if (it == succ.end()) fail("boundary cycle broken");
    at = it->second;
    ++steps;
  } while (at != mesh.boundary_edges[0][0] && steps <= succ.size());
  if (steps != succ.size()) fail("boundary is not a single closed cycle");

  // Electrode labelling: contiguous arcs, each with >= 2 edges, all present.
  if (mesh.electrode_of_edge.size() != mesh.boundary_edges.size()) {
    fail("electrode label list size mismatch");
  }
  if (mesh.electrode_count < 2) fail("electrode count must be at least 2");
  std::map<std::pair<int, int>, int> label_of;  // directed boundary edge -> label
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    const int lab = mesh.electrode_of_edge[i];
    if (lab < -1 || lab >= mesh.electrode_count) fail("electrode label out of range");
    label_of[{mesh.boundary_edges[i][0], mesh.boundary_edges[i][1]}] = lab;
  }
  // walk the cycle once, recording the label sequence in traversal order
  std::vector<int> seq;
  at = mesh.boundary_edges[0][0];
  for (std::size_t i = 0; i < succ.size(); ++i) {
    const int next = succ[at];
    seq.push_back(label_of[{at, next}]);
    at = next;
  }
  // rotate so the cycle starts at an insulated edge (coverage < 1 ensures one)
  const auto gap_it = std::find(seq.begin(), seq.end(), -1);
  if (gap_it == seq.end()) fail("no insulated gap between electrodes");
  std::rotate(seq.begin(), gap_it, seq.end());
  std::vector<int> run_count(mesh.electrode_count, 0);
  std::vector<int> edge_count(mesh.electrode_count, 0);
  int prev = -1;
  for (int lab : seq) {
    if (lab >= 0) {
      if (lab != prev) ++run_count[lab];
      ++edge_count[lab];
    }
    prev = lab;
  }
  for (int l = 0; l < mesh.electrode_count; ++l) {
    if (run_count[l] == 0) fail("electrode with no boundary edges");
    if (run_count[l] > 1) fail("electrode arc is not contiguous");
    if (edge_count[l] < 2) fail("electrode arc has fewer than 2 edges");
  }
  mesh.electrode_of_node();  // throws if arcs of distinct electrodes touch

  // Boundary nodes must sit on the circle.
  std::set<int> boundary_nodes;
  for (const auto& e : mesh.boundary_edges) {
    boundary_nodes.insert(e[0]);
    boundary_nodes.insert(e[1]);
  }
  for (int n : boundary_nodes) {
    if (std::abs(distance(mesh.nodes[n], mesh.center) - mesh.radius) > 1e-9 * mesh.radius) {
      fail("boundary node off the circle");
    }
  }
}

}  // namespace eitmono
