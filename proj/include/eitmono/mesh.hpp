#pragma once

#include <array>
#include <string>
#include <vector>

#include "eitmono/geometry.hpp"

namespace eitmono {

/// Equispaced surface electrodes on the boundary circle. Electrode l spans
/// the arc starting at start_angle + l * (2*pi/count) with angular width
/// coverage * (2*pi/count); the remainder of each sector is insulated gap.
struct ElectrodeLayout {
  int count = 16;
  double coverage = 0.5;    // fraction of each sector covered, in (0, 1)
  double start_angle = 0.0; // radians, start of electrode 0's arc
};

/// Conforming triangulation of a disk with labelled boundary edges.
///
/// Invariants (checked by validate_mesh):
///  - triangles are counterclockwise with strictly positive area;
///  - boundary_edges form one closed cycle traversed counterclockwise and
///    are exactly the edges incident to a single triangle;
///  - electrode_of_edge[i] in {-1, 0, .., electrode_count-1}; each
///    electrode's edges form one contiguous arc of at least 2 edges and
///    distinct electrodes are separated by insulated (-1) edges.
struct Mesh {
  std::vector<Point2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<int> electrode_of_edge;  // parallel to boundary_edges; -1 = insulated
  int electrode_count = 0;
  int level = 0;            // number of uniform refinements applied
  Point2 center{0.0, 0.0};  // disk center (fixed at the origin by the builder)
  double radius = 0.0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  double triangle_area(int t) const;
  Point2 triangle_centroid(int t) const;
  double total_area() const;

  /// electrode_of_node[n] = electrode index if node n lies on an electrode
  /// arc, else -1. Derived from the labelled boundary edges.
  std::vector<int> electrode_of_node() const;
};

/// Builds a structured triangulation of the disk of the given radius
/// centered at the origin. target_h bounds both the radial ring spacing and
/// the boundary edge length; every electrode arc gets at least 2 boundary
/// edges or the call fails (refine the target instead of silently merging).
Mesh build_disk_mesh(double radius, const ElectrodeLayout& layout, double target_h);

/// Uniform red refinement: each triangle splits into 4 via edge midpoints;
/// midpoints of boundary edges are projected back onto the circle and the
/// two half-edges inherit the parent's electrode label. level increments.
Mesh refine_mesh(const Mesh& mesh);

/// Indices of triangles whose centroid lies in the region.
std::vector<int> elements_in_region(const Mesh& mesh, const RegionSpec& region);

/// Throws std::runtime_error (message names the violated property) if any
/// mesh invariant fails. Used by tests and by the CLI verify path.
void validate_mesh(const Mesh& mesh);

}  // namespace eitmono
