#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace eitmono {

using Complex = std::complex<double>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::sqrt(dot(p, p)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// A planar test region: a disk or a simple (non self-intersecting) polygon.
struct RegionSpec {
  enum class Kind { Disk, Polygon };

  Kind kind = Kind::Disk;
  Point2 center{};                // disk only
  double radius = 0.0;            // disk only
  std::vector<Point2> vertices;   // polygon only

  static RegionSpec disk(Point2 center, double radius);
  static RegionSpec polygon(std::vector<Point2> vertices);

  bool contains(Point2 p) const;

  /// Largest distance from `origin` to any point of the region.
  double farthest_distance(Point2 origin) const;

  /// True if the whole region lies strictly inside the disk (c, R).
  bool strictly_inside_disk(Point2 c, double R) const;
};

/// Conservative overlap test used to validate that inclusion regions are
/// pairwise disjoint. Exact for disk/disk; vertex-based for polygons.
bool regions_overlap(const RegionSpec& a, const RegionSpec& b);

}  // namespace eitmono
