#include "eitmono/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace eitmono {

RegionSpec RegionSpec::disk(Point2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("region: disk radius must be positive");
  RegionSpec r;
  r.kind = Kind::Disk;
  r.center = center;
  r.radius = radius;
  return r;
}

RegionSpec RegionSpec::polygon(std::vector<Point2> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("region: polygon needs at least 3 vertices");
  RegionSpec r;
  r.kind = Kind::Polygon;
  r.vertices = std::move(vertices);
  return r;
}

namespace {

// Even-odd ray casting; boundary classification is not guaranteed either way.
bool point_in_polygon(const std::vector<Point2>& v, Point2 p) {
  bool in = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const bool straddles = (v[i].y > p.y) != (v[j].y > p.y);
    if (straddles &&
        p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
      in = !in;
    }
  }
  return in;
}

}  // namespace

bool RegionSpec::contains(Point2 p) const {
  if (kind == Kind::Disk) return distance(p, center) <= radius;
  return point_in_polygon(vertices, p);
}

double RegionSpec::farthest_distance(Point2 origin) const {
  if (kind == Kind::Disk) return distance(center, origin) + radius;
  double d = 0.0;
  for (const auto& v : vertices) d = std::max(d, distance(v, origin));
  return d;
}

bool RegionSpec::strictly_inside_disk(Point2 c, double R) const {
  return farthest_distance(c) < R;
}

bool regions_overlap(const RegionSpec& a, const RegionSpec& b) {
  if (a.kind == RegionSpec::Kind::Disk && b.kind == RegionSpec::Kind::Disk) {
    return distance(a.center, b.center) < a.radius + b.radius;
  }
  // Polygon cases: test each vertex against the other region, plus disk
  // centers against polygons. Adequate for validation of sane inputs.
  const auto vertex_hit = [](const RegionSpec& poly, const RegionSpec& other) {
    for (const auto& v : poly.vertices) {
      if (other.contains(v)) return true;
    }
    return false;
  };
  if (a.kind == RegionSpec::Kind::Polygon && vertex_hit(a, b)) return true;
  if (b.kind == RegionSpec::Kind::Polygon && vertex_hit(b, a)) return true;
  if (a.kind == RegionSpec::Kind::Disk && b.contains(a.center)) return true;
  if (b.kind == RegionSpec::Kind::Disk && a.contains(b.center)) return true;
  return false;
}

}  // namespace eitmono
