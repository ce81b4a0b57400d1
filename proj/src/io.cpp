#include "eitmono/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("io: " + what); }

void append_header(std::ostringstream& os, const HeaderFields& fields) {
  for (const auto& [key, value] : fields) os << "# " << key << ": " << value << "\n";
}

std::string sanitize_csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_hash(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string region_to_string(const RegionSpec& region) {
  std::ostringstream os;
  if (region.kind == RegionSpec::Kind::Disk) {
    os << "disk " << format_g17(region.center.x) << " " << format_g17(region.center.y) << " "
       << format_g17(region.radius);
  } else {
    os << "polygon";
    for (const auto& v : region.vertices) {
      os << " " << format_g17(v.x) << " " << format_g17(v.y);
    }
  }
  return os.str();
}

std::string render_mesh_dump(const Mesh& mesh, const HeaderFields& extra) {
  std::ostringstream os;
  os << "# format: mesh v1\n";
  append_header(os, extra);
  os << "# nodes: " << mesh.node_count() << "\n";
  os << "# triangles: " << mesh.triangle_count() << "\n";
  os << "# boundary_edges: " << mesh.boundary_edges.size() << "\n";
  os << "# electrodes: " << mesh.electrode_count << "\n";
  os << "# level: " << mesh.level << "\n";
  os << "# radius: " << format_g17(mesh.radius) << "\n";
  os << "# center: " << format_g17(mesh.center.x) << " " << format_g17(mesh.center.y) << "\n";
  os << "# electrode labels are 1-based; 0 = insulated\n";
  os << "nodes index x y\n";
  for (int n = 0; n < mesh.node_count(); ++n) {
    os << n << " " << format_g17(mesh.nodes[n].x) << " " << format_g17(mesh.nodes[n].y) << "\n";
  }
  os << "triangles index v0 v1 v2\n";
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    os << t << " " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  os << "boundary_edges index a b electrode\n";
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    os << i << " " << mesh.boundary_edges[i][0] << " " << mesh.boundary_edges[i][1] << " "
       << mesh.electrode_of_edge[i] + 1 << "\n";
  }
  os << "end\n";
  return os.str();
}

namespace {

void render_real_block(std::ostringstream& os, const Eigen::MatrixXd& block) {
  for (int r = 0; r < block.rows(); ++r) {
    for (int c = 0; c < block.cols(); ++c) {
      if (c) os << ",";
      os << format_g17(block(r, c));
    }
    os << "\n";
  }
}

}  // namespace

std::string render_matrix_csv(const MeasurementMatrix& matrix, const HeaderFields& extra) {
  std::ostringstream os;
  os << "# format: measurement-matrix v1\n";
  append_header(os, extra);
  os << "# mode: " << (matrix.provenance.mode == FreqMode::AC ? "AC" : "DC") << "\n";
  if (matrix.provenance.modulation.has_value()) {
    const Modulation& mod = *matrix.provenance.modulation;
    os << "# modulated: yes\n";
    os << "# modulation_sign: " << (mod.sign > 0 ? "+1" : "-1") << "\n";
    os << "# modulation_beta: " << format_g17(mod.beta) << "\n";
    os << "# modulation_region: " << region_to_string(mod.region) << "\n";
  } else {
    os << "# modulated: no\n";
  }
  os << "# mesh_level: " << matrix.provenance.mesh_level << "\n";
  os << "# omega: " << format_g17(matrix.provenance.omega) << "\n";
  os << "# patterns:";
  for (const auto& [j, k] : matrix.patterns.pairs) os << " " << j + 1 << "-" << k + 1;
  os << "\n";
  os << "# symmetry_defect_rel: " << format_g17(matrix.symmetry_defect_rel()) << "\n";
  os << "# size: " << matrix.entries.rows() << "\n";
  os << "# block: real\n";
  render_real_block(os, matrix.entries.real());
  os << "# block: imag\n";
  render_real_block(os, matrix.entries.imag());
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail("malformed number '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) fail("malformed number '" + s + "'");
  return v;
}

RegionSpec parse_region_string(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  if (kind == "disk") {
    double cx, cy, r;
    if (!(is >> cx >> cy >> r)) fail("malformed disk region '" + text + "'");
    return RegionSpec::disk({cx, cy}, r);
  }
  if (kind == "polygon") {
    std::vector<Point2> vertices;
    double x, y;
    while (is >> x >> y) vertices.push_back({x, y});
    return RegionSpec::polygon(std::move(vertices));
  }
  fail("unknown region kind '" + kind + "'");
}

}  // namespace

MeasurementMatrix parse_matrix_csv(const std::string& text) {
  std::map<std::string, std::string> header;
  std::vector<std::vector<double>> real_rows, imag_rows;
  std::vector<std::vector<double>>* current = nullptr;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string value = line.substr(colon + 1);
        const auto strip = [](std::string& s) {
          const auto a = s.find_first_not_of(" \t");
          const auto b = s.find_last_not_of(" \t\r");
          s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
        };
        strip(key);
        strip(value);
        header[key] = value;
        if (key == "block") current = (value == "real") ? &real_rows : &imag_rows;
      }
      continue;
    }
    if (!current) fail("matrix data before block marker");
    std::vector<double> row;
    for (const auto& piece : split(line, ',')) row.push_back(parse_double(piece));
    current->push_back(std::move(row));
  }

  if (!header.count("size")) fail("matrix file missing size header");
  const int n = static_cast<int>(parse_double(header["size"]));
  if (static_cast<int>(real_rows.size()) != n || static_cast<int>(imag_rows.size()) != n) {
    fail("matrix block row count does not match size header");
  }

  MeasurementMatrix out;
  out.entries.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(real_rows[r].size()) != n || static_cast<int>(imag_rows[r].size()) != n) {
      fail("matrix row length does not match size header");
    }
    for (int c = 0; c < n; ++c) out.entries(r, c) = Complex(real_rows[r][c], imag_rows[r][c]);
  }

  if (header.count("patterns")) {
    std::istringstream ps(header["patterns"]);
    std::string pair_text;
    while (ps >> pair_text) {
      const auto dash = pair_text.find('-');
      if (dash == std::string::npos) fail("malformed pattern pair '" + pair_text + "'");
      try {
        out.patterns.pairs.emplace_back(std::stoi(pair_text.substr(0, dash)) - 1,
                                        std::stoi(pair_text.substr(dash + 1)) - 1);
      } catch (const std::exception&) {
        fail("malformed pattern pair '" + pair_text + "'");
      }
    }
  }
  if (header.count("mode")) {
    out.provenance.mode = (header["mode"] == "AC") ? FreqMode::AC : FreqMode::DC;
  }
  if (header.count("mesh_level")) {
    out.provenance.mesh_level = static_cast<int>(parse_double(header["mesh_level"]));
  }
  if (header.count("omega")) out.provenance.omega = parse_double(header["omega"]);
  if (header.count("modulated") && header["modulated"] == "yes") {
    Modulation mod;
    mod.sign = header.count("modulation_sign") && header["modulation_sign"] == "-1" ? -1 : +1;
    if (header.count("modulation_beta")) mod.beta = parse_double(header["modulation_beta"]);
    if (header.count("modulation_region")) {
      mod.region = parse_region_string(header["modulation_region"]);
    }
    out.provenance.modulation = mod;
  }
  return out;
}

std::string render_report_csv(const std::vector<std::string>& region_names,
                              const std::vector<DefinitenessReport>& reports,
                              const HeaderFields& extra) {
  if (region_names.size() != reports.size()) fail("report row count mismatch");
  std::ostringstream os;
  os << "# format: definiteness-report v1\n";
  append_header(os, extra);
  const int n = reports.empty() ? 0 : static_cast<int>(reports.front().eigenvalues.size());
  os << "# columns: region,verdict,margin,min_eigenvalue";
  for (int i = 1; i <= n; ++i) os << ",ev_" << i;
  os << "\n";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& rep = reports[r];
    os << sanitize_csv_field(region_names[r]) << "," << (rep.verdict ? 1 : 0) << ","
       << format_g17(rep.margin) << "," << format_g17(rep.eigenvalues[0]);
    for (int i = 0; i < rep.eigenvalues.size(); ++i) os << "," << format_g17(rep.eigenvalues[i]);
    os << "\n";
  }
  return os.str();
}

std::string render_scan_csv(const ScanResult& result, const HeaderFields& extra) {
  std::ostringstream os;
  os << "# format: scan-result v1\n";
  append_header(os, extra);
  os << "# delta: " << format_g17(result.delta_used) << "\n";
  os << "# case: " << (result.case_used == TestCase::CaseA ? "a" : "b") << "\n";
  os << "# beta: " << format_g17(result.beta_used) << "\n";
  os << "# mesh_level: " << result.mesh_level << "\n";
  os << "# columns: index,center_x,center_y,radius,min_eigenvalue,margin,verdict,error\n";
  for (const auto& ball : result.balls) {
    os << ball.index << "," << format_g17(ball.center.x) << "," << format_g17(ball.center.y)
       << "," << format_g17(ball.radius) << ",";
    if (ball.failed) {
      os << "nan,nan,-1," << sanitize_csv_field(ball.error);
    } else {
      os << format_g17(ball.min_eigenvalue) << "," << format_g17(ball.margin) << ","
         << (ball.verdict ? 1 : 0) << ",";
    }
    os << "\n";
  }
  return os.str();
}

std::string render_scan_pgm(const ScanResult& result, double spacing, Point2 domain_center,
                            const HeaderFields& extra) {
  if (result.balls.empty()) fail("cannot raster an empty scan");
  if (!(spacing > 0.0)) fail("raster spacing must be positive");

  int imin = 0, imax = 0, jmin = 0, jmax = 0;
  std::vector<std::pair<int, int>> cells(result.balls.size());
  for (std::size_t b = 0; b < result.balls.size(); ++b) {
    const int i = static_cast<int>(std::lround((result.balls[b].center.x - domain_center.x) / spacing));
    const int j = static_cast<int>(std::lround((result.balls[b].center.y - domain_center.y) / spacing));
    cells[b] = {i, j};
    imin = std::min(imin, i);
    imax = std::max(imax, i);
    jmin = std::min(jmin, j);
    jmax = std::max(jmax, j);
  }
  const int nx = imax - imin + 1, ny = jmax - jmin + 1;
  std::vector<int> pixel(static_cast<std::size_t>(nx) * ny, 0);
  for (std::size_t b = 0; b < result.balls.size(); ++b) {
    const auto [i, j] = cells[b];
    const int row = jmax - j;  // top row = largest y
    const int col = i - imin;
    const auto& ball = result.balls[b];
    pixel[static_cast<std::size_t>(row) * nx + col] = ball.failed ? 192 : (ball.verdict ? 255 : 128);
  }

  std::ostringstream os;
  os << "P2\n";
  os << "# format: scan-raster v1\n";
  append_header(os, extra);
  os << "# pixel values: 0 = no ball, 128 = ball unmarked, 192 = ball failed, 255 = ball marked\n";
  os << "# grid: origin_x " << format_g17(domain_center.x + imin * spacing) << " origin_y "
     << format_g17(domain_center.y + jmin * spacing) << " spacing " << format_g17(spacing)
     << " (origin = bottom-left pixel center; rows top-down)\n";
  os << nx << " " << ny << "\n255\n";
  for (int row = 0; row < ny; ++row) {
    for (int col = 0; col < nx; ++col) {
      if (col) os << " ";
      os << pixel[static_cast<std::size_t>(row) * nx + col];
    }
    os << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail("cannot open '" + tmp.string() + "' for writing");
    os << content;
    if (!os.flush()) fail("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail("cannot open '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace eitmono
