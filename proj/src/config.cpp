#include "eitmono/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eitmono/io.hpp"

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("config: " + what); }

[[noreturn]] void fail_at(int line, const std::string& what) {
  std::ostringstream os;
  os << "config: line " << line << ": " << what;
  throw std::runtime_error(os.str());
}

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_number(const std::string& s, int line, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail_at(line, "value of '" + key + "' is not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) fail_at(line, "value of '" + key + "' is not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, int line, const std::string& key) {
  const double v = to_number(s, line, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) fail_at(line, "value of '" + key + "' is not an integer");
  return i;
}

std::vector<Point2> to_points(const std::string& s, int line, const std::string& key) {
  std::istringstream is(s);
  std::vector<double> nums;
  double v;
  while (is >> v) nums.push_back(v);
  if (!is.eof()) fail_at(line, "value of '" + key + "' must be whitespace-separated numbers");
  if (nums.empty() || nums.size() % 2 != 0) {
    fail_at(line, "value of '" + key + "' must hold x y pairs");
  }
  std::vector<Point2> pts(nums.size() / 2);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {nums[2 * i], nums[2 * i + 1]};
  return pts;
}

// Accumulates shape keys of one [inclusion] / [test_region] block and
// resolves them to a RegionSpec once the block closes.
struct RegionAccumulator {
  std::string shape;
  std::optional<Point2> center;
  std::optional<double> radius;
  std::vector<Point2> vertices;
  int start_line = 0;

  bool handle(const std::string& key, const std::string& value, int line) {
    if (key == "shape") {
      if (value != "disk" && value != "polygon") fail_at(line, "shape must be disk or polygon");
      shape = value;
      return true;
    }
    if (key == "center") {
      const auto pts = to_points(value, line, key);
      if (pts.size() != 1) fail_at(line, "center must be one x y pair");
      center = pts[0];
      return true;
    }
    if (key == "radius") {
      radius = to_number(value, line, key);
      return true;
    }
    if (key == "vertices") {
      vertices = to_points(value, line, key);
      return true;
    }
    return false;
  }

  RegionSpec resolve(const std::string& block) const {
    if (shape.empty()) fail("missing field 'shape' in [" + block + "] block starting at line " +
                            std::to_string(start_line));
    if (shape == "disk") {
      if (!center.has_value()) fail("missing field 'center' in [" + block + "] block");
      if (!radius.has_value()) fail("missing field 'radius' in [" + block + "] block");
      return RegionSpec::disk(*center, *radius);
    }
    if (vertices.empty()) fail("missing field 'vertices' in [" + block + "] block");
    return RegionSpec::polygon(vertices);
  }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.config_hash = fnv1a(text);

  bool geometry_radius_seen = false, geometry_electrodes_seen = false, geometry_h_seen = false;
  bool phantom_sigma_seen = false, phantom_eps_seen = false, phantom_omega_seen = false;

  std::string block;
  RegionAccumulator region_acc;
  std::optional<double> inc_sigma, inc_eps;
  std::string test_region_name;
  RunConfig::ScanBlock scan_acc;
  bool scan_radius_seen = false, scan_spacing_seen = false;

  const auto close_block = [&](int line) {
    if (block == "inclusion") {
      if (!inc_sigma.has_value()) fail("missing field 'sigma' in [inclusion] block");
      if (!inc_eps.has_value()) fail("missing field 'eps' in [inclusion] block");
      cfg.phantom.inclusions.push_back({region_acc.resolve(block), *inc_sigma, *inc_eps});
    } else if (block == "test_region") {
      if (test_region_name.empty()) fail("missing field 'name' in [test_region] block");
      cfg.test_regions.push_back({test_region_name, region_acc.resolve(block)});
    } else if (block == "scan") {
      if (!scan_radius_seen) fail("missing field 'ball_radius' in [scan] block");
      if (!scan_spacing_seen) fail("missing field 'spacing' in [scan] block");
      cfg.scan = scan_acc;
    }
    (void)line;
  };

  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto hash_pos = raw.find('#');
    if (hash_pos != std::string::npos) raw = raw.substr(0, hash_pos);
    const std::string line = strip(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "malformed block header");
      close_block(line_no);
      block = strip(line.substr(1, line.size() - 2));
      static const std::vector<std::string> known = {
          "geometry", "phantom", "inclusion",   "modulation", "detection",
          "scan",     "output",  "test_region", "measurement"};
      bool ok = false;
      for (const auto& k : known) ok = ok || (k == block);
      if (!ok) fail_at(line_no, "unknown block [" + block + "]");
      if (block == "inclusion" || block == "test_region") {
        region_acc = RegionAccumulator{};
        region_acc.start_line = line_no;
        inc_sigma.reset();
        inc_eps.reset();
        test_region_name.clear();
      }
      if (block == "scan") {
        scan_acc = RunConfig::ScanBlock{};
        scan_radius_seen = scan_spacing_seen = false;
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(line_no, "expected 'key = value'");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) fail_at(line_no, "empty key");
    if (value.empty()) fail_at(line_no, "empty value for '" + key + "'");
    if (block.empty()) fail_at(line_no, "key outside any block");

    if (block == "geometry") {
      if (key == "radius") {
        cfg.geometry.radius = to_number(value, line_no, key);
        geometry_radius_seen = true;
      } else if (key == "electrodes") {
        cfg.geometry.layout.count = to_int(value, line_no, key);
        geometry_electrodes_seen = true;
      } else if (key == "coverage") {
        cfg.geometry.layout.coverage = to_number(value, line_no, key);
      } else if (key == "start_angle") {
        cfg.geometry.layout.start_angle = to_number(value, line_no, key);
      } else if (key == "target_h") {
        cfg.geometry.target_h = to_number(value, line_no, key);
        geometry_h_seen = true;
      } else if (key == "levels") {
        cfg.geometry.levels = to_int(value, line_no, key);
        if (cfg.geometry.levels < 0) fail_at(line_no, "levels must be nonnegative");
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [geometry]");
      }
    } else if (block == "phantom") {
      if (key == "sigma") {
        cfg.phantom.sigma_bg = to_number(value, line_no, key);
        phantom_sigma_seen = true;
      } else if (key == "eps") {
        cfg.phantom.eps_bg = to_number(value, line_no, key);
        phantom_eps_seen = true;
      } else if (key == "omega") {
        cfg.phantom.omega = to_number(value, line_no, key);
        phantom_omega_seen = true;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [phantom]");
      }
    } else if (block == "inclusion") {
      if (region_acc.handle(key, value, line_no)) continue;
      if (key == "sigma") {
        inc_sigma = to_number(value, line_no, key);
      } else if (key == "eps") {
        inc_eps = to_number(value, line_no, key);
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [inclusion]");
      }
    } else if (block == "test_region") {
      if (region_acc.handle(key, value, line_no)) continue;
      if (key == "name") {
        test_region_name = value;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [test_region]");
      }
    } else if (block == "modulation") {
      if (key == "beta") {
        if (value != "max") to_number(value, line_no, key);  // validate numeric
        cfg.modulation.beta = value;
      } else if (key == "sign") {
        if (value != "auto" && value != "+1" && value != "-1") {
          fail_at(line_no, "sign must be auto, +1 or -1");
        }
        cfg.modulation.sign = value;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [modulation]");
      }
    } else if (block == "detection") {
      if (key == "delta") {
        if (value != "auto") to_number(value, line_no, key);
        cfg.detection.delta = value;
      } else if (key == "case") {
        if (value != "auto" && value != "a" && value != "b") {
          fail_at(line_no, "case must be auto, a or b");
        }
        cfg.detection.case_sel = value;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [detection]");
      }
    } else if (block == "measurement") {
      if (key == "patterns") {
        if (value != "adjacent") fail_at(line_no, "unsupported pattern set '" + value + "'");
        cfg.measurement.patterns = value;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [measurement]");
      }
    } else if (block == "scan") {
      if (key == "ball_radius") {
        scan_acc.ball_radius = to_number(value, line_no, key);
        scan_radius_seen = true;
      } else if (key == "spacing") {
        scan_acc.spacing = to_number(value, line_no, key);
        scan_spacing_seen = true;
      } else if (key == "margin") {
        scan_acc.margin = to_number(value, line_no, key);
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [scan]");
      }
    } else if (block == "output") {
      if (key == "dir") {
        cfg.output.dir = value;
      } else {
        fail_at(line_no, "unknown key '" + key + "' in [output]");
      }
    }
  }
  close_block(line_no);

  if (!geometry_radius_seen) fail("missing required field 'radius' in [geometry]");
  if (!geometry_electrodes_seen) fail("missing required field 'electrodes' in [geometry]");
  if (!geometry_h_seen) fail("missing required field 'target_h' in [geometry]");
  if (!phantom_sigma_seen) fail("missing required field 'sigma' in [phantom]");
  if (!phantom_eps_seen) fail("missing required field 'eps' in [phantom]");
  if (!phantom_omega_seen) fail("missing required field 'omega' in [phantom]");
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

namespace {

double parse_double_or_fail(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    fail(what + " is not a number: '" + text + "'");
  }
  if (pos != text.size()) fail(what + " is not a number: '" + text + "'");
  return v;
}

}  // namespace

double resolve_beta(const std::string& text, const ContrastConstants& cc, TestCase tc) {
  if (text == "max") return applicable_beta_max(cc, tc);
  const double beta = parse_double_or_fail(text, "beta");
  if (!(beta >= 0.0)) fail("beta must be nonnegative");
  return beta;
}

std::optional<double> resolve_delta(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const double delta = parse_double_or_fail(text, "delta");
  if (!(delta >= 0.0)) fail("delta must be nonnegative");
  return delta;
}

std::optional<TestCase> resolve_case(const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "a") return TestCase::CaseA;
  if (text == "b") return TestCase::CaseB;
  fail("case must be auto, a or b");
}

int resolve_sign(const std::string& text, TestCase tc) {
  const int implied = modulation_sign_for(tc);
  if (text == "auto") return implied;
  const int wanted = (text == "+1") ? +1 : (text == "-1") ? -1 : 0;
  if (wanted == 0) fail("sign must be auto, +1 or -1");
  if (wanted != implied) fail("modulation sign conflicts with the test case");
  return wanted;
}

}  // namespace eitmono
