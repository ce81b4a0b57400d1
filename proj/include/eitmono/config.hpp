#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eitmono/mesh.hpp"
#include "eitmono/phantom.hpp"

namespace eitmono {

/// Parsed run configuration. Format: line-oriented blocks
///
///   [geometry]            required: radius, electrodes, target_h
///   [phantom]             required: sigma, eps, omega
///   [inclusion]           repeatable; required: shape fields, sigma, eps
///   [modulation]          beta = max|<number>; sign = auto|+1|-1
///   [detection]           delta = auto|<number>; case = auto|a|b
///   [measurement]         patterns = adjacent
///   [test_region]         repeatable; required: name, shape fields
///   [scan]                required if present: ball_radius, spacing
///   [output]              dir = <path>
///
/// '#' starts a comment; unknown blocks or keys are rejected with the line
/// number; region shapes are "shape = disk" plus center/radius keys, or
/// "shape = polygon" plus a vertices key with x y pairs.
struct RunConfig {
  struct Geometry {
    double radius = 0.0;
    ElectrodeLayout layout;
    double target_h = 0.0;
    int levels = 0;  // refinements applied to reach the working level
  } geometry;

  Phantom phantom;

  struct ModulationSettings {
    std::string beta = "max";   // "max" or a positive number
    std::string sign = "auto";  // "auto", "+1", "-1"
  } modulation;

  struct Detection {
    std::string delta = "auto";     // "auto" or a nonnegative number
    std::string case_sel = "auto";  // "auto", "a", "b"
  } detection;

  struct Measurement {
    std::string patterns = "adjacent";
  } measurement;

  struct TestRegion {
    std::string name;
    RegionSpec region;
  };
  std::vector<TestRegion> test_regions;

  struct ScanBlock {
    double ball_radius = 0.0;
    double spacing = 0.0;
    double margin = 0.0;
  };
  std::optional<ScanBlock> scan;

  struct Output {
    std::string dir = "out";
  } output;

  std::uint64_t config_hash = 0;  // FNV-1a of the raw config bytes
};

/// Parses config text; error messages carry the offending line number and
/// name missing required fields.
RunConfig parse_config(const std::string& text);

/// Reads the file and parses it; the hash covers the file bytes.
RunConfig load_config(const std::string& path);

/// "max" -> the proven bound for the case, otherwise the numeric value.
double resolve_beta(const std::string& text, const ContrastConstants& cc, TestCase tc);

/// "auto" -> empty optional (compute by refinement), otherwise the value.
std::optional<double> resolve_delta(const std::string& text);

/// "auto" -> empty optional (derive from the contrast sign).
std::optional<TestCase> resolve_case(const std::string& text);

/// "auto" -> sign implied by tc; explicit sign must match tc or throws.
int resolve_sign(const std::string& text, TestCase tc);

}  // namespace eitmono
