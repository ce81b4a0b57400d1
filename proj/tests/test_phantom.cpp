#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "eitmono/phantom.hpp"

using namespace eitmono;

namespace {

constexpr double kOmega = 200.0 * std::numbers::pi;

Phantom positive_contrast_phantom() {
  Phantom ph;
  ph.sigma_bg = 1.0;
  ph.eps_bg = 1.0;
  ph.omega = kOmega;
  ph.inclusions.push_back({RegionSpec::disk({5.0, 0.0}, 1.5), 1.0, 2.0});
  return ph;
}

Phantom negative_contrast_phantom() {
  Phantom ph;
  ph.sigma_bg = 1.0;
  ph.eps_bg = 2.0;
  ph.omega = kOmega;
  ph.inclusions.push_back({RegionSpec::disk({3.0, 1.5}, 2.5), 1.0, 1.0});
  return ph;
}

double truncate4(double v) { return std::floor(v * 1e4) / 1e4; }

}  // namespace

TEST_CASE("positive-contrast constants match their closed forms") {
  const ContrastConstants cc = contrast_constants(positive_contrast_phantom());
  const double w2 = kOmega * kOmega;
  CHECK(cc.c == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cc.alpha.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cc.alpha.imag() == doctest::Approx(kOmega).epsilon(1e-15));
  CHECK(cc.big_c == doctest::Approx(w2 / (1.0 + 2.0 * w2)).epsilon(1e-14));
  CHECK(cc.big_c_prime == doctest::Approx(w2 / (1.0 + w2)).epsilon(1e-14));
  CHECK(cc.beta_max_a == doctest::Approx(w2 / (1.0 + w2)).epsilon(1e-14));
  CHECK(truncate4(cc.beta_max_a) == doctest::Approx(0.9999));
  CHECK(applicable_case(cc) == TestCase::CaseA);
  CHECK(modulation_sign_for(TestCase::CaseA) == +1);
  CHECK(applicable_beta_max(cc, TestCase::CaseA) == doctest::Approx(cc.beta_max_a));
}

TEST_CASE("negative-contrast constants match their closed forms") {
  const ContrastConstants cc = contrast_constants(negative_contrast_phantom());
  const double w2 = kOmega * kOmega;
  CHECK(cc.c == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(cc.beta_max_b == doctest::Approx(w2 / (1.0 + 2.0 * w2)).epsilon(1e-14));
  CHECK(truncate4(cc.beta_max_b) == doctest::Approx(0.4999));
  CHECK(applicable_case(cc) == TestCase::CaseB);
  CHECK(modulation_sign_for(TestCase::CaseB) == -1);
  CHECK(applicable_beta_max(cc, TestCase::CaseB) == doctest::Approx(cc.beta_max_b));
}

TEST_CASE("pointwise identities agree with their closed forms to machine precision") {
  CHECK(pointwise_identities(positive_contrast_phantom(), 0.3).max_rel_error() <= 1e-12);
  CHECK(pointwise_identities(negative_contrast_phantom(), 0.3).max_rel_error() <= 1e-12);

  Phantom ph;
  ph.sigma_bg = 0.7;
  ph.eps_bg = 1.9;
  ph.omega = 40.0;
  ph.inclusions.push_back({RegionSpec::disk({1.0, 0.0}, 0.5), 2.3, 0.4});
  CHECK(pointwise_identities(ph, 0.75).max_rel_error() <= 1e-12);
}

TEST_CASE("contrast_constants validates its preconditions") {
  Phantom no_inclusion;
  no_inclusion.omega = kOmega;
  CHECK_THROWS_AS(contrast_constants(no_inclusion), std::exception);

  Phantom dc = positive_contrast_phantom();
  dc.omega = 0.0;
  CHECK_THROWS_AS(contrast_constants(dc), std::exception);

  Phantom zero_contrast = positive_contrast_phantom();
  zero_contrast.inclusions[0].sigma = 1.0;
  zero_contrast.inclusions[0].eps = 1.0;  // eps_D sigma_bg - eps_bg sigma_D = 0
  CHECK_THROWS_WITH_AS(contrast_constants(zero_contrast),
                       doctest::Contains("contrast condition"), std::invalid_argument);

  Phantom mixed = positive_contrast_phantom();
  mixed.inclusions.push_back({RegionSpec::disk({-5.0, 0.0}, 1.0), 3.0, 1.0});
  CHECK_THROWS_AS(contrast_constants(mixed), std::exception);
}

TEST_CASE("validate_phantom rejects bad constants and geometry") {
  const Point2 center{0.0, 0.0};
  CHECK_NOTHROW(validate_phantom(positive_contrast_phantom(), center, 10.0));

  Phantom bad = positive_contrast_phantom();
  bad.sigma_bg = 0.0;
  CHECK_THROWS_AS(validate_phantom(bad, center, 10.0), std::exception);

  Phantom poking = positive_contrast_phantom();
  poking.inclusions[0].region = RegionSpec::disk({9.5, 0.0}, 1.5);
  CHECK_THROWS_AS(validate_phantom(poking, center, 10.0), std::exception);

  Phantom overlapping = positive_contrast_phantom();
  overlapping.inclusions.push_back({RegionSpec::disk({5.5, 0.0}, 1.0), 2.0, 2.0});
  CHECK_THROWS_AS(validate_phantom(overlapping, center, 10.0), std::exception);
}

TEST_CASE("element admittivity samples centroids in both modes") {
  const Mesh mesh = build_disk_mesh(10.0, ElectrodeLayout{}, 0.5);
  const Phantom ph = positive_contrast_phantom();

  const auto dc = element_admittivity(ph, mesh, FreqMode::DC);
  const auto ac = element_admittivity(ph, mesh, FreqMode::AC);
  REQUIRE(dc.size() == static_cast<std::size_t>(mesh.triangle_count()));

  const RegionSpec& region = ph.inclusions[0].region;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const bool in = region.contains(mesh.triangle_centroid(t));
    CHECK(dc[t] == Complex(1.0, 0.0));
    CHECK(ac[t].real() == doctest::Approx(1.0));
    CHECK(ac[t].imag() == doctest::Approx(kOmega * (in ? 2.0 : 1.0)));
  }
}

TEST_CASE("modulation scales the conductivity inside its region only") {
  const Mesh mesh = build_disk_mesh(10.0, ElectrodeLayout{}, 0.5);
  const Phantom ph = positive_contrast_phantom();
  const Modulation mod{RegionSpec::disk({5.0, 0.0}, 1.25), 0.5, +1};

  const auto plain = element_admittivity(ph, mesh, FreqMode::DC);
  const auto modded = element_admittivity(ph, mesh, FreqMode::DC, &mod);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const bool in = mod.region.contains(mesh.triangle_centroid(t));
    CHECK(modded[t] == (in ? 1.5 * plain[t] : plain[t]));
  }
}

TEST_CASE("element admittivity rejects unsupported modulation input") {
  const Mesh mesh = build_disk_mesh(10.0, ElectrodeLayout{}, 0.5);
  const Phantom ph = positive_contrast_phantom();
  const Modulation mod{RegionSpec::disk({5.0, 0.0}, 1.25), 0.5, +1};

  CHECK_THROWS_WITH_AS(element_admittivity(ph, mesh, FreqMode::AC, &mod),
                       doctest::Contains("unsupported combination"), std::invalid_argument);

  Modulation nonpositive = mod;
  nonpositive.beta = 0.0;
  CHECK_THROWS_AS(element_admittivity(ph, mesh, FreqMode::DC, &nonpositive), std::exception);

  Modulation bad_sign = mod;
  bad_sign.sign = 2;
  CHECK_THROWS_AS(element_admittivity(ph, mesh, FreqMode::DC, &bad_sign), std::exception);

  Modulation outside = mod;
  outside.region = RegionSpec::disk({9.8, 0.0}, 1.0);
  CHECK_THROWS_AS(element_admittivity(ph, mesh, FreqMode::DC, &outside), std::exception);
}
