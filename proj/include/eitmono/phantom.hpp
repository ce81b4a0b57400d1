#pragma once

#include <array>
#include <vector>

#include "eitmono/geometry.hpp"
#include "eitmono/mesh.hpp"

namespace eitmono {

enum class FreqMode { DC, AC };

/// Which one-sided definiteness test applies: CaseA when the contrast c is
/// positive (conductivity raised in the focus region), CaseB when negative
/// (conductivity lowered).
enum class TestCase { CaseA, CaseB };

struct Inclusion {
  RegionSpec region;
  double sigma = 1.0;  // conductivity inside the inclusion
  double eps = 1.0;    // permittivity inside the inclusion
};

/// Focused conductivity perturbation: multiplies the DC conductivity by
/// (1 + sign*beta) inside region b.
struct Modulation {
  RegionSpec region;
  double beta = 0.0;
  int sign = +1;  // +1 or -1
};

/// Piecewise-constant admittivity distribution on a disk domain: constant
/// background (sigma_bg, eps_bg), disjoint inclusion regions, and the
/// angular frequency omega used in AC mode (gamma = sigma + i*omega*eps).
struct Phantom {
  double sigma_bg = 1.0;
  double eps_bg = 1.0;
  std::vector<Inclusion> inclusions;
  double omega = 0.0;
};

/// Closed-form constants of the two-sided detection test, all derived from
/// one shared inclusion admittivity pair and the background.
struct ContrastConstants {
  double c = 0.0;        // eps_D*sigma_bg - eps_bg*sigma_D; sign selects the case
  double big_c = 0.0;    // omega^2 * c / (sigma_D*sigma_bg + omega^2*eps_D*eps_bg)
  double big_c_prime = 0.0;
  Complex alpha{1.0, 0.0};  // 1 + i*omega*eps_bg/sigma_bg
  double beta_max_a = 0.0;  // largest proven modulation strength, case a
  double beta_max_b = 0.0;  // largest proven modulation strength, case b
};

TestCase applicable_case(const ContrastConstants& cc);
double applicable_beta_max(const ContrastConstants& cc, TestCase tc);
int modulation_sign_for(TestCase tc);  // +1 for CaseA, -1 for CaseB

/// Throws std::invalid_argument if any constant is nonpositive, omega < 0,
/// an inclusion pokes outside the disk (center, radius), or two inclusions
/// overlap.
void validate_phantom(const Phantom& phantom, Point2 domain_center, double domain_radius);

/// Samples the admittivity at element centroids. DC yields the real
/// conductivity, AC yields sigma + i*omega*eps. A modulation (DC only)
/// multiplies the conductivity by (1 + sign*beta) on elements inside its
/// region; the region must lie strictly inside the domain.
std::vector<Complex> element_admittivity(const Phantom& phantom, const Mesh& mesh,
                                         FreqMode mode,
                                         const Modulation* modulation = nullptr);

/// Computes the detection constants. Requires omega > 0 and at least one
/// inclusion; all inclusions must share the same (sigma, eps) pair. Throws
/// if the contrast c vanishes.
ContrastConstants contrast_constants(const Phantom& phantom);

/// One left-hand expression of the pointwise admittivity identities,
/// evaluated off the inclusion (background) and on it.
struct IdentityPair {
  double off_inclusion = 0.0;
  double on_inclusion = 0.0;
};

/// The four pointwise identities relating the frequency-weighted AC
/// admittivity to the DC one, each evaluated two independent ways at points
/// inside the focus region (chi_B = 1): `direct` by complex arithmetic on
/// gamma_0, gamma_omega and alpha, `closed_form` from the contrast
/// constants. Both agree to machine precision; tests assert 1e-12 relative.
struct PointwiseIdentities {
  std::array<IdentityPair, 4> direct;
  std::array<IdentityPair, 4> closed_form;
  double max_rel_error() const;
};

PointwiseIdentities pointwise_identities(const Phantom& phantom, double beta_tilde);

}  // namespace eitmono
