#include "eitmono/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eitmono {

TestCase applicable_case(const ContrastConstants& cc) {
  return cc.c > 0.0 ? TestCase::CaseA : TestCase::CaseB;
}

double applicable_beta_max(const ContrastConstants& cc, TestCase tc) {
  return tc == TestCase::CaseA ? cc.beta_max_a : cc.beta_max_b;
}

int modulation_sign_for(TestCase tc) { return tc == TestCase::CaseA ? +1 : -1; }

void validate_phantom(const Phantom& ph, Point2 domain_center, double domain_radius) {
  if (!(ph.sigma_bg > 0.0)) throw std::invalid_argument("phantom: background sigma must be positive");
  if (!(ph.eps_bg > 0.0)) throw std::invalid_argument("phantom: background eps must be positive");
  if (!(ph.omega >= 0.0)) throw std::invalid_argument("phantom: omega must be nonnegative");
  for (const auto& inc : ph.inclusions) {
    if (!(inc.sigma > 0.0)) throw std::invalid_argument("phantom: inclusion sigma must be positive");
    if (!(inc.eps > 0.0)) throw std::invalid_argument("phantom: inclusion eps must be positive");
    if (!inc.region.strictly_inside_disk(domain_center, domain_radius)) {
      throw std::invalid_argument("phantom: inclusion region not strictly inside the domain");
    }
  }
  for (std::size_t i = 0; i < ph.inclusions.size(); ++i) {
    for (std::size_t j = i + 1; j < ph.inclusions.size(); ++j) {
      if (regions_overlap(ph.inclusions[i].region, ph.inclusions[j].region)) {
        throw std::invalid_argument("phantom: inclusion regions overlap");
      }
    }
  }
}

std::vector<Complex> element_admittivity(const Phantom& ph, const Mesh& mesh, FreqMode mode,
                                         const Modulation* modulation) {
  validate_phantom(ph, mesh.center, mesh.radius);
  if (modulation) {
    if (mode != FreqMode::DC) {
      throw std::invalid_argument("phantom: unsupported combination (modulation requires DC mode)");
    }
    if (!(modulation->beta > 0.0)) {
      throw std::invalid_argument("phantom: modulation strength beta must be positive");
    }
    if (modulation->sign != +1 && modulation->sign != -1) {
      throw std::invalid_argument("phantom: modulation sign must be +1 or -1");
    }
    if (!modulation->region.strictly_inside_disk(mesh.center, mesh.radius)) {
      throw std::invalid_argument("phantom: modulation region not strictly inside the domain");
    }
  }

  std::vector<Complex> gamma(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Point2 x = mesh.triangle_centroid(t);
    double sigma = ph.sigma_bg, eps = ph.eps_bg;
    for (const auto& inc : ph.inclusions) {
      if (inc.region.contains(x)) {
        sigma = inc.sigma;
        eps = inc.eps;
        break;  // regions are disjoint
      }
    }
    if (modulation && modulation->region.contains(x)) {
      sigma *= 1.0 + modulation->sign * modulation->beta;
    }
    gamma[t] = (mode == FreqMode::AC) ? Complex(sigma, ph.omega * eps) : Complex(sigma, 0.0);
  }
  return gamma;
}

namespace {

// Single shared inclusion admittivity (sigma_D, eps_D); throws otherwise.
std::pair<double, double> inclusion_constants(const Phantom& ph) {
  if (ph.inclusions.empty()) {
    throw std::invalid_argument("contrast: phantom has no inclusion");
  }
  const double sd = ph.inclusions.front().sigma;
  const double ed = ph.inclusions.front().eps;
  for (const auto& inc : ph.inclusions) {
    if (inc.sigma != sd || inc.eps != ed) {
      throw std::invalid_argument("contrast: inclusions must share one (sigma, eps) pair");
    }
  }
  return {sd, ed};
}

}  // namespace

ContrastConstants contrast_constants(const Phantom& ph) {
  if (!(ph.omega > 0.0)) throw std::invalid_argument("contrast: omega must be positive");
  const auto [sigma_d, eps_d] = inclusion_constants(ph);
  const double so = ph.sigma_bg, eo = ph.eps_bg;
  const double w2 = ph.omega * ph.omega;

  ContrastConstants cc;
  cc.c = eps_d * so - eo * sigma_d;
  if (cc.c == 0.0) throw std::invalid_argument("contrast: contrast condition violated (c = 0)");
  cc.big_c = w2 * cc.c / (sigma_d * so + w2 * eps_d * eo);
  cc.big_c_prime = w2 * (so / sigma_d) * cc.c / (so * so + w2 * eo * eo);
  cc.alpha = Complex(1.0, ph.omega * eo / so);
  cc.beta_max_a = w2 * std::abs(cc.c) * eo / (sigma_d * (so * so + w2 * eo * eo));
  cc.beta_max_b = w2 * std::abs(cc.c) * eps_d / (sigma_d * (sigma_d * so + w2 * eps_d * eo));
  return cc;
}

double PointwiseIdentities::max_rel_error() const {
  // Relative to the largest identity value so exact-zero branches compare
  // against the problem scale rather than against themselves.
  double scale = 1e-300, worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    scale = std::max({scale, std::abs(closed_form[i].off_inclusion),
                      std::abs(closed_form[i].on_inclusion)});
  }
  for (int i = 0; i < 4; ++i) {
    worst = std::max({worst, std::abs(direct[i].off_inclusion - closed_form[i].off_inclusion),
                      std::abs(direct[i].on_inclusion - closed_form[i].on_inclusion)});
  }
  return worst / scale;
}

PointwiseIdentities pointwise_identities(const Phantom& ph, double beta_tilde) {
  const auto cc = contrast_constants(ph);
  const auto [sigma_d, eps_d] = std::pair{ph.inclusions.front().sigma, ph.inclusions.front().eps};
  const double so = ph.sigma_bg, eo = ph.eps_bg, bt = beta_tilde;

  // gamma_0 and gamma_omega/alpha in each region
  const Complex g0_off(so, 0.0), g0_on(sigma_d, 0.0);
  const Complex ga_off = Complex(so, ph.omega * eo) / cc.alpha;
  const Complex ga_on = Complex(sigma_d, ph.omega * eps_d) / cc.alpha;

  const auto lhs = [bt](Complex ga, Complex g0, int which) {
    const double re_diff = (ga - g0).real();
    const double ratio_term = ga.imag() * ga.imag() / ga.real();
    switch (which) {
      case 0: return g0.real() / ga.real() * re_diff;
      case 1: return re_diff + ratio_term;
      case 2: return (ga - (1.0 + bt) * g0).real();
      default: return (ga - (1.0 + bt) * g0).real() + ratio_term;
    }
  };

  PointwiseIdentities out;
  for (int i = 0; i < 4; ++i) {
    out.direct[i] = {lhs(ga_off, g0_off, i), lhs(ga_on, g0_on, i)};
  }
  out.closed_form[0] = {0.0, eo * sigma_d / so * cc.big_c};
  out.closed_form[1] = {0.0, eps_d * cc.big_c};
  out.closed_form[2] = {-bt * so, sigma_d * (eo * cc.big_c_prime / so - bt)};
  out.closed_form[3] = {-bt * so, eps_d * cc.big_c - bt * sigma_d};
  return out;
}

}  // namespace eitmono
