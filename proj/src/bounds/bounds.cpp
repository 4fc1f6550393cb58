#include "trish/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trish/errors.hpp"

namespace trish::bounds {

namespace {

using ld = long double;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive and finite");
}

void require_gammas(double gamma1, double gamma2) {
  require_positive(gamma2, "gamma2");
  if (gamma2 > gamma1) throw ConfigError("gamma2 must not exceed gamma1");
}

void require_index(long k) {
  if (k < 1) throw ConfigError("envelope index must be >= 1");
}

SublinearConstants finish_sublinear(ld a, ld b, ld delta1, ld delta2, ld gap0) {
  if (!(delta1 * a > 1.0L)) throw ConfigError("sublinear envelope needs delta1 * a > 1");
  const ld phi = std::max((b + 1.0L) * gap0, delta2 * a * a / (delta1 * a - 1.0L));
  return {static_cast<double>(delta1), static_cast<double>(delta2), static_cast<double>(phi)};
}

}  // namespace

double nonconvex_fixed_bound(long K, double gamma1, double gamma2, double alpha, double M_g, double f1,
                             double f_inf) {
  if (K < 1) throw ConfigError("K must be >= 1");
  require_gammas(gamma1, gamma2);
  require_positive(alpha, "alpha");
  const ld r = static_cast<ld>(gamma1) / gamma2;
  const ld transient = (8.0L / (static_cast<ld>(gamma2) * alpha)) * (static_cast<ld>(f1) - f_inf) / K;
  return static_cast<double>(transient + (8.0L * r * r - 1.0L) * M_g);
}

double pl_fixed_theta(double gamma1, double gamma2, double M_g, double c) {
  require_gammas(gamma1, gamma2);
  require_positive(c, "c");
  const ld r = static_cast<ld>(gamma1) / gamma2;
  return static_cast<double>(4.0L * (r * r - 0.125L) * M_g / c);
}

double pl_fixed_envelope(long k, double gamma1, double gamma2, double alpha, double M_g, double c, double gap0) {
  require_index(k);
  require_positive(alpha, "alpha");
  const ld theta = pl_fixed_theta(gamma1, gamma2, M_g, c);
  if (static_cast<ld>(alpha) > 4.0L / (static_cast<ld>(gamma2) * c)) {
    throw ConfigError("fixed-parameter envelope needs alpha <= 4/(gamma2 c)");
  }
  const ld q = 1.0L - 0.25L * gamma2 * c * static_cast<ld>(alpha);
  return static_cast<double>(theta + std::pow(q, static_cast<ld>(k - 1)) * (gap0 - theta));
}

SublinearConstants pl_sublinear_constants(double a, double b, double eta, double gamma1, double gamma2_1, double c,
                                          double L_g, double M_H, double M_g, double gap0) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_gammas(gamma1, gamma2_1);
  require_positive(c, "c");
  if (eta < 0.0) throw ConfigError("eta must be nonnegative");
  if (static_cast<ld>(a) / (static_cast<ld>(b) + 1.0L) > 2.0L / (static_cast<ld>(gamma2_1) * c)) {
    throw ConfigError("merging envelope needs alpha_k <= 2/(gamma2_1 c)");
  }
  const ld delta1 = 0.5L * gamma2_1 * static_cast<ld>(c);
  const ld delta2 = 0.5L * (3.0L * eta + static_cast<ld>(gamma1) * (static_cast<ld>(L_g) + M_H)) * gamma1 * M_g;
  return finish_sublinear(a, b, delta1, delta2, gap0);
}

double pl_sublinear_envelope(long k, double a, double b, double eta, double gamma1, double gamma2_1, double c,
                             double L_g, double M_H, double M_g, double gap0) {
  require_index(k);
  const auto s = pl_sublinear_constants(a, b, eta, gamma1, gamma2_1, c, L_g, M_H, M_g, gap0);
  return static_cast<double>(static_cast<ld>(s.phi) / (static_cast<ld>(b) + k));
}

SublinearConstants pl_sublinear_fixed_gamma_constants(double a, double b, double gamma1, double gamma2, double M_g,
                                                      double c, double gap0) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_gammas(gamma1, gamma2);
  require_positive(c, "c");
  if (static_cast<ld>(a) / (static_cast<ld>(b) + 1.0L) > 4.0L / (static_cast<ld>(gamma2) * c)) {
    throw ConfigError("fixed-gamma sublinear envelope needs alpha_k <= 4/(gamma2 c)");
  }
  const ld g1 = gamma1, g2 = gamma2;
  const ld delta1 = 0.25L * g2 * c;
  const ld delta2 = (g1 * g1 / g2 - g2 / 8.0L) * M_g;
  return finish_sublinear(a, b, delta1, delta2, gap0);
}

double pl_sublinear_fixed_gamma_envelope(long k, double a, double b, double gamma1, double gamma2, double M_g,
                                         double c, double gap0) {
  require_index(k);
  const auto s = pl_sublinear_fixed_gamma_constants(a, b, gamma1, gamma2, M_g, c, gap0);
  return static_cast<double>(static_cast<ld>(s.phi) / (static_cast<ld>(b) + k));
}

GeometricConstants pl_geometric_constants(double gamma1, double gamma2, double alpha, double M_g, double c,
                                          double zeta, double gap0) {
  require_gammas(gamma1, gamma2);
  require_positive(alpha, "alpha");
  require_positive(c, "c");
  const ld g1 = gamma1, g2 = gamma2;
  const ld kappa1 = g2 / 8.0L;
  const ld kappa2 = (g1 * g1 / g2 - g2 / 8.0L) * M_g;
  const ld omega = std::max(static_cast<ld>(gap0), kappa2 / (c * kappa1));
  const ld rho = std::max(1.0L - c * kappa1 * alpha, static_cast<ld>(zeta));
  if (!(rho > 0.0L && rho < 1.0L)) throw ConfigError("geometric envelope needs rho in (0, 1)");
  return {static_cast<double>(kappa1), static_cast<double>(kappa2), static_cast<double>(omega),
          static_cast<double>(rho)};
}

double pl_geometric_envelope(long k, double gamma1, double gamma2, double alpha, double M_g, double c, double zeta,
                             double gap0) {
  require_index(k);
  const auto g = pl_geometric_constants(gamma1, gamma2, alpha, M_g, c, zeta, gap0);
  // Recompute rho in long double so large k does not compound the rounding of the stored value.
  const ld rho = std::max(1.0L - static_cast<ld>(c) * (static_cast<ld>(gamma2) / 8.0L) * alpha, static_cast<ld>(zeta));
  return static_cast<double>(static_cast<ld>(g.omega) * std::pow(rho, static_cast<ld>(k - 1)));
}

double complexity_params_lhs(double lambda1, double lambda2, double lambda3, double mu1, double mu2) {
  const ld l1 = lambda1, l2 = lambda2, l3 = lambda3;
  return static_cast<double>(l1 * l1 * l2 * l2 - mu1 / l3 - mu2 / (l3 * l3) - 2.0L / (3.0L * l3 * l3 * l3));
}

bool complexity_params_check(double lambda1, double lambda2, double lambda3, double mu1, double mu2) {
  const ld l1 = lambda1, l2 = lambda2, l3 = lambda3;
  const ld lhs = l1 * l1 * l2 * l2 - mu1 / l3 - mu2 / (l3 * l3) - 2.0L / (3.0L * l3 * l3 * l3);
  return lhs >= 1.0L / 6.0L;
}

std::int64_t complexity_budget(double epsilon, double L_H, double gap0) {
  require_positive(epsilon, "epsilon");
  if (L_H < 0.0 || gap0 < 0.0) throw ConfigError("L_H and gap0 must be nonnegative");
  const ld e = epsilon;
  const ld v = 3.0L * L_H * static_cast<ld>(L_H) * gap0 / (e * std::sqrt(e));
  // Snap values that are integers up to rounding (eps = 0.25 gives exactly 24).
  const ld r = std::nearbyint(v);
  if (std::fabs(v - r) <= 1e-12L * std::max(1.0L, v)) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(v));
}

double complexity_decrease(double epsilon, double L_H) {
  require_positive(epsilon, "epsilon");
  require_positive(L_H, "L_H");
  const ld e = epsilon;
  return static_cast<double>(e * std::sqrt(e) / (3.0L * L_H * static_cast<ld>(L_H)));
}

}  // namespace trish::bounds
