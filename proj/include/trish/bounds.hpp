#pragma once

// Closed-form constants and expectation envelopes for the convergence results.
// Envelopes take the iteration index k >= 1 of the iterate x_k (x_1 is the start).
// All evaluation happens in long double.

#include <cstdint>

namespace trish::bounds {

/// (1/K)(8/(g2 alpha))(f1 - f_inf) + (8 g1^2/g2^2 - 1) M_g
double nonconvex_fixed_bound(long K, double gamma1, double gamma2, double alpha, double M_g, double f1,
                             double f_inf);

/// 4 (g1^2/g2^2 - 1/8) M_g / c
double pl_fixed_theta(double gamma1, double gamma2, double M_g, double c);

/// theta + (1 - g2 c alpha / 4)^{k-1} (gap0 - theta). Requires alpha <= 4/(g2 c).
double pl_fixed_envelope(long k, double gamma1, double gamma2, double alpha, double M_g, double c, double gap0);

struct SublinearConstants {
  double delta1;
  double delta2;
  double phi;
};

/// Merging schedule: delta1 = g2_1 c / 2, delta2 = (3 eta + g1 (L_g + M_H)) g1 M_g / 2.
/// Requires delta1 a > 1 and a/(b+1) <= 2/(g2_1 c).
SublinearConstants pl_sublinear_constants(double a, double b, double eta, double gamma1, double gamma2_1, double c,
                                          double L_g, double M_H, double M_g, double gap0);

/// phi / (b + k)
double pl_sublinear_envelope(long k, double a, double b, double eta, double gamma1, double gamma2_1, double c,
                             double L_g, double M_H, double M_g, double gap0);

/// Fixed gammas: delta1 = g2 c / 4, delta2 = (g1^2/g2 - g2/8) M_g.
/// Requires delta1 a > 1 and a/(b+1) <= 4/(g2 c).
SublinearConstants pl_sublinear_fixed_gamma_constants(double a, double b, double gamma1, double gamma2, double M_g,
                                                      double c, double gap0);

double pl_sublinear_fixed_gamma_envelope(long k, double a, double b, double gamma1, double gamma2, double M_g,
                                         double c, double gap0);

struct GeometricConstants {
  double kappa1;
  double kappa2;
  double omega;
  double rho;
};

/// kappa1 = g2/8, kappa2 = (g1^2/g2 - g2/8) M_g, omega = max{gap0, kappa2/(c kappa1)},
/// rho = max{1 - c kappa1 alpha, zeta}. Requires rho in (0, 1).
GeometricConstants pl_geometric_constants(double gamma1, double gamma2, double alpha, double M_g, double c,
                                          double zeta, double gap0);

/// omega rho^{k-1}
double pl_geometric_envelope(long k, double gamma1, double gamma2, double alpha, double M_g, double c, double zeta,
                             double gap0);

/// l1^2 l2^2 - m1/l3 - m2/l3^2 - 2/(3 l3^3)
double complexity_params_lhs(double lambda1, double lambda2, double lambda3, double mu1, double mu2);

/// complexity_params_lhs(...) >= 1/6
bool complexity_params_check(double lambda1, double lambda2, double lambda3, double mu1, double mu2);

/// ceil(3 L_H^2 gap0 eps^{-3/2})
std::int64_t complexity_budget(double epsilon, double L_H, double gap0);

/// eps^{3/2} / (3 L_H^2), the guaranteed decrease of an iteration with multiplier above sqrt(eps).
double complexity_decrease(double epsilon, double L_H);

}  // namespace trish::bounds
