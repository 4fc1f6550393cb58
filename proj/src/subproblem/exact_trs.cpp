#include <cmath>
#include <sstream>

#include "trish/errors.hpp"
#include "trish/subproblem.hpp"

namespace trish {

namespace {

constexpr int kMaxSecularIterations = 200;
constexpr double kHardCaseTol = 1e-12;

struct Spectral {
  Vector lambda;  // ascending
  Matrix q;
  Vector g_hat;   // Q' g
};

// |s(u)|^2 with s(u) = -sum g_hat_i / (lambda_i + u) q_i, skipping zero coefficients.
double step_norm_sq(const Spectral& sp, double u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sp.lambda.size(); ++i) {
    const double gi = sp.g_hat[i];
    if (gi == 0.0) continue;
    const double d = sp.lambda[i] + u;
    acc += (gi * gi) / (d * d);
  }
  return acc;
}

double step_norm_cube_weight(const Spectral& sp, double u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sp.lambda.size(); ++i) {
    const double gi = sp.g_hat[i];
    if (gi == 0.0) continue;
    const double d = sp.lambda[i] + u;
    acc += (gi * gi) / (d * d * d);
  }
  return acc;
}

Vector step_at(const Spectral& sp, double u) {
  Vector coeff = Vector::Zero(sp.lambda.size());
  for (Eigen::Index i = 0; i < sp.lambda.size(); ++i) {
    if (sp.g_hat[i] == 0.0) continue;
    coeff[i] = -sp.g_hat[i] / (sp.lambda[i] + u);
  }
  return sp.q * coeff;
}

}  // namespace

TrsSolution exact_trs(const Vector& g, const Matrix& h, double delta, double tol) {
  if (h.rows() != h.cols() || h.rows() != g.size()) throw InputError("exact_trs: dimension mismatch");
  if (!(delta > 0.0)) throw ConfigError("exact_trs: radius must be positive");
  if (!(tol > 0.0)) throw ConfigError("exact_trs: tolerance must be positive");
  const double scale = std::max(1.0, h.size() > 0 ? h.cwiseAbs().maxCoeff() : 0.0);
  if (h.size() > 0 && (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("exact_trs: Hessian is not symmetric");
  }
  require_finite(g, "gradient");

  TrsSolution out;
  const auto n = g.size();
  if (n == 0) {
    out.s = Vector::Zero(0);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h + h.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("exact_trs: eigendecomposition failed", "n=" + std::to_string(n));
  Spectral sp{eig.eigenvalues(), eig.eigenvectors(), Vector()};
  sp.g_hat = sp.q.transpose() * g;
  const double gnorm = g.norm();
  const double lambda_min = sp.lambda[0];
  const double lambda_scale = std::max(1.0, sp.lambda.cwiseAbs().maxCoeff());

  // Interior Newton step.
  if (lambda_min > 0.0 && gnorm > 0.0 && step_norm_sq(sp, 0.0) <= delta * delta) {
    out.s = step_at(sp, 0.0);
    return out;
  }
  if (gnorm == 0.0 && lambda_min >= 0.0) {
    out.s = Vector::Zero(n);
    return out;
  }

  const double lo = std::max(0.0, -lambda_min);

  // Hard case: g orthogonal to the minimal eigenspace and the remaining step too short.
  Eigen::Index multiplicity = 0;
  bool orthogonal = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sp.lambda[i] > lambda_min + 1e-12 * lambda_scale) break;
    ++multiplicity;
    if (std::abs(sp.g_hat[i]) > kHardCaseTol * gnorm) orthogonal = false;
  }
  if (orthogonal && lambda_min <= 0.0) {
    Spectral rest = sp;
    for (Eigen::Index i = 0; i < multiplicity; ++i) rest.g_hat[i] = 0.0;
    const double rest_sq = step_norm_sq(rest, lo);
    if (rest_sq <= delta * delta) {
      out.s = step_at(rest, lo);
      out.upsilon = lo;
      if (lo > 0.0) {
        out.s += std::sqrt(delta * delta - rest_sq) * sp.q.col(0);
        out.hard_case = true;
      }
      return out;
    }
  }

  // Secular equation 1/|s(u)| = 1/delta on (lo, hi]; 1/|s(u)| is concave and increasing.
  double bracket_lo = lo;
  double bracket_hi = lo + gnorm / delta;
  double u = bracket_hi;
  const double inv_delta = 1.0 / delta;
  int it = 0;
  for (; it < kMaxSecularIterations; ++it) {
    const double nsq = step_norm_sq(sp, u);
    const double norm = std::sqrt(nsq);
    const double phi = 1.0 / norm - inv_delta;
    if (std::abs(norm - delta) <= tol * delta) break;
    if (phi < 0.0) {
      bracket_lo = std::max(bracket_lo, u);
    } else {
      bracket_hi = std::min(bracket_hi, u);
    }
    if (bracket_hi - bracket_lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, bracket_hi)) break;
    const double dphi = step_norm_cube_weight(sp, u) / (norm * nsq);
    double next = u - phi / dphi;
    if (!(next > bracket_lo && next < bracket_hi) || !std::isfinite(next)) next = 0.5 * (bracket_lo + bracket_hi);
    u = next;
  }
  if (it == kMaxSecularIterations) {
    std::ostringstream diag;
    diag << "n=" << n << " delta=" << delta << " lambda_min=" << lambda_min << " bracket=[" << bracket_lo << ","
         << bracket_hi << "]";
    throw NumericalError("exact_trs: secular equation did not converge", diag.str());
  }

  out.newton_iterations = it;
  out.upsilon = u;
  out.s = step_at(sp, u);
  const double snorm = out.s.norm();
  if (snorm > delta) {
    out.s *= delta / snorm;
  } else if (snorm < delta * (1.0 - tol) && u <= lo * (1.0 + 1e-10) + 1e-300) {
    // Nearly hard case: the bracket collapsed onto -lambda_min before reaching the boundary.
    out.s += std::sqrt(delta * delta - snorm * snorm) * sp.q.col(0);
    out.hard_case = true;
  }
  return out;
}

KktResiduals kkt_residuals(const Vector& g, const Matrix& h, double delta, const Vector& s, double upsilon) {
  if (h.rows() != h.cols() || h.rows() != g.size() || s.size() != g.size()) {
    throw InputError("kkt_residuals: dimension mismatch");
  }
  KktResiduals r{};
  r.stationarity = (g + h * s + upsilon * s).norm();
  Matrix shifted = 0.5 * (h + h.transpose());
  shifted.diagonal().array() += upsilon;
  if (shifted.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(shifted, Eigen::EigenvaluesOnly);
    r.psd_margin = eig.eigenvalues()[0];
  } else {
    r.psd_margin = 0.0;
  }
  r.complementarity = std::abs(upsilon * (delta - s.norm()));
  return r;
}

}  // namespace trish
