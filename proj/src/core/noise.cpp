#include <cmath>
#include <sstream>

#include "trish/core.hpp"
#include "trish/errors.hpp"
#include "trish/simd.hpp"

namespace trish {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive and finite");
}

}  // namespace

void NoiseModel::validate() const {
  std::visit(overloaded{
                 [](const NoNoise&) {},
                 [](const BoundedNoise& n) { require_positive(n.M_g, "M_g"); },
                 [](const StepwiseNoise& n) { require_positive(n.M_g, "M_g"); },
                 [](const GeometricNoise& n) {
                   require_positive(n.M_g, "M_g");
                   if (!(n.zeta > 0.0 && n.zeta < 1.0)) throw ConfigError("zeta must lie in (0,1)");
                 },
                 [](const MiniBatchNoise& n) {
                   if (n.batch == 0) throw ConfigError("mini-batch size must be positive");
                 },
             },
             gradient);
  std::visit(overloaded{
                 [](const ExactCappedHessian& h) {
                   if (!(h.M_H > 0.0)) throw ConfigError("M_H must be positive");
                 },
                 [](const ZeroHessian&) {},
                 [](const PerturbedHessian& h) {
                   if (!(h.M_H > 0.0)) throw ConfigError("M_H must be positive");
                   if (!(h.scale >= 0.0) || !std::isfinite(h.scale))
                     throw ConfigError("perturbation scale must be nonnegative");
                 },
             },
             hessian);
}

double target_variance(const GradientNoise& noise, long k, double alpha) {
  return std::visit(overloaded{
                        [](const NoNoise&) { return 0.0; },
                        [](const BoundedNoise& n) { return n.M_g; },
                        [alpha](const StepwiseNoise& n) { return n.M_g * alpha; },
                        [k](const GeometricNoise& n) { return n.M_g * std::pow(n.zeta, static_cast<double>(k - 1)); },
                        [](const MiniBatchNoise&) { return std::numeric_limits<double>::quiet_NaN(); },
                    },
                    noise);
}

std::string describe(const GradientNoise& noise) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const NoNoise&) { os << "none"; },
                 [&](const BoundedNoise& n) { os << "bounded(M_g=" << n.M_g << ")"; },
                 [&](const StepwiseNoise& n) { os << "stepwise(M_g=" << n.M_g << ")"; },
                 [&](const GeometricNoise& n) { os << "geometric(M_g=" << n.M_g << ",zeta=" << n.zeta << ")"; },
                 [&](const MiniBatchNoise& n) { os << "minibatch(" << n.batch << ")"; },
             },
             noise);
  return os.str();
}

std::string describe(const HessianModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ExactCappedHessian& h) { os << "exact_capped(M_H=" << h.M_H << ")"; },
                 [&](const ZeroHessian&) { os << "zero"; },
                 [&](const PerturbedHessian& h) { os << "perturbed(M_H=" << h.M_H << ",scale=" << h.scale << ")"; },
             },
             model);
  return os.str();
}

GradientSample draw_gradient(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise, long k,
                             double alpha, RngStream& rng) {
  require_finite(x, "iterate");
  GradientSample out;
  if (const auto* mb = std::get_if<MiniBatchNoise>(&noise.gradient)) {
    const auto* fs = dynamic_cast<const FiniteSumOracle*>(&oracle);
    if (fs == nullptr) throw ConfigError("mini-batch noise requires a finite-sum problem");
    const std::size_t total = fs->num_components();
    if (mb->batch >= total) {
      // Full batch: the deterministic full gradient.
      out.g = oracle.grad(x);
    } else {
      out.batch.resize(mb->batch);
      for (auto& i : out.batch) i = rng.index(total);
      out.g = fs->batch_grad(x, out.batch);
    }
    require_finite(out.g, "gradient");
    return out;
  }

  out.g = oracle.grad(x);
  require_finite(out.g, "gradient");
  const double variance = target_variance(noise.gradient, k, alpha);
  if (variance > 0.0) {
    const double sd = std::sqrt(variance / static_cast<double>(out.g.size()));
    Vector z = rng.normal_vector(static_cast<std::size_t>(out.g.size()));
    simd::axpy(sd, view(z), view(out.g));
  }
  return out;
}

Vector sample_gradient(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise, long k,
                       double alpha, RngStream& rng) {
  return draw_gradient(oracle, x, noise, k, alpha, rng).g;
}

namespace {

HessianEstimate capped_exact(const ProblemOracle& oracle, const Vector& x, double M_H,
                             std::span<const std::size_t> batch) {
  const double L_g = oracle.constants().L_g;
  const double tau = (L_g > 0.0) ? std::min(1.0, M_H / L_g) : 1.0;
  const auto* fs = batch.empty() ? nullptr : dynamic_cast<const FiniteSumOracle*>(&oracle);
  if (fs != nullptr) {
    std::vector<std::size_t> idx(batch.begin(), batch.end());
    return HessianEstimate(
        oracle.dim(),
        [fs, x, tau, idx](const Vector& v) -> Vector { return tau * fs->batch_hvp(x, v, idx); }, tau * L_g);
  }
  const ProblemOracle* o = &oracle;
  return HessianEstimate(
      oracle.dim(), [o, x, tau](const Vector& v) -> Vector { return tau * o->hvp(x, v); }, tau * L_g);
}

}  // namespace

HessianEstimate sample_hessian(const ProblemOracle& oracle, const Vector& x, const NoiseModel& noise,
                               RngStream& rng, std::span<const std::size_t> batch) {
  noise.validate();
  if (std::holds_alternative<ZeroHessian>(noise.hessian)) return HessianEstimate::zero(oracle.dim());
  if (const auto* h = std::get_if<ExactCappedHessian>(&noise.hessian)) return capped_exact(oracle, x, h->M_H, batch);

  const auto& p = std::get<PerturbedHessian>(noise.hessian);
  HessianEstimate base = capped_exact(oracle, x, p.M_H, batch);
  Vector u = rng.normal_vector(oracle.dim());
  const double un = u.norm();
  if (un > 0.0) u /= un;
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double pre_bound = base.norm_bound() + p.scale;
  const double recap = pre_bound > 0.0 ? std::min(1.0, p.M_H / pre_bound) : 1.0;
  const double coeff = sign * p.scale;
  return HessianEstimate(
      oracle.dim(),
      [base, u, coeff, recap](const Vector& v) -> Vector {
        Vector out = base.apply(v);
        out += (coeff * u.dot(v)) * u;
        return recap * out;
      },
      recap * pre_bound);
}

}  // namespace trish
